#include "electron/sim.hpp"

#include <algorithm>
#include <cmath>

namespace electron {

Position random_point(const Area& area, Engine& rng)
{
    const double x = uniform_real(rng, 0.0, area.width);
    const double y = uniform_real(rng, 0.0, area.height);
    return {x, y};
}

Position step_mobility(MobileNode& node, double dt, const Area& area, Engine& rng)
{
    const double travel = node.speed * dt;
    const double dx = node.waypoint.x - node.position.x;
    const double dy = node.waypoint.y - node.position.y;
    const double remaining = std::hypot(dx, dy);

    if (remaining <= travel) {
        node.position = node.waypoint;
        node.waypoint = random_point(area, rng);
    } else {
        node.position.x += dx / remaining * travel;
        node.position.y += dy / remaining * travel;
    }
    node.position.x = std::clamp(node.position.x, 0.0, area.width);
    node.position.y = std::clamp(node.position.y, 0.0, area.height);
    return node.position;
}

} // namespace electron
