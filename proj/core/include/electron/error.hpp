#ifndef ELECTRON_ERROR_HPP
#define ELECTRON_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace electron {

/// Bad scenario or context configuration (unknown kind, out-of-range field).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Access request sent to a node that cannot adjudicate it.
class RoutingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace electron

#endif // ELECTRON_ERROR_HPP
