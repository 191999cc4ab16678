#ifndef HOLONORM_ERROR_HPP
#define HOLONORM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace holonorm {

enum class ErrorKind {
    invalid_parameter,
    violated_invariant,
    parse_error,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void invalid_parameter(const std::string& what) {
    throw Error(ErrorKind::invalid_parameter, "invalid parameter: " + what);
}

[[noreturn]] inline void violated_invariant(const std::string& what) {
    throw Error(ErrorKind::violated_invariant, "invariant violated: " + what);
}

} // namespace holonorm

#endif
