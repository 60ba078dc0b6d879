#ifndef RTKIT_ERRORS_HPP
#define RTKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rtkit
{

// Parameter outside the documented domain of an operation.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A p-adic quantity cannot be delivered at the requested precision.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
    int achievable = 0;
    precision_error(const std::string &what, int achievable_precision)
        : std::runtime_error(what), achievable(achievable_precision)
    {
    }
};

// A mathematical invariant failed; always a bug, never user error.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace rtkit

#endif
