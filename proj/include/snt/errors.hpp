#ifndef SNT_ERRORS_HPP
#define SNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace snt {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain (bad order, bad range, pole hit).
struct domain_error : error {
    using error::error;
};

/// Requested window extends past the available zero ordinate data.
struct coverage_error : error {
    using error::error;
};

/// An iterative scheme failed to reach the requested tolerance.
/// `achieved` carries the best error estimate at the point of failure.
struct convergence_error : error {
    double achieved;
    convergence_error(const std::string& what, double est)
        : error(what), achieved(est) {}
};

/// Input data (zero tables, config files) failed to parse or validate.
struct data_error : error {
    using error::error;
};

}  // namespace snt

#endif
