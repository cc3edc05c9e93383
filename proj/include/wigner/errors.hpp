#ifndef WIGNER_ERRORS_HPP
#define WIGNER_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace wigner {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain (coincident particles, bad sizes).
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Iterative solver ran out of iterations. Carries the last iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> last)
        : Error(what), last_iterate(std::move(last)) {}
    std::vector<double> last_iterate;
};

/// Stationary point is not a minimum (non-positive Hessian eigenvalue).
class NotAMinimum : public Error {
public:
    using Error::Error;
};

/// Gaussian kernel does not define a positive operator.
class InvalidKernel : public Error {
public:
    using Error::Error;
};

class SearchFailure : public Error {
public:
    using Error::Error;
};

/// Site traces do not add up to one.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Monte Carlo estimate too noisy for the requested use.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Requested path is not covered (e.g. finite g with d != 1).
class Unsupported : public Error {
public:
    using Error::Error;
};

} // namespace wigner

#endif // WIGNER_ERRORS_HPP
