#ifndef SULLIVAN_ERRORS_HPP
#define SULLIVAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sullivan {

/// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
struct compute_error : error {
    using error::error;
};

/// A model failed validation, or a construction needed a valid model.
struct model_error : error {
    using error::error;
};

/// An internal invariant failed. These indicate a bug (or a deliberately
/// corrupted input in a negative-control test), never a user mistake.
struct invariant_error : error {
    using error::error;
};

}  // namespace sullivan

#endif
