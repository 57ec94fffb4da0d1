#ifndef MDIM_ERRORS_HPP
#define MDIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mdim {

// Contract violations on caller input. The CLI maps these to exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidVertexId : InputError {
    using InputError::InputError;
};
struct SelfLoop : InputError {
    using InputError::InputError;
};
struct DisconnectedGraph : InputError {
    using InputError::InputError;
};
struct InvalidOrder : InputError {
    using InputError::InputError;
};
struct EmptyLandmarkSet : InputError {
    using InputError::InputError;
};
struct TooFewLandmarks : InputError {
    using InputError::InputError;
};
struct TrivialGraph : InputError {
    using InputError::InputError;
};
struct InvalidAttachment : InputError {
    using InputError::InputError;
};
struct InvalidVertex : InputError {
    using InputError::InputError;
};
struct TooFewRays : InputError {
    using InputError::InputError;
};
struct NotATree : InputError {
    using InputError::InputError;
};
struct NegativeLevel : InputError {
    using InputError::InputError;
};
struct UnsupportedFamily : InputError {
    using InputError::InputError;
};
struct PreconditionNotCertified : InputError {
    using InputError::InputError;
};
struct OutOfScopeConfiguration : InputError {
    using InputError::InputError;
};
struct TrivialFactor : InputError {
    using InputError::InputError;
};

// A constructed witness failed its own re-verification. Never expected to
// fire; the CLI maps it to exit code 3.
struct InternalVerificationFailure : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace mdim

#endif
