#ifndef VORTEXLAB_ERRORS_HPP
#define VORTEXLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vortexlab {

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// vortex solver
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainTooSmall : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct AmbiguousZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientRange : InvalidInput {
    using InvalidInput::InvalidInput;
};

// symmetric products
struct SizeMismatch : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct DegreeExceeded : InvalidInput {
    using InvalidInput::InvalidInput;
};

// stable maps
struct IncompatibleType : InvalidInput {
    using InvalidInput::InvalidInput;
};

// bubbling
struct AmbiguousExponents : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnstableLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Maslov indices
struct WindingAmbiguous : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FieldNotUnimodular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// weighted norms
struct UnsupportedOrder : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct DivergentWeight : InvalidInput {
    using InvalidInput::InvalidInput;
};

} // namespace vortexlab

#endif
