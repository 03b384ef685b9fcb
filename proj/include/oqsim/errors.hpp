#pragma once

#include <stdexcept>
#include <string>

namespace oqsim {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationExceeded : SimError {
    using SimError::SimError;
};

struct LayoutMismatch : SimError {
    using SimError::SimError;
};

// Post-selection on an outcome with zero probability. Distinct from the
// legal zero vector returned by annihilation.
struct ZeroProbabilityBranch : SimError {
    using SimError::SimError;
};

struct PhotonNumberMismatch : SimError {
    using SimError::SimError;
};

struct NotUnitary : SimError {
    using SimError::SimError;
};

struct InvalidSpec : SimError {
    using SimError::SimError;
};

struct InvalidEncoding : SimError {
    using SimError::SimError;
};

// Coherent-branch label pushed outside the representable set {-1, 0, +1}.
struct LabelOverflow : SimError {
    using SimError::SimError;
};

struct UnknownExperiment : SimError {
    using SimError::SimError;
};

struct InvalidParams : SimError {
    using SimError::SimError;
};

struct IoError : SimError {
    using SimError::SimError;
};

}  // namespace oqsim
