#pragma once

#include <stdexcept>
#include <string>

namespace holonet {

// Error taxonomy shared by every module. All conditions are programmer- or
// input-visible, so plain exceptions with a message are enough.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unknown catalog / corpus name.
struct NameError : Error {
    using Error::Error;
};

// Argument outside the documented domain (bad hyperparameter, |m| > alpha, ...).
struct DomainError : Error {
    using Error::Error;
};

// Matrix / vector dimension mismatch.
struct ShapeError : Error {
    using Error::Error;
};

// Non-finite value or magnitude overflow detected during evaluation/assembly.
struct NumericError : Error {
    using Error::Error;
};

// Accuracy knob K below the activation's admissible threshold K0.
struct BudgetError : Error {
    using Error::Error;
};

// Operation needs data the object does not carry (derivative oracle, Lipschitz constant).
struct CapabilityError : Error {
    using Error::Error;
};

// Certified input range of a lift plan is too small for the source network.
struct LiftRangeError : Error {
    using Error::Error;
};

}  // namespace holonet
