#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holonet/errors.hpp"

namespace holonet {

// ============================================================
// Piecewise-linear activations
// ============================================================

// Continuous piecewise-linear function: K ordered breakpoints, K+1 slopes,
// intercepts chained from the value at the first breakpoint. Adjacent slopes
// must differ at every breakpoint.
struct PiecewiseLinearActivation {
    std::vector<double> breakpoints;   // a_1 <= ... <= a_K, K >= 1
    std::vector<double> slopes;        // K+1 slopes, left to right
    double value_at_first_breakpoint = 0.0;

    // Values at each breakpoint, chained for continuity. Filled by finalize().
    std::vector<double> knot_values;

    void finalize();                   // validates invariants, fills knot_values
    double eval(double x) const;
    double slope_left_of(std::size_t k) const { return slopes[k]; }
    double slope_right_of(std::size_t k) const { return slopes[k + 1]; }
};

// ============================================================
// Locally quadratic activations
// ============================================================

// Three times differentiable on (a, b) with sigma'(t) != 0, sigma''(t) != 0
// at the stored expansion point t. Oracles are full-line formulas; they are
// only trusted inside (a, b).
struct LocallyQuadraticActivation {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;
    double smooth_a = 0.0;             // open interval (a, b); +-inf allowed
    double smooth_b = 0.0;
    double expansion_point = 0.0;      // t in (a, b)
    double derivative_bound = 0.0;     // documented bound on |sigma'''| over (a, b)

    void validate() const;             // Definition-2 invariants + finite-difference check
    // Distance from t to the nearest end of the smooth interval (inf if unbounded).
    double smooth_radius() const;
};

// ============================================================
// Tagged activation descriptor
// ============================================================

enum class ActivationKind { PiecewiseLinear, LocallyQuadratic };

struct Activation {
    std::string name;                  // canonical catalog spelling, e.g. "leaky_relu(a=0.01)"
    ActivationKind kind = ActivationKind::PiecewiseLinear;
    std::optional<PiecewiseLinearActivation> pwl;
    std::optional<LocallyQuadraticActivation> locq;
    std::optional<double> lipschitz;   // C_sigma; absent for RePU
    double gadget_k0 = 4.0;            // smallest admissible K for gadget constructions

    bool is_pwl() const { return kind == ActivationKind::PiecewiseLinear; }
    bool is_locq() const { return kind == ActivationKind::LocallyQuadratic; }
    double eval(double x) const;

    const PiecewiseLinearActivation& as_pwl() const;
    const LocallyQuadraticActivation& as_locq() const;
};

// Parses "name" or "name(a=0.01)" / "repu(k=3)" and returns the catalog entry.
// Unknown names raise NameError, bad hyperparameters DomainError.
Activation catalog(const std::string& spec);

// All hyperparameter-free catalog spellings plus default-parameter forms,
// useful for sweeping tests over the whole catalog.
std::vector<std::string> catalog_names();

}  // namespace holonet
