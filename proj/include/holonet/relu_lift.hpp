#pragma once

#include <vector>

#include "holonet/network.hpp"

namespace holonet {

// ============================================================
// Exact reconstruction of ReLU networks over piecewise-linear activations
// ============================================================

// Axis-aligned input box.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
    static Box unit(std::size_t d);
};

// Coefficients of the two-term representation
//   rho(x) = u1*sigma(a + (r0/2r) x) + u2*sigma(a - r0/2 + (r0/2r) x) + v
// valid for |x| <= r, where a is a breakpoint of sigma and r0 the distance
// to its nearest other breakpoint (capped at 1 when sigma has a single one).
struct LiftPlan {
    double breakpoint = 0.0;            // a
    double r0 = 1.0;
    double r = 1.0;                     // certified bound on hidden pre-activations
    double u1 = 0.0;
    double u2 = 0.0;
    double v = 0.0;
    double slope_left = 0.0;            // sigma'(a-)
    double slope_right = 0.0;           // sigma'(a+)
    double magnitude_factor = 0.0;      // measured C1 such that |theta*|_inf <= C1*max(B,1)
};

// Per-layer pre-activation interval bounds for a ReLU network over a box.
// bounds[l][i] is the interval of node i of hidden layer l (l = 0..L-1).
std::vector<std::vector<std::pair<double, double>>> relu_preactivation_bounds(
    const NetworkParameter& net, const Box& domain);

// Chooses the breakpoint maximizing |slope jump| * r0 and certifies r by
// interval arithmetic over the domain. Throws DomainError if `act` has no
// breakpoint and ShapeError if `src` is not a ReLU network.
LiftPlan plan_lift(const NetworkParameter& src, const Activation& act, const Box& domain);

// Builds the lifted network over `act`. The result satisfies
// depth = depth(src), width = 2*width(src), sparsity <= 4S + 2LN + 1.
NetworkParameter lift(const NetworkParameter& src, const Activation& act, const LiftPlan& plan);

// Samples `n` points of the domain and returns max |lifted - src|; throws
// LiftRangeError when the discrepancy exceeds `tol` (the plan's r was too small).
double verify_lift(const NetworkParameter& src, const NetworkParameter& lifted, const Box& domain,
                   std::size_t n, std::uint64_t seed, double tol = 1e-9);

}  // namespace holonet
