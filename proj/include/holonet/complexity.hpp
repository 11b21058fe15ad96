#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "holonet/network.hpp"

namespace holonet {

// ============================================================
// Covering-number bound (metric entropy of a network class)
// ============================================================

// log N(delta) <= 2 L (S+1) log( delta^{-1} C_sigma L (N+1) (B v 1) ).
// Requires delta > 0, C_sigma > 0, L >= 1.
double covering_bound(double delta, const NetworkClassSpec& spec, double c_sigma);
double covering_bound(double delta, const NetworkParameter& net);

struct LipschitzPropagationReport {
    double delta = 0.0;
    int trials = 0;
    double bound = 0.0;                 // delta * L * (C_sigma (B v 1) (N+1))^L
    double max_deviation = 0.0;         // worst forward deviation observed
    double max_ratio = 0.0;             // max_deviation / bound
    int violations = 0;
};

// Perturbs every stored entry by at most delta (uniform), `trials` times, and
// compares forwards on sampled inputs in [0,1]^d against the propagation bound.
LipschitzPropagationReport lipschitz_propagation_check(const NetworkParameter& net, double delta,
                                                       int trials, std::uint64_t seed = 11,
                                                       std::size_t sample_points = 64);

// ============================================================
// Sieve sizes and minimax rates (closed forms, constants reported as 1)
// ============================================================

struct RateSpec {
    std::string task;                   // regression | classification
    double n = 0.0;
    double alpha = 0.0;
    double d = 0.0;
    double q = 0.0;                     // noise exponent; infinity allowed
    double kappa = 0.0;

    double depth = 0.0;                 // log n
    double width = 0.0;
    double log_width_exponent = 0.0;    // classification: width = n^nu log^{-3nu} n
    double sparsity = 0.0;
    double magnitude = 0.0;             // n^kappa

    double width_exponent = 0.0;        // d/(2a+d) or nu
    double rate_exponent = 0.0;         // 2a/(2a+d) or a(q+1)/(a(q+2)+d)
    double rate = 0.0;                  // n^{-rate_exponent} * log^3 n  (resp. (log^3 n / n)^{...})
    double nu = 0.0;                    // classification only
    bool constants_not_tracked = true;  // L0 = N0 = S0 = B0 = 1
};

constexpr double kQInfinity = std::numeric_limits<double>::infinity();

// Default magnitude exponent: 4(d/alpha + 1), by analogy with the
// approximation theorem's magnitude scaling.
double default_kappa(double alpha, double d);

RateSpec regression_sieve(double n, double alpha, double d, double kappa);
RateSpec classification_sieve(double n, double alpha, double d, double q, double kappa);

}  // namespace holonet
