#pragma once

#include <string>
#include <vector>

#include "holonet/common.hpp"
#include "holonet/network.hpp"

namespace holonet {

// ============================================================
// Gadget networks for locally-quadratic activations
// ============================================================

struct GadgetBudget {
    double K = 0.0;                    // accuracy knob, must exceed the activation's K0
    double A = 1.0;                    // input range for products
    int alpha = 1;                     // monomial cap
    MultiIndex m;                      // monomial multi-index, |m| <= alpha
};

// theta_2: one hidden layer, width 3, |theta|_inf <= K^2 (up to rounding);
// sup_{[-1,1]} |N(x) - x^2| = O(1/K).
NetworkParameter square_gadget(const Activation& act, double K);

// theta_{x,A}: width 9, depth 1; sup_{[-A,A]^2} |N(x) - x1 x2| <= 6 A^2 C/K.
// Output-layer entries scale like 2 A^2 K^2.
NetworkParameter product_gadget(const Activation& act, double K, double A);

// theta_m: binary product tree over z = (x_1 x m_1, ..., x_d x m_d, 1, ...);
// depth <= ceil(log2 |m|), width <= 9*alpha; sup_{[0,1]^d} |N - x^m| = O(1/K).
NetworkParameter monomial_gadget(const Activation& act, double K, const MultiIndex& m, int alpha);

// theta_1: two-node symmetric-difference identity, |N(x) - x| = O(1/K) on
// [-range, range]. Used for depth alignment and value carries.
NetworkParameter identity_gadget(const Activation& act, double K, double range = 1.0);

// theta_{1/2}: depth <= ceil(log2 K), width <= 15; approximates sqrt on [0,2]
// by a warm-started inverse-square-root iteration (see gadgets.cpp).
NetworkParameter sqrt_gadget(const Activation& act, double K);

// theta_abs: sqrt(x^2 + 1/K) pipeline fused into depth <= ceil(log2 K), width <= 15.
NetworkParameter abs_gadget(const Activation& act, double K);

// theta_relu: (x + theta_abs(x))/2, same depth, width <= 21.
NetworkParameter relu_gadget(const Activation& act, double K);

// ReLU-activation product gadget: sup_{[-A,A]^2} |N - x1 x2| <= 2 A^2 2^{-m_layers},
// depth O(m_layers), width O(1).
NetworkParameter relu_product_gadget(int m_layers, double A);
// Square helper on [0,1] with error 4^{-stages-1} (sawtooth refinement).
NetworkParameter relu_square_gadget(int stages);

// Depth budget in layers for the sqrt/abs/relu gadgets: ceil(log2 K).
int gadget_depth_budget(double K);

// Measured sup error of the ideal square gadget at this K, used by the
// monomial tree to track per-level range constants numerically.
double square_gadget_error_estimate(const Activation& act, double K);

// ============================================================
// Error-model fitting for K sweeps
// ============================================================

struct GadgetErrorModel {
    std::string kind;                  // square | times | mono | sqrt | abs | relu
    std::string rate_tag;              // 1/K | A^2/K | logK/K | 1/sqrtK
    double theoretical_exponent = 0.0; // slope of the tag in log-log K
    std::vector<double> Ks;
    std::vector<double> sup_errors;
    SlopeFit fit;                      // computed above the floating-point floor
    double fitted_constant = 0.0;      // max err / tag over the sweep
};

// Cancellation floor of the second-difference construction: eps_mach * K^2.
double gadget_fp_floor(double K);

// Sweeps K over the given values, measuring sup error on a dense grid
// (grid_n points per dim; domain depends on kind), and fits the slope.
GadgetErrorModel sweep_gadget(const std::string& kind, const Activation& act,
                              const std::vector<double>& Ks, double A = 1.0,
                              const MultiIndex& m = {}, int alpha = 1,
                              std::size_t grid_n = 100000);

}  // namespace holonet
