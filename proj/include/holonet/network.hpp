#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "holonet/activation.hpp"

namespace holonet {

// ============================================================
// Network parameter (layered affine maps + activation tag)
// ============================================================

// One affine map: y = W x + b with W stored row-major (rows x cols).
struct Layer {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> w;             // rows * cols
    std::vector<double> b;             // rows

    double& at(std::size_t r, std::size_t c) { return w[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return w[r * cols + c]; }
    static Layer zeros(std::size_t rows, std::size_t cols);
    static Layer identity(std::size_t n);
};

// Affine maps A_1..A_{L+1}; the activation acts elementwise after A_1..A_L.
// Immutable by convention once built: operations return new values.
struct NetworkParameter {
    Activation activation;
    std::vector<Layer> layers;         // L+1 entries, L >= 0

    std::size_t input_dim() const { return layers.front().cols; }
    std::size_t output_dim() const { return layers.back().rows; }
    std::size_t depth() const { return layers.size() - 1; }   // hidden layer count L

    void validate() const;             // dimension chaining
};

struct NetworkMetrics {
    std::size_t depth = 0;
    std::size_t width = 0;             // max hidden nodes; 0 when L = 0
    std::size_t sparsity = 0;          // nonzeros over all W_l and b_l, l = 1..L+1
    double magnitude = 0.0;            // max |entry|
};

NetworkMetrics metrics(const NetworkParameter& net);

// Membership class Theta_{d,o}(L, N, S, B).
struct NetworkClassSpec {
    double max_depth = 0;
    double max_width = 0;
    double max_sparsity = 0;
    double max_magnitude = 0;
    std::size_t input_dim = 0;
    std::size_t output_dim = 0;
};

bool in_class(const NetworkParameter& net, const NetworkClassSpec& spec);

// ============================================================
// Forward evaluation
// ============================================================

// Single-point reference evaluation. Throws ShapeError on dimension mismatch
// and NumericError (with the offending layer index) on non-finite values.
std::vector<double> forward(const NetworkParameter& net, const std::vector<double>& x);

// Batched evaluation of n points stored point-major (xs[i*d .. i*d+d)).
// Uses the SIMD kernels; agrees with forward() to ~1e-12.
std::vector<double> forward_batch(const NetworkParameter& net, const std::vector<double>& xs,
                                  std::size_t n);

// ============================================================
// Composition utilities
// ============================================================

// Block-diagonal concatenation: result(x) = concat(nets[0](x), ..., nets[k](x)).
// All nets must share input dim and depth (align first if needed).
NetworkParameter parallel_compose(const std::vector<NetworkParameter>& nets);

// Functional composition: result(x) = outer(inner(x)). Adjacent affine maps
// merge, so depth(result) = depth(outer) + depth(inner).
NetworkParameter stack_compose(const NetworkParameter& outer, const NetworkParameter& inner);

// result(x) = net(A x + c) with A row-major (net_input_dim x new_input_dim).
NetworkParameter affine_pre(const NetworkParameter& net, const std::vector<double>& A,
                            std::size_t new_input_dim, const std::vector<double>& c);

// result(x) = A net(x) + c with A row-major (new_output_dim x net_output_dim).
NetworkParameter affine_post(const NetworkParameter& net, const std::vector<double>& A,
                             std::size_t new_output_dim, const std::vector<double>& c);

// Appends hidden layers that pass the current output through unchanged
// (exact for ReLU-representable activations). Only valid for piecewise-linear
// activations; locally-quadratic alignment goes through the identity gadget
// in gadgets.hpp so the incurred error can be tracked.
NetworkParameter extend_depth_exact_pwl(const NetworkParameter& net, std::size_t extra_layers);

// ============================================================
// Serialization (versioned JSON document)
// ============================================================

std::string to_json(const NetworkParameter& net);
NetworkParameter from_json(const std::string& text);
void save_network(const NetworkParameter& net, const std::string& path);
NetworkParameter load_network(const std::string& path);

}  // namespace holonet
