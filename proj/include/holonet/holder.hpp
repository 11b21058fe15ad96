#pragma once

#include <functional>
#include <string>
#include <vector>

#include "holonet/common.hpp"

namespace holonet {

// ============================================================
// Holder-smooth target functions with derivative oracles
// ============================================================

struct HolderFunction {
    std::string name;
    int dimension = 1;
    double alpha = 1.0;                // declared smoothness order
    double radius = 1.0;               // declared Holder-norm bound R
    std::function<double(const std::vector<double>&)> value;
    // Partial derivative oracle for |m| <= taylor_degree(); optional beyond.
    std::function<double(const MultiIndex&, const std::vector<double>&)> derivative;
    bool derivatives_verified = true;  // false for finite-difference fallbacks

    // Taylor degree used by the local patches: ceil(alpha) - 1. This keeps the
    // top-order seminorm exponent alpha - degree inside (0, 1] for every alpha,
    // integer or not, and never asks for more derivatives than the order buys.
    int taylor_degree() const;
    double eval(const std::vector<double>& x) const { return value(x); }
    double deriv(const MultiIndex& m, const std::vector<double>& x) const;
};

// Built-in corpus: const(c), linear, sin2pi_d1, sinprod_d2, gauss_bump_d2,
// abs_kink_d1, polynomial(<file.csv>) or polynomial(default), wavy_d3.
HolderFunction corpus(const std::string& spec);
std::vector<std::string> corpus_names();

// Polynomial target from explicit terms (multi-index -> coefficient).
HolderFunction make_polynomial(const std::vector<std::pair<MultiIndex, double>>& terms,
                               int d, const std::string& name = "polynomial");
// CSV rows: m_1,...,m_d,coefficient
HolderFunction polynomial_from_csv(const std::string& path, int d);

// Sampled lower bound on the Holder norm: grid maxima of |d^m f| for
// |m| <= taylor_degree plus sampled top-order Holder quotients with exponent
// alpha - taylor_degree. Must come out <= the declared radius.
double empirical_holder_norm(const HolderFunction& f, double alpha, std::size_t samples,
                             std::uint64_t seed = 17);

// Relative-error check of the derivative oracle against central finite
// differences at `points` random interior points, per order up to the Taylor
// degree. Returns the worst relative error observed.
double derivative_consistency(const HolderFunction& f, std::size_t points, std::uint64_t seed = 23);

}  // namespace holonet
