#include "holonet/complexity.hpp"

#include <cmath>

#include "holonet/common.hpp"

namespace holonet {

double covering_bound(double delta, const NetworkClassSpec& spec, double c_sigma) {
    if (!(delta > 0.0)) throw DomainError("covering bound needs delta > 0");
    if (!(c_sigma > 0.0)) throw DomainError("covering bound needs a positive Lipschitz constant");
    if (!(spec.max_depth >= 1.0)) throw DomainError("covering bound needs L >= 1");
    double L = spec.max_depth, N = spec.max_width, S = spec.max_sparsity, B = spec.max_magnitude;
    double b1 = std::max(B, 1.0);
    // operand order follows the printed formula so independent re-evaluations
    // of the same expression agree bit for bit
    return 2.0 * L * (S + 1.0) * std::log((1.0 / delta) * c_sigma * L * (N + 1.0) * b1);
}

double covering_bound(double delta, const NetworkParameter& net) {
    if (!net.activation.lipschitz)
        throw CapabilityError("covering bound needs a Lipschitz activation (none for " +
                              net.activation.name + ")");
    NetworkMetrics m = metrics(net);
    NetworkClassSpec spec;
    spec.max_depth = static_cast<double>(std::max<std::size_t>(m.depth, 1));
    spec.max_width = static_cast<double>(m.width);
    spec.max_sparsity = static_cast<double>(m.sparsity);
    spec.max_magnitude = m.magnitude;
    spec.input_dim = net.input_dim();
    spec.output_dim = net.output_dim();
    return covering_bound(delta, spec, *net.activation.lipschitz);
}

LipschitzPropagationReport lipschitz_propagation_check(const NetworkParameter& net, double delta,
                                                       int trials, std::uint64_t seed,
                                                       std::size_t sample_points) {
    if (!net.activation.lipschitz)
        throw CapabilityError("propagation check needs a Lipschitz activation");
    double c_sigma = *net.activation.lipschitz;
    NetworkMetrics m = metrics(net);
    double L = static_cast<double>(std::max<std::size_t>(m.depth, 1));
    double N = static_cast<double>(m.width);

    auto rng = seeded_rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> pert(-delta, delta);

    std::size_t d = net.input_dim();
    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < sample_points; ++i) points.push_back(random_point(rng, d));

    LipschitzPropagationReport rep;
    rep.delta = delta;
    rep.trials = trials;

    std::vector<std::vector<double>> base;
    for (const auto& x : points) base.push_back(forward(net, x));

    for (int t = 0; t < trials; ++t) {
        NetworkParameter mod = net;
        double mag = m.magnitude;
        for (Layer& Lr : mod.layers) {
            for (double& w : Lr.w) {
                w += pert(rng);
                mag = std::max(mag, std::abs(w));
            }
            for (double& b : Lr.b) {
                b += pert(rng);
                mag = std::max(mag, std::abs(b));
            }
        }
        double bound = delta * L * std::pow(c_sigma * std::max(mag, 1.0) * (N + 1.0), L);
        rep.bound = std::max(rep.bound, bound);
        for (std::size_t i = 0; i < points.size(); ++i) {
            auto y = forward(mod, points[i]);
            for (std::size_t k = 0; k < y.size(); ++k) {
                double dev = std::abs(y[k] - base[i][k]);
                rep.max_deviation = std::max(rep.max_deviation, dev);
                if (dev > bound) ++rep.violations;
            }
        }
    }
    rep.max_ratio = rep.bound > 0.0 ? rep.max_deviation / rep.bound : 0.0;
    return rep;
}

double default_kappa(double alpha, double d) { return 4.0 * (d / alpha + 1.0); }

namespace {

void check_rate_inputs(double n, double alpha, double d) {
    if (!(n >= 2.0)) throw DomainError("rate calculators need n >= 2");
    if (!(alpha > 0.0) || !(d > 0.0)) throw DomainError("rate calculators need alpha, d > 0");
}

}  // namespace

RateSpec regression_sieve(double n, double alpha, double d, double kappa) {
    check_rate_inputs(n, alpha, d);
    if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
    RateSpec r;
    r.task = "regression";
    r.n = n;
    r.alpha = alpha;
    r.d = d;
    r.kappa = kappa;
    double ln = std::log(n);
    r.width_exponent = d / (2.0 * alpha + d);
    r.rate_exponent = 2.0 * alpha / (2.0 * alpha + d);
    r.depth = ln;
    r.width = std::pow(n, r.width_exponent);
    r.sparsity = r.width * ln;
    r.magnitude = std::pow(n, kappa);
    r.rate = std::pow(n, -r.rate_exponent) * ln * ln * ln;
    return r;
}

RateSpec classification_sieve(double n, double alpha, double d, double q, double kappa) {
    check_rate_inputs(n, alpha, d);
    if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
    if (!(q >= 0.0)) throw DomainError("noise exponent q must be >= 0 (or infinity)");
    RateSpec r;
    r.task = "classification";
    r.n = n;
    r.alpha = alpha;
    r.d = d;
    r.q = q;
    r.kappa = kappa;
    double ln = std::log(n);
    if (std::isinf(q)) {
        // limits: nu -> 0, rate exponent -> 1
        r.nu = 0.0;
        r.rate_exponent = 1.0;
    } else {
        r.nu = d / (alpha * (q + 2.0) + d);
        r.rate_exponent = alpha * (q + 1.0) / (alpha * (q + 2.0) + d);
    }
    r.width_exponent = r.nu;
    r.depth = ln;
    r.width = std::pow(n, r.nu) * std::pow(ln, -3.0 * r.nu);
    r.log_width_exponent = -3.0 * r.nu;
    r.sparsity = std::pow(n, r.nu) * std::pow(ln, -3.0 * r.nu + 1.0);
    r.magnitude = std::pow(n, kappa);
    r.rate = std::pow(ln * ln * ln / n, r.rate_exponent);
    return r;
}

}  // namespace holonet
