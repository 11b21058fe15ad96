#include "holonet/activation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace holonet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double stable_sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

// sigmoid derivative chain: s' = s(1-s), s'' = s'(1-2s), s''' = s''(1-2s) - 2 s'^2
double sig_d1(double x) {
    double s = stable_sigmoid(x);
    return s * (1.0 - s);
}
double sig_d2(double x) {
    double s = stable_sigmoid(x);
    return s * (1.0 - s) * (1.0 - 2.0 * s);
}
double sig_d3(double x) {
    double s = stable_sigmoid(x);
    double s1 = s * (1.0 - s);
    double s2 = s1 * (1.0 - 2.0 * s);
    return s2 * (1.0 - 2.0 * s) - 2.0 * s1 * s1;
}

}  // namespace

// ============================================================
// PiecewiseLinearActivation
// ============================================================

void PiecewiseLinearActivation::finalize() {
    if (breakpoints.empty()) throw DomainError("piecewise-linear activation needs K >= 1 breakpoints");
    if (slopes.size() != breakpoints.size() + 1)
        throw DomainError("piecewise-linear activation needs K+1 slopes");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (breakpoints[i] < breakpoints[i - 1])
            throw DomainError("breakpoints must be nondecreasing");
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i)
        if (slopes[i] == slopes[i + 1])
            throw DomainError("adjacent slopes must differ at every breakpoint");
    knot_values.assign(breakpoints.size(), 0.0);
    knot_values[0] = value_at_first_breakpoint;
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        knot_values[i] = knot_values[i - 1] + slopes[i] * (breakpoints[i] - breakpoints[i - 1]);
}

double PiecewiseLinearActivation::eval(double x) const {
    // piece index = number of breakpoints strictly left of x
    std::size_t k = std::upper_bound(breakpoints.begin(), breakpoints.end(), x) - breakpoints.begin();
    if (k == 0) return knot_values[0] + slopes[0] * (x - breakpoints[0]);
    return knot_values[k - 1] + slopes[k] * (x - breakpoints[k - 1]);
}

// ============================================================
// LocallyQuadraticActivation
// ============================================================

double LocallyQuadraticActivation::smooth_radius() const {
    double left = std::isinf(smooth_a) ? kInf : expansion_point - smooth_a;
    double right = std::isinf(smooth_b) ? kInf : smooth_b - expansion_point;
    return std::min(left, right);
}

void LocallyQuadraticActivation::validate() const {
    double t = expansion_point;
    if (!(smooth_a < t && t < smooth_b))
        throw DomainError("expansion point must lie inside the smooth interval");
    if (d1(t) == 0.0) throw DomainError("sigma'(t) must be nonzero");
    if (d2(t) == 0.0) throw DomainError("sigma''(t) must be nonzero");

    // Derivative oracles vs central finite differences at 10 points around t.
    double w = std::min(0.5, smooth_radius() / 4.0);
    for (int i = 0; i < 10; ++i) {
        double x = t + w * (2.0 * (i + 0.5) / 10.0 - 1.0);
        const double h1 = 1e-5, h2 = 1e-4, h3 = 1e-3;
        double fd1 = (value(x + h1) - value(x - h1)) / (2.0 * h1);
        double fd2 = (value(x + h2) - 2.0 * value(x) + value(x - h2)) / (h2 * h2);
        double fd3 =
            (value(x + 2 * h3) - 2.0 * value(x + h3) + 2.0 * value(x - h3) - value(x - 2 * h3)) /
            (2.0 * h3 * h3 * h3);
        auto rel = [](double got, double want) {
            return std::abs(got - want) / std::max(std::abs(want), 5e-2);
        };
        if (rel(fd1, d1(x)) > 1e-5 || rel(fd2, d2(x)) > 1e-5 || rel(fd3, d3(x)) > 2e-4)
            throw DomainError("derivative oracle disagrees with finite differences");
    }
}

// ============================================================
// Activation
// ============================================================

double Activation::eval(double x) const {
    return is_pwl() ? pwl->eval(x) : locq->value(x);
}

const PiecewiseLinearActivation& Activation::as_pwl() const {
    if (!is_pwl() || !pwl) throw CapabilityError("activation '" + name + "' is not piecewise linear");
    return *pwl;
}

const LocallyQuadraticActivation& Activation::as_locq() const {
    if (!is_locq() || !locq)
        throw CapabilityError("activation '" + name + "' is not locally quadratic");
    return *locq;
}

// ============================================================
// Catalog
// ============================================================

namespace {

struct ParsedName {
    std::string base;
    bool has_param = false;
    std::string key;
    double value = 0.0;
};

ParsedName parse_spec(const std::string& spec) {
    ParsedName p;
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto open = s.find('(');
    if (open == std::string::npos) {
        p.base = s;
        return p;
    }
    if (s.back() != ')') throw NameError("malformed activation spec '" + spec + "'");
    p.base = s.substr(0, open);
    std::string arg = s.substr(open + 1, s.size() - open - 2);
    auto eq = arg.find('=');
    if (eq != std::string::npos) {
        p.key = arg.substr(0, eq);
        arg = arg.substr(eq + 1);
    }
    try {
        std::size_t pos = 0;
        p.value = std::stod(arg, &pos);
        if (pos != arg.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw NameError("malformed activation parameter in '" + spec + "'");
    }
    p.has_param = true;
    return p;
}

std::string canonical(const std::string& base, const std::string& key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s(%s=%.17g)", base.c_str(), key.c_str(), v);
    return buf;
}

Activation make_pwl(const std::string& name, std::vector<double> bps, std::vector<double> slopes,
                    double v0, double lipschitz) {
    Activation act;
    act.name = name;
    act.kind = ActivationKind::PiecewiseLinear;
    PiecewiseLinearActivation p;
    p.breakpoints = std::move(bps);
    p.slopes = std::move(slopes);
    p.value_at_first_breakpoint = v0;
    p.finalize();
    act.pwl = std::move(p);
    act.lipschitz = lipschitz;
    act.gadget_k0 = 4.0;  // unused for piecewise-linear entries
    return act;
}

Activation make_locq(const std::string& name, LocallyQuadraticActivation q,
                     std::optional<double> lipschitz) {
    q.validate();
    Activation act;
    act.name = name;
    act.kind = ActivationKind::LocallyQuadratic;
    act.lipschitz = lipschitz;
    double s2 = std::abs(q.d2(q.expansion_point));
    double r = q.smooth_radius();
    double k0 = 4.0;
    if (std::isfinite(r)) k0 = std::max(k0, 2.0 * std::sqrt(2.0 / s2) / r * (1.0 + 1e-9));
    act.locq = std::move(q);
    act.gadget_k0 = k0;
    return act;
}

}  // namespace

Activation catalog(const std::string& spec) {
    ParsedName p = parse_spec(spec);
    const std::string& n = p.base;

    if (n == "relu") {
        return make_pwl("relu", {0.0}, {0.0, 1.0}, 0.0, 1.0);
    }
    if (n == "leaky_relu") {
        double a = p.has_param ? p.value : 0.01;
        if (!(a > 0.0 && a < 1.0)) throw DomainError("leaky_relu slope must lie in (0,1)");
        return make_pwl(canonical("leaky_relu", "a", a), {0.0}, {a, 1.0}, 0.0, 1.0);
    }
    if (n == "hardtanh") {
        return make_pwl("hardtanh", {-1.0, 1.0}, {0.0, 1.0, 0.0}, -1.0, 1.0);
    }
    if (n == "sigmoid") {
        LocallyQuadraticActivation q;
        q.value = stable_sigmoid;
        q.d1 = sig_d1;
        q.d2 = sig_d2;
        q.d3 = sig_d3;
        q.smooth_a = -kInf;
        q.smooth_b = kInf;
        q.expansion_point = 1.0;
        q.derivative_bound = 0.1;
        return make_locq("sigmoid", std::move(q), 0.25);
    }
    if (n == "tanh") {
        LocallyQuadraticActivation q;
        q.value = [](double x) { return std::tanh(x); };
        q.d1 = [](double x) {
            double t = std::tanh(x);
            return 1.0 - t * t;
        };
        q.d2 = [](double x) {
            double t = std::tanh(x);
            return -2.0 * t * (1.0 - t * t);
        };
        q.d3 = [](double x) {
            double t = std::tanh(x);
            double d1 = 1.0 - t * t;
            return -2.0 * d1 * d1 - 2.0 * t * (-2.0 * t * d1);
        };
        q.smooth_a = -kInf;
        q.smooth_b = kInf;
        q.expansion_point = 0.5;
        q.derivative_bound = 2.0;
        return make_locq("tanh", std::move(q), 1.0);
    }
    if (n == "isru" || n == "isrlu") {
        double a = p.has_param ? p.value : 1.0;
        if (!(a > 0.0)) throw DomainError(n + " parameter must be positive");
        bool linear_pos = (n == "isrlu");
        LocallyQuadraticActivation q;
        auto core = [a](double x) { return x / std::sqrt(1.0 + a * x * x); };
        auto core1 = [a](double x) { return std::pow(1.0 + a * x * x, -1.5); };
        auto core2 = [a](double x) { return -3.0 * a * x * std::pow(1.0 + a * x * x, -2.5); };
        auto core3 = [a](double x) {
            double u = 1.0 + a * x * x;
            return -3.0 * a * std::pow(u, -2.5) + 15.0 * a * a * x * x * std::pow(u, -3.5);
        };
        if (linear_pos) {
            q.value = [core](double x) { return x > 0.0 ? x : core(x); };
            q.d1 = [core1](double x) { return x > 0.0 ? 1.0 : core1(x); };
            q.d2 = [core2](double x) { return x > 0.0 ? 0.0 : core2(x); };
            q.d3 = [core3](double x) { return x > 0.0 ? 0.0 : core3(x); };
            q.smooth_a = -kInf;
            q.smooth_b = 0.0;
        } else {
            q.value = core;
            q.d1 = core1;
            q.d2 = core2;
            q.d3 = core3;
            q.smooth_a = -kInf;
            q.smooth_b = kInf;
        }
        q.expansion_point = -1.0;
        q.derivative_bound = 5.0 * a;
        return make_locq(canonical(n, "a", a), std::move(q), 1.0);
    }
    if (n == "soft_clipping") {
        double a = p.has_param ? p.value : 2.0;
        if (!(a > 0.0)) throw DomainError("soft_clipping parameter must be positive");
        LocallyQuadraticActivation q;
        q.value = [a](double x) {
            // (1/a) log((1+e^{ax}) / (1+e^{a(x-1)})) via softplus for stability
            auto softplus = [](double u) { return u > 30.0 ? u : std::log1p(std::exp(u)); };
            return (softplus(a * x) - softplus(a * (x - 1.0))) / a;
        };
        q.d1 = [a](double x) { return stable_sigmoid(a * x) - stable_sigmoid(a * (x - 1.0)); };
        q.d2 = [a](double x) { return a * (sig_d1(a * x) - sig_d1(a * (x - 1.0))); };
        q.d3 = [a](double x) { return a * a * (sig_d2(a * x) - sig_d2(a * (x - 1.0))); };
        q.smooth_a = -kInf;
        q.smooth_b = kInf;
        q.expansion_point = 0.0;
        q.derivative_bound = 0.2 * a * a;
        return make_locq(canonical("soft_clipping", "a", a), std::move(q), std::tanh(a / 4.0));
    }
    if (n == "softplus") {
        LocallyQuadraticActivation q;
        q.value = [](double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); };
        q.d1 = stable_sigmoid;
        q.d2 = sig_d1;
        q.d3 = sig_d2;
        q.smooth_a = -kInf;
        q.smooth_b = kInf;
        q.expansion_point = 0.0;
        q.derivative_bound = 0.1;
        return make_locq("softplus", std::move(q), 1.0);
    }
    if (n == "swish") {
        LocallyQuadraticActivation q;
        q.value = [](double x) { return x * stable_sigmoid(x); };
        q.d1 = [](double x) { return stable_sigmoid(x) + x * sig_d1(x); };
        q.d2 = [](double x) { return 2.0 * sig_d1(x) + x * sig_d2(x); };
        q.d3 = [](double x) { return 3.0 * sig_d2(x) + x * sig_d3(x); };
        q.smooth_a = -kInf;
        q.smooth_b = kInf;
        q.expansion_point = 1.0;
        q.derivative_bound = 0.35;
        return make_locq("swish", std::move(q), 1.1);
    }
    if (n == "repu") {
        if (p.has_param && (p.value != std::floor(p.value) || p.value < 2.0))
            throw DomainError("repu exponent must be an integer >= 2");
        int k = p.has_param ? static_cast<int>(p.value) : 2;
        LocallyQuadraticActivation q;
        q.value = [k](double x) { return x > 0.0 ? std::pow(x, k) : 0.0; };
        q.d1 = [k](double x) { return x > 0.0 ? k * std::pow(x, k - 1) : 0.0; };
        q.d2 = [k](double x) { return x > 0.0 ? k * (k - 1.0) * std::pow(x, k - 2) : 0.0; };
        q.d3 = [k](double x) {
            if (x <= 0.0) return 0.0;
            if (k == 2) return 0.0;
            return k * (k - 1.0) * (k - 2.0) * std::pow(x, k - 3);
        };
        q.smooth_a = 0.0;
        q.smooth_b = 2.0;
        q.expansion_point = 1.0;
        q.derivative_bound = k * (k - 1.0) * std::max(1.0, k - 2.0) * std::pow(2.0, std::max(0, k - 3));
        return make_locq(canonical("repu", "k", k), std::move(q), std::nullopt);  // not Lipschitz
    }
    if (n == "elu") {
        double a = p.has_param ? p.value : 1.0;
        if (!(a > 0.0)) throw DomainError("elu parameter must be positive");
        LocallyQuadraticActivation q;
        q.value = [a](double x) { return x > 0.0 ? x : a * std::expm1(x); };
        q.d1 = [a](double x) { return x > 0.0 ? 1.0 : a * std::exp(x); };
        q.d2 = [a](double x) { return x > 0.0 ? 0.0 : a * std::exp(x); };
        q.d3 = [a](double x) { return x > 0.0 ? 0.0 : a * std::exp(x); };
        q.smooth_a = -kInf;
        q.smooth_b = 0.0;
        q.expansion_point = -1.0;
        q.derivative_bound = a;
        return make_locq(canonical("elu", "a", a), std::move(q), std::max(1.0, a));
    }
    if (n == "softsign") {
        LocallyQuadraticActivation q;
        q.value = [](double x) { return x / (1.0 + std::abs(x)); };
        q.d1 = [](double x) {
            double u = 1.0 + std::abs(x);
            return 1.0 / (u * u);
        };
        q.d2 = [](double x) {
            double u = 1.0 + std::abs(x);
            return (x < 0.0 ? 2.0 : -2.0) / (u * u * u);
        };
        q.d3 = [](double x) {
            double u = 1.0 + std::abs(x);
            return 6.0 / (u * u * u * u);
        };
        q.smooth_a = -kInf;
        q.smooth_b = 0.0;
        q.expansion_point = -1.0;
        q.derivative_bound = 6.0;
        return make_locq("softsign", std::move(q), 1.0);
    }
    if (n == "sqnl") {
        LocallyQuadraticActivation q;
        q.value = [](double x) {
            if (x > 2.0) return 1.0;
            if (x < -2.0) return -1.0;
            return x >= 0.0 ? x - x * x / 4.0 : x + x * x / 4.0;
        };
        q.d1 = [](double x) {
            if (x > 2.0 || x < -2.0) return 0.0;
            return x >= 0.0 ? 1.0 - x / 2.0 : 1.0 + x / 2.0;
        };
        q.d2 = [](double x) {
            if (x > 2.0 || x < -2.0) return 0.0;
            return x >= 0.0 ? -0.5 : 0.5;
        };
        q.d3 = [](double) { return 0.0; };
        q.smooth_a = 0.0;
        q.smooth_b = 2.0;
        q.expansion_point = 1.0;
        q.derivative_bound = 0.0;
        return make_locq("sqnl", std::move(q), 1.0);
    }
    throw NameError("unknown activation '" + spec + "'");
}

std::vector<std::string> catalog_names() {
    return {"relu",     "leaky_relu(a=0.01)", "hardtanh",           "sigmoid",
            "tanh",     "isru(a=1)",          "soft_clipping(a=2)", "softplus",
            "swish",    "repu(k=2)",          "elu(a=1)",           "isrlu(a=1)",
            "softsign", "sqnl"};
}

}  // namespace holonet
