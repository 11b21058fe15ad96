#include "holonet/holder.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "holonet/errors.hpp"

namespace holonet {

namespace {

constexpr double kPi = 3.14159265358979323846;

// d^k/dx^k sin(2 pi x) = (2 pi)^k sin(2 pi x + k pi/2)
double trig_deriv_sin(double x, int k) {
    return std::pow(2.0 * kPi, k) * std::sin(2.0 * kPi * x + k * kPi / 2.0);
}
double trig_deriv_cos(double x, int k) {
    return std::pow(2.0 * kPi, k) * std::cos(2.0 * kPi * x + k * kPi / 2.0);
}

struct PolyTerm {
    MultiIndex m;
    double coef;
};

double poly_eval(const std::vector<PolyTerm>& terms, const std::vector<double>& x) {
    double s = 0.0;
    for (const auto& t : terms) s += t.coef * mi_pow(x, t.m);
    return s;
}

std::vector<PolyTerm> poly_derivative(const std::vector<PolyTerm>& terms, const MultiIndex& m) {
    std::vector<PolyTerm> out;
    for (const auto& t : terms) {
        PolyTerm d = t;
        bool dead = false;
        for (std::size_t j = 0; j < m.size(); ++j) {
            for (int r = 0; r < m[j]; ++r) {
                if (d.m[j] == 0) {
                    dead = true;
                    break;
                }
                d.coef *= d.m[j];
                d.m[j] -= 1;
            }
            if (dead) break;
        }
        if (!dead && d.coef != 0.0) out.push_back(d);
    }
    return out;
}

// Safe sup bound of a polynomial on [0,1]^d: sum of |coefficients|.
double poly_sup_bound(const std::vector<PolyTerm>& terms) {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.coef);
    return s;
}

double parse_param(const std::string& spec, const std::string& base, double def) {
    auto open = spec.find('(');
    if (open == std::string::npos) return def;
    if (spec.back() != ')') throw NameError("malformed corpus spec '" + spec + "'");
    std::string arg = spec.substr(open + 1, spec.size() - open - 2);
    auto eq = arg.find('=');
    if (eq != std::string::npos) arg = arg.substr(eq + 1);
    try {
        return std::stod(arg);
    } catch (const std::exception&) {
        throw NameError("malformed parameter for corpus entry '" + base + "'");
    }
}

}  // namespace

int HolderFunction::taylor_degree() const {
    return std::max(0, static_cast<int>(std::ceil(alpha)) - 1);
}

double HolderFunction::deriv(const MultiIndex& m, const std::vector<double>& x) const {
    if (mi_order(m) == 0) return value(x);
    if (!derivative) throw CapabilityError("target '" + name + "' has no derivative oracle");
    return derivative(m, x);
}

HolderFunction make_polynomial(const std::vector<std::pair<MultiIndex, double>>& term_list, int d,
                               const std::string& name) {
    std::vector<PolyTerm> terms;
    int degree = 0;
    for (const auto& [m, c] : term_list) {
        if (static_cast<int>(m.size()) != d) throw ShapeError("polynomial term dimension mismatch");
        terms.push_back({m, c});
        degree = std::max(degree, mi_order(m));
    }
    HolderFunction f;
    f.name = name;
    f.dimension = d;
    f.alpha = degree + 1.0;  // polynomials are smooth; degree+1 keeps patches exact-capable
    f.value = [terms](const std::vector<double>& x) { return poly_eval(terms, x); };
    f.derivative = [terms](const MultiIndex& m, const std::vector<double>& x) {
        return poly_eval(poly_derivative(terms, m), x);
    };
    // R: sum over |m| <= p of sup bounds plus top-order Lipschitz bounds.
    int p = f.taylor_degree();
    double R = 0.0;
    for (const auto& m : multi_indices_up_to(d, p)) {
        auto dm = poly_derivative(terms, m);
        R += poly_sup_bound(dm);
        if (mi_order(m) == p) {
            // Lipschitz seminorm w.r.t. the 1-norm: max_j sup |d_j d^m|
            double lip = 0.0;
            for (int j = 0; j < d; ++j) {
                MultiIndex e(d, 0);
                e[j] = 1;
                lip = std::max(lip, poly_sup_bound(poly_derivative(dm, e)));
            }
            R += lip;
        }
    }
    f.radius = R * 1.05 + 1e-9;
    return f;
}

HolderFunction polynomial_from_csv(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open polynomial file '" + path + "'");
    std::vector<std::pair<MultiIndex, double>> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (static_cast<int>(vals.size()) != d + 1)
            throw ShapeError("polynomial row needs d indices + coefficient");
        MultiIndex m(d);
        for (int j = 0; j < d; ++j) m[j] = static_cast<int>(vals[j]);
        terms.emplace_back(m, vals[d]);
    }
    return make_polynomial(terms, d, "polynomial(" + path + ")");
}

HolderFunction corpus(const std::string& spec) {
    std::string base = spec.substr(0, spec.find('('));

    if (base == "const") {
        double c = parse_param(spec, base, 3.0);
        HolderFunction f;
        f.name = "const";
        f.dimension = 1;
        f.alpha = 2.0;
        f.radius = std::abs(c);
        f.value = [c](const std::vector<double>&) { return c; };
        f.derivative = [](const MultiIndex&, const std::vector<double>&) { return 0.0; };
        return f;
    }
    if (base == "linear") {
        HolderFunction f;
        f.name = "linear";
        f.dimension = 1;
        f.alpha = 1.0;
        f.radius = 2.0;  // sup |f| + Lipschitz seminorm on [0,1]
        f.value = [](const std::vector<double>& x) { return x[0]; };
        f.derivative = [](const MultiIndex& m, const std::vector<double>&) {
            return m[0] == 1 ? 1.0 : 0.0;
        };
        return f;
    }
    if (base == "sin2pi_d1") {
        HolderFunction f;
        f.name = "sin2pi_d1";
        f.dimension = 1;
        f.alpha = 2.0;
        f.radius = 1.0 + 2.0 * kPi + 4.0 * kPi * kPi + 8.0 * kPi * kPi * kPi;
        f.value = [](const std::vector<double>& x) { return std::sin(2.0 * kPi * x[0]); };
        f.derivative = [](const MultiIndex& m, const std::vector<double>& x) {
            return trig_deriv_sin(x[0], m[0]);
        };
        return f;
    }
    if (base == "sinprod_d2") {
        HolderFunction f;
        f.name = "sinprod_d2";
        f.dimension = 2;
        f.alpha = 2.0;
        f.radius = 1.0 + 4.0 * kPi + 16.0 * kPi * kPi;
        f.value = [](const std::vector<double>& x) {
            return std::sin(2.0 * kPi * x[0]) * std::cos(2.0 * kPi * x[1]);
        };
        f.derivative = [](const MultiIndex& m, const std::vector<double>& x) {
            return trig_deriv_sin(x[0], m[0]) * trig_deriv_cos(x[1], m[1]);
        };
        return f;
    }
    if (base == "gauss_bump_d2") {
        const double s = 0.2, cx = 0.5, cy = 0.5;
        HolderFunction f;
        f.name = "gauss_bump_d2";
        f.dimension = 2;
        f.alpha = 2.0;
        f.radius = 64.0;  // 1 + 2/(s sqrt(e)) + 2(1/s^2) with margin
        auto gauss = [s, cx, cy](const std::vector<double>& x) {
            double u = (x[0] - cx) / s, v = (x[1] - cy) / s;
            return std::exp(-(u * u + v * v) / 2.0);
        };
        f.value = gauss;
        f.derivative = [s, cx, cy, gauss](const MultiIndex& m, const std::vector<double>& x) {
            // Hermite-form derivatives up to total order 2
            double u = (x[0] - cx) / s, v = (x[1] - cy) / s;
            double g = gauss(x);
            int a = m[0], b = m[1];
            auto h = [](int k, double t) {
                switch (k) {  // (-1)^k He_k(t): d^k/dt^k e^{-t^2/2} = He'_k... sign folded below
                    case 0: return 1.0;
                    case 1: return -t;
                    case 2: return t * t - 1.0;
                    case 3: return -(t * t * t - 3.0 * t);
                    default: return 0.0;
                }
            };
            if (a > 3 || b > 3) throw CapabilityError("gauss_bump_d2 derivatives available to order 3");
            return h(a, u) * h(b, v) * g / std::pow(s, a + b);
        };
        return f;
    }
    if (base == "abs_kink_d1") {
        HolderFunction f;
        f.name = "abs_kink_d1";
        f.dimension = 1;
        f.alpha = 1.0;   // Lipschitz but not C^1: degree-0 patches
        f.radius = 1.5;  // sup 1/2 + Lipschitz seminorm 1
        f.value = [](const std::vector<double>& x) { return std::abs(x[0] - 0.5); };
        f.derivative = [](const MultiIndex& m, const std::vector<double>& x) -> double {
            if (m[0] == 0) return std::abs(x[0] - 0.5);
            throw CapabilityError("abs_kink_d1 has no derivative oracle (alpha = 1)");
        };
        return f;
    }
    if (base == "polynomial") {
        auto open = spec.find('(');
        if (open != std::string::npos && spec.find(".csv") != std::string::npos) {
            std::string path = spec.substr(open + 1, spec.size() - open - 2);
            return polynomial_from_csv(path, 1);
        }
        // default cubic on [0,1]
        return make_polynomial({{{3}, 1.0}, {{2}, -1.0}, {{1}, 0.25}, {{0}, 0.5}}, 1, "polynomial");
    }
    if (base == "wavy_d3") {
        HolderFunction f;
        f.name = "wavy_d3";
        f.dimension = 3;
        f.alpha = 2.0;
        f.radius = 1.0 + 6.0 * kPi + 16.0 * kPi * kPi;
        f.value = [](const std::vector<double>& x) {
            return std::sin(2.0 * kPi * x[0]) * std::sin(2.0 * kPi * x[1]) *
                   std::sin(2.0 * kPi * x[2]);
        };
        f.derivative = [](const MultiIndex& m, const std::vector<double>& x) {
            return trig_deriv_sin(x[0], m[0]) * trig_deriv_sin(x[1], m[1]) *
                   trig_deriv_sin(x[2], m[2]);
        };
        return f;
    }
    throw NameError("unknown corpus entry '" + spec + "'");
}

std::vector<std::string> corpus_names() {
    return {"const(3)",      "linear",      "sin2pi_d1", "sinprod_d2",
            "gauss_bump_d2", "abs_kink_d1", "polynomial", "wavy_d3"};
}

double empirical_holder_norm(const HolderFunction& f, double alpha, std::size_t samples,
                             std::uint64_t seed) {
    int d = f.dimension;
    int p = std::max(0, static_cast<int>(std::ceil(alpha)) - 1);
    double s_exp = alpha - p;
    auto rng = seeded_rng(seed);

    // grid maxima of |d^m f| for |m| <= p
    int per_dim = std::max(3, static_cast<int>(std::ceil(std::pow(double(samples), 1.0 / d))));
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) total *= per_dim;
    double norm = 0.0;
    auto indices = multi_indices_up_to(d, p);
    std::vector<double> x(d);
    for (const auto& m : indices) {
        double sup = 0.0;
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (int j = 0; j < d; ++j) {
                x[j] = double(rem % per_dim) / (per_dim - 1);
                rem /= per_dim;
            }
            sup = std::max(sup, std::abs(mi_order(m) == 0 ? f.eval(x) : f.deriv(m, x)));
        }
        norm += sup;
    }

    // top-order Holder quotients over sampled pairs (1-norm distances)
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    for (std::size_t i = 0; i < samples; ++i)
        pairs.emplace_back(random_point(rng, d), random_point(rng, d));
    for (double delta : {1e-2, 1e-4}) {
        for (std::size_t i = 0; i < samples / 4 + 1; ++i) {
            auto a = random_point(rng, d, delta, 1.0 - delta);
            auto b = a;
            int j = static_cast<int>(i) % d;
            b[j] += delta;
            pairs.emplace_back(a, b);
        }
    }
    // straddle common kink locations
    for (double mid : {0.25, 0.5, 0.75}) {
        for (double delta : {1e-3, 1e-5}) {
            for (int j = 0; j < d; ++j) {
                auto a = std::vector<double>(d, 0.4);
                auto b = a;
                a[j] = mid - delta;
                b[j] = mid + delta;
                pairs.emplace_back(a, b);
            }
        }
    }
    for (const auto& m : indices) {
        if (mi_order(m) != p) continue;
        double semi = 0.0;
        for (const auto& [a, b] : pairs) {
            double dist = 0.0;
            for (int j = 0; j < d; ++j) dist += std::abs(a[j] - b[j]);
            if (dist == 0.0) continue;
            double va = p == 0 ? f.eval(a) : f.deriv(m, a);
            double vb = p == 0 ? f.eval(b) : f.deriv(m, b);
            semi = std::max(semi, std::abs(va - vb) / std::pow(dist, s_exp));
        }
        norm += semi;
    }
    return norm;
}

double derivative_consistency(const HolderFunction& f, std::size_t points, std::uint64_t seed) {
    int d = f.dimension;
    int p = f.taylor_degree();
    if (p == 0 || !f.derivative) return 0.0;
    auto rng = seeded_rng(seed);
    double worst = 0.0;
    auto indices = multi_indices_up_to(d, p);
    for (std::size_t i = 0; i < points; ++i) {
        auto x = random_point(rng, d, 0.05, 0.95);
        for (const auto& m : indices) {
            int order = mi_order(m);
            if (order == 0) continue;
            // nested central differences, one coordinate at a time
            const double h = order == 1 ? 1e-5 : 1e-4;
            std::function<double(const MultiIndex&, std::vector<double>&)> fd =
                [&](const MultiIndex& mm, std::vector<double>& pt) -> double {
                int j = -1;
                for (int k = 0; k < d; ++k)
                    if (mm[k] > 0) {
                        j = k;
                        break;
                    }
                if (j < 0) return f.eval(pt);
                MultiIndex next = mm;
                next[j] -= 1;
                pt[j] += h;
                double up = fd(next, pt);
                pt[j] -= 2.0 * h;
                double dn = fd(next, pt);
                pt[j] += h;
                return (up - dn) / (2.0 * h);
            };
            std::vector<double> pt = x;
            double approx = fd(m, pt);
            double exact = f.deriv(m, x);
            double rel = std::abs(approx - exact) / std::max(std::abs(exact), 1.0);
            worst = std::max(worst, rel);
        }
    }
    return worst;
}

}  // namespace holonet
