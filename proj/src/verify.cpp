#include "holonet/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "holonet/activation.hpp"
#include "holonet/common.hpp"
#include "holonet/complexity.hpp"
#include "holonet/gadgets.hpp"
#include "holonet/holder.hpp"
#include "holonet/network.hpp"
#include "holonet/pipeline.hpp"
#include "holonet/relu_lift.hpp"

namespace holonet {

namespace {

class Reporter {
  public:
    explicit Reporter(std::ostream& out) : out_(out) {}
    void check(const std::string& section, const std::string& name, bool ok, double value) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "[%s] %s %s value=%.12e", section.c_str(),
                      ok ? "PASS" : "FAIL", name.c_str(), value);
        out_ << buf << "\n";
        if (!ok) ++failures_;
    }
    int failures() const { return failures_; }

  private:
    std::ostream& out_;
    int failures_ = 0;
};

double closed_form_pwl(const std::string& name, double a, double x) {
    if (name == "relu") return std::max(x, 0.0);
    if (name == "leaky") return std::max(x, a * x);
    return std::max(-1.0, std::min(1.0, x));  // hardtanh
}

}  // namespace

int verify_all(std::uint64_t seed, std::ostream& out) {
    Reporter rep(out);
    auto rng = seeded_rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> uwide(-8.0, 8.0);

    // ---- activations
    for (const auto& name : catalog_names()) {
        Activation act = catalog(name);
        if (act.is_pwl()) {
            double worst = 0.0;
            for (int i = 0; i < 500; ++i) {
                double x = uwide(rng);
                double want = name == "relu" ? closed_form_pwl("relu", 0, x)
                              : name == "hardtanh" ? closed_form_pwl("hardtanh", 0, x)
                                                   : closed_form_pwl("leaky", 0.01, x);
                worst = std::max(worst, std::abs(act.eval(x) - want));
            }
            rep.check("activations", name + " closed-form", worst <= 1e-12, worst);
        } else {
            const auto& q = act.as_locq();
            bool def2 = q.d1(q.expansion_point) != 0.0 && q.d2(q.expansion_point) != 0.0;
            rep.check("activations", name + " definition-2", def2,
                      q.d2(q.expansion_point));
        }
        if (act.lipschitz) {
            double worst = 0.0;
            for (int i = 0; i < 400; ++i) {
                double x = uwide(rng) * 12.0, y = uwide(rng) * 12.0;
                if (x == y) continue;
                worst = std::max(worst, std::abs(act.eval(x) - act.eval(y)) / std::abs(x - y));
            }
            rep.check("activations", name + " lipschitz", worst <= *act.lipschitz * (1.0 + 1e-9),
                      worst);
        }
    }

    // ---- network core
    {
        NetworkParameter idnet;
        idnet.activation = catalog("relu");
        idnet.layers = {Layer::identity(2)};
        auto y = forward(idnet, {0.3, 0.7});
        rep.check("network", "identity forward", y[0] == 0.3 && y[1] == 0.7, y[0]);
        NetworkMetrics m = metrics(idnet);
        rep.check("network", "identity metrics", m.depth == 0 && m.width == 0 && m.sparsity == 2,
                  double(m.sparsity));
        std::string js = to_json(idnet);
        NetworkParameter back = from_json(js);
        auto y2 = forward(back, {0.3, 0.7});
        rep.check("network", "json round-trip", y2[0] == y[0] && y2[1] == y[1], y2[0]);
    }

    // ---- partition of unity and Taylor identity
    for (int d = 1; d <= 3; ++d) {
        int M = d == 1 ? 16 : (d == 2 ? 8 : 4);
        Grid g{d, M};
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            auto x = random_point(rng, d);
            double sum = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) sum += local_basis(g.point(k), M, x);
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        rep.check("partition", "sum-to-one d=" + std::to_string(d), worst <= 1e-12, worst);
    }
    {
        HolderFunction f = corpus("sin2pi_d1");
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            std::vector<double> z = {u01(rng)};
            TaylorPatch patch = make_patch(f, z);
            auto x = random_point(rng, 1);
            double a = patch.eval_taylor(x), b = patch.eval_monomial(x);
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
        rep.check("taylor", "monomial identity", worst <= 1e-9, worst);
    }

    // ---- surrogate bound
    {
        HolderFunction f = corpus("sin2pi_d1");
        auto pm = surrogate(f, 8);
        double worst = 0.0;
        for (int i = 0; i <= 4000; ++i) {
            std::vector<double> x = {double(i) / 4000.0};
            worst = std::max(worst, std::abs(pm.eval(x) - f.eval(x)));
        }
        double bound = f.radius * std::pow(8.0, -f.alpha);
        rep.check("surrogate", "sin2pi M=8 bound", worst <= bound, worst);
    }

    // ---- gadget structure and spot errors
    {
        Activation sig = catalog("sigmoid");
        double K = 200.0;
        NetworkParameter th2 = square_gadget(sig, K);
        NetworkMetrics m2 = metrics(th2);
        rep.check("gadgets", "theta2 class", m2.depth == 1 && m2.width == 3 &&
                                                 m2.magnitude <= K * K * (1 + 1e-12),
                  m2.magnitude);
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double x = -1.0 + i / 100.0;
            worst = std::max(worst, std::abs(forward(th2, {x})[0] - x * x));
        }
        rep.check("gadgets", "theta2 error@200", worst <= 0.2, worst);

        NetworkParameter thx = product_gadget(sig, K, 1.0);
        NetworkMetrics mx = metrics(thx);
        rep.check("gadgets", "theta-times class", mx.depth == 1 && mx.width == 9, double(mx.width));

        NetworkParameter thm = monomial_gadget(sig, K, {1, 2}, 3);
        rep.check("gadgets", "theta-m depth", thm.depth() <= 2, double(thm.depth()));

        int D = gadget_depth_budget(K);
        NetworkParameter ths = sqrt_gadget(sig, K);
        NetworkParameter tha = abs_gadget(sig, K);
        NetworkParameter thr = relu_gadget(sig, K);
        rep.check("gadgets", "sqrt class",
                  ths.depth() <= std::size_t(D) && metrics(ths).width <= 15,
                  double(ths.depth()));
        rep.check("gadgets", "abs class",
                  tha.depth() <= std::size_t(D) && metrics(tha).width <= 15,
                  double(tha.depth()));
        rep.check("gadgets", "relu class",
                  thr.depth() <= std::size_t(D) && metrics(thr).width <= 21,
                  double(thr.depth()));
        double worst_abs = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double x = -1.0 + i / 100.0;
            worst_abs = std::max(worst_abs, std::abs(forward(tha, {x})[0] - std::abs(x)));
        }
        rep.check("gadgets", "abs error@200", worst_abs <= 0.35, worst_abs);
    }

    // ---- lift exactness
    {
        std::uniform_real_distribution<double> w(-1.0, 1.0);
        NetworkParameter src;
        src.activation = catalog("relu");
        Layer l1 = Layer::zeros(5, 2);
        for (auto& v : l1.w) v = w(rng);
        for (auto& v : l1.b) v = w(rng);
        Layer l2 = Layer::zeros(1, 5);
        for (auto& v : l2.w) v = w(rng);
        l2.b[0] = w(rng);
        src.layers = {l1, l2};
        Box domain = Box::unit(2);
        for (const char* tgt : {"leaky_relu(a=0.01)", "hardtanh"}) {
            Activation act = catalog(tgt);
            LiftPlan plan = plan_lift(src, act, domain);
            NetworkParameter lifted = lift(src, act, plan);
            double worst = verify_lift(src, lifted, domain, 2000, seed + 1);
            rep.check("lift", std::string("exactness ") + tgt, worst <= 1e-9, worst);
        }
    }

    // ---- covering bound and rates
    {
        NetworkClassSpec spec;
        spec.max_depth = 1;
        spec.max_width = 1;
        spec.max_sparsity = 1;
        spec.max_magnitude = 1;
        double v = covering_bound(1.0, spec, 1.0);
        rep.check("complexity", "covering hand value", std::abs(v - 4.0 * std::log(2.0)) <= 1e-12,
                  v);
        RateSpec rr = regression_sieve(1e6, 2.0, 2.0, default_kappa(2.0, 2.0));
        rep.check("complexity", "regression exponent", rr.rate_exponent == 2.0 / 3.0,
                  rr.rate_exponent);
        RateSpec rc = classification_sieve(1e6, 1.0, 1.0, 1.0, 1.0);
        rep.check("complexity", "classification nu", rc.nu == 0.25, rc.nu);
    }

    out << "verify: " << (rep.failures() == 0 ? "ALL PASS" : "FAILURES") << " failures="
        << rep.failures() << "\n";
    return rep.failures();
}

std::string verify_all_report(std::uint64_t seed, int* failures) {
    std::ostringstream os;
    int f = verify_all(seed, os);
    if (failures) *failures = f;
    return os.str();
}

}  // namespace holonet
