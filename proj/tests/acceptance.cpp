// Acceptance suite: one case per exit criterion, each printing a single
// CRITERION line with the measured quantities it gates on.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "helpers.hpp"
#include "holonet/common.hpp"
#include "holonet/complexity.hpp"
#include "holonet/gadgets.hpp"
#include "holonet/holder.hpp"
#include "holonet/pipeline.hpp"
#include "holonet/relu_lift.hpp"
#include "holonet/verify.hpp"

using namespace holonet;
using holonet::testing::random_relu_net;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("CRITERION %d %-24s %s  %s\n", idx, name, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

TEST_CASE("criterion 1: lift exactness") {
    Stopwatch sw;
    auto rng = seeded_rng(1001);
    const char* targets[3] = {"leaky_relu(a=0.01)", "leaky_relu(a=0.3)", "hardtanh"};
    double worst_dev = 0.0;
    bool structural = true;
    int nets_checked = 0;
    for (const char* tname : targets) {
        Activation act = catalog(tname);
        for (int trial = 0; trial < 20; ++trial) {
            int d = 1 + trial % 3;
            int L = 1 + trial % 3;
            NetworkParameter src = random_relu_net(rng, d, L, 8, 1.0);
            Box domain = Box::unit(d);
            LiftPlan plan = plan_lift(src, act, domain);
            NetworkParameter lifted = lift(src, act, plan);
            double dev = verify_lift(src, lifted, domain, 10000, 5000 + trial, 1e-9);
            worst_dev = std::max(worst_dev, dev);
            NetworkMetrics ms = metrics(src), ml = metrics(lifted);
            structural = structural && (ml.width == 2 * ms.width) &&
                         (ml.sparsity <= 4 * ms.sparsity + 2 * ms.depth * ms.width + 1);
            ++nets_checked;
        }
    }
    bool pass = worst_dev <= 1e-9 && structural && sw.seconds() < 60.0;
    report(1, "lift-exactness", pass,
           "max|dev|=" + fmt(worst_dev) + " nets=" + std::to_string(nets_checked) +
               " structural=" + (structural ? "ok" : "violated") + " t=" + fmt(sw.seconds()) + "s");
    CHECK(worst_dev <= 1e-9);
    CHECK(structural);
    CHECK(sw.seconds() < 60.0);
}

TEST_CASE("criterion 2: gadget rates and structure") {
    Stopwatch sw;
    std::vector<double> Ks = {100.0, 316.22776601683796, 1000.0, 3162.2776601683795, 10000.0};
    bool structure_ok = true;
    std::string detail;
    bool square_ok = true, times_ok = true, sqrt_ok = true, abs_ok = true, relu_ok = true;
    for (const char* name : {"sigmoid", "tanh"}) {
        Activation act = catalog(name);
        GadgetErrorModel sq = sweep_gadget("square", act, Ks, 1.0, {}, 1, 100000);
        GadgetErrorModel tm = sweep_gadget("times", act, Ks, 1.0, {}, 1, 262144);
        GadgetErrorModel sr = sweep_gadget("sqrt", act, Ks, 1.0, {}, 1, 100000);
        GadgetErrorModel ab = sweep_gadget("abs", act, Ks, 1.0, {}, 1, 100000);
        GadgetErrorModel re = sweep_gadget("relu", act, Ks, 1.0, {}, 1, 100000);
        square_ok = square_ok && std::abs(sq.fit.slope + 1.0) <= 0.25;
        times_ok = times_ok && std::abs(tm.fit.slope + 1.0) <= 0.25;
        sqrt_ok = sqrt_ok && sr.fit.slope <= -0.75;
        abs_ok = abs_ok && std::abs(ab.fit.slope + 0.5) <= 0.25;
        relu_ok = relu_ok && std::abs(re.fit.slope + 0.5) <= 0.25;
        detail += std::string(name) + "(sq=" + fmt(sq.fit.slope) + ",x=" + fmt(tm.fit.slope) +
                  ",sqrt=" + fmt(sr.fit.slope) + ",abs=" + fmt(ab.fit.slope) +
                  ",relu=" + fmt(re.fit.slope) + ") ";

        for (double K : Ks) {
            int D = gadget_depth_budget(K);
            NetworkParameter g2 = square_gadget(act, K);
            NetworkParameter gx = product_gadget(act, K, 1.0);
            NetworkParameter gm = monomial_gadget(act, K, {1, 2}, 3);
            NetworkParameter gs = sqrt_gadget(act, K);
            NetworkParameter ga = abs_gadget(act, K);
            structure_ok = structure_ok && g2.depth() == 1 && metrics(g2).width == 3;
            structure_ok = structure_ok && gx.depth() == 1 && metrics(gx).width == 9;
            structure_ok = structure_ok && gm.depth() <= 2;  // ceil(log2 3)
            structure_ok =
                structure_ok && gs.depth() <= std::size_t(D) && metrics(gs).width <= 15;
            structure_ok =
                structure_ok && ga.depth() <= std::size_t(D) && metrics(ga).width <= 15;
        }
    }
    bool runtime_ok = sw.seconds() < 300.0;
    bool pass = square_ok && times_ok && sqrt_ok && abs_ok && relu_ok && structure_ok && runtime_ok;
    report(2, "gadget-rates", pass,
           detail + "structure=" + (structure_ok ? "ok" : "violated") + " t=" + fmt(sw.seconds()) +
               "s");
    CHECK(square_ok);
    CHECK(times_ok);
    // Measured sqrt slope sits near -0.44: within the depth budget ceil(log2 K)
    // and width 15, a realized polynomial of degree 2^depth cannot beat the
    // 0.28/(2 deg) best-approximation floor for sqrt on [0,2], and the
    // iteration schedule used here is resolution-limited at ~K^-0.45. The
    // -0.75 gate is kept as stated and recorded as failing.
    CHECK(sqrt_ok);
    CHECK(abs_ok);
    CHECK(relu_ok);
    CHECK(structure_ok);
    CHECK(runtime_ok);
}

TEST_CASE("criterion 3: surrogate bound over the corpus") {
    Stopwatch sw;
    bool bound_ok = true, slope_ok = true;
    std::string detail;
    for (const auto& name : corpus_names()) {
        HolderFunction f = corpus(name);
        if (f.dimension > 2) continue;  // d = 1, 2 per the criterion
        std::vector<double> Ms = {2, 4, 8, 16}, errs;
        for (double M : Ms) {
            auto pm = surrogate(f, static_cast<int>(M));
            auto pm_fn = [&pm](const std::vector<double>& x) { return pm.eval(x); };
            auto f_fn = [&f](const std::vector<double>& x) { return f.eval(x); };
            EvalScheme scheme = EvalScheme::dense_grid(f.dimension);
            if (f.dimension == 1) scheme.n_per_dim = 20000;
            double err = measure_sup_error(pm_fn, f_fn, f.dimension, scheme);
            if (!(err <= f.radius * std::pow(M, -f.alpha))) bound_ok = false;
            errs.push_back(err);
        }
        // degenerate entries (exact reproduction) carry no slope information
        bool degenerate = errs.back() <= 1e-9;
        if (!degenerate) {
            SlopeFit fit = fit_loglog_slope(Ms, errs);
            if (std::abs(fit.slope + f.alpha) > 0.3) slope_ok = false;
            detail += name + "=" + fmt(fit.slope) + " ";
        }
    }
    bool runtime_ok = sw.seconds() < 120.0;
    bool pass = bound_ok && slope_ok && runtime_ok;
    report(3, "surrogate-bound", pass,
           detail + "bound=" + (bound_ok ? "ok" : "violated") + " t=" + fmt(sw.seconds()) + "s");
    CHECK(bound_ok);
    CHECK(slope_ok);
    CHECK(runtime_ok);
}

TEST_CASE("criterion 4: partition of unity and taylor identity") {
    auto rng = seeded_rng(1004);
    double worst_partition = 0.0;
    for (int d = 1; d <= 3; ++d) {
        for (int M : {2, 5, d == 1 ? 32 : (d == 2 ? 16 : 8)}) {
            Grid g{d, M};
            for (int i = 0; i < 1000; ++i) {
                auto x = random_point(rng, d);
                double sum = 0.0;
                for (std::size_t k = 0; k < g.size(); ++k) sum += local_basis(g.point(k), M, x);
                worst_partition = std::max(worst_partition, std::abs(sum - 1.0));
            }
        }
    }
    double worst_taylor = 0.0;
    for (const char* name : {"sin2pi_d1", "sinprod_d2", "gauss_bump_d2", "polynomial"}) {
        HolderFunction f = corpus(name);
        for (int rep = 0; rep < 10; ++rep) {
            auto z = random_point(rng, f.dimension);
            TaylorPatch patch = make_patch(f, z);
            for (int i = 0; i < 100; ++i) {
                auto x = random_point(rng, f.dimension);
                double a = patch.eval_taylor(x), b = patch.eval_monomial(x);
                worst_taylor =
                    std::max(worst_taylor, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
        }
    }
    bool pass = worst_partition <= 1e-12 && worst_taylor <= 1e-9;
    report(4, "partition+taylor", pass,
           "partition=" + fmt(worst_partition) + " taylor=" + fmt(worst_taylor));
    CHECK(worst_partition <= 1e-12);
    CHECK(worst_taylor <= 1e-9);
}

TEST_CASE("criterion 5: end-to-end scaling for sin2pi") {
    Stopwatch sw;
    HolderFunction f = corpus("sin2pi_d1");
    std::vector<double> eps = {0.2, 0.1, 0.05};
    bool pass = true;
    std::string detail;
    for (const char* actname : {"tanh", "leaky_relu(a=0.01)"}) {
        Activation act = catalog(actname);
        std::vector<double> err_ratio, depth_ratio, width_ratio, sparsity_ratio;
        for (double e : eps) {
            AssemblyBudget budget = AssemblyBudget::from_epsilon(e, f);
            EvalScheme scheme = EvalScheme::hybrid(1, 20000, 7);
            auto built = act.is_locq() ? assemble_locquad(f, act, budget, scheme)
                                       : assemble_pwl(f, act, budget, scheme);
            const ApproximationReport& r = built.second;
            double sup = std::max(r.sup_err_grid, r.sup_err_random);
            err_ratio.push_back(sup / e);
            depth_ratio.push_back(r.net_metrics.depth / r.theory_depth);
            width_ratio.push_back(r.net_metrics.width / r.theory_width);
            sparsity_ratio.push_back(r.net_metrics.sparsity / r.theory_sparsity);
        }
        auto spread = [](const std::vector<double>& v) {
            double lo = v[0], hi = v[0];
            for (double x : v) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            return hi / lo;
        };
        double c_fit = *std::max_element(err_ratio.begin(), err_ratio.end());
        bool ok = spread(err_ratio) <= 4.0 && spread(depth_ratio) <= 4.0 &&
                  spread(width_ratio) <= 4.0 && spread(sparsity_ratio) <= 4.0;
        pass = pass && ok;
        detail += std::string(actname) + "(c=" + fmt(c_fit) + ",spreads=" + fmt(spread(err_ratio)) +
                  "/" + fmt(spread(depth_ratio)) + "/" + fmt(spread(width_ratio)) + "/" +
                  fmt(spread(sparsity_ratio)) + ") ";
        CHECK(ok);
    }
    bool runtime_ok = sw.seconds() < 600.0;
    pass = pass && runtime_ok;
    report(5, "theorem-scaling", pass, detail + "t=" + fmt(sw.seconds()) + "s");
    CHECK(runtime_ok);
}

TEST_CASE("criterion 6: relu pipeline error decomposition") {
    Stopwatch sw;
    HolderFunction f = corpus("sin2pi_d1");
    EvalScheme scheme = EvalScheme::dense_grid(1);
    // product-stage errors at fixed M, m in {4, 8, 12}
    std::vector<double> stage_errs;
    for (int m : {4, 8, 12}) {
        AssemblyBudget budget;
        budget.epsilon = 0.1;
        budget.M = 8;
        budget.K = 100;
        budget.relu_m_layers = m;
        auto [net, r] = assemble_relu(f, budget, scheme);
        stage_errs.push_back(r.net_vs_surrogate_err);
    }
    double r1 = stage_errs[0] / stage_errs[1];
    double r2 = stage_errs[1] / stage_errs[2];
    bool product_ok = r1 >= 8.0 && r1 <= 32.0 && r2 >= 8.0 && r2 <= 32.0;

    // surrogate term at fixed large m, M in {2,4,8,16}; combined contract
    bool combined_ok = true;
    std::vector<double> Ms = {2, 4, 8, 16}, sup_errs;
    double c_fit = 0.0;
    for (double M : Ms) {
        AssemblyBudget budget;
        budget.epsilon = 0.05;
        budget.M = static_cast<int>(M);
        budget.K = 100;
        budget.relu_m_layers = 14;
        auto [net, r] = assemble_relu(f, budget, scheme);
        sup_errs.push_back(r.sup_err_grid);
        double model = M * std::pow(2.0, -14.0) + std::pow(M, -f.alpha);
        c_fit = std::max(c_fit, r.sup_err_grid / model);
    }
    for (std::size_t i = 0; i < Ms.size(); ++i) {
        double model = Ms[i] * std::pow(2.0, -14.0) + std::pow(Ms[i], -f.alpha);
        if (sup_errs[i] > c_fit * model * (1.0 + 1e-9)) combined_ok = false;
    }
    SlopeFit mfit = fit_loglog_slope(Ms, sup_errs);
    bool surrogate_term_ok = std::abs(mfit.slope + f.alpha) <= 0.5;

    bool pass = product_ok && combined_ok && surrogate_term_ok;
    report(6, "relu-contract", pass,
           "stage-ratios=" + fmt(r1) + "," + fmt(r2) + " M-slope=" + fmt(mfit.slope) +
               " c=" + fmt(c_fit) + " t=" + fmt(sw.seconds()) + "s");
    CHECK(product_ok);
    CHECK(surrogate_term_ok);
    CHECK(combined_ok);
}

TEST_CASE("criterion 7: covering bound and lipschitz propagation") {
    // exact agreement with an independent in-test re-evaluation
    auto rng = seeded_rng(1007);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool exact_ok = true;
    for (int i = 0; i < 1000; ++i) {
        double delta = 1e-4 + u(rng);
        double L = 1 + std::floor(u(rng) * 10);
        double N = std::floor(u(rng) * 128);
        double S = std::floor(u(rng) * 2000);
        double B = u(rng) * 16;
        double C = 0.1 + u(rng) * 2.9;
        NetworkClassSpec spec;
        spec.max_depth = L;
        spec.max_width = N;
        spec.max_sparsity = S;
        spec.max_magnitude = B;
        double lit =
            2.0 * L * (S + 1.0) * std::log((1.0 / delta) * C * L * (N + 1.0) * std::max(B, 1.0));
        if (covering_bound(delta, spec, C) != lit) exact_ok = false;
    }
    // propagation: 20 nets x 5 activations x 100 trials, zero violations
    int violations = 0;
    double max_ratio = 0.0;
    const char* acts[5] = {"tanh", "softsign", "isru(a=1)", "elu(a=1)", "hardtanh"};
    for (int netid = 0; netid < 20; ++netid) {
        NetworkParameter base = random_relu_net(rng, 2, 1 + netid % 3, 4, 1.0);
        for (const char* a : acts) {
            NetworkParameter net = base;
            net.activation = catalog(a);
            auto rep = lipschitz_propagation_check(net, 1e-3, 100, 4000 + netid, 16);
            violations += rep.violations;
            max_ratio = std::max(max_ratio, rep.max_ratio);
        }
    }
    bool pass = exact_ok && violations == 0;
    report(7, "covering+propagation", pass,
           std::string("exact=") + (exact_ok ? "ok" : "broken") +
               " violations=" + std::to_string(violations) + " max_ratio=" + fmt(max_ratio));
    CHECK(exact_ok);
    CHECK(violations == 0);
}

TEST_CASE("criterion 8: rate calculators match hand-derived values") {
    RateSpec r1 = regression_sieve(1e4, 2.0, 2.0, default_kappa(2.0, 2.0));
    bool a = r1.rate_exponent == 2.0 / 3.0;
    RateSpec r2 = classification_sieve(1e4, 1.0, 1.0, 1.0, 1.0);
    bool b = (r2.nu == 0.25) && (r2.rate_exponent == 0.5);
    RateSpec r3 = regression_sieve(1e6, 2.0, 2.0, default_kappa(2.0, 2.0));
    double ln = std::log(1e6);
    bool c = std::abs(r3.rate - std::pow(1e6, -2.0 / 3.0) * ln * ln * ln) <=
             1e-12 * r3.rate;
    bool pass = a && b && c;
    report(8, "rate-calculators", pass,
           std::string("regression=") + (a ? "ok" : "bad") + " classification=" +
               (b ? "ok" : "bad") + " n1e6=" + (c ? "ok" : "bad"));
    CHECK(a);
    CHECK(b);
    CHECK(c);
}

TEST_CASE("criterion 9: deterministic verify reports") {
    int f1 = 0, f2 = 0;
    std::string a = verify_all_report(7, &f1);
    std::string b = verify_all_report(7, &f2);
    bool pass = (a == b) && f1 == 0 && f2 == 0;
    report(9, "determinism", pass,
           "bytes=" + std::to_string(a.size()) + " identical=" + (a == b ? "yes" : "no") +
               " failures=" + std::to_string(f1));
    CHECK(a == b);
    CHECK(f1 == 0);
}
