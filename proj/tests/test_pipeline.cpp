#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "holonet/common.hpp"
#include "holonet/pipeline.hpp"
#include "holonet/relu_lift.hpp"

using namespace holonet;

namespace {

// direct-summation oracle over the whole grid, independent of surrogate code
double partition_sum(int d, int M, const std::vector<double>& x) {
    Grid g{d, M};
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += local_basis(g.point(i), M, x);
    return s;
}

}  // namespace

TEST_CASE("local basis peak and support") {
    std::vector<double> z = {0.5, 0.25};
    CHECK(local_basis(z, 4, {0.5, 0.25}) == 1.0);
    CHECK(local_basis(z, 4, {0.75, 0.25}) == 0.0);   // |x1-z1| = 1/M
    CHECK(local_basis(z, 4, {0.5, 0.55}) == 0.0);    // beyond support in x2
    CHECK(local_basis(z, 4, {0.625, 0.25}) == doctest::Approx(0.5));
}

TEST_CASE("partition of unity across dimensions and resolutions") {
    auto rng = seeded_rng(31);
    for (int d = 1; d <= 3; ++d) {
        for (int M : {2, 4, d == 3 ? 8 : 32}) {
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                auto x = random_point(rng, d);
                worst = std::max(worst, std::abs(partition_sum(d, M, x) - 1.0));
            }
            INFO("d=", d, " M=", M);
            CHECK(worst <= 1e-12);
        }
    }
}

TEST_CASE("taylor patches: monomial form equals taylor form") {
    auto rng = seeded_rng(32);
    for (const char* name : {"sin2pi_d1", "gauss_bump_d2", "polynomial"}) {
        HolderFunction f = corpus(name);
        for (int rep = 0; rep < 10; ++rep) {
            auto z = random_point(rng, f.dimension);
            TaylorPatch patch = make_patch(f, z);
            for (int i = 0; i < 10; ++i) {
                auto x = random_point(rng, f.dimension);
                double a = patch.eval_taylor(x);
                double b = patch.eval_monomial(x);
                INFO(std::string(name));
                CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
            }
        }
    }
}

TEST_CASE("surrogate reproduces constants exactly") {
    HolderFunction f = corpus("const(3)");
    auto pm = surrogate(f, 4);
    auto rng = seeded_rng(33);
    for (int i = 0; i < 100; ++i) {
        auto x = random_point(rng, 1);
        CHECK(std::abs(pm.eval(x) - 3.0) <= 1e-12);
    }
}

TEST_CASE("surrogate bound and order for sin2pi") {
    HolderFunction f = corpus("sin2pi_d1");
    std::vector<double> Ms = {2, 4, 8, 16};
    std::vector<double> errs;
    for (double M : Ms) {
        auto pm = surrogate(f, static_cast<int>(M));
        double worst = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            std::vector<double> x = {double(i) / 20000.0};
            worst = std::max(worst, std::abs(pm.eval(x) - f.eval(x)));
        }
        CHECK(worst <= f.radius * std::pow(M, -f.alpha));  // hard bound, no slack
        errs.push_back(worst);
    }
    SlopeFit fit = fit_loglog_slope(Ms, errs);
    INFO("slope=", fit.slope);
    CHECK(fit.slope <= -f.alpha + 0.3);
    CHECK(fit.slope >= -f.alpha - 0.3);
}

TEST_CASE("surrogate order degrades to M^-1 under an alpha=1 declaration") {
    HolderFunction f = corpus("sin2pi_d1");
    f.alpha = 1.0;  // degree-0 patches now
    f.radius = 1.0 + 2.0 * 3.14159265358979323846;
    std::vector<double> Ms = {4, 8, 16, 32}, errs;
    for (double M : Ms) {
        auto pm = surrogate(f, static_cast<int>(M));
        double worst = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            std::vector<double> x = {double(i) / 20000.0};
            worst = std::max(worst, std::abs(pm.eval(x) - f.eval(x)));
        }
        CHECK(worst <= f.radius * std::pow(M, -1.0));
        errs.push_back(worst);
    }
    SlopeFit fit = fit_loglog_slope(Ms, errs);
    CHECK(fit.slope <= -0.7);
    CHECK(fit.slope >= -1.3);
}

TEST_CASE("surrogate error ratio for sinprod_d2 between M=8 and M=16") {
    HolderFunction f = corpus("sinprod_d2");
    auto grid_err = [&f](int M) {
        auto pm = surrogate(f, M);
        double worst = 0.0;
        for (int i = 0; i < 512; ++i)
            for (int j = 0; j < 512; ++j) {
                std::vector<double> x = {i / 511.0, j / 511.0};
                worst = std::max(worst, std::abs(pm.eval(x) - f.eval(x)));
            }
        return worst;
    };
    double e8 = grid_err(8), e16 = grid_err(16);
    INFO("e8=", e8, " e16=", e16);
    CHECK(e8 / e16 >= 2.0);  // ratio ~ 4 within 50%
    CHECK(e8 / e16 <= 6.0);
    CHECK(e8 <= f.radius * std::pow(8.0, -2.0));
    CHECK(e16 <= f.radius * std::pow(16.0, -2.0));
}

TEST_CASE("measure_sup_error basics") {
    HolderFunction f = corpus("sin2pi_d1");
    auto fn = [&f](const std::vector<double>& x) { return f.eval(x); };
    CHECK(measure_sup_error(fn, fn, 1, EvalScheme::random(1000, 3)) == 0.0);
    // grid and random estimators agree within 2x on a Lipschitz target
    auto g = [](const std::vector<double>&) { return 0.0; };
    EvalScheme grid = EvalScheme::dense_grid(1);
    EvalScheme rnd = EvalScheme::random(20000, 5);
    double eg = measure_sup_error(fn, g, 1, grid);
    double er = measure_sup_error(fn, g, 1, rnd);
    CHECK(eg / er <= 2.0);
    CHECK(er / eg <= 2.0);
    // determinism of the random scheme
    CHECK(measure_sup_error(fn, g, 1, rnd) == er);
}

TEST_CASE("assembly budget follows the schedule") {
    HolderFunction f = corpus("sin2pi_d1");
    AssemblyBudget b = AssemblyBudget::from_epsilon(0.1, f);
    CHECK(b.M + 1 == static_cast<int>(std::ceil(std::pow(0.1, -1.0 / 2.0))));
    CHECK(b.K == doctest::Approx(std::pow(0.1, -3.0)));
    AssemblyBudget small = AssemblyBudget::from_epsilon(0.01, f);
    CHECK(small.K == 1e4);  // capped
    CHECK(small.K_requested > 1e4);
    CHECK_THROWS_AS(AssemblyBudget::from_epsilon(1.5, f), DomainError);
}

TEST_CASE("locally-quadratic assembly: zero target collapses to gadget noise") {
    HolderFunction f = corpus("const(3)");
    f.value = [](const std::vector<double>&) { return 0.0; };
    f.name = "zero";
    f.radius = 1.0;
    Activation act = catalog("sigmoid");
    AssemblyBudget budget = AssemblyBudget::from_epsilon(0.2, f);
    auto [net, report] = assemble_locquad(f, act, budget, EvalScheme::random(4000, 11));
    CHECK(report.sup_err_grid <= 0.05);
    CHECK(report.net_metrics.sparsity > 0);  // basis machinery still present
}

TEST_CASE("locally-quadratic assembly hits the surrogate scale") {
    HolderFunction f = corpus("sin2pi_d1");
    Activation act = catalog("tanh");
    AssemblyBudget budget = AssemblyBudget::from_epsilon(0.1, f);
    auto [net, report] = assemble_locquad(f, act, budget, EvalScheme::dense_grid(1));
    INFO("sup=", report.sup_err_grid, " surrogate=", report.surrogate_err,
         " net-vs-pm=", report.net_vs_surrogate_err);
    // the network tracks P_M much better than P_M tracks f
    CHECK(report.net_vs_surrogate_err <= 0.3 * report.surrogate_err);
    CHECK(report.sup_err_grid <= report.surrogate_err + report.net_vs_surrogate_err + 1e-12);
    CHECK(report.net_metrics.magnitude < 1e15);
    // json round-trip preserves the measured error
    NetworkParameter back = from_json(to_json(net));
    double again = measure_sup_error(back, f, EvalScheme::dense_grid(1));
    CHECK(again == doctest::Approx(report.sup_err_grid).epsilon(1e-12));
}

TEST_CASE("relu assembly reproduces a basis hat up to product error") {
    // target: the hat (1 - 2|x - 1/2|)_+ itself, declared alpha = 1
    HolderFunction f;
    f.name = "hat";
    f.dimension = 1;
    f.alpha = 1.0;
    f.radius = 3.0;  // sup 1 + Lipschitz 2
    f.value = [](const std::vector<double>& x) {
        return std::max(0.0, 1.0 - 2.0 * std::abs(x[0] - 0.5));
    };
    AssemblyBudget budget;
    budget.epsilon = 0.1;
    budget.M = 2;  // grid {0, 1/2, 1} contains the kink
    budget.K = 100;
    budget.relu_m_layers = 12;
    auto [net, report] = assemble_relu(f, budget, EvalScheme::dense_grid(1));
    INFO("sup=", report.sup_err_grid);
    // P_M is exact here (piecewise-linear target, kink on the grid), so the
    // only error left is the product machinery at 2^-m
    CHECK(report.surrogate_err <= 1e-12);
    CHECK(report.sup_err_grid <= 50.0 * std::pow(2.0, -12));
}

TEST_CASE("relu assembly error splits into surrogate and product terms") {
    HolderFunction f = corpus("abs_kink_d1");
    AssemblyBudget budget;
    budget.epsilon = 0.05;
    budget.M = 16;
    budget.K = 100;
    budget.relu_m_layers = 12;
    auto [net, report] = assemble_relu(f, budget, EvalScheme::dense_grid(1));
    INFO("sup=", report.sup_err_grid, " surrogate=", report.surrogate_err);
    // kink on the grid (M even): surrogate exact; fitted-constant contract form
    double contract = 4.0 * (16.0 * std::pow(2.0, -12.0) + std::pow(16.0, -1.0));
    CHECK(report.sup_err_grid <= contract);
}

TEST_CASE("pwl assembly inherits the relu pipeline exactly") {
    HolderFunction f = corpus("sin2pi_d1");
    AssemblyBudget budget = AssemblyBudget::from_epsilon(0.15, f);
    EvalScheme scheme = EvalScheme::dense_grid(1);
    auto [rnet, rrep] = assemble_relu(f, budget, scheme);
    Activation leaky = catalog("leaky_relu(a=0.01)");
    auto [lnet, lrep] = assemble_pwl(f, leaky, budget, scheme);
    CHECK(std::abs(lrep.sup_err_grid - rrep.sup_err_grid) <= 1e-9);
    CHECK(lrep.net_metrics.width == 2 * rrep.net_metrics.width);
    CHECK(lrep.net_metrics.depth == rrep.net_metrics.depth);
    CHECK(lrep.net_metrics.sparsity <=
          4 * rrep.net_metrics.sparsity +
              2 * rrep.net_metrics.depth * rrep.net_metrics.width + 1);
}

TEST_CASE("d=2 locally-quadratic assembly stays coherent") {
    HolderFunction f = corpus("gauss_bump_d2");
    Activation act = catalog("sigmoid");
    AssemblyBudget budget;
    budget.epsilon = 0.3;
    budget.M = 2;
    budget.K = 500;
    budget.relu_m_layers = 8;
    auto [net, report] = assemble_locquad(f, act, budget, EvalScheme::random(4000, 13));
    INFO("sup=", report.sup_err_random, " surrogate=", report.surrogate_err);
    CHECK(report.net_vs_surrogate_err <= 0.6);
    CHECK(net.input_dim() == 2);
}

TEST_CASE("report csv schema") {
    CHECK(report_csv_header() ==
          "eps,M,K,depth,width,sparsity,magnitude,sup_err_grid,sup_err_rand,surrogate_err");
    ApproximationReport r;
    r.epsilon = 0.1;
    r.M = 3;
    r.K = 1000;
    std::string row = report_csv_row(r);
    CHECK(row.substr(0, 10) == "0.1,3,1000");
}
