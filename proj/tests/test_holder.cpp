#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "holonet/common.hpp"
#include "holonet/errors.hpp"
#include "holonet/holder.hpp"

using namespace holonet;

TEST_CASE("every corpus entry passes its own declaration") {
    for (const auto& name : corpus_names()) {
        HolderFunction f = corpus(name);
        INFO(name);
        double est = empirical_holder_norm(f, f.alpha, 400);
        CHECK(est <= f.radius * (1.0 + 1e-9));
        double rel = derivative_consistency(f, 60);
        CHECK(rel <= 1e-4);
    }
}

TEST_CASE("const entry") {
    HolderFunction f = corpus("const(3)");
    CHECK(f.eval({0.7}) == 3.0);
    CHECK(f.deriv({1}, {0.7}) == 0.0);
    double est = empirical_holder_norm(f, f.alpha, 100);
    CHECK(est == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("linear entry norm") {
    HolderFunction f = corpus("linear");
    // alpha = 1: sup|f| + Lipschitz seminorm = 1 + 1
    double est = empirical_holder_norm(f, 1.0, 400);
    CHECK(est == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("abs kink entry") {
    HolderFunction f = corpus("abs_kink_d1");
    CHECK(f.alpha == 1.0);
    CHECK(f.taylor_degree() == 0);
    CHECK(f.radius == 1.5);
    double est = empirical_holder_norm(f, 1.0, 400);
    CHECK(est >= 1.49);  // pairs straddling the kink reach the Lipschitz constant
    CHECK(est <= 1.5 * (1.0 + 1e-9));
}

TEST_CASE("sin2pi declaration is a safe overestimate") {
    HolderFunction f = corpus("sin2pi_d1");
    CHECK(f.alpha == 2.0);
    CHECK(f.taylor_degree() == 1);
    double est = empirical_holder_norm(f, 2.0, 800);
    // true norm under this reading is 1 + 2pi + 4pi^2 ~ 46.8
    CHECK(est >= 40.0);
    CHECK(est <= f.radius);
}

TEST_CASE("mixed second derivatives are symmetric (finite differences)") {
    HolderFunction f = corpus("sinprod_d2");
    double h = 1e-4;
    for (double x0 : {0.2, 0.6}) {
        for (double y0 : {0.3, 0.8}) {
            auto v = [&](double a, double b) { return f.eval({a, b}); };
            double dxy = (v(x0 + h, y0 + h) - v(x0 + h, y0 - h) - v(x0 - h, y0 + h) +
                          v(x0 - h, y0 - h)) /
                         (4 * h * h);
            double oracle = f.deriv({1, 1}, {x0, y0});
            CHECK(std::abs(dxy - oracle) <= 1e-3 * std::max(1.0, std::abs(oracle)));
        }
    }
}

TEST_CASE("polynomial factory differentiates correctly") {
    // p(x, y) = 3 x^2 y + y
    HolderFunction p = make_polynomial({{{2, 1}, 3.0}, {{0, 1}, 1.0}}, 2, "p");
    CHECK(p.eval({0.5, 0.2}) == doctest::Approx(3 * 0.25 * 0.2 + 0.2));
    CHECK(p.deriv({1, 0}, {0.5, 0.2}) == doctest::Approx(6 * 0.5 * 0.2));
    CHECK(p.deriv({2, 1}, {0.5, 0.2}) == doctest::Approx(6.0));
    CHECK(p.deriv({0, 2}, {0.5, 0.2}) == 0.0);
    double est = empirical_holder_norm(p, p.alpha, 200);
    CHECK(est <= p.radius);
}

TEST_CASE("corpus errors") {
    CHECK_THROWS_AS(corpus("unknown_target"), NameError);
}
