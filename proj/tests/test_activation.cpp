#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "holonet/activation.hpp"
#include "holonet/common.hpp"

using namespace holonet;

namespace {

// closed forms written independently of the catalog implementation
double oracle_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double oracle_softplus(double x) { return std::log(1.0 + std::exp(x)); }
double oracle_isru(double x, double a) { return x / std::sqrt(1.0 + a * x * x); }
double oracle_sqnl(double x) {
    if (x > 2.0) return 1.0;
    if (x < -2.0) return -1.0;
    return x >= 0 ? x - x * x / 4.0 : x + x * x / 4.0;
}

}  // namespace

TEST_CASE("piecewise-linear catalog entries match closed forms") {
    auto rng = seeded_rng(101);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    Activation relu = catalog("relu");
    Activation leaky = catalog("leaky_relu(a=0.01)");
    Activation htanh = catalog("hardtanh");
    for (int i = 0; i < 1000; ++i) {
        double x = u(rng);
        CHECK(relu.eval(x) == doctest::Approx(std::max(x, 0.0)).epsilon(1e-12));
        CHECK(leaky.eval(x) == doctest::Approx(std::max(x, 0.01 * x)).epsilon(1e-12));
        CHECK(htanh.eval(x) ==
              doctest::Approx(std::max(-1.0, std::min(1.0, x))).epsilon(1e-12));
    }
}

TEST_CASE("evaluate examples") {
    CHECK(catalog("relu").eval(-1.0) == 0.0);
    CHECK(catalog("sigmoid").eval(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(catalog("leaky_relu(a=0.01)").eval(-2.0) == doctest::Approx(-0.02).epsilon(1e-15));
}

TEST_CASE("relu descriptor structure") {
    Activation relu = catalog("relu");
    REQUIRE(relu.is_pwl());
    const auto& p = relu.as_pwl();
    CHECK(p.breakpoints.size() == 1);
    CHECK(p.breakpoints[0] == 0.0);
    CHECK(p.slopes[0] == 0.0);
    CHECK(p.slopes[1] == 1.0);
}

TEST_CASE("locally-quadratic catalog entries satisfy definition 2 at t") {
    for (const auto& name : catalog_names()) {
        Activation act = catalog(name);
        if (!act.is_locq()) continue;
        INFO(name);
        const auto& q = act.as_locq();
        CHECK(q.d1(q.expansion_point) != 0.0);
        CHECK(q.d2(q.expansion_point) != 0.0);
        CHECK(q.smooth_a < q.expansion_point);
        CHECK(q.expansion_point < q.smooth_b);
        CHECK(act.gadget_k0 >= 4.0);
    }
}

TEST_CASE("locally-quadratic values match independent closed forms") {
    auto rng = seeded_rng(55);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    Activation sig = catalog("sigmoid");
    Activation sp = catalog("softplus");
    Activation isru = catalog("isru(a=1)");
    Activation sqnl = catalog("sqnl");
    Activation swish = catalog("swish");
    for (int i = 0; i < 500; ++i) {
        double x = u(rng);
        CHECK(sig.eval(x) == doctest::Approx(oracle_sigmoid(x)).epsilon(1e-12));
        CHECK(sp.eval(x) == doctest::Approx(oracle_softplus(x)).epsilon(1e-12));
        CHECK(isru.eval(x) == doctest::Approx(oracle_isru(x, 1.0)).epsilon(1e-12));
        CHECK(sqnl.eval(x) == doctest::Approx(oracle_sqnl(x)).epsilon(1e-12));
        CHECK(swish.eval(x) == doctest::Approx(x * oracle_sigmoid(x)).epsilon(1e-12));
    }
}

TEST_CASE("softsign descriptor uses a one-sided smooth interval") {
    Activation ss = catalog("softsign");
    REQUIRE(ss.is_locq());
    const auto& q = ss.as_locq();
    CHECK(q.smooth_b <= 0.0);
    CHECK(q.expansion_point < 0.0);
}

TEST_CASE("lipschitz constants dominate sampled difference quotients") {
    auto rng = seeded_rng(77);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (const auto& name : catalog_names()) {
        Activation act = catalog(name);
        if (!act.lipschitz) continue;
        INFO(name);
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            double x = u(rng), y = u(rng);
            if (x == y) continue;
            worst = std::max(worst, std::abs(act.eval(x) - act.eval(y)) / std::abs(x - y));
        }
        CHECK(worst <= *act.lipschitz * (1.0 + 1e-9));
    }
}

TEST_CASE("repu carries no lipschitz constant") {
    CHECK_FALSE(catalog("repu(k=2)").lipschitz.has_value());
    CHECK_FALSE(catalog("repu(k=3)").lipschitz.has_value());
}

TEST_CASE("catalog errors") {
    CHECK_THROWS_AS(catalog("nope"), NameError);
    CHECK_THROWS_AS(catalog("leaky_relu(a=1.5)"), DomainError);
    CHECK_THROWS_AS(catalog("leaky_relu(a=0)"), DomainError);
    CHECK_THROWS_AS(catalog("repu(k=1)"), DomainError);
    CHECK_THROWS_AS(catalog("elu(a=-1)"), DomainError);
    CHECK_THROWS_AS(catalog("isru(a=0)"), DomainError);
}

TEST_CASE("derivative oracles agree with finite differences away from t") {
    // the constructor validates near t; probe a second window here
    for (const auto& name : {"sigmoid", "tanh", "softplus", "swish", "isru(a=1)"}) {
        Activation act = catalog(name);
        const auto& q = act.as_locq();
        for (double x : {-0.3, 0.2, 0.9}) {
            double h = 1e-5;
            double fd1 = (q.value(x + h) - q.value(x - h)) / (2 * h);
            CHECK(std::abs(fd1 - q.d1(x)) <= 1e-5 * std::max(1.0, std::abs(q.d1(x))));
        }
    }
}
