#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "holonet/common.hpp"
#include "holonet/network.hpp"

using namespace holonet;
using holonet::testing::random_relu_net;

TEST_CASE("identity network forward and metrics") {
    NetworkParameter net;
    net.activation = catalog("relu");
    net.layers = {Layer::identity(2)};
    auto y = forward(net, {0.3, 0.7});
    CHECK(y[0] == 0.3);
    CHECK(y[1] == 0.7);
    NetworkMetrics m = metrics(net);
    CHECK(m.depth == 0);
    CHECK(m.width == 0);
    CHECK(m.sparsity == 2);
    CHECK(m.magnitude == 1.0);

    NetworkClassSpec spec{0, 0, 2, 1, 2, 2};
    CHECK(in_class(net, spec));
    spec.max_sparsity = 1;
    CHECK_FALSE(in_class(net, spec));
}

TEST_CASE("single relu unit") {
    NetworkParameter net;
    net.activation = catalog("relu");
    Layer l1 = Layer::zeros(1, 1);
    l1.at(0, 0) = 1.0;
    l1.b[0] = -0.5;
    Layer l2 = Layer::zeros(1, 1);
    l2.at(0, 0) = 1.0;
    net.layers = {l1, l2};
    CHECK(forward(net, {0.2})[0] == 0.0);
    CHECK(forward(net, {0.9})[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(metrics(net).depth == 1);
    CHECK(metrics(net).width == 1);
}

TEST_CASE("forward errors") {
    NetworkParameter net;
    net.activation = catalog("relu");
    net.layers = {Layer::identity(2)};
    CHECK_THROWS_AS(forward(net, {1.0}), ShapeError);
    CHECK_THROWS_AS(forward(net, {1.0, std::nan("")}), NumericError);
    NetworkParameter big = net;
    big.layers[0].at(0, 0) = 1e308;
    CHECK_THROWS_AS(forward(big, {1e308, 0.0}), NumericError);
}

TEST_CASE("parallel composition equals concatenated forwards") {
    auto rng = seeded_rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        NetworkParameter f = random_relu_net(rng, 2, 2, 4, 1.0);
        NetworkParameter g = random_relu_net(rng, 2, 2, 4, 1.0);
        NetworkParameter both = parallel_compose({f, g});
        for (int i = 0; i < 20; ++i) {
            auto x = random_point(rng, 2);
            auto yf = forward(f, x), yg = forward(g, x), yb = forward(both, x);
            REQUIRE(yb.size() == yf.size() + yg.size());
            CHECK(std::abs(yb[0] - yf[0]) <= 1e-12);
            CHECK(std::abs(yb[1] - yg[0]) <= 1e-12);
        }
    }
    // trivial case: two identity nets on the shared input
    NetworkParameter id;
    id.activation = catalog("relu");
    id.layers = {Layer::identity(1)};
    NetworkParameter two = parallel_compose({id, id});
    auto y = forward(two, {1.0});
    CHECK(y[0] == 1.0);
    CHECK(y[1] == 1.0);
}

TEST_CASE("stack composition equals functional composition") {
    auto rng = seeded_rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        NetworkParameter inner = random_relu_net(rng, 2, 2, 4, 1.0);
        NetworkParameter outer = random_relu_net(rng, 1, 2, 4, 1.0);
        NetworkParameter stk = stack_compose(outer, inner);
        CHECK(stk.depth() == inner.depth() + outer.depth());
        for (int i = 0; i < 20; ++i) {
            auto x = random_point(rng, 2);
            double want = forward(outer, forward(inner, x))[0];
            double got = forward(stk, x)[0];
            CHECK(std::abs(want - got) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("affine pre/post wrappers") {
    auto rng = seeded_rng(5);
    NetworkParameter net = random_relu_net(rng, 2, 1, 3, 1.0);
    // pre: x -> net(Ax + c) with A = [[2,0],[0,1]], c = (0.1, -0.2)
    NetworkParameter pre = affine_pre(net, {2.0, 0.0, 0.0, 1.0}, 2, {0.1, -0.2});
    // post: x -> 2*net(x) + 1
    NetworkParameter post = affine_post(net, {2.0}, 1, {1.0});
    for (int i = 0; i < 20; ++i) {
        auto x = random_point(rng, 2);
        std::vector<double> tx = {2.0 * x[0] + 0.1, x[1] - 0.2};
        CHECK(std::abs(forward(pre, x)[0] - forward(net, tx)[0]) <= 1e-12);
        CHECK(std::abs(forward(post, x)[0] - (2.0 * forward(net, x)[0] + 1.0)) <= 1e-12);
    }
}

TEST_CASE("metrics invariant under hidden-node permutation") {
    auto rng = seeded_rng(6);
    for (int trial = 0; trial < 5; ++trial) {
        NetworkParameter net = random_relu_net(rng, 2, 2, 5, 1.0, 0.0);
        NetworkMetrics before = metrics(net);
        // permute the nodes of hidden layer 0 by reversing
        std::size_t n0 = net.layers[0].rows;
        NetworkParameter perm = net;
        for (std::size_t r = 0; r < n0; ++r) {
            for (std::size_t c = 0; c < net.layers[0].cols; ++c)
                perm.layers[0].at(n0 - 1 - r, c) = net.layers[0].at(r, c);
            perm.layers[0].b[n0 - 1 - r] = net.layers[0].b[r];
            for (std::size_t rr = 0; rr < net.layers[1].rows; ++rr)
                perm.layers[1].at(rr, n0 - 1 - r) = net.layers[1].at(rr, r);
        }
        NetworkMetrics after = metrics(perm);
        CHECK(before.depth == after.depth);
        CHECK(before.width == after.width);
        CHECK(before.sparsity == after.sparsity);
        CHECK(before.magnitude == after.magnitude);
        for (int i = 0; i < 10; ++i) {
            auto x = random_point(rng, 2);
            CHECK(std::abs(forward(net, x)[0] - forward(perm, x)[0]) <= 1e-12);
        }
    }
}

TEST_CASE("exact depth extension for the relu family") {
    auto rng = seeded_rng(7);
    NetworkParameter net = random_relu_net(rng, 2, 1, 4, 1.0);
    NetworkParameter deep = extend_depth_exact_pwl(net, 3);
    CHECK(deep.depth() == net.depth() + 3);
    for (int i = 0; i < 50; ++i) {
        auto x = random_point(rng, 2);
        CHECK(std::abs(forward(net, x)[0] - forward(deep, x)[0]) <= 1e-12);
    }
}

TEST_CASE("json round-trip reproduces forwards exactly") {
    auto rng = seeded_rng(8);
    for (const char* act : {"relu", "leaky_relu(a=0.01)", "sigmoid"}) {
        NetworkParameter net = random_relu_net(rng, 2, 2, 4, 2.0);
        net.activation = catalog(act);
        NetworkParameter back = from_json(to_json(net));
        CHECK(back.activation.name == net.activation.name);
        for (int i = 0; i < 30; ++i) {
            auto x = random_point(rng, 2);
            double a = forward(net, x)[0], b = forward(back, x)[0];
            CHECK(std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("batched forward agrees with the scalar reference") {
    auto rng = seeded_rng(9);
    for (const char* act : {"relu", "leaky_relu(a=0.2)", "tanh", "sqnl"}) {
        NetworkParameter net = random_relu_net(rng, 3, 3, 6, 1.0);
        net.activation = catalog(act);
        std::size_t n = 257;
        std::vector<double> pts(n * 3);
        for (auto& v : pts) v = random_point(rng, 1)[0];
        auto batch = forward_batch(net, pts, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> x(pts.begin() + i * 3, pts.begin() + (i + 1) * 3);
            double want = forward(net, x)[0];
            CHECK(std::abs(batch[i] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}
