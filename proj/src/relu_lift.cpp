#include "holonet/relu_lift.hpp"

#include <cmath>
#include <limits>

#include "holonet/common.hpp"

namespace holonet {

Box Box::unit(std::size_t d) {
    Box b;
    b.lo.assign(d, 0.0);
    b.hi.assign(d, 1.0);
    return b;
}

std::vector<std::vector<std::pair<double, double>>> relu_preactivation_bounds(
    const NetworkParameter& net, const Box& domain) {
    std::vector<std::pair<double, double>> cur(net.input_dim());
    for (std::size_t j = 0; j < cur.size(); ++j) cur[j] = {domain.lo[j], domain.hi[j]};
    std::vector<std::vector<std::pair<double, double>>> out;
    for (std::size_t l = 0; l + 1 < net.layers.size(); ++l) {
        const Layer& L = net.layers[l];
        std::vector<std::pair<double, double>> pre(L.rows);
        for (std::size_t r = 0; r < L.rows; ++r) {
            double lo = L.b[r], hi = L.b[r];
            for (std::size_t c = 0; c < L.cols; ++c) {
                double w = L.at(r, c);
                if (w == 0.0) continue;
                if (w > 0.0) {
                    lo += w * cur[c].first;
                    hi += w * cur[c].second;
                } else {
                    lo += w * cur[c].second;
                    hi += w * cur[c].first;
                }
            }
            pre[r] = {lo, hi};
        }
        out.push_back(pre);
        cur.assign(L.rows, {0.0, 0.0});
        for (std::size_t r = 0; r < L.rows; ++r)
            cur[r] = {std::max(0.0, pre[r].first), std::max(0.0, pre[r].second)};
    }
    return out;
}

LiftPlan plan_lift(const NetworkParameter& src, const Activation& act, const Box& domain) {
    if (!src.activation.is_pwl() || src.activation.name != "relu")
        throw DomainError("plan_lift: source network must use the relu activation");
    if (domain.lo.size() != src.input_dim() || domain.hi.size() != src.input_dim())
        throw ShapeError("plan_lift: domain dimension mismatch");
    const PiecewiseLinearActivation& p = act.as_pwl();
    if (p.breakpoints.empty()) throw DomainError("plan_lift: target activation has no breakpoint");

    // Breakpoint with the largest |slope jump| * r0 keeps the coefficients small.
    LiftPlan plan;
    double best = -1.0;
    for (std::size_t k = 0; k < p.breakpoints.size(); ++k) {
        double r0 = std::numeric_limits<double>::infinity();
        if (k > 0) r0 = std::min(r0, p.breakpoints[k] - p.breakpoints[k - 1]);
        if (k + 1 < p.breakpoints.size())
            r0 = std::min(r0, p.breakpoints[k + 1] - p.breakpoints[k]);
        if (std::isinf(r0)) r0 = 1.0;  // single-breakpoint activations
        if (r0 <= 0.0) continue;       // repeated breakpoint, no linear piece between
        double jump = std::abs(p.slope_right_of(k) - p.slope_left_of(k));
        if (jump * r0 > best) {
            best = jump * r0;
            plan.breakpoint = p.breakpoints[k];
            plan.r0 = r0;
            plan.slope_left = p.slope_left_of(k);
            plan.slope_right = p.slope_right_of(k);
        }
    }
    if (best <= 0.0) throw DomainError("plan_lift: no usable breakpoint");

    // Certified input range for the two-term identity: every hidden
    // pre-activation of the source must stay inside [-r, r].
    double r = 1.0;
    auto bounds = relu_preactivation_bounds(src, domain);
    for (const auto& layer : bounds)
        for (const auto& iv : layer)
            r = std::max(r, std::max(std::abs(iv.first), std::abs(iv.second)));
    plan.r = 1.05 * r;

    double jump = plan.slope_right - plan.slope_left;
    double scale = plan.r0 / (2.0 * plan.r);
    plan.u1 = 1.0 / (jump * scale);
    plan.u2 = -plan.u1;
    double sigma_a = act.eval(plan.breakpoint);
    double sigma_shift = act.eval(plan.breakpoint - plan.r0 / 2.0);
    plan.v = (sigma_shift - sigma_a) / (jump * scale);

    // Documented magnitude inflation: entries of the lifted network are
    // bounded by this factor times max(B, 1).
    NetworkMetrics m = metrics(src);
    double B1 = std::max(m.magnitude, 1.0);
    double N = static_cast<double>(std::max<std::size_t>(m.width, 1));
    double wmax = B1 / std::abs(jump);
    double bmax = std::abs(plan.breakpoint) + plan.r0 / 2.0 +
                  scale * (std::abs(plan.v) * N * B1 + B1);
    double omax = std::abs(plan.u1) * B1;
    double obias = std::abs(plan.v) * (N * B1 + 1.0) + B1;
    plan.magnitude_factor = std::max(std::max(wmax, bmax), std::max(omax, obias)) / B1;
    return plan;
}

NetworkParameter lift(const NetworkParameter& src, const Activation& act, const LiftPlan& plan) {
    NetworkParameter out;
    out.activation = act;
    std::size_t L = src.depth();
    if (L == 0) {
        out.layers = src.layers;  // purely affine, nothing to translate
        return out;
    }
    double scale = plan.r0 / (2.0 * plan.r);
    double a = plan.breakpoint;
    double a2 = plan.breakpoint - plan.r0 / 2.0;

    for (std::size_t l = 0; l < src.layers.size(); ++l) {
        const Layer& W = src.layers[l];
        bool first = (l == 0);
        bool last = (l + 1 == src.layers.size());
        if (last) {
            // [u1*W, u2*W], bias v*W*1 + b
            Layer out_layer = Layer::zeros(W.rows, 2 * W.cols);
            for (std::size_t r = 0; r < W.rows; ++r) {
                double rowsum = 0.0;
                for (std::size_t c = 0; c < W.cols; ++c) {
                    double w = W.at(r, c);
                    rowsum += w;
                    if (w != 0.0) {
                        out_layer.at(r, c) = plan.u1 * w;
                        out_layer.at(r, W.cols + c) = plan.u2 * w;
                    }
                }
                out_layer.b[r] = plan.v * rowsum + W.b[r];
            }
            out.layers.push_back(std::move(out_layer));
            continue;
        }
        std::size_t in_cols = first ? W.cols : 2 * W.cols;
        Layer out_layer = Layer::zeros(2 * W.rows, in_cols);
        for (std::size_t r = 0; r < W.rows; ++r) {
            double rowsum = 0.0;
            for (std::size_t c = 0; c < W.cols; ++c) {
                double w = W.at(r, c);
                rowsum += w;
                if (w == 0.0) continue;
                if (first) {
                    double sw = scale * w;
                    out_layer.at(r, c) = sw;
                    out_layer.at(W.rows + r, c) = sw;
                } else {
                    double s1 = scale * plan.u1 * w;
                    double s2 = scale * plan.u2 * w;
                    out_layer.at(r, c) = s1;
                    out_layer.at(r, W.cols + c) = s2;
                    out_layer.at(W.rows + r, c) = s1;
                    out_layer.at(W.rows + r, W.cols + c) = s2;
                }
            }
            double shift = first ? scale * W.b[r] : scale * (plan.v * rowsum + W.b[r]);
            out_layer.b[r] = a + shift;
            out_layer.b[W.rows + r] = a2 + shift;
        }
        out.layers.push_back(std::move(out_layer));
    }
    out.validate();
    return out;
}

double verify_lift(const NetworkParameter& src, const NetworkParameter& lifted, const Box& domain,
                   std::size_t n, std::uint64_t seed, double tol) {
    std::size_t d = src.input_dim();
    auto rng = seeded_rng(seed);
    std::vector<double> pts(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            std::uniform_real_distribution<double> u(domain.lo[j], domain.hi[j]);
            pts[i * d + j] = u(rng);
        }
    }
    auto ya = forward_batch(src, pts, n);
    auto yb = forward_batch(lifted, pts, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < ya.size(); ++i) worst = std::max(worst, std::abs(ya[i] - yb[i]));
    if (worst > tol)
        throw LiftRangeError("lift verification failed: max deviation " + std::to_string(worst));
    return worst;
}

}  // namespace holonet
