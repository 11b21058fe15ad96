#include "holonet/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace holonet {

using RealFn = std::function<double(const std::vector<double>&)>;

int gadget_depth_budget(double K) {
    return static_cast<int>(std::ceil(std::log2(std::max(2.0, K))));
}

double gadget_fp_floor(double K) { return 1e-15 * K * K; }

namespace {

void check_budget(const Activation& act, double K) {
    const auto& q = act.as_locq();  // throws CapabilityError for piecewise-linear
    (void)q;
    if (!(K > act.gadget_k0))
        throw BudgetError("K = " + std::to_string(K) + " is not above K0 = " +
                          std::to_string(act.gadget_k0) + " for " + act.name);
}

// ============================================================
// Expression-graph builder for locally-quadratic compositions
//
// Values between hidden layers are affine combinations of the current
// layer's sigma nodes. Bricks are tiny node groups realizing squares,
// identities and products from local Taylor structure at the expansion
// point:
//   square:   (sigma(t+hu) + sigma(t-hu) - 2 sigma(t)) / (sigma''(t) h^2)
//   identity: (sigma(t+hu) - sigma(t-hu)) / (2 sigma'(t) h)
// The symmetric differences cancel the odd-order Taylor terms, so the
// rounding floor stays far below the construction error even at K = 1e4.
// ============================================================

struct Expr {
    std::vector<double> coeff;  // over the current frame's values
    double c = 0.0;
};

Expr expr_scale(Expr e, double s) {
    for (double& v : e.coeff) v *= s;
    e.c *= s;
    return e;
}

Expr expr_add(const Expr& a, const Expr& b) {
    Expr r = a;
    if (b.coeff.size() > r.coeff.size()) r.coeff.resize(b.coeff.size(), 0.0);
    for (std::size_t i = 0; i < b.coeff.size(); ++i) r.coeff[i] += b.coeff[i];
    r.c += b.c;
    return r;
}

Expr expr_const(double c) {
    Expr e;
    e.c = c;
    return e;
}

class LocqBuilder {
  public:
    LocqBuilder(const Activation& act, double K, std::size_t input_dim)
        : act_(act), q_(act.as_locq()), K_(K), frame_width_(input_dim), input_dim_(input_dim) {
        t_ = q_.expansion_point;
        s1_ = q_.d1(t_);
        s2_ = q_.d2(t_);
        st_ = q_.value(t_);
        rt_ = q_.smooth_radius();
    }

    Expr input(std::size_t j) const {
        Expr e;
        e.coeff.assign(frame_width_, 0.0);
        e.coeff[j] = 1.0;
        return e;
    }

    // Bricks are staged against the current frame; commit() seals the hidden
    // layer and resolves every staged output in the new frame.
    void commit() {
        Layer L;
        L.rows = pending_rows_.size();
        L.cols = frame_width_;
        L.b.resize(L.rows);
        L.w.assign(L.rows * frame_width_, 0.0);
        for (std::size_t r = 0; r < pending_rows_.size(); ++r) {
            for (std::size_t c = 0; c < pending_rows_[r].coeff.size(); ++c)
                L.w[r * frame_width_ + c] = pending_rows_[r].coeff[c];
            L.b[r] = pending_rows_[r].c;
        }
        layers_.push_back(std::move(L));
        frame_width_ = pending_rows_.size();
        pending_rows_.clear();
        resolved_.clear();
        for (const auto& po : pending_outputs_) resolved_.push_back(resolve(po));
        pending_outputs_.clear();
    }

    // Staged-output access after commit(), in staging order.
    const Expr& out(std::size_t i) const { return resolved_.at(i); }
    std::size_t staged_count() const { return pending_outputs_.size(); }

    // Convenience wrappers staging one brick and reporting its index.
    std::size_t square(const Expr& u, double range) {
        double h = pick_h_square(range);
        std::size_t base = add_node_pair(u, h);
        pending_outputs_.push_back({OutKind::Square, base, h, 1.0});
        return pending_outputs_.size() - 1;
    }
    std::size_t identity(const Expr& u, double range) {
        double h = pick_h_identity(range);
        std::size_t base = add_node_pair(u, h);
        pending_outputs_.push_back({OutKind::Identity, base, h, 1.0});
        return pending_outputs_.size() - 1;
    }
    // a*b via the two-square polarization ((a+b)/2)^2 - ((a-b)/2)^2.
    std::size_t product(const Expr& a, const Expr& b, double range_a, double range_b) {
        double range = 0.5 * (range_a + range_b);
        double h = pick_h_square(range);
        Expr mean = expr_scale(expr_add(a, b), 0.5);
        Expr half_diff = expr_scale(expr_add(a, expr_scale(b, -1.0)), 0.5);
        std::size_t base1 = add_node_pair(mean, h);
        std::size_t base2 = add_node_pair(half_diff, h);
        if (base2 != base1 + 2) throw NumericError("builder: node layout broken");
        pending_outputs_.push_back({OutKind::Product, base1, h, 1.0});
        return pending_outputs_.size() - 1;
    }

    NetworkParameter finish(const std::vector<Expr>& outputs) {
        Layer L;
        L.rows = outputs.size();
        L.cols = frame_width_;
        L.b.resize(L.rows);
        L.w.assign(L.rows * frame_width_, 0.0);
        for (std::size_t r = 0; r < outputs.size(); ++r) {
            for (std::size_t c = 0; c < outputs[r].coeff.size(); ++c)
                L.w[r * frame_width_ + c] = outputs[r].coeff[c];
            L.b[r] = outputs[r].c;
        }
        NetworkParameter net;
        net.activation = act_;
        net.layers = std::move(layers_);
        net.layers.push_back(std::move(L));
        net.validate();
        return net;
    }

    std::size_t depth_so_far() const { return layers_.size(); }

  private:
    enum class OutKind { Square, Identity, Product };
    struct PendingOut {
        OutKind kind;
        std::size_t base;
        double h;
        double scale;
    };

    double pick_h_square(double range) const {
        double X = std::max(range, 1.0);
        double h = std::max(1.0 / (K_ * std::sqrt(std::abs(s2_))),
                            1.0 / (X * std::pow(K_, 0.75)));
        if (std::isfinite(rt_)) h = std::min(h, rt_ / (2.1 * X));
        return h;
    }
    double pick_h_identity(double range) const {
        double X = std::max(range, 1.0);
        double h = 1.0 / (X * std::sqrt(K_));
        if (std::isfinite(rt_)) h = std::min(h, rt_ / (2.1 * X));
        return h;
    }

    std::size_t add_node_pair(const Expr& u, double h) {
        Expr plus = expr_scale(u, h);
        plus.c += t_;
        Expr minus = expr_scale(u, -h);
        minus.c += t_;
        pending_rows_.push_back(plus);
        pending_rows_.push_back(minus);
        return pending_rows_.size() - 2;
    }

    Expr resolve(const PendingOut& po) const {
        Expr e;
        e.coeff.assign(frame_width_, 0.0);
        if (po.kind == OutKind::Square) {
            double g = 1.0 / (s2_ * po.h * po.h);
            e.coeff[po.base] = g;
            e.coeff[po.base + 1] = g;
            e.c = -2.0 * st_ * g;
        } else if (po.kind == OutKind::Identity) {
            double g = 1.0 / (2.0 * s1_ * po.h);
            e.coeff[po.base] = g;
            e.coeff[po.base + 1] = -g;
        } else {
            double g = 1.0 / (s2_ * po.h * po.h);
            e.coeff[po.base] = g;       // ((a+b)/2)^2 pair
            e.coeff[po.base + 1] = g;
            e.coeff[po.base + 2] = -g;  // ((a-b)/2)^2 pair
            e.coeff[po.base + 3] = -g;
            // the two -2 sigma(t) terms cancel between the squares
        }
        return e;
    }

    const Activation& act_;
    const LocallyQuadraticActivation& q_;
    double K_;
    double t_, s1_, s2_, st_, rt_;
    std::size_t frame_width_;
    std::size_t input_dim_;
    std::vector<Layer> layers_;
    std::vector<Expr> pending_rows_;
    std::vector<PendingOut> pending_outputs_;
    std::vector<Expr> resolved_;
};

}  // namespace

// ============================================================
// theta_2 and theta_x : the printed one-hidden-layer forms
// ============================================================

NetworkParameter square_gadget(const Activation& act, double K) {
    check_budget(act, K);
    const auto& q = act.as_locq();
    double t = q.expansion_point;
    double s2 = q.d2(t);
    // Rescaled K keeps the output coefficients at exactly K^2.
    double h = std::sqrt(2.0 / std::abs(s2)) / K;
    double sign = s2 > 0.0 ? 1.0 : -1.0;

    NetworkParameter net;
    net.activation = act;
    Layer l1 = Layer::zeros(3, 1);
    l1.at(0, 0) = 0.0;
    l1.at(1, 0) = h;
    l1.at(2, 0) = 2.0 * h;
    l1.b = {t, t, t};
    Layer l2 = Layer::zeros(1, 3);
    l2.at(0, 0) = sign * K * K / 2.0;
    l2.at(0, 1) = -sign * K * K;
    l2.at(0, 2) = sign * K * K / 2.0;
    net.layers = {l1, l2};
    return net;
}

NetworkParameter product_gadget(const Activation& act, double K, double A) {
    check_budget(act, K);
    if (!(A > 0.0)) throw DomainError("product gadget needs A > 0");
    const auto& q = act.as_locq();
    double t = q.expansion_point;
    double s2 = q.d2(t);
    double h = std::sqrt(2.0 / std::abs(s2)) / K;
    double sign = s2 > 0.0 ? 1.0 : -1.0;

    // three theta_2 blocks at arguments (x1+x2)/2A, x1/2A, x2/2A
    NetworkParameter net;
    net.activation = act;
    Layer l1 = Layer::zeros(9, 2);
    const double args[3][2] = {{0.5 / A, 0.5 / A}, {0.5 / A, 0.0}, {0.0, 0.5 / A}};
    for (int blk = 0; blk < 3; ++blk) {
        for (int node = 0; node < 3; ++node) {
            std::size_t r = blk * 3 + node;
            l1.at(r, 0) = node * h * args[blk][0];
            l1.at(r, 1) = node * h * args[blk][1];
            l1.b[r] = t;
        }
    }
    Layer l2 = Layer::zeros(1, 9);
    double outer = 2.0 * A * A;
    const double blk_sign[3] = {1.0, -1.0, -1.0};
    for (int blk = 0; blk < 3; ++blk) {
        double s = outer * blk_sign[blk] * sign;
        l2.at(0, blk * 3 + 0) = s * K * K / 2.0;
        l2.at(0, blk * 3 + 1) = -s * K * K;
        l2.at(0, blk * 3 + 2) = s * K * K / 2.0;
    }
    net.layers = {l1, l2};
    return net;
}

double square_gadget_error_estimate(const Activation& act, double K) {
    NetworkParameter g = square_gadget(act, K);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        double x = -1.0 + 2.0 * i / 400.0;
        double v = forward(g, {x})[0];
        worst = std::max(worst, std::abs(v - x * x));
    }
    return worst;
}

// ============================================================
// theta_m : binary product tree over the padded coordinate vector
// ============================================================

NetworkParameter monomial_gadget(const Activation& act, double K, const MultiIndex& m, int alpha) {
    check_budget(act, K);
    if (alpha < 1) throw DomainError("monomial gadget needs alpha >= 1");
    int d = static_cast<int>(m.size());
    if (d < 1) throw DomainError("monomial gadget needs d >= 1");
    for (int v : m)
        if (v < 0) throw DomainError("multi-index entries must be nonnegative");
    int total = mi_order(m);
    if (total > alpha) throw DomainError("|m| exceeds alpha");

    if (total == 0) {
        // constant one
        NetworkParameter net;
        net.activation = act;
        Layer l = Layer::zeros(1, d);
        l.b[0] = 1.0;
        net.layers = {l};
        return net;
    }
    if (total == 1) {
        NetworkParameter net;
        net.activation = act;
        Layer l = Layer::zeros(1, d);
        for (int j = 0; j < d; ++j)
            if (m[j] == 1) l.at(0, j) = 1.0;
        net.layers = {l};
        return net;
    }

    int qlev = static_cast<int>(std::ceil(std::log2(static_cast<double>(total))));
    std::size_t padded = std::size_t{1} << qlev;

    // selection affine: z = (x_1 ... x_1, ..., x_d ... x_d, 1, ..., 1)
    std::vector<double> sel(padded * d, 0.0);
    std::vector<double> sel_b(padded, 0.0);
    std::size_t row = 0;
    for (int j = 0; j < d; ++j)
        for (int r = 0; r < m[j]; ++r) sel[(row++) * d + j] = 1.0;
    for (; row < padded; ++row) sel_b[row] = 1.0;

    double e_sq = square_gadget_error_estimate(act, K);
    double range = 1.0;
    NetworkParameter tree;  // built level by level
    bool first = true;
    std::size_t level_inputs = padded;
    while (level_inputs > 1) {
        std::size_t pairs = level_inputs / 2;
        std::vector<NetworkParameter> blocks;
        NetworkParameter block = product_gadget(act, K, range);
        for (std::size_t p = 0; p < pairs; ++p) {
            std::vector<double> pick(2 * level_inputs, 0.0);
            pick[0 * level_inputs + 2 * p] = 1.0;
            pick[1 * level_inputs + 2 * p + 1] = 1.0;
            blocks.push_back(affine_pre(block, pick, level_inputs, {0.0, 0.0}));
        }
        NetworkParameter level = parallel_compose(blocks);
        tree = first ? level : stack_compose(level, tree);
        first = false;
        // next level's range bound, tracked numerically
        range = range * range + 6.0 * range * range * e_sq;
        level_inputs = pairs;
    }
    NetworkParameter net = affine_pre(tree, sel, static_cast<std::size_t>(d), sel_b);
    net.validate();
    return net;
}

// ============================================================
// theta_1 : symmetric two-node identity
// ============================================================

NetworkParameter identity_gadget(const Activation& act, double K, double range) {
    check_budget(act, K);
    LocqBuilder b(act, K, 1);
    std::size_t id = b.identity(b.input(0), range);
    b.commit();
    return b.finish({b.out(id)});
}

// ============================================================
// theta_1/2, theta_abs, theta_relu : depth-budgeted iteration
//
// sqrt(u) on [0,2] is produced as u * z_n where z_k -> 1/sqrt(u) under the
// inverse-square-root iteration z' = z (3 - u z^2)/2, warm-started from a
// quadratic fit of 1/sqrt(u + mu). The residual track t = u z^2 obeys
// t' = t (3-t)^2 / 4 on its own, and z is kept in a normalized channel
// w_k = z_k / Z_k with Z_k = 1.5^k Z_0 so every brick sees O(1) ranges.
// The iteration count is chosen so the whole network fits the depth budget
// ceil(log2 K) at width <= 15.
// ============================================================

namespace {

struct WarmStart {
    double mu;
    double c0, c1, c2;  // w0 = c0 + c1 u + c2 u^2  (already sqrt(mu)-normalized)
};

WarmStart plan_warm_start(double K) {
    double mu = std::max(0.005, 1.0 / std::sqrt(K));
    for (int attempt = 0; attempt < 8; ++attempt) {
        // quadratic through f(u) = sqrt(mu)/sqrt(u+mu) at Chebyshev nodes of [0,2]
        double nodes[3];
        for (int i = 0; i < 3; ++i) nodes[i] = 1.0 + std::cos(M_PI * (2 * i + 1) / 6.0);
        double f[3];
        for (int i = 0; i < 3; ++i) f[i] = std::sqrt(mu) / std::sqrt(nodes[i] + mu);
        // Lagrange -> monomial coefficients
        double c0 = 0, c1 = 0, c2 = 0;
        for (int i = 0; i < 3; ++i) {
            double xi = nodes[i], xj = nodes[(i + 1) % 3], xk = nodes[(i + 2) % 3];
            double denom = (xi - xj) * (xi - xk);
            c2 += f[i] / denom;
            c1 += f[i] * (-(xj + xk)) / denom;
            c0 += f[i] * (xj * xk) / denom;
        }
        // safety: w0 positive and t0 = (u/mu) w0^2 inside the contraction basin
        bool ok = true;
        for (int i = 0; i <= 256 && ok; ++i) {
            double u = 2.0 * i / 256.0;
            double w0 = c0 + c1 * u + c2 * u * u;
            double t0 = (u / mu) * w0 * w0;
            if (!(w0 > 0.01 && w0 < 1.4) || !(t0 >= 0.0 && t0 < 1.35)) ok = false;
        }
        if (ok) return {mu, c0, c1, c2};
        mu *= 1.5;
    }
    throw NumericError("sqrt gadget: no admissible warm start found");
}

// Shared tail of the sqrt/abs gadgets: from an expression for u (and an
// optional x carried for the relu variant), runs the warm start plus
// n_iters iterations and returns the network computing u * z_n (+ x)/2.
NetworkParameter build_sqrt_chain(const Activation& act, double K, int n_iters,
                                  const WarmStart& ws, bool from_abs, bool with_relu_mix) {
    LocqBuilder b(act, K, 1);

    Expr u_expr, x_expr;
    double zeta2 = 1.0 / K;
    if (from_abs) {
        // layer 0: u = x^2 + 1/K (+ carry x for the relu mix)
        std::size_t sq = b.square(b.input(0), 1.0);
        std::size_t xc = with_relu_mix ? b.identity(b.input(0), 1.0) : 0;
        b.commit();
        u_expr = b.out(sq);
        u_expr.c += zeta2;
        if (with_relu_mix) x_expr = b.out(xc);
    } else {
        u_expr = b.input(0);
    }

    const double XU = from_abs ? 1.3 : 2.0;

    // layer: u^2 and carry u (and x)
    {
        std::size_t squ = b.square(u_expr, XU);
        std::size_t idu = b.identity(u_expr, XU);
        std::size_t idx = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
        b.commit();
        Expr usq = b.out(squ);
        u_expr = b.out(idu);
        if (with_relu_mix) x_expr = b.out(idx);
        // warm start w0 = c0 + c1 u + c2 u^2  (normalized z0 = w0 / sqrt(mu))
        Expr w0 = expr_add(expr_add(expr_scale(u_expr, ws.c1), expr_scale(usq, ws.c2)),
                           expr_const(ws.c0));
        // layer: p = w0^2, carry u, w0 (and x)
        std::size_t sqw = b.square(w0, 1.4);
        std::size_t idu2 = b.identity(u_expr, XU);
        std::size_t idw = b.identity(w0, 1.4);
        std::size_t idx2 = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
        b.commit();
        Expr p = b.out(sqw);
        u_expr = b.out(idu2);
        Expr w_expr = b.out(idw);
        if (with_relu_mix) x_expr = b.out(idx2);
        // layer: t0 = (u * p)/mu, carry u, w (and x)
        std::size_t pr = b.product(u_expr, p, XU, 2.0);
        std::size_t idu3 = b.identity(u_expr, XU);
        std::size_t idw2 = b.identity(w_expr, 1.4);
        std::size_t idx3 = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
        b.commit();
        Expr t_expr = expr_scale(b.out(pr), 1.0 / ws.mu);
        u_expr = b.out(idu3);
        w_expr = b.out(idw2);
        if (with_relu_mix) x_expr = b.out(idx3);

        // Residual iterations t' = t h(t)^2 with h(t) = c - (c-1) t, two layers
        // each. c = 1.5 is the superattracting inverse-square-root step; larger
        // c climbs small residuals faster at the cost of a weaker contraction
        // near the fixed point, so the schedule runs aggressive steps first and
        // polishes at the end. The last step folds the output product u*z in:
        // y = (u w_{n-1}) h_n Z_n / c_n, saving one layer.
        std::vector<double> cs(std::max(n_iters, 0), 1.5);
        if (n_iters >= 2) cs[n_iters - 2] = 1.8;
        for (int it = 0; it + 2 < n_iters; ++it) cs[it] = 1.98;
        double Zn = 1.0 / std::sqrt(ws.mu);
        for (int it = 0; it + 1 < n_iters; ++it) {
            double c = cs[it];
            Zn *= c;
            Expr h = expr_add(expr_const(c), expr_scale(t_expr, -(c - 1.0)));
            std::size_t sqs = b.square(h, 2.2);
            std::size_t idt = b.identity(t_expr, 3.2);
            std::size_t idw3 = b.identity(w_expr, 1.5);
            std::size_t idu4 = b.identity(u_expr, XU);
            std::size_t idx4 = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
            b.commit();
            Expr s = b.out(sqs);
            t_expr = b.out(idt);
            w_expr = b.out(idw3);
            u_expr = b.out(idu4);
            if (with_relu_mix) x_expr = b.out(idx4);

            Expr h2 = expr_add(expr_const(c), expr_scale(t_expr, -(c - 1.0)));
            std::size_t prt = b.product(t_expr, s, 3.2, 5.0);
            std::size_t prw = b.product(w_expr, h2, 1.5, 2.2);
            std::size_t idu5 = b.identity(u_expr, XU);
            std::size_t idx5 = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
            b.commit();
            t_expr = b.out(prt);
            w_expr = expr_scale(b.out(prw), 1.0 / c);
            u_expr = b.out(idu5);
            if (with_relu_mix) x_expr = b.out(idx5);
        }

        Expr y;
        if (n_iters >= 1) {
            double c = cs[n_iters - 1];
            Zn *= c;
            std::size_t prv = b.product(u_expr, w_expr, XU, 1.5);
            std::size_t idt2 = b.identity(t_expr, 3.2);
            std::size_t idx6 = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
            b.commit();
            Expr v = b.out(prv);
            t_expr = b.out(idt2);
            if (with_relu_mix) x_expr = b.out(idx6);

            Expr h = expr_add(expr_const(c), expr_scale(t_expr, -(c - 1.0)));
            std::size_t pry = b.product(v, h, 2.5, 2.2);
            std::size_t idx7 = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
            b.commit();
            y = expr_scale(b.out(pry), Zn / c);
            if (with_relu_mix) x_expr = b.out(idx7);
        } else {
            std::size_t pry = b.product(u_expr, w_expr, XU, 1.5);
            std::size_t idx6 = with_relu_mix ? b.identity(x_expr, 1.2) : 0;
            b.commit();
            y = expr_scale(b.out(pry), Zn);
            if (with_relu_mix) x_expr = b.out(idx6);
        }
        if (with_relu_mix) {
            Expr mix = expr_scale(expr_add(y, x_expr), 0.5);
            return b.finish({mix});
        }
        return b.finish({y});
    }
}

}  // namespace

NetworkParameter sqrt_gadget(const Activation& act, double K) {
    check_budget(act, K);
    int D = gadget_depth_budget(K);
    int n_iters = std::max(0, (D - 3) / 2);  // depth 3 + 2n with the folded output step
    WarmStart ws = plan_warm_start(K);
    return build_sqrt_chain(act, K, n_iters, ws, /*from_abs=*/false, /*with_relu_mix=*/false);
}

NetworkParameter abs_gadget(const Activation& act, double K) {
    check_budget(act, K);
    int D = gadget_depth_budget(K);
    int n_iters = std::max(0, (D - 4) / 2);  // one extra layer for the input square
    WarmStart ws = plan_warm_start(K);
    return build_sqrt_chain(act, K, n_iters, ws, /*from_abs=*/true, /*with_relu_mix=*/false);
}

NetworkParameter relu_gadget(const Activation& act, double K) {
    check_budget(act, K);
    int D = gadget_depth_budget(K);
    int n_iters = std::max(0, (D - 4) / 2);
    WarmStart ws = plan_warm_start(K);
    return build_sqrt_chain(act, K, n_iters, ws, /*from_abs=*/true, /*with_relu_mix=*/true);
}

// ============================================================
// ReLU product machinery (sawtooth refinement)
// ============================================================

NetworkParameter relu_square_gadget(int stages) {
    if (stages < 1) throw DomainError("relu square gadget needs stages >= 1");
    NetworkParameter net;
    net.activation = catalog("relu");
    // frame exprs are tracked by hand: nodes per hidden layer are
    //   [rho(g - 1/2), rho(g), rho(p)]  (p >= x^2 >= 0 on [0,1])
    // with g_0 = x and p_0 = x sharing the rho(x) node at layer 1.
    Layer l1 = Layer::zeros(2, 1);
    l1.at(0, 0) = 1.0;
    l1.b[0] = -0.5;  // rho(x - 1/2)
    l1.at(1, 0) = 1.0;  // rho(x)
    net.layers.push_back(l1);
    double inv4 = 0.25;
    // running exprs over the current 2- or 3-node frame:
    // g_s = 2*rho(g_{s-1}) - 4*rho(g_{s-1} - 1/2); p_s = p_{s-1} - g_s / 4^s
    std::vector<double> g_row = {-4.0, 2.0, 0.0};
    std::vector<double> p_row = {4.0 * inv4, 1.0 - 2.0 * inv4, 0.0};  // p_1 = x - g_1/4
    std::size_t frame = 2;
    for (int s = 2; s <= stages; ++s) {
        Layer L = Layer::zeros(3, frame);
        for (std::size_t c = 0; c < frame; ++c) {
            L.at(0, c) = g_row[c];
            L.at(1, c) = g_row[c];
            L.at(2, c) = p_row[c];
        }
        L.b[0] = -0.5;
        net.layers.push_back(L);
        frame = 3;
        double f = std::pow(0.25, s);
        g_row = {-4.0, 2.0, 0.0};
        p_row = {4.0 * f, -2.0 * f, 1.0};
    }
    Layer out = Layer::zeros(1, frame);
    for (std::size_t c = 0; c < frame; ++c) out.at(0, c) = p_row[c];
    net.layers.push_back(out);
    net.validate();
    return net;
}

NetworkParameter relu_product_gadget(int m_layers, double A) {
    if (m_layers < 1) throw DomainError("relu product gadget needs m_layers >= 1");
    if (!(A > 0.0)) throw DomainError("relu product gadget needs A > 0");
    int stages = (m_layers + 1) / 2;
    NetworkParameter net;
    net.activation = catalog("relu");

    // u = (x+y)/(4A) + 1/2, v = (x-y)/(4A) + 1/2, both in [0,1];
    // x y = 4A^2 (sq(u) - u) - 4A^2 (sq(v) - v)
    //     = 4A^2 sum_s (g^v_s - g^u_s)/4^s  (sawtooth decomposition)
    double s4 = 1.0 / (4.0 * A);
    Layer l1 = Layer::zeros(4, 2);
    l1.at(0, 0) = s4;
    l1.at(0, 1) = s4;
    l1.b[0] = 0.0;  // rho(u - 1/2)
    l1.at(1, 0) = s4;
    l1.at(1, 1) = s4;
    l1.b[1] = 0.5;  // rho(u)
    l1.at(2, 0) = s4;
    l1.at(2, 1) = -s4;
    l1.b[2] = 0.0;  // rho(v - 1/2)
    l1.at(3, 0) = s4;
    l1.at(3, 1) = -s4;
    l1.b[3] = 0.5;  // rho(v)
    net.layers.push_back(l1);

    // rows over the frame [gu-1/2, gu, gv-1/2, gv, acc+, acc-]
    auto gu = [](std::vector<double>& row, double f) {
        row[0] += -4.0 * f;
        row[1] += 2.0 * f;
    };
    auto gv = [](std::vector<double>& row, double f) {
        row[2] += -4.0 * f;
        row[3] += 2.0 * f;
    };
    std::size_t frame = 4;
    std::vector<double> acc_row(6, 0.0);  // acc expression over current frame
    bool have_acc = false;
    for (int s = 1; s < stages; ++s) {
        Layer L = Layer::zeros(6, frame);
        std::vector<double> g_u(frame, 0.0), g_v(frame, 0.0);
        gu(g_u, 1.0);
        gv(g_v, 1.0);
        for (std::size_t c = 0; c < frame; ++c) {
            L.at(0, c) = g_u[c];
            L.at(1, c) = g_u[c];
            L.at(2, c) = g_v[c];
            L.at(3, c) = g_v[c];
        }
        L.b[0] = -0.5;
        L.b[2] = -0.5;
        // acc_s = acc_{s-1} + (g^v_s - g^u_s)/4^s evaluated over the current frame
        double f = std::pow(0.25, s);
        std::vector<double> acc_new(frame, 0.0);
        if (have_acc) {
            acc_new[4] += 1.0;
            acc_new[5] -= 1.0;
        }
        gv(acc_new, f);
        gu(acc_new, -f);
        for (std::size_t c = 0; c < frame; ++c) {
            L.at(4, c) = acc_new[c];
            L.at(5, c) = -acc_new[c];
        }
        net.layers.push_back(L);
        frame = 6;
        have_acc = true;
    }
    // output: 4A^2 * (acc_{stages-1} + (g^v - g^u)/4^stages)
    Layer out = Layer::zeros(1, frame);
    std::vector<double> row(frame, 0.0);
    if (have_acc) {
        row[4] += 1.0;
        row[5] -= 1.0;
    }
    double f = std::pow(0.25, stages);
    gv(row, f);
    gu(row, -f);
    for (std::size_t c = 0; c < frame; ++c) out.at(0, c) = 4.0 * A * A * row[c];
    net.layers.push_back(out);
    net.validate();
    return net;
}

// ============================================================
// Sweep harness
// ============================================================

GadgetErrorModel sweep_gadget(const std::string& kind, const Activation& act,
                              const std::vector<double>& Ks, double A, const MultiIndex& m,
                              int alpha, std::size_t grid_n) {
    GadgetErrorModel model;
    model.kind = kind;
    int d = 1;
    if (kind == "square") {
        model.rate_tag = "1/K";
        model.theoretical_exponent = -1.0;
    } else if (kind == "times") {
        model.rate_tag = "A^2/K";
        model.theoretical_exponent = -1.0;
        d = 2;
    } else if (kind == "mono") {
        model.rate_tag = "1/K";
        model.theoretical_exponent = -1.0;
        d = static_cast<int>(m.size());
    } else if (kind == "sqrt") {
        model.rate_tag = "logK/K";
        model.theoretical_exponent = -1.0;
    } else if (kind == "abs" || kind == "relu") {
        model.rate_tag = "1/sqrtK";
        model.theoretical_exponent = -0.5;
    } else {
        throw NameError("unknown gadget kind '" + kind + "'");
    }

    for (double K : Ks) {
        NetworkParameter net;
        RealFn target;
        double lo = -1.0, hi = 1.0;
        if (kind == "square") {
            net = square_gadget(act, K);
            target = [](const std::vector<double>& x) { return x[0] * x[0]; };
        } else if (kind == "times") {
            net = product_gadget(act, K, A);
            lo = -A;
            hi = A;
            target = [](const std::vector<double>& x) { return x[0] * x[1]; };
        } else if (kind == "mono") {
            net = monomial_gadget(act, K, m, alpha);
            lo = 0.0;
            hi = 1.0;
            MultiIndex mi = m;
            target = [mi](const std::vector<double>& x) { return mi_pow(x, mi); };
        } else if (kind == "sqrt") {
            net = sqrt_gadget(act, K);
            lo = 0.0;
            hi = 2.0;
            target = [](const std::vector<double>& x) { return std::sqrt(x[0]); };
        } else if (kind == "abs") {
            net = abs_gadget(act, K);
            target = [](const std::vector<double>& x) { return std::abs(x[0]); };
        } else {
            net = relu_gadget(act, K);
            target = [](const std::vector<double>& x) { return std::max(x[0], 0.0); };
        }
        // dense grid sup oracle
        std::size_t per_dim = d == 1 ? grid_n : static_cast<std::size_t>(std::sqrt(double(grid_n)));
        std::size_t total = d == 1 ? per_dim : per_dim * per_dim;
        std::vector<double> pts(total * d);
        if (d == 1) {
            for (std::size_t i = 0; i < per_dim; ++i)
                pts[i] = lo + (hi - lo) * double(i) / double(per_dim - 1);
        } else {
            for (std::size_t i = 0; i < per_dim; ++i)
                for (std::size_t j = 0; j < per_dim; ++j) {
                    std::size_t k = i * per_dim + j;
                    pts[k * 2] = lo + (hi - lo) * double(i) / double(per_dim - 1);
                    pts[k * 2 + 1] = lo + (hi - lo) * double(j) / double(per_dim - 1);
                }
        }
        auto out = forward_batch(net, pts, total);
        double worst = 0.0;
        std::vector<double> x(d);
        for (std::size_t i = 0; i < total; ++i) {
            for (int j = 0; j < d; ++j) x[j] = pts[i * d + j];
            worst = std::max(worst, std::abs(out[i] - target(x)));
        }
        model.Ks.push_back(K);
        model.sup_errors.push_back(worst);
    }
    model.fit = fit_loglog_slope(model.Ks, model.sup_errors,
                                 [](double K) { return gadget_fp_floor(K); });
    model.fitted_constant = 0.0;
    for (std::size_t i = 0; i < model.Ks.size(); ++i) {
        double K = model.Ks[i];
        double tag = 1.0;
        if (model.rate_tag == "1/K")
            tag = 1.0 / K;
        else if (model.rate_tag == "A^2/K")
            tag = A * A / K;
        else if (model.rate_tag == "logK/K")
            tag = std::log(K) / K;
        else
            tag = 1.0 / std::sqrt(K);
        model.fitted_constant = std::max(model.fitted_constant, model.sup_errors[i] / tag);
    }
    return model;
}

}  // namespace holonet
