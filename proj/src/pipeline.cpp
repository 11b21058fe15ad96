#include "holonet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>

#include "holonet/kernels.hpp"
#include "holonet/relu_lift.hpp"

namespace holonet {

// ============================================================
// Grid and local basis
// ============================================================

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int j = 0; j < d; ++j) s *= static_cast<std::size_t>(M + 1);
    return s;
}

std::vector<double> Grid::point(std::size_t flat) const {
    std::vector<double> z(d);
    for (int j = 0; j < d; ++j) {
        z[j] = double(flat % (M + 1)) / M;
        flat /= (M + 1);
    }
    return z;
}

double local_basis(const std::vector<double>& z, int M, const std::vector<double>& x) {
    double phi = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        double w = 1.0 - M * std::abs(x[j] - z[j]);
        if (w <= 0.0) return 0.0;
        phi *= w;
    }
    return phi;
}

// ============================================================
// Taylor patches
// ============================================================

double TaylorPatch::eval_taylor(const std::vector<double>& x) const {
    double s = 0.0;
    std::vector<double> dx(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) dx[j] = x[j] - center[j];
    for (std::size_t i = 0; i < indices.size(); ++i) s += taylor_coeff[i] * mi_pow(dx, indices[i]);
    return s;
}

double TaylorPatch::eval_monomial(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < indices.size(); ++i) s += monomial_coeff[i] * mi_pow(x, indices[i]);
    return s;
}

TaylorPatch make_patch(const HolderFunction& f, const std::vector<double>& z) {
    int d = f.dimension;
    int p = f.taylor_degree();
    TaylorPatch patch;
    patch.center = z;
    patch.indices = multi_indices_up_to(d, p);
    patch.taylor_coeff.resize(patch.indices.size());
    patch.monomial_coeff.assign(patch.indices.size(), 0.0);
    for (std::size_t i = 0; i < patch.indices.size(); ++i) {
        const MultiIndex& m = patch.indices[i];
        double dmf = mi_order(m) == 0 ? f.eval(z) : f.deriv(m, z);
        patch.taylor_coeff[i] = dmf / mi_factorial(m);
    }
    // expand sum_m taylor_coeff (x-z)^m into the monomial basis
    for (std::size_t i = 0; i < patch.indices.size(); ++i) {
        const MultiIndex& mt = patch.indices[i];
        // loop over all m <= mt componentwise
        MultiIndex m(d, 0);
        while (true) {
            double w = patch.taylor_coeff[i];
            for (int j = 0; j < d; ++j)
                w *= binom(mt[j], m[j]) * std::pow(-z[j], mt[j] - m[j]);
            // locate m in the index list (graded lexicographic order)
            for (std::size_t k = 0; k < patch.indices.size(); ++k)
                if (patch.indices[k] == m) {
                    patch.monomial_coeff[k] += w;
                    break;
                }
            int j = 0;
            while (j < d) {
                if (m[j] < mt[j]) {
                    ++m[j];
                    break;
                }
                m[j] = 0;
                ++j;
            }
            if (j == d) break;
        }
    }
    return patch;
}

PiecewiseTaylorSurrogate surrogate(const HolderFunction& f, int M) {
    if (M < 1) throw DomainError("surrogate needs M >= 1");
    if (f.taylor_degree() > 0 && !f.derivative)
        throw CapabilityError("surrogate: target lacks the required derivative oracle");
    PiecewiseTaylorSurrogate s;
    s.grid.d = f.dimension;
    s.grid.M = M;
    std::size_t n = s.grid.size();
    s.patches.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.patches.push_back(make_patch(f, s.grid.point(i)));
    return s;
}

double PiecewiseTaylorSurrogate::eval(const std::vector<double>& x) const {
    int d = grid.d, M = grid.M;
    // only the <= 2^d surrounding grid points carry nonzero hats
    std::vector<std::vector<int>> cand(d);
    for (int j = 0; j < d; ++j) {
        int lo = static_cast<int>(std::floor(x[j] * M));
        for (int i = std::max(0, lo); i <= std::min(M, lo + 1); ++i) cand[j].push_back(i);
        if (cand[j].empty()) cand[j].push_back(std::min(M, std::max(0, lo)));
    }
    double sum = 0.0;
    std::vector<int> pick(d, 0);
    while (true) {
        std::size_t flat = 0;
        for (int j = d - 1; j >= 0; --j) flat = flat * (M + 1) + cand[j][pick[j]];
        const TaylorPatch& patch = patches[flat];
        double phi = local_basis(patch.center, M, x);
        if (phi > 0.0) sum += phi * patch.eval_taylor(x);
        int j = 0;
        while (j < d) {
            if (pick[j] + 1 < static_cast<int>(cand[j].size())) {
                ++pick[j];
                break;
            }
            pick[j] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return sum;
}

// ============================================================
// Evaluation schemes
// ============================================================

EvalScheme EvalScheme::dense_grid(int d) {
    EvalScheme s;
    s.kind = Kind::GridScheme;
    s.n_per_dim = d == 1 ? 100000 : (d == 2 ? 512 : 64);
    return s;
}

EvalScheme EvalScheme::random(std::size_t n, std::uint64_t seed) {
    EvalScheme s;
    s.kind = Kind::RandomScheme;
    s.n_random = n;
    s.seed = seed;
    return s;
}

EvalScheme EvalScheme::hybrid(int d, std::size_t n_random, std::uint64_t seed) {
    EvalScheme s = dense_grid(d);
    s.kind = Kind::Hybrid;
    s.n_random = n_random;
    s.seed = seed;
    return s;
}

std::vector<double> EvalScheme::points(int d) const {
    std::vector<double> pts;
    if (kind != Kind::RandomScheme) {
        std::size_t per = n_per_dim ? n_per_dim : EvalScheme::dense_grid(d).n_per_dim;
        std::size_t total = 1;
        for (int j = 0; j < d; ++j) total *= per;
        pts.reserve(total * d);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (int j = 0; j < d; ++j) {
                pts.push_back(double(rem % per) / double(per - 1));
                rem /= per;
            }
        }
    }
    if (kind != Kind::GridScheme) {
        auto rng = seeded_rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < n_random * d; ++i) pts.push_back(u(rng));
    }
    return pts;
}

// ============================================================
// Sup-error measurement
// ============================================================

double measure_sup_error(const RealFunction& f, const RealFunction& g, int d,
                         const EvalScheme& scheme) {
    std::vector<double> pts = scheme.points(d);
    std::size_t n = pts.size() / d;
    std::mutex mx;
    double worst = 0.0;
    parallel_for(n, [&](std::size_t b, std::size_t e) {
        double local = 0.0;
        std::vector<double> x(d);
        for (std::size_t i = b; i < e; ++i) {
            for (int j = 0; j < d; ++j) x[j] = pts[i * d + j];
            local = std::max(local, std::abs(f(x) - g(x)));
        }
        std::lock_guard<std::mutex> lk(mx);
        worst = std::max(worst, local);
    });
    return worst;
}

namespace {

double net_sup_vs(const NetworkParameter& net, const RealFunction& g, int d,
                  const std::vector<double>& pts) {
    std::size_t n = pts.size() / d;
    const std::size_t chunk = 4096;
    std::size_t n_chunks = (n + chunk - 1) / chunk;
    std::mutex mx;
    double worst = 0.0;
    parallel_for(n_chunks, [&](std::size_t cb, std::size_t ce) {
        double local = 0.0;
        std::vector<double> x(d);
        for (std::size_t ci = cb; ci < ce; ++ci) {
            std::size_t b = ci * chunk, e = std::min(n, b + chunk);
            std::vector<double> sub(pts.begin() + b * d, pts.begin() + e * d);
            auto out = forward_batch(net, sub, e - b);
            for (std::size_t i = 0; i < e - b; ++i) {
                for (int j = 0; j < d; ++j) x[j] = sub[i * d + j];
                local = std::max(local, std::abs(out[i] - g(x)));
            }
        }
        std::lock_guard<std::mutex> lk(mx);
        worst = std::max(worst, local);
    });
    return worst;
}

}  // namespace

double measure_sup_error(const NetworkParameter& net, const RealFunction& g, int d,
                         const EvalScheme& scheme) {
    return net_sup_vs(net, g, d, scheme.points(d));
}

double measure_sup_error(const NetworkParameter& net, const HolderFunction& f,
                         const EvalScheme& scheme) {
    return measure_sup_error(
        net, [&f](const std::vector<double>& x) { return f.eval(x); }, f.dimension, scheme);
}

// ============================================================
// Budgets
// ============================================================

AssemblyBudget AssemblyBudget::from_epsilon(double eps, const HolderFunction& f, double K_cap) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon must lie in (0,1)");
    AssemblyBudget b;
    b.epsilon = eps;
    b.K_cap = K_cap;
    double alpha = f.alpha;
    int d = f.dimension;
    b.M = std::max(1, static_cast<int>(std::ceil(std::pow(eps, -1.0 / alpha))) - 1);
    b.K_requested = std::pow(eps, -(2.0 * d / alpha + 2.0));
    b.K = std::min(b.K_requested, K_cap);
    b.relu_m_layers =
        static_cast<int>(std::ceil((d / alpha + 1.0) * std::log2(1.0 / eps))) + 6;
    return b;
}

// ============================================================
// Shared assembly helpers
// ============================================================

namespace {

// network computing x -> x_j - z_j (depth 0)
NetworkParameter coordinate_shift(int d, int j, double zj, const Activation& act) {
    NetworkParameter net;
    net.activation = act;
    Layer l = Layer::zeros(1, d);
    l.at(0, j) = 1.0;
    l.b[0] = -zj;
    net.layers = {l};
    return net;
}

NetworkParameter pad_depth_locq(NetworkParameter net, std::size_t target_depth,
                                const Activation& act, double K, double range,
                                double* alignment_budget) {
    while (net.depth() < target_depth) {
        NetworkParameter id = identity_gadget(act, K, range);
        net = stack_compose(id, net);
        if (alignment_budget) *alignment_budget += range / K;  // documented estimate
    }
    return net;
}

std::vector<double> select_pair(std::size_t total, std::size_t i, std::size_t j) {
    std::vector<double> pick(2 * total, 0.0);
    pick[i] = 1.0;
    pick[total + j] = 1.0;
    return pick;
}

ApproximationReport base_report(const HolderFunction& f, const std::string& act_name,
                                const AssemblyBudget& budget) {
    ApproximationReport r;
    r.target = f.name;
    r.activation = act_name;
    r.epsilon = budget.epsilon;
    r.M = budget.M;
    r.K = budget.K;
    r.K_requested = budget.K_requested;
    r.relu_m_layers = budget.relu_m_layers;
    double eps = budget.epsilon, alpha = f.alpha;
    int d = f.dimension;
    r.theory_depth = std::log(1.0 / eps);
    r.theory_width = std::pow(eps, -double(d) / alpha);
    r.theory_sparsity = r.theory_width * r.theory_depth;
    r.theory_magnitude = std::pow(eps, -4.0 * (d / alpha + 1.0));
    return r;
}

void measure_into_report(const NetworkParameter& net, const HolderFunction& f,
                         const PiecewiseTaylorSurrogate& pm, const EvalScheme& scheme,
                         ApproximationReport& r) {
    r.net_metrics = metrics(net);
    if (r.net_metrics.magnitude > 1e15)
        throw NumericError("assembled network magnitude exceeds 1e15; raise epsilon");
    int d = f.dimension;
    auto f_fn = [&f](const std::vector<double>& x) { return f.eval(x); };
    auto pm_fn = [&pm](const std::vector<double>& x) { return pm.eval(x); };
    EvalScheme grid = scheme;
    grid.kind = EvalScheme::Kind::GridScheme;
    EvalScheme rnd = EvalScheme::random(20000, scheme.seed);
    r.sup_err_grid = measure_sup_error(net, f_fn, d, grid);
    r.sup_err_random = measure_sup_error(net, f_fn, d, rnd);
    r.surrogate_err = measure_sup_error(pm_fn, f_fn, d, grid);
    r.net_vs_surrogate_err = measure_sup_error(net, pm_fn, d, grid);
}

}  // namespace

// ============================================================
// Locally-quadratic assembly
// ============================================================

std::pair<NetworkParameter, ApproximationReport> assemble_locquad(
    const HolderFunction& f, const Activation& act, const AssemblyBudget& budget,
    const EvalScheme& scheme) {
    const auto& q = act.as_locq();
    (void)q;
    double K = budget.K;
    if (!(K > act.gadget_k0))
        throw BudgetError("assembly K below the activation's K0; raise epsilon or K_cap");
    int d = f.dimension;
    int p = f.taylor_degree();
    int M = budget.M;

    PiecewiseTaylorSurrogate pm = surrogate(f, M);
    auto indices = multi_indices_up_to(d, p);
    std::size_t n_mono = indices.size();
    std::size_t n_patch = pm.patches.size();

    ApproximationReport report = base_report(f, act.name, budget);

    // ---- monomial bank (shared across patches)
    std::vector<NetworkParameter> bank;
    std::size_t mono_depth = 0;
    for (const auto& m : indices) {
        NetworkParameter g = monomial_gadget(act, K, m, std::max(1, p));
        mono_depth = std::max(mono_depth, g.depth());
        bank.push_back(std::move(g));
    }

    // ---- hat machinery per grid point
    const double hat_arg_scale = 1.2;  // keeps the relu-gadget argument inside [-1,1]
    NetworkParameter abs_g = abs_gadget(act, K);
    NetworkParameter relu_g = relu_gadget(act, K);
    std::size_t hat_depth_1d = abs_g.depth() + relu_g.depth();
    std::size_t hat_tree_depth = d > 1 ? static_cast<std::size_t>(std::ceil(std::log2(d))) : 0;
    std::size_t hat_depth = hat_depth_1d + hat_tree_depth;
    std::size_t common_depth = std::max(hat_depth, mono_depth);

    double align_budget = 0.0;
    for (auto& g : bank) g = pad_depth_locq(std::move(g), common_depth, act, K, 1.3, &align_budget);

    for (std::size_t pi = 0; pi < n_patch; ++pi) {
        const auto& z = pm.patches[pi].center;
        std::vector<NetworkParameter> coords;
        for (int j = 0; j < d; ++j) {
            // a_j = |x_j - z_j|, u = (1/M - a_j)/c, hat_j = (M c) relu(u)
            NetworkParameter a = stack_compose(abs_g, coordinate_shift(d, j, z[j], act));
            NetworkParameter u = affine_post(a, {-1.0 / hat_arg_scale}, 1,
                                             {1.0 / (M * hat_arg_scale)});
            NetworkParameter h = stack_compose(relu_g, u);
            h = affine_post(h, {double(M) * hat_arg_scale}, 1, {0.0});
            coords.push_back(std::move(h));
        }
        NetworkParameter hat;
        if (d == 1) {
            hat = std::move(coords[0]);
        } else {
            // pairwise product tree over the coordinate hats
            std::vector<NetworkParameter> level = std::move(coords);
            while (level.size() > 1) {
                // align all current levels, multiply pairs
                std::vector<NetworkParameter> next;
                NetworkParameter wide = parallel_compose(level);
                std::size_t pairs = level.size() / 2;
                std::vector<NetworkParameter> blocks;
                NetworkParameter pg = product_gadget(act, K, hat_arg_scale);
                for (std::size_t pr = 0; pr < pairs; ++pr)
                    blocks.push_back(affine_pre(pg, select_pair(level.size(), 2 * pr, 2 * pr + 1),
                                                level.size(), {0.0, 0.0}));
                if (level.size() % 2 == 1) {
                    // odd element passes through one more layer
                    std::vector<double> pick(level.size(), 0.0);
                    pick[level.size() - 1] = 1.0;
                    blocks.push_back(affine_pre(identity_gadget(act, K, hat_arg_scale), pick,
                                                level.size(), {0.0}));
                    align_budget += hat_arg_scale / K;
                }
                next.push_back(stack_compose(parallel_compose(blocks), wide));
                level = std::move(next);
            }
            hat = std::move(level[0]);
        }
        hat = pad_depth_locq(std::move(hat), common_depth, act, K, 1.3, &align_budget);
        bank.push_back(std::move(hat));
    }

    NetworkParameter wide = parallel_compose(bank);

    // ---- product bank over (patch, monomial) pairs with nonzero weights
    const double A_final = 1.25;
    NetworkParameter pg = product_gadget(act, K, A_final);
    std::vector<NetworkParameter> blocks;
    std::vector<double> weights;
    for (std::size_t pi = 0; pi < n_patch; ++pi) {
        for (std::size_t mi = 0; mi < n_mono; ++mi) {
            double beta = pm.patches[pi].monomial_coeff[mi];
            if (beta == 0.0) continue;
            blocks.push_back(affine_pre(pg, select_pair(n_mono + n_patch, mi, n_mono + pi),
                                        n_mono + n_patch, {0.0, 0.0}));
            weights.push_back(beta);
        }
    }
    if (blocks.empty()) {
        // identically-zero surrogate: emit the zero network with matching depth
        blocks.push_back(affine_pre(identity_gadget(act, K, 1.0),
                                    std::vector<double>(n_mono + n_patch, 0.0), n_mono + n_patch,
                                    {0.0}));
        weights.push_back(0.0);
    }
    NetworkParameter products = stack_compose(parallel_compose(blocks), wide);
    NetworkParameter net = affine_post(products, weights, 1, {0.0});

    report.alignment_error_budget = align_budget;
    measure_into_report(net, f, pm, scheme, report);
    return {std::move(net), std::move(report)};
}

// ============================================================
// ReLU assembly
// ============================================================

namespace {

// exact hat (1 - M|x_j - z_j|)_+ as a depth-2 ReLU net
NetworkParameter relu_hat_1d(int d, int j, double zj, int M, const Activation& relu) {
    NetworkParameter net;
    net.activation = relu;
    Layer l1 = Layer::zeros(2, d);
    l1.at(0, j) = 1.0;
    l1.b[0] = -zj;
    l1.at(1, j) = -1.0;
    l1.b[1] = zj;
    Layer l2 = Layer::zeros(1, 2);
    l2.at(0, 0) = -double(M);
    l2.at(0, 1) = -double(M);
    l2.b[0] = 1.0;
    Layer l3 = Layer::identity(1);
    net.layers = {l1, l2, l3};
    return net;
}

// binary product tree with relu product gadgets; inputs assumed in [0, A]
NetworkParameter relu_tree(std::vector<NetworkParameter> level, int m_layers, double A,
                           const Activation& relu) {
    while (level.size() > 1) {
        // equalize depths first
        std::size_t dmax = 0;
        for (const auto& n : level) dmax = std::max(dmax, n.depth());
        for (auto& n : level)
            if (n.depth() < dmax) n = extend_depth_exact_pwl(n, dmax - n.depth());
        NetworkParameter wide = parallel_compose(level);
        std::vector<NetworkParameter> blocks;
        NetworkParameter pg = relu_product_gadget(m_layers, A);
        std::size_t pairs = level.size() / 2;
        for (std::size_t pr = 0; pr < pairs; ++pr)
            blocks.push_back(affine_pre(pg, select_pair(level.size(), 2 * pr, 2 * pr + 1),
                                        level.size(), {0.0, 0.0}));
        if (level.size() % 2 == 1) {
            std::vector<double> pick(level.size(), 0.0);
            pick[level.size() - 1] = 1.0;
            NetworkParameter pass;
            pass.activation = relu;
            Layer l = Layer::zeros(1, level.size());
            for (std::size_t c = 0; c < level.size(); ++c) l.at(0, c) = pick[c];
            pass.layers = {l};
            pass = extend_depth_exact_pwl(pass, pg.depth());
            blocks.push_back(std::move(pass));
        }
        std::vector<NetworkParameter> next;
        next.push_back(stack_compose(parallel_compose(blocks), wide));
        level = std::move(next);
    }
    return std::move(level[0]);
}

}  // namespace

std::pair<NetworkParameter, ApproximationReport> assemble_relu(
    const HolderFunction& f, const AssemblyBudget& budget, const EvalScheme& scheme) {
    Activation relu = catalog("relu");
    int d = f.dimension;
    int p = f.taylor_degree();
    int M = budget.M;
    int m_layers = budget.relu_m_layers;

    PiecewiseTaylorSurrogate pm = surrogate(f, M);
    auto indices = multi_indices_up_to(d, p);
    std::size_t n_mono = indices.size();
    std::size_t n_patch = pm.patches.size();

    ApproximationReport report = base_report(f, "relu", budget);

    std::vector<NetworkParameter> bank;
    for (const auto& m : indices) {
        int total = mi_order(m);
        if (total == 0) {
            NetworkParameter one;
            one.activation = relu;
            Layer l = Layer::zeros(1, d);
            l.b[0] = 1.0;
            one.layers = {l};
            bank.push_back(std::move(one));
            continue;
        }
        std::vector<NetworkParameter> leaves;
        for (int j = 0; j < d; ++j)
            for (int r = 0; r < m[j]; ++r) {
                NetworkParameter sel;
                sel.activation = relu;
                Layer l = Layer::zeros(1, d);
                l.at(0, j) = 1.0;
                sel.layers = {l};
                leaves.push_back(std::move(sel));
            }
        bank.push_back(relu_tree(std::move(leaves), m_layers, 1.05, relu));
    }
    for (std::size_t pi = 0; pi < n_patch; ++pi) {
        const auto& z = pm.patches[pi].center;
        std::vector<NetworkParameter> coords;
        for (int j = 0; j < d; ++j) coords.push_back(relu_hat_1d(d, j, z[j], M, relu));
        bank.push_back(relu_tree(std::move(coords), m_layers, 1.05, relu));
    }
    std::size_t dmax = 0;
    for (const auto& n : bank) dmax = std::max(dmax, n.depth());
    for (auto& n : bank)
        if (n.depth() < dmax) n = extend_depth_exact_pwl(n, dmax - n.depth());
    NetworkParameter wide = parallel_compose(bank);

    NetworkParameter pg = relu_product_gadget(m_layers, 1.25);
    std::vector<NetworkParameter> blocks;
    std::vector<double> weights;
    for (std::size_t pi = 0; pi < n_patch; ++pi)
        for (std::size_t mi = 0; mi < n_mono; ++mi) {
            double beta = pm.patches[pi].monomial_coeff[mi];
            if (beta == 0.0) continue;
            blocks.push_back(affine_pre(pg, select_pair(n_mono + n_patch, mi, n_mono + pi),
                                        n_mono + n_patch, {0.0, 0.0}));
            weights.push_back(beta);
        }
    if (blocks.empty()) {
        NetworkParameter zero;
        zero.activation = relu;
        Layer l = Layer::zeros(1, n_mono + n_patch);
        zero.layers = {l};
        zero = extend_depth_exact_pwl(zero, pg.depth());
        blocks.push_back(std::move(zero));
        weights.push_back(0.0);
    }
    NetworkParameter products = stack_compose(parallel_compose(blocks), wide);
    NetworkParameter net = affine_post(products, weights, 1, {0.0});

    measure_into_report(net, f, pm, scheme, report);
    return {std::move(net), std::move(report)};
}

std::pair<NetworkParameter, ApproximationReport> assemble_pwl(
    const HolderFunction& f, const Activation& act, const AssemblyBudget& budget,
    const EvalScheme& scheme) {
    auto [relu_net, relu_report] = assemble_relu(f, budget, scheme);
    Box domain = Box::unit(f.dimension);
    LiftPlan plan = plan_lift(relu_net, act, domain);
    NetworkParameter lifted = lift(relu_net, act, plan);
    ApproximationReport report = relu_report;
    report.activation = act.name;
    PiecewiseTaylorSurrogate pm = surrogate(f, budget.M);
    measure_into_report(lifted, f, pm, scheme, report);
    return {std::move(lifted), std::move(report)};
}

// ============================================================
// CSV
// ============================================================

std::string report_csv_header() {
    return "eps,M,K,depth,width,sparsity,magnitude,sup_err_grid,sup_err_rand,surrogate_err";
}

std::string report_csv_row(const ApproximationReport& r) {
    std::ostringstream os;
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };
    os << num(r.epsilon) << "," << r.M << "," << num(r.K) << "," << r.net_metrics.depth << ","
       << r.net_metrics.width << "," << r.net_metrics.sparsity << ","
       << num(r.net_metrics.magnitude) << "," << num(r.sup_err_grid) << ","
       << num(r.sup_err_random) << "," << num(r.surrogate_err);
    return os.str();
}

}  // namespace holonet
