#include "holonet/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "holonet/kernels.hpp"
#include "json.hpp"

namespace holonet {

// ============================================================
// Layer / NetworkParameter basics
// ============================================================

Layer Layer::zeros(std::size_t rows, std::size_t cols) {
    Layer l;
    l.rows = rows;
    l.cols = cols;
    l.w.assign(rows * cols, 0.0);
    l.b.assign(rows, 0.0);
    return l;
}

Layer Layer::identity(std::size_t n) {
    Layer l = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) l.at(i, i) = 1.0;
    return l;
}

void NetworkParameter::validate() const {
    if (layers.empty()) throw ShapeError("network needs at least one affine map");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const Layer& L = layers[l];
        if (L.w.size() != L.rows * L.cols || L.b.size() != L.rows)
            throw ShapeError("layer " + std::to_string(l) + " has inconsistent storage");
        if (l + 1 < layers.size() && layers[l + 1].cols != L.rows)
            throw ShapeError("dimension chaining broken between layers " + std::to_string(l) +
                             " and " + std::to_string(l + 1));
    }
}

NetworkMetrics metrics(const NetworkParameter& net) {
    NetworkMetrics m;
    m.depth = net.depth();
    for (std::size_t l = 0; l + 1 < net.layers.size(); ++l)
        m.width = std::max(m.width, net.layers[l].rows);
    for (const Layer& L : net.layers) {
        for (double v : L.w) {
            if (v != 0.0) ++m.sparsity;
            m.magnitude = std::max(m.magnitude, std::abs(v));
        }
        for (double v : L.b) {
            if (v != 0.0) ++m.sparsity;
            m.magnitude = std::max(m.magnitude, std::abs(v));
        }
    }
    return m;
}

bool in_class(const NetworkParameter& net, const NetworkClassSpec& spec) {
    NetworkMetrics m = metrics(net);
    return m.depth <= spec.max_depth && m.width <= spec.max_width &&
           m.sparsity <= spec.max_sparsity && m.magnitude <= spec.max_magnitude &&
           net.input_dim() == spec.input_dim && net.output_dim() == spec.output_dim;
}

// ============================================================
// Forward evaluation
// ============================================================

std::vector<double> forward(const NetworkParameter& net, const std::vector<double>& x) {
    if (x.size() != net.input_dim())
        throw ShapeError("forward: input has dim " + std::to_string(x.size()) + ", expected " +
                         std::to_string(net.input_dim()));
    for (double v : x)
        if (!std::isfinite(v)) throw NumericError("forward: non-finite input");
    std::vector<double> cur = x, next;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& L = net.layers[l];
        next.assign(L.rows, 0.0);
        for (std::size_t r = 0; r < L.rows; ++r) {
            double acc = L.b[r];
            const double* wr = L.w.data() + r * L.cols;
            for (std::size_t c = 0; c < L.cols; ++c) acc += wr[c] * cur[c];
            next[r] = acc;
        }
        bool hidden = (l + 1 < net.layers.size());
        for (double& v : next) {
            if (!std::isfinite(v))
                throw NumericError("forward: non-finite value after layer " + std::to_string(l + 1));
            if (hidden) v = net.activation.eval(v);
        }
        cur.swap(next);
    }
    return cur;
}

namespace {

void activation_batch(const Activation& act, double* y, std::size_t count) {
    if (act.is_pwl()) {
        const auto& p = *act.pwl;
        if (p.breakpoints.size() == 1 && p.breakpoints[0] == 0.0 && p.knot_values[0] == 0.0) {
            if (p.slopes[0] == 0.0 && p.slopes[1] == 1.0) {
                kernels::relu_batch(y, count);
                return;
            }
            if (p.slopes[1] == 1.0) {
                kernels::leaky_relu_batch(y, count, p.slopes[0]);
                return;
            }
        }
        for (std::size_t i = 0; i < count; ++i) y[i] = p.eval(y[i]);
        return;
    }
    const auto& q = *act.locq;
    for (std::size_t i = 0; i < count; ++i) y[i] = q.value(y[i]);
}

}  // namespace

std::vector<double> forward_batch(const NetworkParameter& net, const std::vector<double>& xs,
                                  std::size_t n) {
    std::size_t d = net.input_dim();
    if (xs.size() != n * d) throw ShapeError("forward_batch: point buffer size mismatch");
    std::size_t maxw = d;
    for (const Layer& L : net.layers) maxw = std::max(maxw, L.rows);
    // node-major staging: buf[node * n + j]
    std::vector<double> cur(maxw * n), next(maxw * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < d; ++c) cur[c * n + j] = xs[j * d + c];
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& L = net.layers[l];
        kernels::affine_batch(L.w.data(), L.b.data(), L.rows, L.cols, cur.data(), n, next.data());
        if (l + 1 < net.layers.size()) activation_batch(net.activation, next.data(), L.rows * n);
        cur.swap(next);
    }
    std::size_t o = net.output_dim();
    std::vector<double> out(n * o);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < o; ++r) out[j * o + r] = cur[r * n + j];
    for (double v : out)
        if (!std::isfinite(v)) throw NumericError("forward_batch: non-finite output");
    return out;
}

// ============================================================
// Composition
// ============================================================

NetworkParameter parallel_compose(const std::vector<NetworkParameter>& nets) {
    if (nets.empty()) throw ShapeError("parallel_compose: empty list");
    std::size_t d = nets.front().input_dim();
    std::size_t depth = nets.front().depth();
    for (const auto& net : nets) {
        if (net.input_dim() != d) throw ShapeError("parallel_compose: input dims differ");
        if (net.depth() != depth) throw ShapeError("parallel_compose: depths differ (align first)");
    }
    NetworkParameter out;
    out.activation = nets.front().activation;
    for (std::size_t l = 0; l <= depth; ++l) {
        std::size_t rows = 0, cols = 0;
        for (const auto& net : nets) {
            rows += net.layers[l].rows;
            cols += net.layers[l].cols;
        }
        if (l == 0) cols = d;  // the input is shared, not concatenated
        Layer L = Layer::zeros(rows, cols);
        std::size_t r0 = 0, c0 = 0;
        for (const auto& net : nets) {
            const Layer& B = net.layers[l];
            for (std::size_t r = 0; r < B.rows; ++r) {
                for (std::size_t c = 0; c < B.cols; ++c)
                    L.at(r0 + r, (l == 0 ? c : c0 + c)) = B.at(r, c);
                L.b[r0 + r] = B.b[r];
            }
            r0 += B.rows;
            c0 += B.cols;
        }
        out.layers.push_back(std::move(L));
    }
    out.validate();
    return out;
}

NetworkParameter stack_compose(const NetworkParameter& outer, const NetworkParameter& inner) {
    if (outer.input_dim() != inner.output_dim())
        throw ShapeError("stack_compose: outer input dim != inner output dim");
    if (inner.depth() > 0 && outer.depth() > 0 && inner.activation.name != outer.activation.name)
        throw ShapeError("stack_compose: mixed activations");
    NetworkParameter out;
    out.activation = inner.depth() > 0 ? inner.activation : outer.activation;
    out.layers.assign(inner.layers.begin(), inner.layers.end() - 1);
    // merge inner's output affine with outer's first affine
    const Layer& A = inner.layers.back();   // k x m
    const Layer& B = outer.layers.front();  // r x k
    Layer merged = Layer::zeros(B.rows, A.cols);
    for (std::size_t r = 0; r < B.rows; ++r) {
        for (std::size_t c = 0; c < A.cols; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < A.rows; ++k) acc += B.at(r, k) * A.at(k, c);
            merged.at(r, c) = acc;
        }
        double acc = B.b[r];
        for (std::size_t k = 0; k < A.rows; ++k) acc += B.at(r, k) * A.b[k];
        merged.b[r] = acc;
    }
    out.layers.push_back(std::move(merged));
    out.layers.insert(out.layers.end(), outer.layers.begin() + 1, outer.layers.end());
    out.validate();
    return out;
}

NetworkParameter affine_pre(const NetworkParameter& net, const std::vector<double>& A,
                            std::size_t new_input_dim, const std::vector<double>& c) {
    std::size_t m = net.input_dim();
    if (A.size() != m * new_input_dim || c.size() != m)
        throw ShapeError("affine_pre: matrix shape mismatch");
    NetworkParameter out = net;
    const Layer& W = net.layers.front();
    Layer L = Layer::zeros(W.rows, new_input_dim);
    for (std::size_t r = 0; r < W.rows; ++r) {
        for (std::size_t j = 0; j < new_input_dim; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k) acc += W.at(r, k) * A[k * new_input_dim + j];
            L.at(r, j) = acc;
        }
        double acc = W.b[r];
        for (std::size_t k = 0; k < m; ++k) acc += W.at(r, k) * c[k];
        L.b[r] = acc;
    }
    out.layers.front() = std::move(L);
    out.validate();
    return out;
}

NetworkParameter affine_post(const NetworkParameter& net, const std::vector<double>& A,
                             std::size_t new_output_dim, const std::vector<double>& c) {
    std::size_t o = net.output_dim();
    if (A.size() != new_output_dim * o || c.size() != new_output_dim)
        throw ShapeError("affine_post: matrix shape mismatch");
    NetworkParameter out = net;
    const Layer& W = net.layers.back();
    Layer L = Layer::zeros(new_output_dim, W.cols);
    for (std::size_t r = 0; r < new_output_dim; ++r) {
        for (std::size_t j = 0; j < W.cols; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < o; ++k) acc += A[r * o + k] * W.at(k, j);
            L.at(r, j) = acc;
        }
        double acc = c[r];
        for (std::size_t k = 0; k < o; ++k) acc += A[r * o + k] * W.b[k];
        L.b[r] = acc;
    }
    out.layers.back() = std::move(L);
    out.validate();
    return out;
}

NetworkParameter extend_depth_exact_pwl(const NetworkParameter& net, std::size_t extra_layers) {
    if (extra_layers == 0) return net;
    // Exact passthrough needs x = (sigma(x) - sigma(-x)) / (s0 + s1), which
    // holds on the whole line for the ReLU family: single breakpoint at 0,
    // value 0 there, and slopes summing to something nonzero.
    if (!net.activation.is_pwl())
        throw CapabilityError("exact depth extension needs a piecewise-linear activation");
    const auto& p = net.activation.as_pwl();
    if (p.breakpoints.size() != 1 || p.breakpoints[0] != 0.0 || p.knot_values[0] != 0.0 ||
        p.slopes[0] + p.slopes[1] == 0.0)
        throw CapabilityError("exact depth extension implemented for the ReLU family only");
    double denom = p.slopes[0] + p.slopes[1];

    NetworkParameter out = net;
    for (std::size_t e = 0; e < extra_layers; ++e) {
        Layer last = out.layers.back();
        std::size_t o = last.rows;
        Layer split = Layer::zeros(2 * o, last.cols);
        for (std::size_t r = 0; r < o; ++r) {
            for (std::size_t c = 0; c < last.cols; ++c) {
                double v = last.at(r, c);
                split.at(r, c) = v;
                split.at(o + r, c) = (v == 0.0) ? 0.0 : -v;
            }
            split.b[r] = last.b[r];
            split.b[o + r] = (last.b[r] == 0.0) ? 0.0 : -last.b[r];
        }
        Layer recomb = Layer::zeros(o, 2 * o);
        for (std::size_t r = 0; r < o; ++r) {
            recomb.at(r, r) = 1.0 / denom;
            recomb.at(r, o + r) = -1.0 / denom;
        }
        out.layers.back() = std::move(split);
        out.layers.push_back(std::move(recomb));
    }
    out.validate();
    return out;
}

// ============================================================
// JSON serialization
// ============================================================

std::string to_json(const NetworkParameter& net) {
    nlohmann::json doc;
    doc["format"] = "holonet-network";
    doc["version"] = 1;
    doc["activation"] = net.activation.name;
    nlohmann::json layers = nlohmann::json::array();
    for (const Layer& L : net.layers) {
        nlohmann::json jl;
        jl["rows"] = L.rows;
        jl["cols"] = L.cols;
        jl["weights"] = L.w;  // row-major
        jl["bias"] = L.b;
        layers.push_back(std::move(jl));
    }
    doc["layers"] = std::move(layers);
    return doc.dump(2);
}

NetworkParameter from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.value("format", "") != "holonet-network")
        throw DomainError("not a holonet network document");
    if (doc.value("version", 0) != 1) throw DomainError("unsupported network document version");
    NetworkParameter net;
    net.activation = catalog(doc.at("activation").get<std::string>());
    for (const auto& jl : doc.at("layers")) {
        Layer L;
        L.rows = jl.at("rows").get<std::size_t>();
        L.cols = jl.at("cols").get<std::size_t>();
        L.w = jl.at("weights").get<std::vector<double>>();
        L.b = jl.at("bias").get<std::vector<double>>();
        net.layers.push_back(std::move(L));
    }
    net.validate();
    return net;
}

void save_network(const NetworkParameter& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open '" + path + "' for writing");
    out << to_json(net) << "\n";
}

NetworkParameter load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace holonet
