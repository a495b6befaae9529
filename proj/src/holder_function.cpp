#include <holderlab/holder_function.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <holderlab/parallel.hpp>

namespace holderlab {

namespace {
constexpr double kDefaultTailTol = 0x1.0p-40;
}

double probe_value(const SnowflakeEmbedding& embedding, std::span<const double> t, double x) {
    thread_local std::vector<double> scratch;
    scratch.resize(static_cast<std::size_t>(embedding.dim));
    embedding.eval_into(x, scratch);
    double acc = 0.0;
    for (std::size_t i = 0; i < scratch.size(); ++i) acc += t[i] * scratch[i];
    return acc;
}

HolderFunction zero_function() {
    return {[](double) { return 0.0; }, 0.5, 0.0, "zero"};
}

HolderFunction constant_function(double value) {
    return {[value](double) { return value; }, 0.5, 0.0, "constant"};
}

HolderFunction linear_function() {
    return {[](double x) { return x; }, 1.0, 1.0, "identity"};
}

WeierstrassParams::WeierstrassParams(PeriodicGenerator g, int base_, double alpha_, int depth_)
    : generator(std::move(g)), base(base_), alpha(alpha_), depth(depth_) {
    if (base < 2) throw std::invalid_argument("weierstrass base must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
}

int WeierstrassParams::depth_for_tolerance(int base, double alpha, double sup_bound, double tol) {
    if (sup_bound <= 0.0) return 0;
    const double decay = std::pow(base, -alpha);
    const double geom = 1.0 - decay;
    // tail(K) = sup * decay^{K+1} / (1 - decay)
    int k = static_cast<int>(std::ceil(std::log(tol * geom / sup_bound) / std::log(decay))) - 1;
    k = std::max(k, 0);
    while (sup_bound * std::pow(decay, k + 1) / geom > tol) ++k;
    return k;
}

WeierstrassParams WeierstrassParams::with_default_depth(PeriodicGenerator g, int base,
                                                        double alpha) {
    const int k = depth_for_tolerance(base, alpha, g.sup_bound(), kDefaultTailTol);
    return WeierstrassParams(std::move(g), base, alpha, k);
}

double eval_weierstrass(const WeierstrassParams& params, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
    const double decay = std::pow(params.base, -params.alpha);
    double u = x - std::floor(x);  // x = 1 reduces to 0; g is Z-periodic
    double scale = 1.0;
    double sum = 0.0;
    const double b = params.base;
    for (int k = 0; k <= params.depth; ++k) {
        sum += scale * params.generator(u);
        scale *= decay;
        const double v = u * b;
        u = v - std::floor(v);
    }
    return sum;
}

std::vector<double> eval_weierstrass_grid(const WeierstrassParams& params, int n) {
    if (n < 1) throw std::invalid_argument("grid size must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    parallel_for_chunks(out.size(), 8192, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out[i] = eval_weierstrass(params, static_cast<double>(i) * inv_n);
    });
    return out;
}

double tail_bound(const WeierstrassParams& params) {
    const double sup = params.generator.sup_bound();
    if (sup == 0.0) return 0.0;
    const double decay = std::pow(params.base, -params.alpha);
    return sup * std::pow(decay, params.depth + 1) / (1.0 - decay);
}

double weierstrass_holder_certificate(const WeierstrassParams& params) {
    const double lip = params.generator.lipschitz_bound();
    const double sup = params.generator.sup_bound();
    if (lip == 0.0 || sup == 0.0) return 0.0;
    const double a = params.alpha;
    const double growth = std::pow(params.base, 1.0 - a);
    const double decay = std::pow(params.base, -a);
    return std::pow(lip, a) * std::pow(2.0 * sup, 1.0 - a) *
           (growth / (growth - 1.0) + 1.0 / (1.0 - decay));
}

HolderFunction weierstrass_function(const WeierstrassParams& params) {
    HolderFunction f;
    f.eval = [params](double x) { return eval_weierstrass(params, x); };
    f.alpha = params.alpha;
    f.holder_constant = weierstrass_holder_certificate(params);
    f.description = params.generator.label() + " W(b=" + std::to_string(params.base) + ")";
    return f;
}

Perturbation::Perturbation(std::vector<double> t_, SnowflakeEmbedding embedding_)
    : t(std::move(t_)), embedding(std::move(embedding_)) {
    if (static_cast<int>(t.size()) != embedding.dim)
        throw std::invalid_argument("perturbation direction dimension != embedding dimension");
}

namespace {
double l1_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += std::abs(c);
    return s;
}
}  // namespace

HolderFunction probe_function(const Perturbation& p) {
    HolderFunction g;
    const std::vector<double> t = p.t;
    const SnowflakeEmbedding emb = p.embedding;
    g.eval = [t, emb](double x) { return probe_value(emb, t, x); };
    g.alpha = p.embedding.alpha;
    if (p.embedding.c2_estimate)
        g.holder_constant = l1_norm(p.t) * *p.embedding.c2_estimate;
    g.description = "probe";
    return g;
}

HolderFunction perturb(const HolderFunction& f, const Perturbation& p) {
    HolderFunction out;
    const std::vector<double> t = p.t;
    const SnowflakeEmbedding emb = p.embedding;
    const std::function<double(double)> base = f.eval;
    out.eval = [base, t, emb](double x) { return base(x) + probe_value(emb, t, x); };
    out.alpha = std::min(f.alpha, p.embedding.alpha);
    if (f.holder_constant && p.embedding.c2_estimate)
        out.holder_constant = *f.holder_constant + l1_norm(p.t) * *p.embedding.c2_estimate;
    out.description = f.description + " + probe";
    return out;
}

HolderFunction shear(const HolderFunction& f, double theta) {
    if (!(theta > 0.0 && theta < 3.141592653589793238463))
        throw std::invalid_argument("shear angle must lie strictly inside (0, pi)");
    const double cot = std::cos(theta) / std::sin(theta);
    HolderFunction out;
    const std::function<double(double)> base = f.eval;
    out.eval = [base, cot](double x) { return base(x) + x * cot; };
    out.alpha = f.alpha;
    if (f.holder_constant) out.holder_constant = *f.holder_constant + std::abs(cot);
    out.description = f.description + " sheared";
    return out;
}

double estimate_holder_constant(const HolderFunction& f, int n, double alpha) {
    if (n < 2) throw std::invalid_argument("grid size must be >= 2");
    const std::size_t points = static_cast<std::size_t>(n) + 1;
    std::vector<double> values(points);
    const double inv_n = 1.0 / static_cast<double>(n);
    parallel_for_chunks(points, 4096, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            values[i] = f.eval(static_cast<double>(i) * inv_n);
    });
    std::vector<double> inv_pow(points);
    for (std::size_t d = 1; d < points; ++d)
        inv_pow[d] = std::pow(static_cast<double>(d) * inv_n, -alpha);
    return parallel_reduce(
        points, 512, 0.0,
        [&](std::size_t begin, std::size_t end) {
            double best = 0.0;
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t j = i + 1; j < points; ++j)
                    best = std::max(best, std::abs(values[j] - values[i]) * inv_pow[j - i]);
            return best;
        },
        [](double a, double b) { return std::max(a, b); });
}

}  // namespace holderlab
