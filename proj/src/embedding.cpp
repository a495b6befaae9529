#include <holderlab/embedding.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <holderlab/parallel.hpp>
#include <holderlab/rng.hpp>

namespace holderlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

struct ScanExtrema {
    double mn = std::numeric_limits<double>::infinity();
    double mx = 0.0;
    std::size_t arg_i = 0, arg_j = 0;
    std::uint64_t pairs = 0;
};

ScanExtrema merge(const ScanExtrema& a, const ScanExtrema& b) {
    ScanExtrema out = a;
    if (b.mn < out.mn) {
        out.mn = b.mn;
        out.arg_i = b.arg_i;
        out.arg_j = b.arg_j;
    }
    out.mx = std::max(out.mx, b.mx);
    out.pairs += b.pairs;
    return out;
}

/// Row-major table of Phi over the closed grid i/n, i = 0..n.
std::vector<double> tabulate(const SnowflakeEmbedding& emb, int n) {
    const std::size_t points = static_cast<std::size_t>(n) + 1;
    const std::size_t d = static_cast<std::size_t>(emb.dim);
    std::vector<double> table(points * d);
    const double inv_n = 1.0 / static_cast<double>(n);
    parallel_for_chunks(points, 2048, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            emb.eval_into(static_cast<double>(i) * inv_n,
                          std::span<double>(table.data() + i * d, d));
    });
    return table;
}

double max_norm_distance(const double* a, const double* b, std::size_t d) {
    double m = 0.0;
    for (std::size_t k = 0; k < d; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

BiHolderCertificate certify_biholder(const SnowflakeEmbedding& embedding, double alpha,
                                     const std::vector<int>& grids,
                                     const CertifyOptions& options) {
    if (grids.empty()) throw std::invalid_argument("certify_biholder needs at least one grid");
    BiHolderCertificate cert;
    ScanExtrema global;
    const std::size_t d = static_cast<std::size_t>(embedding.dim);

    for (int n : grids) {
        if (n < 2) throw std::invalid_argument("certification grid must be >= 2");
        const std::vector<double> table = tabulate(embedding, n);
        const std::size_t points = static_cast<std::size_t>(n) + 1;
        const double inv_n = 1.0 / static_cast<double>(n);
        std::vector<double> sep_pow(points);
        for (std::size_t s = 1; s < points; ++s)
            sep_pow[s] = std::pow(static_cast<double>(s) * inv_n, alpha);

        auto scan_pair = [&](ScanExtrema& acc, std::size_t i, std::size_t j) {
            const double ratio =
                max_norm_distance(table.data() + i * d, table.data() + j * d, d) / sep_pow[j - i];
            if (ratio < acc.mn) {
                acc.mn = ratio;
                acc.arg_i = i;
                acc.arg_j = j;
            }
            acc.mx = std::max(acc.mx, ratio);
            ++acc.pairs;
        };

        ScanExtrema grid_result;
        if (n <= options.full_scan_threshold) {
            grid_result = parallel_reduce(
                points, 256, ScanExtrema{},
                [&](std::size_t begin, std::size_t end) {
                    ScanExtrema acc;
                    for (std::size_t i = begin; i < end; ++i)
                        for (std::size_t j = i + 1; j < points; ++j) scan_pair(acc, i, j);
                    return acc;
                },
                merge);
        } else {
            // Every dyadic separation covers each scale; random pairs fill in
            // between. Pair indices are drawn sequentially so the scan result
            // is independent of the worker count.
            std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
            for (std::size_t s = 1; s < points; s *= 2)
                for (std::size_t i = 0; i + s < points; ++i)
                    pairs.emplace_back(static_cast<std::uint32_t>(i),
                                       static_cast<std::uint32_t>(i + s));
            Rng rng(options.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
            for (std::uint64_t k = 0; k < options.random_pairs; ++k) {
                std::uint32_t i = static_cast<std::uint32_t>(rng.below(points));
                std::uint32_t j = static_cast<std::uint32_t>(rng.below(points));
                if (i == j) continue;
                pairs.emplace_back(std::min(i, j), std::max(i, j));
            }
            grid_result = parallel_reduce(
                pairs.size(), 65536, ScanExtrema{},
                [&](std::size_t begin, std::size_t end) {
                    ScanExtrema acc;
                    for (std::size_t k = begin; k < end; ++k)
                        scan_pair(acc, pairs[k].first, pairs[k].second);
                    return acc;
                },
                merge);
        }

        if (grid_result.mn < global.mn) {
            global.mn = grid_result.mn;
            global.arg_i = grid_result.arg_i;
            global.arg_j = grid_result.arg_j;
            cert.worst_pair = {static_cast<double>(grid_result.arg_i) * inv_n,
                               static_cast<double>(grid_result.arg_j) * inv_n};
        }
        global.mx = std::max(global.mx, grid_result.mx);
        global.pairs += grid_result.pairs;
        cert.grid = n;
        cert.trace.emplace_back(n, global.mn);
    }

    cert.c1 = global.mn;
    cert.c2 = global.mx;
    cert.pair_count = global.pairs;
    return cert;
}

SnowflakeEmbedding build_lacunary(double alpha, int lambda, double delta,
                                  int dimension_ceiling) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (lambda < 2) throw std::invalid_argument("lambda must be >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    const int levels =
        static_cast<int>(std::ceil(std::log(1.0 / delta) / std::log(static_cast<double>(lambda))));
    const int dim = 2 * (levels + 1) + 1;
    if (dim > dimension_ceiling)
        throw std::invalid_argument("lacunary embedding dimension exceeds the ceiling");

    std::vector<double> freq(levels + 1), weight(levels + 1);
    for (int k = 0; k <= levels; ++k) {
        freq[k] = std::pow(static_cast<double>(lambda), k);
        weight[k] = std::pow(static_cast<double>(lambda), -alpha * k);
    }
    const double affine_weight = std::pow(static_cast<double>(lambda), -alpha * (levels + 1));

    SnowflakeEmbedding emb;
    emb.dim = dim;
    emb.alpha = alpha;
    emb.resolution_floor = delta;
    emb.c2_estimate = (kTwoPi + 1.0) / (1.0 - std::pow(static_cast<double>(lambda), -alpha));
    emb.description = "lacunary(lambda=" + std::to_string(lambda) + ")";
    emb.eval_into = [freq, weight, affine_weight](double x, std::span<double> out) {
        for (std::size_t k = 0; k < freq.size(); ++k) {
            const double phase = kTwoPi * freq[k] * x;
            out[2 * k] = weight[k] * std::cos(phase);
            out[2 * k + 1] = weight[k] * std::sin(phase);
        }
        out[out.size() - 1] = affine_weight * x;
    };
    return emb;
}

SnowflakeEmbedding build_koch(double alpha, int depth) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("koch exponent must lie in (1/2, 1)");
    const double ratio = std::pow(4.0, -alpha);
    const double cos_bend = (std::pow(4.0, alpha) - 2.0) / 2.0;
    const double sin_bend = std::sqrt(std::max(0.0, 1.0 - cos_bend * cos_bend));
    if (depth <= 0)
        depth = static_cast<int>(std::ceil(40.0 * std::log(2.0) / (alpha * std::log(4.0))));

    // Similarity maps chaining (0,0) -> (r,0) -> (1/2, r sin phi) -> (1-r,0) -> (1,0).
    struct Map {
        double a, b, tx, ty;  // p -> (a*px - b*py + tx, b*px + a*py + ty)
    };
    const std::vector<Map> maps = {
        {ratio, 0.0, 0.0, 0.0},
        {ratio * cos_bend, ratio * sin_bend, ratio, 0.0},
        {ratio * cos_bend, -ratio * sin_bend, 0.5, ratio * sin_bend},
        {ratio, 0.0, 1.0 - ratio, 0.0},
    };

    SnowflakeEmbedding emb;
    emb.dim = 2;
    emb.alpha = alpha;
    emb.resolution_floor = std::pow(4.0, -depth);
    emb.description = "koch";
    emb.eval_into = [maps, depth](double x, std::span<double> out) {
        thread_local std::vector<int> digits;
        digits.resize(static_cast<std::size_t>(depth));
        double u = x;
        for (int i = 0; i < depth; ++i) {
            u *= 4.0;
            int d = static_cast<int>(u);
            d = std::clamp(d, 0, 3);
            u -= d;
            digits[static_cast<std::size_t>(i)] = d;
        }
        double px = u, py = 0.0;  // leftover parameter on the base chord
        for (int i = depth - 1; i >= 0; --i) {
            const Map& m = maps[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
            const double nx = m.a * px - m.b * py + m.tx;
            const double ny = m.b * px + m.a * py + m.ty;
            px = nx;
            py = ny;
        }
        out[0] = px;
        out[1] = py;
    };
    return emb;
}

WeierstrassEmbeddingSpec::WeierstrassEmbeddingSpec(std::vector<PeriodicGenerator> gens, int base_,
                                                   double alpha_)
    : generators(std::move(gens)), base(base_), alpha(alpha_) {
    if (generators.empty())
        throw std::invalid_argument("weierstrass embedding needs at least one generator");
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

SnowflakeEmbedding build_weierstrass_embedding(const WeierstrassEmbeddingSpec& spec, int depth) {
    if (depth < 0) {
        double sup = 0.0;
        for (const auto& g : spec.generators) sup = std::max(sup, g.sup_bound());
        depth = WeierstrassParams::depth_for_tolerance(spec.base, spec.alpha, sup, 0x1.0p-40);
    }
    const double decay = std::pow(spec.base, -spec.alpha);
    const std::vector<PeriodicGenerator> gens = spec.generators;
    const double b = spec.base;

    SnowflakeEmbedding emb;
    emb.dim = static_cast<int>(gens.size());
    emb.alpha = spec.alpha;
    emb.resolution_floor = 0.0;
    emb.description = "weierstrass-embedding(m=" + std::to_string(gens.size()) + ")";
    emb.eval_into = [gens, decay, b, depth](double x, std::span<double> out) {
        for (double& v : out) v = 0.0;
        double u = x - std::floor(x);
        double scale = 1.0;
        for (int k = 0; k <= depth; ++k) {
            for (std::size_t i = 0; i < gens.size(); ++i) out[i] += scale * gens[i](u);
            scale *= decay;
            const double v = u * b;
            u = v - std::floor(v);
        }
    };
    return emb;
}

double reverse_holder_fraction(const HolderFunction& w, double alpha, double eps, double x,
                               double interval_lo, double interval_hi, int n) {
    if (!(interval_lo < interval_hi))
        throw std::invalid_argument("reverse-holder interval is empty");
    if (!(x >= interval_lo && x <= interval_hi))
        throw std::invalid_argument("x must lie inside the interval");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (n < 1) throw std::invalid_argument("grid must have at least one cell");
    const double wx = w.eval(x);
    const double step = (interval_hi - interval_lo) / static_cast<double>(n);
    std::size_t count = 0;
    for (int i = 0; i <= n; ++i) {
        const double y = interval_lo + step * static_cast<double>(i);
        const double gap = std::abs(x - y);
        if (std::abs(wx - w.eval(y)) > eps * std::pow(gap, alpha)) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(n + 1);
}

namespace {

struct Candidate {
    std::vector<std::vector<TrigTerm>> coefficients;  // per generator, freq 1..F
};

void normalize_unit_lipschitz(Candidate& c) {
    for (auto& terms : c.coefficients) {
        double lip = 0.0;
        for (const TrigTerm& t : terms)
            lip += kTwoPi * t.frequency * std::hypot(t.cos_coeff, t.sin_coeff);
        if (lip <= 0.0) {
            terms[0].cos_coeff = 1.0 / kTwoPi;  // degenerate candidate: pin to cos
            lip = 1.0;
        }
        for (TrigTerm& t : terms) {
            t.cos_coeff /= lip;
            t.sin_coeff /= lip;
        }
    }
}

WeierstrassEmbeddingSpec to_spec(const Candidate& c, int base, double alpha) {
    std::vector<PeriodicGenerator> gens;
    gens.reserve(c.coefficients.size());
    for (const auto& terms : c.coefficients)
        gens.push_back(PeriodicGenerator::trig_polynomial(terms));
    return WeierstrassEmbeddingSpec(std::move(gens), base, alpha);
}

/// c1 at the working grid: full pair scan of the embedding table.
double working_c1(const SnowflakeEmbedding& emb, double alpha, int n) {
    const std::vector<double> table = tabulate(emb, n);
    const std::size_t points = static_cast<std::size_t>(n) + 1;
    const std::size_t d = static_cast<std::size_t>(emb.dim);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> sep_pow(points);
    for (std::size_t s = 1; s < points; ++s)
        sep_pow[s] = std::pow(static_cast<double>(s) * inv_n, alpha);
    return parallel_reduce(
        points, 256, std::numeric_limits<double>::infinity(),
        [&](std::size_t begin, std::size_t end) {
            double mn = std::numeric_limits<double>::infinity();
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t j = i + 1; j < points; ++j)
                    mn = std::min(mn, max_norm_distance(table.data() + i * d,
                                                        table.data() + j * d, d) /
                                          sep_pow[j - i]);
            return mn;
        },
        [](double a, double b) { return std::min(a, b); });
}

}  // namespace

SearchResult search_embedding(int base, double alpha, int generator_count, int budget,
                              std::uint64_t seed, SearchOptions options) {
    if (budget < 1) throw std::invalid_argument("search budget must be >= 1");
    if (generator_count < 1) throw std::invalid_argument("generator count must be >= 1");
    options.generator_count = generator_count;

    Rng rng(seed);
    auto random_candidate = [&]() {
        Candidate c;
        c.coefficients.resize(static_cast<std::size_t>(generator_count));
        for (auto& terms : c.coefficients) {
            terms.resize(static_cast<std::size_t>(options.frequency_cutoff));
            for (int f = 1; f <= options.frequency_cutoff; ++f)
                terms[static_cast<std::size_t>(f - 1)] = {f, rng.normal(), rng.normal()};
        }
        normalize_unit_lipschitz(c);
        return c;
    };

    // Search depth only needs to resolve the working grid, not the 2^-40
    // production target.
    const int depth = WeierstrassParams::depth_for_tolerance(base, alpha, 1.0, 0x1.0p-30);

    auto fitness = [&](const Candidate& c) {
        auto emb = build_weierstrass_embedding(to_spec(c, base, alpha), depth);
        return working_c1(emb, alpha, options.working_grid);
    };

    Candidate parent = random_candidate();
    double parent_fit = fitness(parent);
    double sigma = options.initial_step;
    int stall = 0;

    std::vector<std::pair<int, double>> history;
    history.emplace_back(0, parent_fit);

    for (int iter = 1; iter < budget; ++iter) {
        Candidate best_child;
        double best_fit = -1.0;
        for (int o = 0; o < options.offspring; ++o) {
            Candidate child = parent;
            for (auto& terms : child.coefficients)
                for (TrigTerm& t : terms) {
                    t.cos_coeff += sigma * rng.normal();
                    t.sin_coeff += sigma * rng.normal();
                }
            normalize_unit_lipschitz(child);
            const double f = fitness(child);
            if (f > best_fit) {
                best_fit = f;
                best_child = child;
            }
        }
        if (best_fit >= parent_fit) {
            parent = best_child;
            parent_fit = best_fit;
            stall = 0;
        } else if (++stall >= options.stall_limit) {
            sigma *= 0.5;
            stall = 0;
        }
        history.emplace_back(iter, parent_fit);
    }

    auto spec = to_spec(parent, base, alpha);
    auto emb = build_weierstrass_embedding(spec, depth);
    CertifyOptions copts;
    copts.seed = seed ^ 0xabcdef1234567890ULL;
    auto cert = certify_biholder(emb, alpha, options.certify_grids, copts);
    return SearchResult{std::move(spec), std::move(cert), std::move(history)};
}

}  // namespace holderlab
