#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <holderlab/embedding_type.hpp>
#include <holderlab/holder_function.hpp>

namespace holderlab {

/// Numerical bi-Hölder certificate from grid pair scans. Entries accumulate
/// across the refinement trace (pairs seen on a coarser grid remain valid
/// pairs of [0,1]), so c1 is nonincreasing and c2 nondecreasing along the
/// trace by construction.
struct BiHolderCertificate {
    double c1 = 0.0;
    double c2 = 0.0;
    int grid = 0;             // finest grid scanned
    std::uint64_t pair_count = 0;
    std::pair<double, double> worst_pair{0.0, 0.0};  // pair attaining c1
    std::vector<std::pair<int, double>> trace;       // (n, c1 after grid n)
};

struct CertifyOptions {
    int full_scan_threshold = 1 << 12;  // full O(n^2) scan at or below this
    std::uint64_t random_pairs = 1'000'000;
    std::uint64_t seed = 0x5eedULL;
};

/// Scans grid pairs (full scan below the budget, otherwise every dyadic
/// separation plus seeded random pairs) and records min/max of
/// |Phi(x)-Phi(y)| / |x-y|^alpha. A collapsing trace is a valid negative
/// result, not an error.
BiHolderCertificate certify_biholder(const SnowflakeEmbedding& embedding, double alpha,
                                     const std::vector<int>& grids,
                                     const CertifyOptions& options = {});

/// Lacunary trigonometric construction: coordinate pairs
/// (lambda^{-alpha k} cos(2 pi lambda^k x), lambda^{-alpha k} sin(2 pi lambda^k x))
/// for k = 0..K, K = ceil(log_lambda(1/delta)), plus one affine coordinate
/// x * lambda^{-alpha(K+1)} separating the endpoints. d = 2(K+1)+1.
/// The upper constant (2 pi + 1)/(1 - lambda^{-alpha}) holds analytically;
/// the lower constant must be certified down to resolution delta.
SnowflakeEmbedding build_lacunary(double alpha, int lambda, double delta,
                                  int dimension_ceiling = 64);

/// Arc-parametrized generalized Koch curve in the plane: four similarities of
/// ratio 4^{-alpha}, bend angle arccos((4^alpha - 2)/2). Valid for
/// alpha in (1/2, 1); alpha = log3/log4 recovers the classical Koch curve.
SnowflakeEmbedding build_koch(double alpha, int depth = 0);

/// Finite collection of Z-periodic Lipschitz generators defining the
/// coordinate series of a Weierstrass embedding.
struct WeierstrassEmbeddingSpec {
    std::vector<PeriodicGenerator> generators;
    int base;
    double alpha;

    WeierstrassEmbeddingSpec(std::vector<PeriodicGenerator> gens, int base_, double alpha_);
};

/// Phi(x) = (W_{g_1}(x), ..., W_{g_m}(x)), coordinates truncated at `depth`
/// (depth < 0 selects the default 2^-40 tail target). c1/c2 left unset until
/// certified.
SnowflakeEmbedding build_weierstrass_embedding(const WeierstrassEmbeddingSpec& spec,
                                               int depth = -1);

/// Fraction of grid points y in I with |W(x)-W(y)| > eps * |x-y|^alpha, an
/// estimator of the reverse-Hölder set's measure ratio.
double reverse_holder_fraction(const HolderFunction& w, double alpha, double eps, double x,
                               double interval_lo, double interval_hi, int n);

struct SearchOptions {
    int generator_count = 4;
    int frequency_cutoff = 8;
    int offspring = 4;
    int working_grid = 512;
    double initial_step = 0.3;
    int stall_limit = 20;
    std::vector<int> certify_grids = {1 << 10, 1 << 12};
};

struct SearchResult {
    WeierstrassEmbeddingSpec best;
    BiHolderCertificate certificate;
    std::vector<std::pair<int, double>> history;  // (iteration, best c1 so far)
};

/// Seeded (1+lambda) evolution strategy over trigonometric-polynomial
/// generator coefficients (unit Lipschitz normalization, Gaussian jitter with
/// step halving on stagnation), maximizing the certified c1 of the
/// Weierstrass embedding at a fixed working grid. Numerical evidence only.
SearchResult search_embedding(int base, double alpha, int generator_count, int budget,
                              std::uint64_t seed, SearchOptions options = {});

}  // namespace holderlab
