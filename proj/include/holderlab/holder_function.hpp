#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <holderlab/embedding_type.hpp>
#include <holderlab/generators.hpp>

namespace holderlab {

/// Evaluable map [0,1] -> R with exponent alpha and, when available, a
/// Hölder-constant certificate C: |f(x)-f(y)| <= C|x-y|^alpha. Certificates
/// are 64-bit estimates/bounds, never proofs.
struct HolderFunction {
    std::function<double(double)> eval;
    double alpha = 0.5;
    std::optional<double> holder_constant;
    std::string description;

    double operator()(double x) const { return eval(x); }
};

HolderFunction zero_function();
HolderFunction constant_function(double value);
HolderFunction linear_function();  // f(x) = x, alpha 1, C 1

/// Truncated Weierstrass-type series sum_{k=0}^{depth} base^{-alpha k} g(base^k x).
struct WeierstrassParams {
    PeriodicGenerator generator;
    int base;
    double alpha;
    int depth;

    WeierstrassParams(PeriodicGenerator g, int base_, double alpha_, int depth_);

    /// Least depth whose tail bound is <= tol.
    static int depth_for_tolerance(int base, double alpha, double sup_bound, double tol);

    /// Depth chosen so the discarded tail is below 2^-40, far under every
    /// estimator tolerance used downstream.
    static WeierstrassParams with_default_depth(PeriodicGenerator g, int base, double alpha);
};

double eval_weierstrass(const WeierstrassParams& params, double x);

/// Values at the closed grid x_i = i/n, i = 0..n (parallel, deterministic).
std::vector<double> eval_weierstrass_grid(const WeierstrassParams& params, int n);

/// sup|g| * b^{-alpha(K+1)} / (1 - b^{-alpha}): bound on the discarded tail.
double tail_bound(const WeierstrassParams& params);

/// Analytic Hölder certificate for the (truncated or full) series:
/// C = L^alpha (2S)^{1-alpha} (b^{1-a}/(b^{1-a}-1) + 1/(1-b^{-a})).
double weierstrass_holder_certificate(const WeierstrassParams& params);

/// Packages the series as a HolderFunction with its certificate.
HolderFunction weierstrass_function(const WeierstrassParams& params);

/// Probe-space perturbation direction: f -> f + <t, Phi(.)>.
struct Perturbation {
    std::vector<double> t;
    SnowflakeEmbedding embedding;

    Perturbation(std::vector<double> t_, SnowflakeEmbedding embedding_);
};

/// x -> <t, Phi(x)> as a HolderFunction (certificate |t|_1 * c2 when known).
HolderFunction probe_function(const Perturbation& p);

/// f_t(x) = f(x) + <t, Phi(x)>. Exponent is min(f.alpha, Phi.alpha); when
/// both certificates exist the result carries C_f + |t|_1 * c2(Phi), valid by
/// the triangle inequality (on a unit-diameter domain a constant transfers
/// down in exponent unchanged).
HolderFunction perturb(const HolderFunction& f, const Perturbation& p);

/// f_t^theta(x) = f_t(x) + x*cot(theta); satisfies
/// sin(theta) * f_t^theta(x) == proj_theta(x, f_t(x)) up to roundoff.
HolderFunction shear(const HolderFunction& f, double theta);

/// Max over closed-grid pairs of |f(x_i)-f(x_j)| / |x_i-x_j|^alpha: a lower
/// bound for the true constant, nondecreasing in n.
double estimate_holder_constant(const HolderFunction& f, int n, double alpha);

}  // namespace holderlab
