#pragma once

#include <vector>

#include <holderlab/holder_function.hpp>

namespace holderlab {

/// Finite point set in [0,1] or the plane, deduplicated at resolution 2^-52.
struct PointSet {
    int ambient = 1;
    std::vector<double> x;
    std::vector<double> y;  // empty in 1-D

    std::size_t size() const { return x.size(); }

    static PointSet points1d(std::vector<double> xs);
    static PointSet points2d(std::vector<double> xs, std::vector<double> ys);
};

/// Greedy packing count: selects centres left-to-right (1-D) or in
/// lexicographic order (2-D), each at max-norm distance >= 2r from all
/// previously selected. Greedy and maximal packing numbers differ by a
/// bounded factor, which slope estimation does not see.
int pack_count(const PointSet& points, double r);

/// Ladder of (scale, count) pairs with the regressed log-log slope.
struct DimensionFit {
    std::vector<double> scales;  // decreasing r_j
    std::vector<double> counts;  // N_j
    double slope = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    std::size_t window_lo = 0;  // index range used by the fit
    std::size_t window_hi = 0;
    bool degenerate = false;  // constant counts: slope pinned to 0
    bool undefined = false;   // not enough usable scales
};

/// Default fit window: the middle two-thirds of the ladder (coarse scales
/// feel the unit diameter, the finest feel grid discreteness).
std::pair<std::size_t, std::size_t> default_window(std::size_t ladder_size);

/// Least-squares slope of log N_j against -log r_j over the window.
DimensionFit dim_fit(const std::vector<double>& scales, const std::vector<double>& counts,
                     std::pair<std::size_t, std::size_t> window);
DimensionFit dim_fit(const std::vector<double>& scales, const std::vector<double>& counts);

/// Grid points x_i = i/n with |f(x_i) - y| <= eps: an outer approximation of
/// the level set f^{-1}({y}) at resolution 1/n when eps = C (1/n)^alpha.
PointSet level_set(const HolderFunction& f, double level, int n, double eps);
PointSet level_set_from_values(const std::vector<double>& grid_values, double level, double eps);

/// Level-set upper-Minkowski estimate: per resolution n_j, extracts the band
/// set with eps_j = C n_j^{-alpha}, pack-counts it at r_j = 1/n_j and fits.
/// The band constant defaults to the function's estimated Hölder constant.
DimensionFit level_dim(const HolderFunction& f, double level, const std::vector<int>& ladder,
                       double band_constant);

/// Same sweep with grid values cached per resolution (one evaluation shared
/// across many levels).
class LevelDimSweep {
public:
    LevelDimSweep(const HolderFunction& f, std::vector<int> ladder, double band_constant);
    DimensionFit at_level(double level) const;
    const std::vector<double>& finest_values() const { return values_.back(); }
    double band_constant() const { return band_constant_; }

private:
    std::vector<int> ladder_;
    double alpha_;
    double band_constant_;
    std::vector<std::vector<double>> values_;  // closed-grid values per n_j
    std::vector<std::vector<double>> sorted_values_;
    std::vector<std::vector<double>> positions_by_value_;
};

/// Packing dimension of the sampled graph {(x_i, f(x_i))} at scales 1/n_j.
DimensionFit graph_dim(const HolderFunction& f, const std::vector<int>& ladder);
DimensionFit graph_dim(const HolderFunction& f, const std::vector<int>& ladder,
                       std::pair<std::size_t, std::size_t> window);

}  // namespace holderlab
