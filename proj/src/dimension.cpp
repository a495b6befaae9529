#include <holderlab/dimension.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <holderlab/numerics.hpp>
#include <holderlab/parallel.hpp>

namespace holderlab {

namespace {
constexpr double kDedupResolution = 0x1.0p-52;
}

PointSet PointSet::points1d(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> kept;
    kept.reserve(xs.size());
    for (double v : xs)
        if (kept.empty() || v - kept.back() > kDedupResolution) kept.push_back(v);
    PointSet set;
    set.ambient = 1;
    set.x = std::move(kept);
    return set;
}

PointSet PointSet::points2d(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("coordinate lists must agree");
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return xs[a] != xs[b] ? xs[a] < xs[b] : ys[a] < ys[b];
    });
    PointSet set;
    set.ambient = 2;
    for (std::size_t k : order) {
        if (!set.x.empty() && std::abs(xs[k] - set.x.back()) <= kDedupResolution &&
            std::abs(ys[k] - set.y.back()) <= kDedupResolution)
            continue;
        set.x.push_back(xs[k]);
        set.y.push_back(ys[k]);
    }
    return set;
}

namespace {

int pack_count_1d(const std::vector<double>& sorted, double r) {
    const double min_gap = 2.0 * r;
    int count = 0;
    double last = -std::numeric_limits<double>::infinity();
    for (double p : sorted) {
        if (p - last >= min_gap) {
            ++count;
            last = p;
        }
    }
    return count;
}

int pack_count_2d(const PointSet& points, double r) {
    const double cell = 2.0 * r;
    const double min_gap = 2.0 * r;
    // selected centres bucketed by 2r-cells; a conflicting centre can only
    // sit in the 3x3 neighborhood
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    auto key = [cell](double x, double y) {
        const std::int64_t cx = static_cast<std::int64_t>(std::floor(x / cell));
        const std::int64_t cy = static_cast<std::int64_t>(std::floor(y / cell));
        return (static_cast<std::uint64_t>(cx + 0x40000000LL) << 32) ^
               static_cast<std::uint64_t>(cy + 0x40000000LL);
    };
    int count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double px = points.x[i];
        const double py = points.y[i];
        bool blocked = false;
        for (int dx = -1; dx <= 1 && !blocked; ++dx)
            for (int dy = -1; dy <= 1 && !blocked; ++dy) {
                const auto it = buckets.find(key(px + dx * cell, py + dy * cell));
                if (it == buckets.end()) continue;
                for (std::size_t j : it->second) {
                    const double gap =
                        std::max(std::abs(px - points.x[j]), std::abs(py - points.y[j]));
                    if (gap < min_gap) {
                        blocked = true;
                        break;
                    }
                }
            }
        if (!blocked) {
            buckets[key(px, py)].push_back(i);
            ++count;
        }
    }
    return count;
}

}  // namespace

int pack_count(const PointSet& points, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("packing radius must be positive");
    if (points.size() == 0) return 0;
    return points.ambient == 1 ? pack_count_1d(points.x, r) : pack_count_2d(points, r);
}

std::pair<std::size_t, std::size_t> default_window(std::size_t ladder_size) {
    const std::size_t drop = ladder_size >= 6 ? ladder_size / 6 : 0;
    std::size_t lo = drop, hi = ladder_size - drop;
    if (hi - lo < 4) {
        lo = 0;
        hi = ladder_size;
    }
    return {lo, hi};
}

DimensionFit dim_fit(const std::vector<double>& scales, const std::vector<double>& counts,
                     std::pair<std::size_t, std::size_t> window) {
    if (scales.size() != counts.size())
        throw std::invalid_argument("scales and counts must agree");
    if (window.second > scales.size() || window.first >= window.second)
        throw std::invalid_argument("fit window out of range");
    if (window.second - window.first < 4)
        throw std::invalid_argument("fit window needs at least 4 scales");

    DimensionFit fit;
    fit.scales = scales;
    fit.counts = counts;
    fit.window_lo = window.first;
    fit.window_hi = window.second;

    std::vector<double> lx, ly;
    bool constant = true;
    double first_count = -1.0;
    for (std::size_t j = window.first; j < window.second; ++j) {
        if (!(counts[j] > 0.0)) continue;
        if (first_count < 0.0)
            first_count = counts[j];
        else if (counts[j] != first_count)
            constant = false;
        lx.push_back(-std::log(scales[j]));
        ly.push_back(std::log(counts[j]));
    }
    if (lx.size() < 2) {
        fit.undefined = true;
        return fit;
    }
    if (constant) {
        fit.degenerate = true;
        fit.slope = 0.0;
        fit.r2 = 1.0;
        return fit;
    }
    const LinearFit ls = linear_fit(lx, ly);
    if (ls.degenerate) {
        fit.undefined = true;
        return fit;
    }
    fit.slope = ls.slope;
    fit.stderr_slope = ls.stderr_slope;
    fit.r2 = ls.r2;
    return fit;
}

DimensionFit dim_fit(const std::vector<double>& scales, const std::vector<double>& counts) {
    return dim_fit(scales, counts, default_window(scales.size()));
}

PointSet level_set_from_values(const std::vector<double>& grid_values, double level, double eps) {
    if (eps < 0.0) throw std::invalid_argument("band half-width must be >= 0");
    const int n = static_cast<int>(grid_values.size()) - 1;
    std::vector<double> hits;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i <= n; ++i)
        if (std::abs(grid_values[static_cast<std::size_t>(i)] - level) <= eps)
            hits.push_back(static_cast<double>(i) * inv_n);
    return PointSet::points1d(std::move(hits));
}

PointSet level_set(const HolderFunction& f, double level, int n, double eps) {
    if (n < 1) throw std::invalid_argument("grid size must be >= 1");
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    parallel_for_chunks(values.size(), 8192, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            values[i] = f.eval(static_cast<double>(i) * inv_n);
    });
    return level_set_from_values(values, level, eps);
}

LevelDimSweep::LevelDimSweep(const HolderFunction& f, std::vector<int> ladder,
                             double band_constant)
    : ladder_(std::move(ladder)), alpha_(f.alpha), band_constant_(band_constant) {
    if (ladder_.size() < 4) throw std::invalid_argument("resolution ladder needs >= 4 entries");
    if (!std::is_sorted(ladder_.begin(), ladder_.end()))
        throw std::invalid_argument("resolution ladder must ascend");
    if (!(band_constant_ > 0.0)) throw std::invalid_argument("band constant must be positive");
    values_.reserve(ladder_.size());
    for (int n : ladder_) {
        std::vector<double> v(static_cast<std::size_t>(n) + 1);
        const double inv_n = 1.0 / static_cast<double>(n);
        parallel_for_chunks(v.size(), 8192, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                v[i] = f.eval(static_cast<double>(i) * inv_n);
        });
        values_.push_back(std::move(v));
    }
    // positions ordered by function value, for O(log n + m) band extraction
    sorted_values_.reserve(ladder_.size());
    positions_by_value_.reserve(ladder_.size());
    for (std::size_t j = 0; j < ladder_.size(); ++j) {
        const auto& v = values_[j];
        std::vector<std::size_t> order(v.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> sv(v.size()), pos(v.size());
        const double inv_n = 1.0 / static_cast<double>(ladder_[j]);
        for (std::size_t k = 0; k < order.size(); ++k) {
            sv[k] = v[order[k]];
            pos[k] = static_cast<double>(order[k]) * inv_n;
        }
        sorted_values_.push_back(std::move(sv));
        positions_by_value_.push_back(std::move(pos));
    }
}

DimensionFit LevelDimSweep::at_level(double level) const {
    std::vector<double> scales(ladder_.size()), counts(ladder_.size());
    for (std::size_t j = 0; j < ladder_.size(); ++j) {
        const double n = static_cast<double>(ladder_[j]);
        const double r = 1.0 / n;
        const double eps = band_constant_ * std::pow(n, -alpha_);
        const auto& sv = sorted_values_[j];
        const auto lo = std::lower_bound(sv.begin(), sv.end(), level - eps);
        const auto hi = std::upper_bound(sv.begin(), sv.end(), level + eps);
        std::vector<double> band(positions_by_value_[j].begin() + (lo - sv.begin()),
                                 positions_by_value_[j].begin() + (hi - sv.begin()));
        std::sort(band.begin(), band.end());
        scales[j] = r;
        counts[j] = static_cast<double>(pack_count_1d(band, r));
    }
    DimensionFit fit = dim_fit(scales, counts, default_window(ladder_.size()));
    if (counts.front() == 0.0) fit.undefined = true;  // empty band at the coarsest scale
    return fit;
}

DimensionFit level_dim(const HolderFunction& f, double level, const std::vector<int>& ladder,
                       double band_constant) {
    return LevelDimSweep(f, ladder, band_constant).at_level(level);
}

DimensionFit graph_dim(const HolderFunction& f, const std::vector<int>& ladder,
                       std::pair<std::size_t, std::size_t> window) {
    if (ladder.size() < 4) throw std::invalid_argument("resolution ladder needs >= 4 entries");
    if (!std::is_sorted(ladder.begin(), ladder.end()))
        throw std::invalid_argument("resolution ladder must ascend");
    const int n = ladder.back();
    std::vector<double> xs(static_cast<std::size_t>(n) + 1), ys(xs.size());
    const double inv_n = 1.0 / static_cast<double>(n);
    parallel_for_chunks(xs.size(), 8192, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            xs[i] = static_cast<double>(i) * inv_n;
            ys[i] = f.eval(xs[i]);
        }
    });
    const PointSet graph = PointSet::points2d(std::move(xs), std::move(ys));

    std::vector<double> scales(ladder.size()), counts(ladder.size());
    parallel_for_chunks(ladder.size(), 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            scales[j] = 1.0 / static_cast<double>(ladder[j]);
            counts[j] = static_cast<double>(pack_count(graph, scales[j]));
        }
    });
    return dim_fit(scales, counts, window);
}

DimensionFit graph_dim(const HolderFunction& f, const std::vector<int>& ladder) {
    return graph_dim(f, ladder, default_window(ladder.size()));
}

}  // namespace holderlab
