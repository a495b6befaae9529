#include <holderlab/measure.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <holderlab/numerics.hpp>
#include <holderlab/parallel.hpp>

namespace holderlab {

namespace {

double checked_mass(const std::vector<double>& w) {
    double mass = 0.0;
    for (double v : w) {
        if (!(v > 0.0)) throw std::invalid_argument("measure weights must be positive");
        mass += v;
    }
    return mass;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::points1d(std::vector<double> xs, std::vector<double> ws) {
    if (xs.size() != ws.size() || xs.empty())
        throw std::invalid_argument("positions and weights must agree and be nonempty");
    DiscreteMeasure mu;
    mu.ambient = 1;
    mu.total_mass = checked_mass(ws);
    mu.x = std::move(xs);
    mu.w = std::move(ws);
    return mu;
}

DiscreteMeasure DiscreteMeasure::points2d(std::vector<double> xs, std::vector<double> ys,
                                          std::vector<double> ws) {
    if (xs.size() != ws.size() || ys.size() != ws.size() || xs.empty())
        throw std::invalid_argument("positions and weights must agree and be nonempty");
    DiscreteMeasure mu;
    mu.ambient = 2;
    mu.total_mass = checked_mass(ws);
    mu.x = std::move(xs);
    mu.y = std::move(ys);
    mu.w = std::move(ws);
    return mu;
}

DiscreteMeasure DiscreteMeasure::uniform_grid(int n) {
    if (n < 1) throw std::invalid_argument("grid size must be >= 1");
    DiscreteMeasure mu;
    mu.ambient = 1;
    mu.x.resize(static_cast<std::size_t>(n));
    mu.w.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i < n; ++i)
        mu.x[static_cast<std::size_t>(i)] = (static_cast<double>(i) + 0.5) * inv_n;
    mu.total_mass = std::accumulate(mu.w.begin(), mu.w.end(), 0.0);
    mu.uniform = UniformSpacing{0.5 * inv_n, inv_n};
    return mu;
}

DiscreteMeasure DiscreteMeasure::from_density(const std::function<double(double)>& density,
                                              int n) {
    if (n < 1) throw std::invalid_argument("grid size must be >= 1");
    std::vector<double> xs, ws;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i < n; ++i) {
        const double xi = (static_cast<double>(i) + 0.5) * inv_n;
        const double d = density(xi);
        if (d > 0.0) {
            xs.push_back(xi);
            ws.push_back(d * inv_n);
        }
    }
    return points1d(std::move(xs), std::move(ws));
}

DiscreteMeasure lift_measure(const HolderFunction& f, int n) {
    if (n < 1) throw std::invalid_argument("grid size must be >= 1");
    DiscreteMeasure mu;
    mu.ambient = 2;
    const std::size_t count = static_cast<std::size_t>(n);
    mu.x.resize(count);
    mu.y.resize(count);
    mu.w.assign(count, 1.0 / static_cast<double>(n));
    const double inv_n = 1.0 / static_cast<double>(n);
    parallel_for_chunks(count, 8192, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double xi = (static_cast<double>(i) + 0.5) * inv_n;
            mu.x[i] = xi;
            mu.y[i] = f.eval(xi);
        }
    });
    mu.total_mass = std::accumulate(mu.w.begin(), mu.w.end(), 0.0);
    mu.uniform = DiscreteMeasure::UniformSpacing{0.5 * inv_n, inv_n};
    return mu;
}

DiscreteMeasure project(const DiscreteMeasure& mu, double theta) {
    if (mu.ambient != 2) throw std::invalid_argument("project expects a planar measure");
    DiscreteMeasure out;
    out.ambient = 1;
    out.w = mu.w;
    out.total_mass = mu.total_mass;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    out.x.resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) out.x[i] = c * mu.x[i] + s * mu.y[i];
    if (theta == 0.0 && mu.uniform) out.uniform = mu.uniform;
    return out;
}

namespace {

std::complex<double> fourier_direct(const DiscreteMeasure& mu, double xi, std::size_t begin,
                                    std::size_t end) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
        const double phase = xi * mu.x[j];
        re += mu.w[j] * std::cos(phase);
        im += mu.w[j] * std::sin(phase);
    }
    return {re, im};
}

/// Uniform spacing: phasors advance by a fixed rotation; re-synchronize with
/// an exact evaluation every block to stop error growth.
std::complex<double> fourier_uniform(const DiscreteMeasure& mu, double xi) {
    const auto& u = *mu.uniform;
    const std::complex<double> rot(std::cos(xi * u.step), std::sin(xi * u.step));
    std::complex<double> acc(0.0, 0.0);
    const std::size_t n = mu.size();
    std::complex<double> z(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (j % 512 == 0) {
            const double phase = xi * (u.origin + u.step * static_cast<double>(j));
            z = {std::cos(phase), std::sin(phase)};
        }
        acc += mu.w[j] * z;
        z *= rot;
    }
    return acc;
}

}  // namespace

std::complex<double> fourier(const DiscreteMeasure& mu, double xi) {
    if (mu.ambient != 1) throw std::invalid_argument("fourier expects a 1-D measure");
    if (mu.uniform && mu.size() > 2048) return fourier_uniform(mu, xi);
    return parallel_reduce(
        mu.size(), 16384, std::complex<double>(0.0, 0.0),
        [&](std::size_t begin, std::size_t end) { return fourier_direct(mu, xi, begin, end); },
        [](std::complex<double> a, std::complex<double> b) { return a + b; });
}

double aliasing_limit(const DiscreteMeasure& mu) {
    if (mu.size() <= 1) return std::numeric_limits<double>::infinity();
    return 3.141592653589793238463 * static_cast<double>(mu.size());
}

FourierProfile fourier_profile(const DiscreteMeasure& mu, const BandSpec& bands) {
    if (mu.ambient != 1) throw std::invalid_argument("fourier_profile expects a 1-D measure");
    if (bands.count < 1 || bands.samples_per_band < 1 || !(bands.xi0 > 0.0))
        throw std::invalid_argument("invalid band specification");
    const double ceiling = bands.xi0 * std::pow(2.0, bands.count);
    if (ceiling > aliasing_limit(mu))
        throw std::invalid_argument("band ceiling exceeds the aliasing limit pi*n");

    FourierProfile profile;
    for (int j = 0; j < bands.count; ++j)
        for (int i = 0; i < bands.samples_per_band; ++i)
            profile.frequencies.push_back(
                bands.xi0 * std::pow(2.0, j + (i + 0.5) / bands.samples_per_band));

    profile.values.resize(profile.frequencies.size());
    parallel_for_chunks(profile.frequencies.size(), 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double xi = profile.frequencies[k];
            profile.values[k] = (mu.uniform && mu.size() > 2048)
                                    ? fourier_uniform(mu, xi)
                                    : fourier_direct(mu, xi, 0, mu.size());
        }
    });

    for (int j = 0; j < bands.count; ++j) {
        double mean_sq = 0.0;
        for (int i = 0; i < bands.samples_per_band; ++i) {
            const auto v = profile.values[static_cast<std::size_t>(j * bands.samples_per_band + i)];
            mean_sq += std::norm(v);
        }
        mean_sq /= bands.samples_per_band;
        profile.band_averages.emplace_back(bands.xi0 * std::pow(2.0, j + 0.5), mean_sq);
    }
    return profile;
}

DecayFit decay_exponent(const DiscreteMeasure& mu, const BandSpec& bands) {
    if (bands.count < 4) throw std::invalid_argument("decay fit needs at least 4 bands");
    const FourierProfile profile = fourier_profile(mu, bands);
    std::vector<double> lx, ly;
    for (const auto& [center, mean_sq] : profile.band_averages) {
        if (mean_sq <= 0.0) continue;
        lx.push_back(std::log(center));
        ly.push_back(std::log(mean_sq));
    }
    DecayFit out;
    out.band_averages = profile.band_averages;
    const LinearFit fit = linear_fit(lx, ly);
    if (fit.degenerate) {
        out.rejected = true;
        return out;
    }
    out.eta = -fit.slope;
    out.r2 = fit.r2;
    out.stderr_slope = fit.stderr_slope;
    out.rejected = fit.r2 < 0.5;
    return out;
}

std::vector<double> SobolevTrace::growth_ratios() const {
    std::vector<double> ratios;
    for (std::size_t k = 1; k < integrals.size(); ++k)
        ratios.push_back(integrals[k - 1] > 0.0 ? integrals[k] / integrals[k - 1]
                                                : std::numeric_limits<double>::infinity());
    return ratios;
}

SobolevTrace sobolev_integral(const DiscreteMeasure& mu, double beta, double cutoff, int levels,
                              int nodes_per_octave) {
    if (mu.ambient != 1) throw std::invalid_argument("sobolev_integral expects a 1-D measure");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(cutoff > 0.0) || levels < 1 || nodes_per_octave < 4)
        throw std::invalid_argument("invalid sobolev quadrature parameters");
    if (cutoff * std::pow(2.0, levels) > aliasing_limit(mu))
        throw std::invalid_argument("sobolev cutoff exceeds the aliasing limit pi*n");

    // Node layout: base interval [0, cutoff] at double density, then
    // nodes_per_octave intervals per doubling.
    std::vector<double> nodes;
    const int base_nodes = 2 * nodes_per_octave;
    for (int i = 0; i <= base_nodes; ++i)
        nodes.push_back(cutoff * static_cast<double>(i) / base_nodes);
    for (int level = 0; level < levels; ++level) {
        const double lo = cutoff * std::pow(2.0, level);
        const double hi = 2.0 * lo;
        for (int i = 1; i <= nodes_per_octave; ++i)
            nodes.push_back(lo + (hi - lo) * static_cast<double>(i) / nodes_per_octave);
    }

    std::vector<double> integrand(nodes.size());
    parallel_for_chunks(nodes.size(), 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double xi = nodes[k];
            const std::complex<double> v = (mu.uniform && mu.size() > 2048)
                                               ? fourier_uniform(mu, xi)
                                               : fourier_direct(mu, xi, 0, mu.size());
            integrand[k] = std::pow(std::abs(xi), beta) * std::norm(v);
        }
    });

    SobolevTrace trace;
    trace.beta = beta;
    double acc = 0.0;
    std::size_t k = 1;
    double next_cutoff = cutoff;
    for (int level = 0; level <= levels; ++level) {
        while (k < nodes.size() && nodes[k] <= next_cutoff * (1.0 + 1e-12)) {
            acc += 0.5 * (integrand[k - 1] + integrand[k]) * (nodes[k] - nodes[k - 1]);
            ++k;
        }
        trace.cutoffs.push_back(next_cutoff);
        trace.integrals.push_back(2.0 * acc);  // symmetric in xi
        next_cutoff *= 2.0;
    }
    return trace;
}

namespace {

struct PairSum {
    double value = 0.0;
    bool coincident = false;
};

PairSum pair_energy(std::span<const double> xs, std::span<const double> ys,
                    std::span<const double> ws, double s) {
    const NegativePower kernel(s);
    const bool planar = !ys.empty();
    const std::size_t n = ws.size();
    PairSum half = parallel_reduce(
        n, 1024, PairSum{},
        [&](std::size_t begin, std::size_t end) {
            PairSum acc;
            for (std::size_t i = begin; i < end; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    double d = std::abs(xs[i] - xs[j]);
                    if (planar) d = std::max(d, std::abs(ys[i] - ys[j]));
                    if (d == 0.0) {
                        acc.coincident = true;
                        continue;
                    }
                    acc.value += ws[i] * ws[j] * kernel(d);
                }
            }
            return acc;
        },
        [](PairSum a, PairSum b) {
            return PairSum{a.value + b.value, a.coincident || b.coincident};
        });
    half.value *= 2.0;  // the i != j sum counts ordered pairs
    return half;
}

double uniform_energy(const DiscreteMeasure& mu, double s) {
    const NegativePower kernel(s);
    const double w = mu.w.front();
    const double step = mu.uniform->step;
    const std::size_t n = mu.size();
    return parallel_reduce(
        n, 4096, 0.0,
        [&](std::size_t begin, std::size_t end) {
            double acc = 0.0;
            for (std::size_t k = std::max<std::size_t>(begin, 1); k < end; ++k)
                acc += static_cast<double>(n - k) * kernel(static_cast<double>(k) * step);
            return acc;
        },
        [](double a, double b) { return a + b; }) *
           2.0 * w * w;
}

bool equal_weights(const DiscreteMeasure& mu) {
    for (double v : mu.w)
        if (v != mu.w.front()) return false;
    return true;
}

}  // namespace

EnergyEstimate energy(const DiscreteMeasure& mu, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("energy exponent must be positive");
    if (mu.size() < 2) throw std::invalid_argument("energy needs at least two points");

    EnergyEstimate est;
    est.s = s;
    est.n = mu.size();

    const bool fast = mu.ambient == 1 && mu.uniform && equal_weights(mu);
    PairSum full;
    if (fast) {
        full.value = uniform_energy(mu, s);
    } else {
        full = pair_energy(mu.x, mu.ambient == 2 ? std::span<const double>(mu.y)
                                                 : std::span<const double>{},
                           mu.w, s);
    }
    if (full.coincident) {
        est.coincident = true;
        est.diverged = true;
        est.value = std::numeric_limits<double>::infinity();
        return est;
    }
    est.value = full.value;

    // Half-resolution subsample: every second point, mass-preserving.
    std::vector<double> sx, sy, sw;
    for (std::size_t i = 0; i < mu.size(); i += 2) {
        sx.push_back(mu.x[i]);
        if (mu.ambient == 2) sy.push_back(mu.y[i]);
        sw.push_back(mu.w[i]);
    }
    if (sw.size() >= 2) {
        double sub_mass = std::accumulate(sw.begin(), sw.end(), 0.0);
        const double scale = mu.total_mass / sub_mass;
        for (double& v : sw) v *= scale;
        const PairSum sub = pair_energy(sx, mu.ambient == 2 ? std::span<const double>(sy)
                                                            : std::span<const double>{},
                                        sw, s);
        if (!sub.coincident && sub.value > 0.0) est.convergence_ratio = est.value / sub.value;
    }
    est.diverged = est.convergence_ratio > kEnergyDivergenceRatio;
    return est;
}

SortedMeasure1D::SortedMeasure1D(const DiscreteMeasure& mu) {
    if (mu.ambient != 1) throw std::invalid_argument("SortedMeasure1D expects a 1-D measure");
    std::vector<std::size_t> order(mu.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return mu.x[a] < mu.x[b]; });
    positions_.resize(mu.size());
    prefix_.resize(mu.size() + 1, 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        positions_[i] = mu.x[order[i]];
        prefix_[i + 1] = prefix_[i] + mu.w[order[i]];
    }
    mass_ = prefix_.back();
}

double SortedMeasure1D::ball_mass(double y, double r) const {
    const auto lo = std::upper_bound(positions_.begin(), positions_.end(), y - r);
    const auto hi = std::lower_bound(positions_.begin(), positions_.end(), y + r);
    const std::size_t a = static_cast<std::size_t>(lo - positions_.begin());
    const std::size_t b = static_cast<std::size_t>(hi - positions_.begin());
    return prefix_[b] - prefix_[a];
}

LocalDimension local_dimension(const SortedMeasure1D& view, double point,
                               const std::vector<double>& radii) {
    if (radii.size() < 4)
        throw std::invalid_argument("local dimension ladder needs at least 4 radii");
    LocalDimension out;
    std::vector<double> lr, lm;
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
        const double m = view.ball_mass(point, r);
        out.masses.emplace_back(r, m);
        if (m > 0.0) {
            lr.push_back(std::log(r));
            lm.push_back(std::log(m));
        }
    }
    if (lr.size() < 2) return out;  // all-empty ladder: undefined
    const LinearFit fit = linear_fit(lr, lm);
    if (fit.degenerate) return out;
    out.slope = fit.slope;
    out.defined = true;
    return out;
}

LocalDimension local_dimension(const DiscreteMeasure& mu, double point,
                               const std::vector<double>& radii) {
    return local_dimension(SortedMeasure1D(mu), point, radii);
}

double density_estimate(const SortedMeasure1D& view, double point, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    return view.ball_mass(point, radius) / (2.0 * radius);
}

double density_estimate(const DiscreteMeasure& mu, double point, double radius) {
    return density_estimate(SortedMeasure1D(mu), point, radius);
}

namespace {

void write_number(std::ostream& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

double read_number(const std::string& token) {
    double v = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{}) throw std::invalid_argument("malformed CSV number: " + token);
    return v;
}

}  // namespace

void measure_to_csv(const DiscreteMeasure& mu, std::ostream& out) {
    out << (mu.ambient == 2 ? "x,y,w\n" : "x,w\n");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        write_number(out, mu.x[i]);
        if (mu.ambient == 2) {
            out.put(',');
            write_number(out, mu.y[i]);
        }
        out.put(',');
        write_number(out, mu.w[i]);
        out.put('\n');
    }
}

DiscreteMeasure measure_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    const bool planar = line == "x,y,w";
    if (!planar && line != "x,w") throw std::invalid_argument("unrecognized CSV header: " + line);

    std::vector<double> xs, ys, ws;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != (planar ? 3u : 2u))
            throw std::invalid_argument("malformed CSV row: " + line);
        xs.push_back(read_number(fields[0]));
        if (planar) ys.push_back(read_number(fields[1]));
        ws.push_back(read_number(fields.back()));
    }
    return planar ? DiscreteMeasure::points2d(std::move(xs), std::move(ys), std::move(ws))
                  : DiscreteMeasure::points1d(std::move(xs), std::move(ws));
}

}  // namespace holderlab
