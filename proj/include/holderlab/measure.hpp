#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <holderlab/holder_function.hpp>

namespace holderlab {

/// Weighted point cloud in R^1 or R^2 representing an empirical pushforward
/// measure. Immutable after construction; all distances in the plane use the
/// maximum norm.
struct DiscreteMeasure {
    int ambient = 1;
    std::vector<double> x;       // positions (1-D) or first coordinates
    std::vector<double> y;       // second coordinates, empty in 1-D
    std::vector<double> w;       // positive weights
    double total_mass = 0.0;

    /// Set for measures constructed as uniform grids: position i equals
    /// origin + i*step exactly. Enables O(n) energy and Fourier fast paths.
    struct UniformSpacing {
        double origin;
        double step;
    };
    std::optional<UniformSpacing> uniform;

    std::size_t size() const { return w.size(); }

    static DiscreteMeasure points1d(std::vector<double> xs, std::vector<double> ws);
    static DiscreteMeasure points2d(std::vector<double> xs, std::vector<double> ys,
                                    std::vector<double> ws);
    /// Uniform measure on [0,1]: midpoints (i+1/2)/n with weights 1/n.
    static DiscreteMeasure uniform_grid(int n);
    /// Midpoint measure with weights proportional to density(x_i), mass 1.
    static DiscreteMeasure from_density(const std::function<double(double)>& density, int n);
};

/// Lift of the Lebesgue measure onto the graph: points (x_i, f(x_i)) at the
/// midpoints x_i = (i+1/2)/n with weights 1/n.
DiscreteMeasure lift_measure(const HolderFunction& f, int n);

/// Pushforward under proj_theta(x,y) = x cos(theta) + y sin(theta).
DiscreteMeasure project(const DiscreteMeasure& mu, double theta);

/// Fourier transform sum_j w_j e^{i xi p_j} of a 1-D measure.
std::complex<double> fourier(const DiscreteMeasure& mu, double xi);

/// Largest frequency at which the discrete transform still tracks the
/// continuum: pi * point count (single atoms are unconstrained).
double aliasing_limit(const DiscreteMeasure& mu);

/// Dyadic frequency bands [xi0 * 2^j, xi0 * 2^{j+1}), j = 0..count-1.
struct BandSpec {
    double xi0 = 16.0;
    int count = 10;
    int samples_per_band = 16;  // logarithmically spaced inside each band
};

struct FourierProfile {
    std::vector<double> frequencies;
    std::vector<std::complex<double>> values;
    std::vector<std::pair<double, double>> band_averages;  // (band center, mean |mu-hat|^2)
};

FourierProfile fourier_profile(const DiscreteMeasure& mu, const BandSpec& bands);

/// Average-decay exponent: least-squares slope of log(mean |mu-hat|^2) against
/// log(band center), sign-flipped so larger eta means faster decay.
/// Finiteness of the beta-Sobolev integral is heuristically indicated by
/// eta > beta + 1.
struct DecayFit {
    double eta = 0.0;
    double r2 = 0.0;
    double stderr_slope = 0.0;
    bool rejected = false;  // residual R^2 < 0.5
    std::vector<std::pair<double, double>> band_averages;
};

DecayFit decay_exponent(const DiscreteMeasure& mu, const BandSpec& bands);

/// Trapezoid quadrature of |xi|^beta |mu-hat(xi)|^2 over [-cutoff, cutoff]
/// at doubling cutoffs. Growth ratios near 1 indicate a bounded integral.
struct SobolevTrace {
    double beta = 0.0;
    std::vector<double> cutoffs;
    std::vector<double> integrals;
    std::vector<double> growth_ratios() const;
};

SobolevTrace sobolev_integral(const DiscreteMeasure& mu, double beta, double cutoff, int levels,
                              int nodes_per_octave = 128);

/// Off-diagonal pair energy sum_{i != j} w_i w_j |p_i - p_j|^{-s}.
struct EnergyEstimate {
    double s = 0.0;
    double value = 0.0;
    std::size_t n = 0;
    /// value(n) / value on the half-resolution subsample; drifting ratios
    /// signal divergence of the continuum integral.
    double convergence_ratio = 1.0;
    bool diverged = false;
    bool coincident = false;
};

/// Ratio threshold above which an energy estimate is flagged divergent.
inline constexpr double kEnergyDivergenceRatio = 1.25;

EnergyEstimate energy(const DiscreteMeasure& mu, double s);

/// Sorted view with prefix weights for O(log n) ball masses.
class SortedMeasure1D {
public:
    explicit SortedMeasure1D(const DiscreteMeasure& mu);
    /// Mass of the open ball B(y, r).
    double ball_mass(double y, double r) const;
    double mass() const { return mass_; }
    double min() const { return positions_.front(); }
    double max() const { return positions_.back(); }

private:
    std::vector<double> positions_;
    std::vector<double> prefix_;  // prefix_[i] = sum of first i weights
    double mass_;
};

/// Least-squares slope of log mu(B(y,r)) against log r over the radius
/// ladder; the lower-pointwise-dimension estimator.
struct LocalDimension {
    double slope = 0.0;
    bool defined = false;
    std::vector<std::pair<double, double>> masses;  // (r, mu(B(y,r)))
};

LocalDimension local_dimension(const DiscreteMeasure& mu, double point,
                               const std::vector<double>& radii);
LocalDimension local_dimension(const SortedMeasure1D& view, double point,
                               const std::vector<double>& radii);

/// mu(B(y,r)) / (2r): kernel density surrogate for the projected density.
double density_estimate(const DiscreteMeasure& mu, double point, double radius);
double density_estimate(const SortedMeasure1D& view, double point, double radius);

/// Two-column (1-D) or three-column (2-D) CSV with a header row; numbers are
/// shortest-round-trip so the round trip is bit exact.
void measure_to_csv(const DiscreteMeasure& mu, std::ostream& out);
DiscreteMeasure measure_from_csv(std::istream& in);

}  // namespace holderlab
