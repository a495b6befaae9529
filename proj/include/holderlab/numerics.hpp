#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace holderlab {

/// Ordinary least squares y = slope*x + intercept with diagnostics.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    bool degenerate = false;  // fewer than 2 points, or zero x-variance
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// d^{-s} for d > 0. Quarter-integer exponents (s = q/4) take a
/// sqrt/multiply path; pair-sum kernels hit this ~5x faster than std::pow.
class NegativePower {
public:
    explicit NegativePower(double s);
    double operator()(double d) const {
        if (quarter_ >= 0) {
            double t = std::sqrt(std::sqrt(d));
            double p = 1.0;
            double base = t;
            int q = quarter_;
            while (q > 0) {
                if (q & 1) p *= base;
                base *= base;
                q >>= 1;
            }
            return 1.0 / p;
        }
        return std::pow(d, minus_s_);
    }
    double exponent() const { return -minus_s_; }

private:
    double minus_s_;
    int quarter_;  // s*4 when integral, else -1
};

}  // namespace holderlab
