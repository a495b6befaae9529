#include <holderlab/numerics.hpp>

#include <cmath>

namespace holderlab {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    LinearFit fit;
    const std::size_t m = x.size();
    if (m < 2 || y.size() != m) {
        fit.degenerate = true;
        return fit;
    }
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(m);
    const double my = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0) {
        fit.degenerate = true;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += e * e;
    }
    // Zero y-variance is a perfect constant fit, not a failure.
    fit.r2 = (syy > 0) ? 1.0 - ss_res / syy : 1.0;
    fit.stderr_slope = (m > 2) ? std::sqrt(ss_res / (static_cast<double>(m) - 2.0) / sxx) : 0.0;
    return fit;
}

NegativePower::NegativePower(double s) : minus_s_(-s), quarter_(-1) {
    const double q = s * 4.0;
    if (s > 0 && s <= 16.0 && q == std::floor(q)) quarter_ = static_cast<int>(q);
}

}  // namespace holderlab
