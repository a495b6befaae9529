#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace holderlab {

/// Candidate alpha-bi-Hölder map Phi: [0,1] -> R^d.
///
/// The certified claim is scale-limited: whatever c1/c2 estimates are
/// attached hold for tested pairs with |x-y| >= resolution_floor, never as a
/// proof. Values are immutable after construction; evaluation is pure.
struct SnowflakeEmbedding {
    /// Writes the d coordinates of Phi(x) into `out` (out.size() == dim).
    std::function<void(double, std::span<double>)> eval_into;
    int dim = 1;
    double alpha = 0.5;
    std::optional<double> c1_estimate;
    std::optional<double> c2_estimate;
    double resolution_floor = 0.0;
    std::string description;

    void evaluate(double x, std::span<double> out) const { eval_into(x, out); }

    std::vector<double> operator()(double x) const {
        std::vector<double> out(static_cast<std::size_t>(dim));
        eval_into(x, out);
        return out;
    }
};

/// <t, Phi(x)> without allocating per call.
double probe_value(const SnowflakeEmbedding& embedding, std::span<const double> t, double x);

}  // namespace holderlab
