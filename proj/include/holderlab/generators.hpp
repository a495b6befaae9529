#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace holderlab {

/// One term a*cos(2*pi*f*x) + b*sin(2*pi*f*x) of a trigonometric polynomial.
struct TrigTerm {
    int frequency = 1;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

/// Z-periodic Lipschitz generator for Weierstrass-type series.
///
/// Three built-in kinds carry exact Lipschitz and sup bounds; arbitrary
/// callables are accepted but the caller must supply both bounds, since they
/// cannot be inferred and every certificate downstream depends on them.
class PeriodicGenerator {
public:
    enum class Kind { Triangle, Cosine, TrigPolynomial, Custom };

    static PeriodicGenerator triangle();  // x -> dist(x, Z)
    static PeriodicGenerator cosine();    // x -> cos(2*pi*x)
    static PeriodicGenerator trig_polynomial(std::vector<TrigTerm> terms);
    static PeriodicGenerator custom(std::function<double(double)> fn, double lipschitz_bound,
                                    double sup_bound, std::string label = "custom");

    /// Evaluates at the fractional part of x, so g(x+1) == g(x) holds exactly
    /// whenever x and x+1 are both representable.
    double operator()(double x) const;

    Kind kind() const { return kind_; }
    double lipschitz_bound() const { return lipschitz_; }
    double sup_bound() const { return sup_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }
    const std::string& label() const { return label_; }

private:
    PeriodicGenerator(Kind kind, double lipschitz, double sup, std::string label)
        : kind_(kind), lipschitz_(lipschitz), sup_(sup), label_(std::move(label)) {}

    Kind kind_;
    double lipschitz_;
    double sup_;
    std::string label_;
    std::vector<TrigTerm> terms_;
    std::function<double(double)> custom_;
};

}  // namespace holderlab
