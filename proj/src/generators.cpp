#include <holderlab/generators.hpp>

#include <algorithm>

namespace holderlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

PeriodicGenerator PeriodicGenerator::triangle() {
    return PeriodicGenerator(Kind::Triangle, 1.0, 0.5, "triangle");
}

PeriodicGenerator PeriodicGenerator::cosine() {
    return PeriodicGenerator(Kind::Cosine, kTwoPi, 1.0, "cosine");
}

PeriodicGenerator PeriodicGenerator::trig_polynomial(std::vector<TrigTerm> terms) {
    double lip = 0.0, sup = 0.0;
    for (const TrigTerm& t : terms) {
        if (t.frequency < 1) throw std::invalid_argument("trig term frequency must be >= 1");
        const double amp = std::hypot(t.cos_coeff, t.sin_coeff);
        lip += kTwoPi * t.frequency * amp;
        sup += amp;
    }
    PeriodicGenerator g(Kind::TrigPolynomial, lip, sup, "trig-poly");
    std::sort(terms.begin(), terms.end(),
              [](const TrigTerm& a, const TrigTerm& b) { return a.frequency < b.frequency; });
    g.terms_ = std::move(terms);
    return g;
}

PeriodicGenerator PeriodicGenerator::custom(std::function<double(double)> fn,
                                            double lipschitz_bound, double sup_bound,
                                            std::string label) {
    if (!fn) throw std::invalid_argument("custom generator requires a callable");
    if (lipschitz_bound < 0 || sup_bound < 0)
        throw std::invalid_argument("generator bounds must be nonnegative");
    PeriodicGenerator g(Kind::Custom, lipschitz_bound, sup_bound, std::move(label));
    g.custom_ = std::move(fn);
    return g;
}

double PeriodicGenerator::operator()(double x) const {
    const double u = x - std::floor(x);
    switch (kind_) {
        case Kind::Triangle:
            return std::min(u, 1.0 - u);
        case Kind::Cosine:
            return std::cos(kTwoPi * u);
        case Kind::TrigPolynomial: {
            // cos/sin at successive frequencies by angle addition: one sincos
            // per evaluation regardless of the frequency cutoff.
            const double c1 = std::cos(kTwoPi * u);
            const double s1 = std::sin(kTwoPi * u);
            double cf = 1.0, sf = 0.0;
            double acc = 0.0;
            int f = 0;
            for (const TrigTerm& t : terms_) {
                while (f < t.frequency) {
                    const double c = cf * c1 - sf * s1;
                    const double s = sf * c1 + cf * s1;
                    cf = c;
                    sf = s;
                    ++f;
                }
                acc += t.cos_coeff * cf + t.sin_coeff * sf;
            }
            return acc;
        }
        case Kind::Custom:
            return custom_(u);
    }
    return 0.0;
}

}  // namespace holderlab
