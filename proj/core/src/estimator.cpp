#include "dppmc/estimator.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "dppmc/error.hpp"

namespace dppmc {

namespace {

std::string describe(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t j = 0; j < x.size(); ++j) os << (j ? ", " : "") << x[j];
    os << ')';
    return os.str();
}

double checked_eval(const Integrand& f, std::span<const double> x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw NumericalError("integrand is not finite at node " + describe(x));
    }
    return v;
}

}  // namespace

double compensated_sum(std::span<const double> terms) noexcept {
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

Estimate estimate(const Integrand& f, const WeightedSample& sample) {
    std::vector<double> terms(sample.points.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        terms[i] = checked_eval(f, sample.points[i]) * sample.weights[i];
    }
    Estimate e;
    e.value = compensated_sum(terms);
    e.n = terms.size();
    return e;
}

Estimate importance_estimate(const Integrand& f, const Density& omega, const Density& q,
                             const WeightedSample& sample) {
    std::vector<double> terms(sample.points.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& x = sample.points[i];
        const double fx = checked_eval(f, x);
        const double w = omega(x);
        const double qx = q(x);
        if (qx == 0.0) {
            if (fx * w != 0.0) {
                throw DomainError("importance_estimate: proposal density vanishes at node " +
                                  describe(x) + " where f*omega != 0");
            }
            terms[i] = 0.0;
        } else {
            // w / qx is exactly 1 when omega == q, so this reduces to estimate() bit for bit.
            terms[i] = fx * sample.weights[i] * (w / qx);
        }
    }
    Estimate e;
    e.value = compensated_sum(terms);
    e.n = terms.size();
    return e;
}

}  // namespace dppmc
