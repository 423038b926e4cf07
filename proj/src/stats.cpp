#include "bohm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bohm {
namespace {

// Lower incomplete gamma by series, returns P(a,x).
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by Lentz continued fraction, returns Q(a,x).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw std::domain_error("gamma_q: requires x >= 0, a > 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_pvalue(double chi2, int dof) {
    if (dof < 1) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * chi2);
}

Chi2Result chi2_gof(const std::vector<double>& observed,
                    const std::vector<double>& expected, double min_expected) {
    if (observed.size() != expected.size())
        throw std::invalid_argument("chi2_gof: size mismatch");
    Chi2Result r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] < min_expected) continue;
        const double d = observed[i] - expected[i];
        r.chi2 += d * d / expected[i];
        ++r.bins_used;
    }
    r.dof = std::max(1, r.bins_used - 1);
    r.pvalue = (r.bins_used > 1) ? chi2_pvalue(r.chi2, r.dof) : 1.0;
    return r;
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
    if (sample.empty())
        throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max(d, std::abs(F - i / n));
        d = std::max(d, std::abs((i + 1) / n - F));
    }
    return d;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need matching sizes >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cov = sxy - sx * sy / n;
    LinearFit f;
    f.slope = cov / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = (vy > 0.0) ? cov * cov / (vx * vy) : 1.0;
    return f;
}

} // namespace bohm
