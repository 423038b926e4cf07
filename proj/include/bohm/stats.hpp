#pragma once

#include <functional>
#include <vector>

namespace bohm {

/// Upper regularized incomplete gamma Q(a, x) (series + continued fraction).
double gamma_q(double a, double x);

/// Chi-square survival probability P(X >= chi2) with dof degrees of freedom.
double chi2_pvalue(double chi2, int dof);

struct Chi2Result {
    double chi2 = 0.0;
    int dof = 0;
    double pvalue = 1.0;
    int bins_used = 0;
};

/// Pearson chi-square of observed counts against expected counts, restricted
/// to bins with expected >= min_expected; dof = bins_used - 1.
Chi2Result chi2_gof(const std::vector<double>& observed,
                    const std::vector<double>& expected, double min_expected = 20.0);

/// One-sample Kolmogorov-Smirnov statistic of a sample against a CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

/// Least-squares slope/intercept fit with coefficient of determination.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace bohm
