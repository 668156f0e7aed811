#ifndef CONC_STATS_HPP
#define CONC_STATS_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace conc {

// quantile of the standard normal (Acklam's rational approximation, |err| < 1.2e-9)
double normal_quantile(double p);

// Wilson score interval for a binomial proportion. trials >= 1 required.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double confidence);

// regularized upper incomplete gamma Q(a, x); used for chi-square p-values
double gamma_q(double a, double x);

// survival function of the chi-square distribution with dof degrees of freedom
double chi_square_survival(double statistic, int dof);

double mean(const std::vector<double>& xs);
// median of a copy of xs (midpoint of the two central order statistics when even)
double median(std::vector<double> xs);

}  // namespace conc

#endif
