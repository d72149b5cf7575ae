#pragma once

namespace randmarkov {

double normal_cdf(double x);

/// Inverse standard-normal CDF for p in (0, 1); absolute error below 1e-12.
double normal_quantile(double p);

/// p-quantile of the chi-square distribution with one degree of freedom.
double chi2_1_quantile(double p);

}  // namespace randmarkov
