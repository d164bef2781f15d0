#pragma once

namespace mfb {

// Upper tail of the chi-square distribution with df degrees of freedom,
// via the regularized incomplete gamma function. Absolute error <= 1e-10.
double chi2_sf(double x, int df);

// Inverse of chi2_sf in x for a given upper-tail probability.
double chi2_ppf_upper(double upper_p, int df);

// Complementary standard normal CDF.
double normal_sf(double x);

} // namespace mfb
