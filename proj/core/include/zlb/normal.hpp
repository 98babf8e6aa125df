#pragma once

namespace zlb {

double normal_cdf(double x);
double normal_pdf(double x);
// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

}  // namespace zlb
