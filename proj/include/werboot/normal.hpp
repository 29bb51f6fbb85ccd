#pragma once

namespace werboot {

// Standard normal CDF, absolute error below 1e-14. Hart's rational
// approximation in the double-precision arrangement of West (2005); fixed
// coefficients keep the value bit-identical across platforms, which the
// reproducibility contract requires of everything in the sampling path.
double gaussian_cdf(double x);

// Standard normal quantile (inverse CDF), Wichura's algorithm AS 241
// (PPND16 variant), relative error around 1e-15 over (0, 1).
// Throws InvalidConfig unless 0 < p < 1.
double gaussian_quantile(double p);

// Two-sided critical value z_{1-alpha/2}, rounded to six decimal places.
// Reports quote z to six digits (1.959964 at alpha = 0.05) and intervals are
// built from the same rounded value so the quoted number is exact.
double z_value(double alpha);

}  // namespace werboot
