#include "werboot/normal.hpp"

#include <cmath>

#include "werboot/errors.hpp"

namespace werboot {

double gaussian_cdf(double x) {
  const double xabs = std::fabs(x);
  double cum;
  if (xabs > 37.0) {
    cum = 0.0;
  } else {
    const double e = std::exp(-xabs * xabs / 2.0);
    if (xabs < 7.07106781186547) {
      // Hart 1968 coefficients, |error| < 1e-14.
      double build = 3.52624965998911e-02 * xabs + 0.700383064443688;
      build = build * xabs + 6.37396220353165;
      build = build * xabs + 33.912866078383;
      build = build * xabs + 112.079291497871;
      build = build * xabs + 221.213596169931;
      build = build * xabs + 220.206867912376;
      cum = e * build;
      build = 8.83883476483184e-02 * xabs + 1.75566716318264;
      build = build * xabs + 16.064177579207;
      build = build * xabs + 86.7807322029461;
      build = build * xabs + 296.564248779674;
      build = build * xabs + 637.333633378831;
      build = build * xabs + 793.826512519948;
      build = build * xabs + 440.413735824752;
      cum /= build;
    } else {
      // Far tail: short continued fraction.
      double build = xabs + 0.65;
      build = xabs + 4.0 / build;
      build = xabs + 3.0 / build;
      build = xabs + 2.0 / build;
      build = xabs + 1.0 / build;
      cum = e / build / 2.506628274631000502;  // sqrt(2*pi)
    }
  }
  return x > 0.0 ? 1.0 - cum : cum;
}

double gaussian_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidConfig("gaussian_quantile: p must lie strictly in (0, 1)");
  }

  // AS 241, PPND16 (Wichura 1988).
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }

  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) *
                      r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e0) *
                    r +
                3.64784832476320460504e0) *
                   r +
               5.76949722146069140550e0) *
                  r +
              4.63033784615654529590e0) *
                 r +
             1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) *
                      r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e0) *
                  r +
              2.05319162663775882187e0) *
                 r +
             1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) *
                      r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e0) *
                  r +
              5.46378491116411436990e0) *
                 r +
             6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                      r +
                  1.84631831751005468180e-5) *
                     r +
                 7.86869131145613259100e-4) *
                    r +
                1.48753612908506148525e-2) *
                   r +
               1.36929880922735805310e-1) *
                  r +
              5.99832206555887937690e-1) *
                 r +
             1.0);
  }
  return q < 0.0 ? -value : value;
}

double z_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidConfig("z_value: alpha must lie strictly in (0, 1)");
  }
  const double z = gaussian_quantile(1.0 - alpha / 2.0);
  return std::round(z * 1e6) / 1e6;
}

}  // namespace werboot
