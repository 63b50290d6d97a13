#pragma once

#include <vector>

namespace wvol::fit {

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;
};

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

// y ~ limit + coefficient * x^order, order searched in [order_lo, order_hi].
struct RemainderFit {
  double limit = 0.0;
  double coefficient = 0.0;
  double order = 0.0;
  double rms = 0.0;
  bool ok = false;
};

RemainderFit fit_remainder(const std::vector<double>& x, const std::vector<double>& y,
                           double order_lo = -3.0, double order_hi = 4.0);

// Slope of log|y| against log x.
double fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wvol::fit
