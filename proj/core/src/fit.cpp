#include "wvol/fit.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "wvol/errors.hpp"

namespace wvol::fit {

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("linear fit needs two or more points");
  double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

RemainderFit fit_remainder(const std::vector<double>& x, const std::vector<double>& y, double lo,
                           double hi) {
  if (x.size() != y.size() || x.size() < 3) throw ValidationError("remainder fit needs three or more points");
  auto solve = [&](double p) {
    std::vector<double> xp(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xp[i] = std::pow(x[i], p);
    return fit_linear(xp, y);
  };
  auto objective = [&](double p) { return solve(p).rms; };
  auto [p, rms] = boost::math::tools::brent_find_minima(objective, lo, hi, 40);
  LinearFit lf = solve(p);
  RemainderFit r;
  r.order = p;
  r.limit = lf.intercept;
  r.coefficient = lf.slope;
  r.rms = rms;
  r.ok = std::isfinite(p) && std::isfinite(lf.intercept);
  return r;
}

double fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0 && y[i] != 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(std::abs(y[i])));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return fit_linear(lx, ly).slope;
}

}  // namespace wvol::fit
