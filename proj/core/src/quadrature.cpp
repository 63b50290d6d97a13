#include "wvol/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <tbb/global_control.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>

#include "wvol/errors.hpp"

namespace wvol::quad {

namespace {

struct Cell {
  double a, b;
  int depth;
  double value = 0.0;
  double error = 0.0;
};

template <unsigned N>
void eval_cell(const std::function<double(double)>& f, Cell& c) {
  double err = 0.0;
  c.value = boost::math::quadrature::gauss_kronrod<double, N>::integrate(f, c.a, c.b, 0, 0.0, &err);
  // The non-adaptive estimate refers to the rule on [-1, 1].
  c.error = err * 0.5 * (c.b - c.a);
}

void eval(const std::function<double(double)>& f, Cell& c, int order) {
  switch (order) {
    case 15: eval_cell<15>(f, c); break;
    case 21: eval_cell<21>(f, c); break;
    case 31: eval_cell<31>(f, c); break;
    case 41: eval_cell<41>(f, c); break;
    case 51: eval_cell<51>(f, c); break;
    default: eval_cell<61>(f, c); break;
  }
  if (!std::isfinite(c.value) || !std::isfinite(c.error))
    throw NonConvergence("integrand is not finite on [" + std::to_string(c.a) + ", " +
                         std::to_string(c.b) + "]");
}

std::mutex control_mutex;
std::unique_ptr<tbb::global_control> control;
int jobs_setting = 0;

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw ValidationError("quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw ValidationError("max_subdivisions must be positive");
  if (initial_cells < 1) throw ValidationError("initial_cells must be positive");
  static constexpr int orders[] = {15, 21, 31, 41, 51, 61};
  if (std::find(std::begin(orders), std::end(orders), order) == std::end(orders))
    throw ValidationError("unsupported Gauss-Kronrod order " + std::to_string(order));
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
  QuadratureConfig c = *this;
  c.rel_tol *= factor;
  c.abs_tol *= factor;
  return c;
}

double neumaier_sum(std::span<const double> xs) {
  double s = 0.0, comp = 0.0;
  for (double x : xs) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      comp += (s - t) + x;
    else
      comp += (x - t) + s;
    s = t;
  }
  return s + comp;
}

namespace {

QuadResult integrate_impl(const std::function<double(double)>& f, double a, double b,
                          const QuadratureConfig& cfg, bool parallel) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw ValidationError("integration limits must be finite");
  QuadResult res;
  if (a == b) return res;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double width = b - a;
  std::vector<Cell> done;
  std::vector<Cell> active;
  for (int i = 0; i < cfg.initial_cells; ++i) {
    double lo = a + width * i / cfg.initial_cells;
    double hi = i + 1 == cfg.initial_cells ? b : a + width * (i + 1) / cfg.initial_cells;
    active.push_back({lo, hi, 0});
  }
  int splits = 0;
  while (true) {
    if (parallel)
      tbb::parallel_for(std::size_t{0}, active.size(), [&](std::size_t i) { eval(f, active[i], cfg.order); });
    else
      for (Cell& c : active) eval(f, c, cfg.order);

    std::vector<Cell> all = done;
    all.insert(all.end(), active.begin(), active.end());
    std::sort(all.begin(), all.end(), [](const Cell& x, const Cell& y) { return x.a < y.a; });
    std::vector<double> vals(all.size()), errs(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      vals[i] = all[i].value;
      errs[i] = all[i].error;
    }
    double total = neumaier_sum(vals);
    double err = neumaier_sum(errs);
    double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));

    res.value = sign * total;
    res.error = err;
    res.cells = static_cast<int>(all.size());
    res.depth = 0;
    for (const Cell& c : all) res.depth = std::max(res.depth, c.depth);
    if (err <= target) return res;

    std::vector<Cell> next;
    for (const Cell& c : active) {
      double share = target * (c.b - c.a) / width;
      double mid = 0.5 * (c.a + c.b);
      bool splittable = mid > c.a && mid < c.b;
      bool at_roundoff = c.error <= 8 * std::numeric_limits<double>::epsilon() * std::abs(c.value);
      if (c.error > share && splittable && !at_roundoff) {
        next.push_back({c.a, mid, c.depth + 1});
        next.push_back({mid, c.b, c.depth + 1});
        ++splits;
      } else {
        done.push_back(c);
      }
    }
    if (next.empty() || splits > cfg.max_subdivisions)
      throw NonConvergence("adaptive quadrature did not reach tolerance: error " + std::to_string(err) +
                           " > target " + std::to_string(target) + " after " + std::to_string(splits) +
                           " subdivisions");
    active = std::move(next);
  }
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureConfig& cfg) {
  return integrate_impl(f, a, b, cfg, true);
}

QuadResult integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                       double ay, double by, const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg.tightened(0.1);
  inner.initial_cells = std::max(1, cfg.initial_cells / 4);
  auto outer = [&](double x) {
    auto fy = [&](double y) { return f(x, y); };
    return integrate_impl(fy, ay, by, inner, false).value;
  };
  return integrate_impl(outer, ax, bx, cfg, true);
}

void set_parallelism(int jobs) {
  std::lock_guard<std::mutex> lock(control_mutex);
  control.reset();
  jobs_setting = jobs;
  if (jobs > 0)
    control = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism,
                                                    static_cast<std::size_t>(jobs));
}

int parallelism() {
  std::lock_guard<std::mutex> lock(control_mutex);
  return jobs_setting > 0 ? jobs_setting : tbb::info::default_concurrency();
}

}  // namespace wvol::quad
