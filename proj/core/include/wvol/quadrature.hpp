#pragma once

#include <functional>
#include <span>

namespace wvol::quad {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_subdivisions = 20000;
  // Gauss-Kronrod points: 15, 21, 31, 41, 51 or 61.
  int order = 15;
  int initial_cells = 8;

  void validate() const;
  QuadratureConfig tightened(double factor) const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
  int cells = 0;
};

// Level-synchronous adaptive Gauss-Kronrod. Cells of one level are evaluated
// in parallel; the accepted cells are summed in interval order with Neumaier
// compensation, so the result depends only on the cell tree.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureConfig& cfg);

// Iterated rule: outer x in [ax, bx], inner y in [ay, by].
QuadResult integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                       double ay, double by, const QuadratureConfig& cfg);

double neumaier_sum(std::span<const double> xs);

// Caps worker threads for all later parallel work; 0 restores the default.
void set_parallelism(int jobs);
int parallelism();

}  // namespace wvol::quad
