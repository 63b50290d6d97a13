#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wvol/quadrature.hpp"

namespace wvol::adapted {

struct Curve {
  int id = 0;
  double length = 1.0;
  bool compressible = false;

  bool operator==(const Curve&) const = default;
};

struct CurveSystem {
  int genus_sum = 2;
  std::vector<Curve> curves;
  // Pairs of curve ids with nonzero geometric intersection.
  std::vector<std::pair<int, int>> intersections;
  // Intersecting geodesics satisfy sinh(a/2) sinh(b/2) >= 1. Off for purely
  // combinatorial systems.
  bool check_collars = true;

  // Throws ValidationError: ids, lengths, symmetric matrix with false
  // diagonal, disjoint families of at most 3g - 3 curves, and collar
  // disjointness of intersecting pairs when enabled.
  void validate() const;
  int max_components() const { return 3 * genus_sum - 3; }
  // Symmetric intersection matrix in curve order.
  std::vector<std::vector<bool>> matrix() const;
  int index_of(int id) const;

  bool operator==(const CurveSystem&) const = default;
};

// Largest pairwise disjoint family; n <= 64.
int max_disjoint_family(const CurveSystem& system);

struct MulticurveSelection {
  std::vector<int> members;  // ascending ids
  double value = 0.0;

  bool operator==(const MulticurveSelection&) const = default;
};

// pi^3 sum 1/l over the members, summed in ascending id order.
double multicurve_value(const CurveSystem& system, const std::vector<int>& ids);

enum class Solver { automatic, brute_force, branch_and_bound };

struct CorrectionResult {
  double value = 0.0;
  // All optima within a relative 1e-12 of the best value, ordered by ids.
  std::vector<MulticurveSelection> optima;
  // First optimum extended by disjoint incompressible curves.
  std::vector<int> maximal_completion;
  Solver solver = Solver::automatic;
};

// Brute force for at most 20 compressible curves unless another solver is named.
CorrectionResult correction_max(const CurveSystem& system, Solver solver = Solver::automatic);

// Best value with one curve forced in, minus the unconstrained best.
std::vector<std::pair<int, double>> marginal_values(const CurveSystem& system);

double adapted_value(double base_vr, const CurveSystem& system);

// pi^3/l_min <= max value <= (3g - 3) pi^3/l_min over the compressible curves.
std::pair<double, double> correction_bounds(const CurveSystem& system);

// -pi^3/eps + pi^3 (3g - 3)/arsinh(1/sinh(eps/2)).
double var1_expression(int g, double eps);
double epsilon1_threshold(int g);
// 2 arsinh(1).
double epsilon0();

bool short_curve_inclusion_check(const CurveSystem& system, double eps);

double collar_width(double ell);
double collar_boundary_length(double ell);

// L1 norm of dz^2/z^2 over {1 <= |z| <= e^l, theta_a <= arg z <= theta_b}.
double qd_l1_on_sector(double ell, double theta_a, double theta_b);
quad::QuadResult qd_l1_on_sector_quadrature(double ell, double theta_a, double theta_b,
                                            const quad::QuadratureConfig& cfg = {});
// Angle of the thin-tube boundary ray: sin theta = tanh(l/2).
double thin_angle(double ell);
// 2/(pi l^2) times the L1 norm over the two sectors next to the real axis.
double qd_thick_l1(double ell);
// 4 theta/(pi l).
double qd_thick_l1_closed(double ell);
// (2 pi^2/l^2) tanh^2(l/2).
double qd_linf_thick_bound(double ell);
// Hyperbolic pointwise norm sin^2(arg z) of dz^2/z^2 sampled over an angular range.
double qd_linf_sampled(double theta_a, double theta_b, int samples = 1001);

struct QdDiscrepancy {
  double ell = 0.0;
  double quadrature = 0.0;  // 2/pi times the L1 norm over (0, pi)
  double stated = 0.0;      // 4 l
  double ratio = 0.0;
};

QdDiscrepancy qd_full_annulus_discrepancy(double ell, const quad::QuadratureConfig& cfg = {});

struct RandomSystemOptions {
  int curves = 12;
  double min_length = 0.02;
  double max_length = 3.0;
  double compressible_probability = 0.7;
  double intersection_probability = 0.3;
};

// Valid by construction: collar-violating intersections are dropped and the
// genus is raised until the disjoint-family cap holds.
CurveSystem random_curve_system(std::uint64_t seed, const RandomSystemOptions& opt = {});

}  // namespace wvol::adapted
