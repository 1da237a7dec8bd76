#pragma once

#include <functional>
#include <vector>

namespace umg::profiles {

enum class ProfileKind { rhombus, averaged, circle_cap, sampled };

// A concave, 1-Lipschitz function h on [-D, D].  It is the upper support
// profile of a centrally symmetric convex body and therefore encodes a
// planar norm via  ||(x,y)|| = sup_xi { xi*x + h(xi)*y }  for y > 0.
class DualProfile {
 public:
  // Tent profile  h(xi) = D - |xi - beta|  of the rhombus norm with
  // diagonal lengths u = D + beta, v = D - beta.
  static DualProfile rhombus(double beta, double D);

  // Arithmetic mean of tent profiles over betas[m..n) (0-based, half-open).
  static DualProfile averaged(const std::vector<double>& betas, std::size_t m, std::size_t n,
                              double D);

  // Circular cap with linear wings on [-sqrt2, sqrt2]:
  //   h(xi) = sqrt(1 - xi^2)   for |xi| <= sqrt2/2,
  //   h(xi) = sqrt2 - |xi|     for sqrt2/2 <= |xi| <= sqrt2.
  static DualProfile circle_cap();

  // Piecewise-linear interpolation through strictly increasing nodes xs
  // covering [-D, D]; rejects non-concave or non-1-Lipschitz data.  `slack`
  // absorbs numerical noise in externally computed values (e.g. the Legendre
  // transform search error near the domain endpoints).
  static DualProfile sampled(std::vector<double> xs, std::vector<double> hs,
                             double slack = 1e-9);

  ProfileKind kind() const { return kind_; }
  double D() const { return D_; }
  double eval(double xi) const;  // domain-checked, |xi| <= D (tiny slack)
  double operator()(double xi) const { return eval(xi); }

  // Interior kink locations (tent apexes or sample nodes), sorted, within
  // [-D, D].  The supremum in the norm recovery is attained here or at +-D.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  DualProfile() = default;
  ProfileKind kind_ = ProfileKind::rhombus;
  double D_ = 0.0;
  // rhombus/averaged: sorted tent apexes plus prefix sums for O(log n) eval.
  std::vector<double> betas_sorted_;
  std::vector<double> beta_prefix_;
  // sampled: nodes and values.
  std::vector<double> xs_, hs_;
  std::vector<double> breakpoints_;
};

// A norm on the plane, evaluated exactly for the rhombus family and by
// breakpoint maximization for profile-derived norms.
class Norm2D {
 public:
  static Norm2D rhombus(double u, double v);            // u,v > 0
  static Norm2D from_profile(const DualProfile& h);

  double eval(double x, double y) const;
  double operator()(double x, double y) const { return eval(x, y); }
  double D() const;  // horizontal speed: ||(1,0)||

 private:
  Norm2D() = default;
  bool is_rhombus_ = false;
  double u_ = 0.0, v_ = 0.0;
  DualProfile profile_ = DualProfile::circle_cap();
};

// One-dimensional section of a norm: f(x) = ||(x, 1)||, together with the
// asymptotic slope D = ||(1, 0)||.  f must be convex.
struct NormSection {
  std::function<double(double)> f;
  double D;
};

Norm2D rhombus_norm(double u, double v);
DualProfile rhombus_profile(double u, double v);

// Legendre transform h(xi) = inf_x { f(x) - xi*x } of a convex section,
// sampled on a uniform grid of `grid` points over [-D, D].  Throws
// std::invalid_argument when f fails a convexity probe.
DualProfile legendre_profile(const NormSection& section, int grid);

Norm2D norm_from_profile(const DualProfile& h);

DualProfile averaged_profile(const std::vector<double>& betas, std::size_t m, std::size_t n,
                             double D);

// Limit profile of the averaged tents under the equidistributed apex law,
// and its dual norm  norm0(x,y) = max(hypot(x,y), sqrt2*|x|).
double h0(double xi);
double norm0(double x, double y);

// sup |h1 - h2| over the union of both breakpoint sets, the endpoints and a
// uniform grid.  Requires matching D.
double profile_sup_distance(const DualProfile& h1, const DualProfile& h2, int grid = 2049);

// Section of a norm at height 1, for feeding back into legendre_profile.
NormSection section_of(const Norm2D& n);

}  // namespace umg::profiles
