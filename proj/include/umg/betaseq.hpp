#pragma once

#include "umg/lowdisc.hpp"

#include <vector>

namespace umg::betaseq {

// Increasing bijection [-sqrt2/2, sqrt2/2] -> [0, 1] that makes the apex
// sequence below equidistribute exactly like the underlying rotation.
double phi(double t);
double phi_inv(double y);

// Tent-apex sequence beta_j = phi_inv(alpha_j) driven by a badly
// approximable rotation number; every beta_j lies in [-sqrt2/2, sqrt2/2].
class BetaSequence {
 public:
  explicit BetaSequence(lowdisc::QuadraticIrrational alpha) : alpha_(alpha) {}

  double beta(long long j) const;
  // betas for j in [m, n), in index order.
  std::vector<double> window(long long m, long long n) const;
  const lowdisc::QuadraticIrrational& alpha() const { return alpha_; }

  static double D() { return 1.4142135623730951; }  // sqrt(2)

 private:
  lowdisc::QuadraticIrrational alpha_;
};

// | sum_{j=m}^{n-1} (D - |xi - beta_j|) - (n-m) * h0(xi) |: how far the
// window-averaged tent profile drifts from the limit profile, scaled by the
// window length.
double modsum_error(const BetaSequence& b, double xi, long long m, long long n);

struct ModsumScanResult {
  // max over window sizes 1..small_max and all starts (0 when small_max == 0)
  double small_window_max = 0.0;
  // max per requested fixed window size, over all starts
  std::vector<double> fixed_size_max;
};

// Scan modsum_error over every xi in `grid`, every start in
// [start_lo, start_hi] and (a) all window sizes up to small_max via sliding
// min/max deques, (b) each size in `sizes` directly.  Runs off one prefix
// array per xi, so the whole scan is O(grid * (range + sizes)).
ModsumScanResult modsum_window_scan(const BetaSequence& b, const std::vector<double>& grid,
                                    long long start_lo, long long start_hi, long long small_max,
                                    const std::vector<long long>& sizes);

// Uniform grid of `points` values covering [lo, hi] inclusive.
std::vector<double> uniform_grid(double lo, double hi, int points);

// Scan grid for the profile domain: every beta_j for j in [lo, hi), a
// uniform grid over [-D, D], and the junction/end points 0, +-D/2, +-D.
// Including the apexes matters: the sup of a piecewise-linear error is
// attained at a kink, and a uniform-only grid undershoots it.
std::vector<double> breakpoint_grid(const BetaSequence& b, long long lo, long long hi,
                                    int uniform_points);

}  // namespace umg::betaseq
