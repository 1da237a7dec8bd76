#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace umg::lowdisc {

enum class AlphaLabel { sqrt2_minus_1, golden_conjugate, custom };

// A badly approximable rotation number in (0, 1).  The two factory labels are
// quadratic irrationals whose multiples stay uniformly far from integers,
// which is what keeps every averaged quantity downstream bounded.
struct QuadraticIrrational {
  double value;
  AlphaLabel label;

  static QuadraticIrrational sqrt2_minus_1();
  static QuadraticIrrational golden_conjugate();  // (sqrt(5)-1)/2
  static QuadraticIrrational custom(double v);    // requires v in (0,1)
};

// Raised when adaptive quadrature cannot certify the requested tolerance.
struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Index cap: |j| <= 1e7 keeps j*alpha well inside the exact-integer range of
// double so the fractional parts carry ~9 trustworthy digits.
inline constexpr long long kMaxSeqIndex = 10'000'000;

// Distance from t to the nearest integer, in [0, 1/2].
double dist_to_int(double t);

// alpha_j = 2 * dist_to_int(j * alpha), in [0, 1].
double alpha_seq(const QuadraticIrrational& alpha, long long j);

// min_{1<=k<=K} k * dist_to_int(k * alpha); stays bounded away from 0 for
// badly approximable alpha.
double liouville_margin(const QuadraticIrrational& alpha, long long K);

// sum_{1<=k<=K} 1 / (k^2 * dist_to_int(k * alpha)); converges as K grows.
double fourier_tail_sum(const QuadraticIrrational& alpha, long long K);

// sum_{j=m}^{n-1} f(frac(j * alpha)).
double ergodic_sum(const std::function<double(double)>& f, const QuadraticIrrational& alpha,
                   long long m, long long n);

// | sum_{j=m}^{n-1} f(alpha_j) - (n-m) * I | where I integrates f over [0,1]
// by adaptive quadrature (absolute tolerance 1e-10).
double integral_approx_error(const std::function<double(double)>& f,
                             const QuadraticIrrational& alpha, long long m, long long n);

// Adaptive Gauss-Kronrod integration of f over [a, b]; throws QuadratureError
// when the error estimate exceeds abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

// Fold f0 on [0,1] to the even circle map g with g(x) = f0(2x) for x <= 1/2
// and g(x) = f0(2-2x) for x >= 1/2, extended 1-periodically.  Satisfies
// g(frac(t)) == f0(2 * dist_to_int(t)) exactly, bit for bit.
std::function<double(double)> fold_to_circle(std::function<double(double)> f0);

}  // namespace umg::lowdisc
