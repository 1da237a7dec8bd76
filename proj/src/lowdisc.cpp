#include "umg/lowdisc.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

namespace umg::lowdisc {

QuadraticIrrational QuadraticIrrational::sqrt2_minus_1() {
  return {std::sqrt(2.0) - 1.0, AlphaLabel::sqrt2_minus_1};
}

QuadraticIrrational QuadraticIrrational::golden_conjugate() {
  return {(std::sqrt(5.0) - 1.0) / 2.0, AlphaLabel::golden_conjugate};
}

QuadraticIrrational QuadraticIrrational::custom(double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  return {v, AlphaLabel::custom};
}

double dist_to_int(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("dist_to_int: non-finite argument");
  return std::fabs(t - std::round(t));
}

double alpha_seq(const QuadraticIrrational& alpha, long long j) {
  if (j > kMaxSeqIndex || j < -kMaxSeqIndex)
    throw std::domain_error("alpha_seq: |j| exceeds 1e7 index cap");
  return 2.0 * dist_to_int(static_cast<double>(j) * alpha.value);
}

double liouville_margin(const QuadraticIrrational& alpha, long long K) {
  if (K < 1) throw std::invalid_argument("liouville_margin: K must be >= 1");
  if (K > kMaxSeqIndex) throw std::domain_error("liouville_margin: K exceeds 1e7 index cap");
  double best = std::numeric_limits<double>::infinity();
  for (long long k = 1; k <= K; ++k) {
    double m = static_cast<double>(k) * dist_to_int(static_cast<double>(k) * alpha.value);
    if (m < best) best = m;
  }
  return best;
}

double fourier_tail_sum(const QuadraticIrrational& alpha, long long K) {
  if (K < 1) throw std::invalid_argument("fourier_tail_sum: K must be >= 1");
  if (K > kMaxSeqIndex) throw std::domain_error("fourier_tail_sum: K exceeds 1e7 index cap");
  double sum = 0.0;
  for (long long k = 1; k <= K; ++k) {
    double kd = static_cast<double>(k);
    sum += 1.0 / (kd * kd * dist_to_int(kd * alpha.value));
  }
  return sum;
}

double ergodic_sum(const std::function<double(double)>& f, const QuadraticIrrational& alpha,
                   long long m, long long n) {
  if (m > n) throw std::invalid_argument("ergodic_sum: m > n");
  if (m < -kMaxSeqIndex || n > kMaxSeqIndex)
    throw std::domain_error("ergodic_sum: index range exceeds 1e7 cap");
  double sum = 0.0;
  for (long long j = m; j < n; ++j) {
    double t = static_cast<double>(j) * alpha.value;
    sum += f(t - std::floor(t));
  }
  return sum;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  // Depth 30 resolves kinks at arbitrary (non-dyadic) interior points; smooth
  // integrands still converge after one or two levels.
  double err = 0.0;
  double val = gauss_kronrod<double, 15>::integrate(f, a, b, 30, 1e-14, &err);
  if (!(err <= abs_tol) || !std::isfinite(val)) {
    char msg[64];
    std::snprintf(msg, sizeof msg, "%.3e", err);
    throw QuadratureError(std::string("quadrature did not converge: error estimate ") + msg);
  }
  return val;
}

double integral_approx_error(const std::function<double(double)>& f,
                             const QuadraticIrrational& alpha, long long m, long long n) {
  double integral = integrate(f, 0.0, 1.0, 1e-10);
  double sum = 0.0;
  for (long long j = m; j < n; ++j) {
    if (j > kMaxSeqIndex || j < -kMaxSeqIndex)
      throw std::domain_error("integral_approx_error: index range exceeds 1e7 cap");
    sum += f(alpha_seq(alpha, j));
  }
  return std::fabs(sum - static_cast<double>(n - m) * integral);
}

std::function<double(double)> fold_to_circle(std::function<double(double)> f0) {
  return [f = std::move(f0)](double x) {
    double xr = x - std::floor(x);
    // For xr in (1/2, 1) the value 2 - 2*xr is exact in floating point, so
    // the identity g(frac(t)) == f(2 * dist_to_int(t)) holds bitwise.
    return xr <= 0.5 ? f(2.0 * xr) : f(2.0 - 2.0 * xr);
  };
}

}  // namespace umg::lowdisc
