#include "umg/betaseq.hpp"

#include "umg/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace umg::betaseq {

double phi(double t) {
  double half_d = BetaSequence::D() / 2.0;
  if (!std::isfinite(t) || std::fabs(t) > half_d + 1e-12)
    throw std::domain_error("phi: argument outside [-sqrt2/2, sqrt2/2]");
  t = std::clamp(t, -half_d, half_d);
  double s = t / std::sqrt(1.0 - t * t);
  return std::clamp(0.5 * (s + 1.0), 0.0, 1.0);
}

double phi_inv(double y) {
  if (!std::isfinite(y) || y < -1e-12 || y > 1.0 + 1e-12)
    throw std::domain_error("phi_inv: argument outside [0, 1]");
  y = std::clamp(y, 0.0, 1.0);
  double s = 2.0 * y - 1.0;
  return s / std::sqrt(1.0 + s * s);
}

double BetaSequence::beta(long long j) const { return phi_inv(lowdisc::alpha_seq(alpha_, j)); }

std::vector<double> BetaSequence::window(long long m, long long n) const {
  if (m > n) throw std::invalid_argument("BetaSequence::window: m > n");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n - m));
  for (long long j = m; j < n; ++j) out.push_back(beta(j));
  return out;
}

double modsum_error(const BetaSequence& b, double xi, long long m, long long n) {
  if (m >= n) throw std::invalid_argument("modsum_error: empty window");
  double D = BetaSequence::D();
  double h = profiles::h0(xi);
  double sum = 0.0;
  for (long long j = m; j < n; ++j) sum += D - std::fabs(xi - b.beta(j));
  return std::fabs(sum - static_cast<double>(n - m) * h);
}

ModsumScanResult modsum_window_scan(const BetaSequence& b, const std::vector<double>& grid,
                                    long long start_lo, long long start_hi, long long small_max,
                                    const std::vector<long long>& sizes) {
  if (start_lo > start_hi) throw std::invalid_argument("modsum_window_scan: empty start range");
  if (small_max < 0) throw std::invalid_argument("modsum_window_scan: negative small_max");
  long long max_size = small_max;
  for (long long s : sizes) {
    if (s < 1) throw std::invalid_argument("modsum_window_scan: window size must be >= 1");
    max_size = std::max(max_size, s);
  }
  if (max_size == 0) throw std::invalid_argument("modsum_window_scan: nothing to scan");

  const double D = BetaSequence::D();
  const long long S = start_hi - start_lo;          // start index i in [0, S]
  const long long L = S + max_size;                 // betas needed: j in [start_lo, start_hi + max_size)
  std::vector<double> betas = b.window(start_lo, start_hi + max_size);

  ModsumScanResult res;
  res.fixed_size_max.assign(sizes.size(), 0.0);

  std::vector<double> T(static_cast<std::size_t>(L) + 1);
  for (double xi : grid) {
    const double h = profiles::h0(xi);
    T[0] = 0.0;
    for (long long k = 0; k < L; ++k)
      T[static_cast<std::size_t>(k) + 1] =
          T[static_cast<std::size_t>(k)] +
          (D - std::fabs(xi - betas[static_cast<std::size_t>(k)])) - h;

    // Window [i, i+w) has error |T[i+w] - T[i]|.
    for (std::size_t si = 0; si < sizes.size(); ++si) {
      const long long w = sizes[si];
      double best = res.fixed_size_max[si];
      for (long long i = 0; i <= S; ++i) {
        double val = std::fabs(T[static_cast<std::size_t>(i + w)] - T[static_cast<std::size_t>(i)]);
        if (val > best) best = val;
      }
      res.fixed_size_max[si] = best;
    }

    if (small_max > 0) {
      // For each window end n, compare T[n] against min/max of T[i] over
      // admissible starts i in [n - small_max, n - 1] ∩ [0, S], maintained
      // by monotone deques.
      std::deque<long long> qmin, qmax;
      double best = res.small_window_max;
      for (long long n = 1; n <= S + small_max; ++n) {
        long long enter = n - 1;  // start index that becomes admissible
        if (enter <= S) {
          while (!qmin.empty() && T[static_cast<std::size_t>(qmin.back())] >=
                                      T[static_cast<std::size_t>(enter)])
            qmin.pop_back();
          qmin.push_back(enter);
          while (!qmax.empty() && T[static_cast<std::size_t>(qmax.back())] <=
                                      T[static_cast<std::size_t>(enter)])
            qmax.pop_back();
          qmax.push_back(enter);
        }
        while (!qmin.empty() && qmin.front() < n - small_max) qmin.pop_front();
        while (!qmax.empty() && qmax.front() < n - small_max) qmax.pop_front();
        if (!qmin.empty()) {
          double tn = T[static_cast<std::size_t>(n)];
          best = std::max(best, std::max(tn - T[static_cast<std::size_t>(qmin.front())],
                                         T[static_cast<std::size_t>(qmax.front())] - tn));
        }
      }
      res.small_window_max = best;
    }
  }
  return res;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need >= 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

std::vector<double> breakpoint_grid(const BetaSequence& b, long long lo, long long hi,
                                    int uniform_points) {
  double D = BetaSequence::D();
  std::vector<double> grid = b.window(lo, hi);
  std::vector<double> uni = uniform_grid(-D, D, uniform_points);
  grid.insert(grid.end(), uni.begin(), uni.end());
  grid.insert(grid.end(), {0.0, D / 2.0, -D / 2.0, D, -D});
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace umg::betaseq
