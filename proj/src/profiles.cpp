#include "umg/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace umg::profiles {

namespace {

constexpr double kDomainSlack = 1e-9;

void check_domain(double xi, double D) {
  if (!std::isfinite(xi) || std::fabs(xi) > D + kDomainSlack)
    throw std::domain_error("profile argument outside [-D, D]");
}

std::vector<double> dedupe_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

DualProfile DualProfile::rhombus(double beta, double D) {
  if (!(D > 0.0) || !(std::fabs(beta) < D))
    throw std::invalid_argument("rhombus profile requires |beta| < D, D > 0");
  DualProfile p;
  p.kind_ = ProfileKind::rhombus;
  p.D_ = D;
  p.betas_sorted_ = {beta};
  p.beta_prefix_ = {0.0, beta};
  p.breakpoints_ = {beta};
  return p;
}

DualProfile DualProfile::averaged(const std::vector<double>& betas, std::size_t m, std::size_t n,
                                  double D) {
  if (!(D > 0.0)) throw std::invalid_argument("averaged profile requires D > 0");
  if (m >= n || n > betas.size())
    throw std::invalid_argument("averaged profile requires a nonempty window inside betas");
  DualProfile p;
  p.kind_ = ProfileKind::averaged;
  p.D_ = D;
  p.betas_sorted_.assign(betas.begin() + static_cast<std::ptrdiff_t>(m),
                         betas.begin() + static_cast<std::ptrdiff_t>(n));
  for (double b : p.betas_sorted_)
    if (!(std::fabs(b) < D)) throw std::invalid_argument("tent apex outside (-D, D)");
  std::sort(p.betas_sorted_.begin(), p.betas_sorted_.end());
  p.beta_prefix_.resize(p.betas_sorted_.size() + 1);
  long double acc = 0.0L;
  p.beta_prefix_[0] = 0.0;
  for (std::size_t i = 0; i < p.betas_sorted_.size(); ++i) {
    acc += p.betas_sorted_[i];
    p.beta_prefix_[i + 1] = static_cast<double>(acc);
  }
  p.breakpoints_ = dedupe_sorted(p.betas_sorted_);
  return p;
}

DualProfile DualProfile::circle_cap() {
  DualProfile p;
  p.kind_ = ProfileKind::circle_cap;
  p.D_ = std::sqrt(2.0);
  double j = std::sqrt(2.0) / 2.0;
  p.breakpoints_ = {-j, j};
  return p;
}

DualProfile DualProfile::sampled(std::vector<double> xs, std::vector<double> hs, double slack) {
  if (xs.size() != hs.size() || xs.size() < 3)
    throw std::invalid_argument("sampled profile needs >= 3 matching nodes");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1])) throw std::invalid_argument("sample nodes must strictly increase");
  double D = xs.back();
  if (!(D > 0.0) || std::fabs(xs.front() + D) > 1e-12)
    throw std::invalid_argument("sample nodes must cover a symmetric interval [-D, D]");
  for (double h : hs)
    if (!std::isfinite(h)) throw std::invalid_argument("non-finite profile value");
  double prev_slope = 1.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double slope = (hs[i + 1] - hs[i]) / (xs[i + 1] - xs[i]);
    if (std::fabs(slope) > 1.0 + slack)
      throw std::invalid_argument("profile data violates the 1-Lipschitz bound");
    if (i > 0 && slope > prev_slope + slack)
      throw std::invalid_argument("profile data is not concave");
    prev_slope = slope;
  }
  DualProfile p;
  p.kind_ = ProfileKind::sampled;
  p.D_ = D;
  p.xs_ = std::move(xs);
  p.hs_ = std::move(hs);
  p.breakpoints_ = p.xs_;
  return p;
}

double DualProfile::eval(double xi) const {
  check_domain(xi, D_);
  xi = std::clamp(xi, -D_, D_);
  switch (kind_) {
    case ProfileKind::rhombus:
      return D_ - std::fabs(xi - betas_sorted_[0]);
    case ProfileKind::averaged: {
      // mean |xi - b| via the sorted prefix sums: O(log n) per query.
      std::size_t w = betas_sorted_.size();
      std::size_t k = static_cast<std::size_t>(
          std::upper_bound(betas_sorted_.begin(), betas_sorted_.end(), xi) -
          betas_sorted_.begin());
      double below = xi * static_cast<double>(k) - beta_prefix_[k];
      double above = (beta_prefix_[w] - beta_prefix_[k]) - xi * static_cast<double>(w - k);
      return D_ - (below + above) / static_cast<double>(w);
    }
    case ProfileKind::circle_cap:
      return h0(xi);
    case ProfileKind::sampled: {
      if (xi <= xs_.front()) return hs_.front();
      if (xi >= xs_.back()) return hs_.back();
      std::size_t hi = static_cast<std::size_t>(
          std::upper_bound(xs_.begin(), xs_.end(), xi) - xs_.begin());
      std::size_t lo = hi - 1;
      double t = (xi - xs_[lo]) / (xs_[hi] - xs_[lo]);
      return hs_[lo] + t * (hs_[hi] - hs_[lo]);
    }
  }
  throw std::logic_error("unreachable profile kind");
}

Norm2D Norm2D::rhombus(double u, double v) {
  if (!(u > 0.0) || !(v > 0.0)) throw std::invalid_argument("rhombus norm requires u, v > 0");
  Norm2D n;
  n.is_rhombus_ = true;
  n.u_ = u;
  n.v_ = v;
  return n;
}

Norm2D Norm2D::from_profile(const DualProfile& h) {
  Norm2D n;
  n.is_rhombus_ = false;
  n.profile_ = h;
  return n;
}

double Norm2D::D() const { return is_rhombus_ ? 0.5 * (u_ + v_) : profile_.D(); }

double Norm2D::eval(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw std::invalid_argument("norm argument must be finite");
  if (is_rhombus_) return 0.5 * (u_ * std::fabs(x + y) + v_ * std::fabs(x - y));

  double D = profile_.D();
  if (y == 0.0) return D * std::fabs(x);
  if (y < 0.0) {
    x = -x;
    y = -y;
  }
  if (profile_.kind() == ProfileKind::circle_cap) return norm0(x, y);

  double best = std::max(D * x + profile_.eval(D) * y, -D * x + profile_.eval(-D) * y);
  for (double xi : profile_.breakpoints()) best = std::max(best, xi * x + profile_.eval(xi) * y);
  return best;
}

Norm2D rhombus_norm(double u, double v) { return Norm2D::rhombus(u, v); }

DualProfile rhombus_profile(double u, double v) {
  if (!(u > 0.0) || !(v > 0.0)) throw std::invalid_argument("rhombus profile requires u, v > 0");
  return DualProfile::rhombus(0.5 * (u - v), 0.5 * (u + v));
}

namespace {

// Golden-section minimization of g on [a, b], tracking the best probe seen.
void golden_min(const std::function<double(double)>& g, double a, double b, double& best_t,
                double& best_v) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  auto consider = [&](double t, double v) {
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  };
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
      consider(d, fd);
    }
  }
}

}  // namespace

DualProfile legendre_profile(const NormSection& section, int grid) {
  if (!section.f) throw std::invalid_argument("legendre_profile: empty section");
  if (!(section.D > 0.0)) throw std::invalid_argument("legendre_profile: D must be positive");
  if (grid < 3) throw std::invalid_argument("legendre_profile: grid must have >= 3 points");

  // Convexity probe: midpoint inequality on a coarse lattice.
  const auto& f = section.f;
  for (int i = -20; i < 20; ++i) {
    double a = 5.0 * i, b = 5.0 * (i + 1);
    double lhs = f(0.5 * (a + b));
    double rhs = 0.5 * (f(a) + f(b));
    if (lhs > rhs + 1e-9 * (1.0 + std::fabs(f(a)) + std::fabs(f(b))))
      throw std::invalid_argument("legendre_profile: section failed the convexity probe");
  }

  const double B = 1e8;  // outer bracket; truncation error at the domain ends <= 1/(2B)
  std::vector<double> xs(static_cast<std::size_t>(grid)), hs(xs.size());
  double D = section.D;
  for (int i = 0; i < grid; ++i) {
    double xi = -D + 2.0 * D * static_cast<double>(i) / static_cast<double>(grid - 1);
    auto g = [&](double t) { return f(t) - xi * t; };

    // Expand a bracket until the minimum is interior or the cap is reached.
    double a = -1.0, b = 1.0;
    double ga = g(a), gb = g(b);
    double best_t = ga < gb ? a : b;
    double best_v = std::min(ga, gb);
    double gm = g(0.0);
    if (gm < best_v) {
      best_v = gm;
      best_t = 0.0;
    }
    while (gb <= gm && b < B) {
      b = std::min(B, b * 4.0);
      gb = g(b);
      if (gb < best_v) {
        best_v = gb;
        best_t = b;
      }
      gm = std::min(gm, gb);
    }
    while (ga <= gm && a > -B) {
      a = std::max(-B, a * 4.0);
      ga = g(a);
      if (ga < best_v) {
        best_v = ga;
        best_t = a;
      }
      gm = std::min(gm, ga);
    }
    golden_min(g, a, b, best_t, best_v);
    xs[static_cast<std::size_t>(i)] = xi;
    hs[static_cast<std::size_t>(i)] = best_v;
  }
  // The endpoint searches run out to |t| ~ 1e8 where f(t) - xi*t suffers
  // catastrophic cancellation at the ~1e-8 level; allow that much slack.
  return DualProfile::sampled(std::move(xs), std::move(hs), 1e-6);
}

Norm2D norm_from_profile(const DualProfile& h) { return Norm2D::from_profile(h); }

DualProfile averaged_profile(const std::vector<double>& betas, std::size_t m, std::size_t n,
                             double D) {
  return DualProfile::averaged(betas, m, n, D);
}

double h0(double xi) {
  double D = std::sqrt(2.0);
  check_domain(xi, D);
  double ax = std::min(std::fabs(xi), D);
  if (ax <= D / 2.0) return std::sqrt(1.0 - ax * ax);
  return D - ax;
}

double norm0(double x, double y) {
  return std::max(std::hypot(x, y), std::sqrt(2.0) * std::fabs(x));
}

double profile_sup_distance(const DualProfile& h1, const DualProfile& h2, int grid) {
  if (grid < 2) throw std::invalid_argument("profile_sup_distance: grid must have >= 2 points");
  if (std::fabs(h1.D() - h2.D()) > 1e-12)
    throw std::invalid_argument("profile_sup_distance: domain mismatch");
  double D = h1.D();
  std::vector<double> pts;
  pts.reserve(h1.breakpoints().size() + h2.breakpoints().size() + static_cast<std::size_t>(grid));
  for (double b : h1.breakpoints()) pts.push_back(std::clamp(b, -D, D));
  for (double b : h2.breakpoints()) pts.push_back(std::clamp(b, -D, D));
  for (int i = 0; i < grid; ++i)
    pts.push_back(-D + 2.0 * D * static_cast<double>(i) / static_cast<double>(grid - 1));
  double sup = 0.0;
  for (double xi : pts) sup = std::max(sup, std::fabs(h1.eval(xi) - h2.eval(xi)));
  return sup;
}

NormSection section_of(const Norm2D& n) {
  return NormSection{[n](double x) { return n.eval(x, 1.0); }, n.D()};
}

}  // namespace umg::profiles
