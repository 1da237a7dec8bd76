#include "umg/hyperbolic.hpp"

#include "umg/io.hpp"
#include "umg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace umg::hyperbolic {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;

double wrap_angle_diff(double a, double b) {
  // signed difference a - b reduced to [-pi, pi]
  return std::remainder(a - b, kTwoPi);
}

using RingVec = std::vector<std::pair<double, std::uint32_t>>;

// Visit ring entries with theta in [lo, hi] (window may leave [0, 2pi)).
template <typename F>
void scan_ring(const RingVec& ring, double lo, double hi, F&& fn) {
  if (ring.empty()) return;
  if (hi - lo >= kTwoPi) {
    for (const auto& e : ring) fn(e.second, e.first);
    return;
  }
  auto sub = [&](double a, double b) {
    auto it = std::lower_bound(ring.begin(), ring.end(), a,
                               [](const auto& e, double v) { return e.first < v; });
    for (; it != ring.end() && it->first <= b; ++it) fn(it->second, it->first);
  };
  if (lo < 0.0) {
    sub(0.0, hi);
    sub(lo + kTwoPi, kTwoPi);
  } else if (hi > kTwoPi) {
    sub(lo, kTwoPi);
    sub(0.0, hi - kTwoPi);
  } else {
    sub(lo, hi);
  }
}
}  // namespace

double h_dist(const HPoint& a, const HPoint& b) {
  double m = a.z * b.z - a.x * b.x - a.y * b.y;
  return std::acosh(std::max(1.0, m));
}

HPoint geodesic_point(const HPoint& a, const HPoint& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("geodesic_point: t outside [0,1]");
  double d = h_dist(a, b);
  if (d == 0.0) return a;
  double s = std::sinh(d);
  double ca = std::sinh((1.0 - t) * d) / s;
  double cb = std::sinh(t * d) / s;
  HPoint p{ca * a.x + cb * b.x, ca * a.y + cb * b.y, ca * a.z + cb * b.z};
  double nrm = std::sqrt(std::max(1e-300, p.z * p.z - p.x * p.x - p.y * p.y));
  p.x /= nrm;
  p.y /= nrm;
  p.z /= nrm;
  return p;
}

HPoint hpoint_polar(double r, double theta) {
  if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(theta))
    throw std::invalid_argument("hpoint_polar: bad polar coordinates");
  double sh = std::sinh(r);
  return {sh * std::cos(theta), sh * std::sin(theta), std::cosh(r)};
}

bool on_hyperboloid(const HPoint& p, double tol) {
  double q = p.z * p.z - p.x * p.x - p.y * p.y;
  double scale = 1.0 + p.z * p.z + p.x * p.x + p.y * p.y;
  return p.z > 0.0 && std::fabs(q - 1.0) <= tol * scale;
}

double polar_dist(double r1, double t1, double r2, double t2) {
  double s = std::sin(0.5 * wrap_angle_diff(t1, t2));
  double ch = std::cosh(r1 - r2) + 2.0 * std::sinh(r1) * std::sinh(r2) * s * s;
  return std::acosh(std::max(1.0, ch));
}

double dist_to_radial_segment(double r, double th, double theta0, double seglen) {
  if (!(seglen >= 0.0)) throw std::invalid_argument("dist_to_radial_segment: negative segment");
  if (r == 0.0) return 0.0;
  double dth = std::fabs(wrap_angle_diff(th, theta0));
  if (dth >= 0.5 * kPi) return r;  // foot would lie behind the origin
  double rf = std::atanh(std::tanh(r) * std::cos(dth));
  if (rf > seglen) return polar_dist(r, th, seglen, theta0);
  return std::asinh(std::sinh(r) * std::sin(dth));
}

double packing_bound(double ball_radius, double eps) {
  if (!(ball_radius > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("packing_bound: radii must be positive");
  return (std::cosh(ball_radius + 0.5 * eps) - 1.0) / (std::cosh(0.5 * eps) - 1.0);
}

HNet build_net(double R, double eps, double density) {
  if (!(R > 0.0) || !(eps > 0.0) || !(density >= 1.0))
    throw std::invalid_argument("build_net: require R > 0, eps > 0, density >= 1");
  if (R / eps > 40.0) throw std::invalid_argument("build_net: R/eps too large to materialize");

  HNet net;
  net.epsilon = eps;
  net.radius = R;
  net.density = density;
  const double half = 0.5 * eps;
  const long long K = static_cast<long long>(std::floor(R / half + 1e-9));
  net.rings.assign(static_cast<std::size_t>(K) + 1, {});

  // center
  net.points.push_back(HPoint{});
  net.r.push_back(0.0);
  net.theta.push_back(0.0);
  net.ring_idx.push_back(0);
  net.rings[0].emplace_back(0.0, 0);

  const double spacing = eps / (2.0 * density);
  const double cosh_eps = std::cosh(eps);

  std::vector<double> ring_sinh(static_cast<std::size_t>(K) + 1, 0.0);
  for (long long k = 0; k <= K; ++k) ring_sinh[static_cast<std::size_t>(k)] = std::sinh(
      static_cast<double>(k) * half);

  for (long long k = 2; k <= K; ++k) {  // rings below r = eps never separate from the center
    const double r = static_cast<double>(k) * half;
    const double sh = ring_sinh[static_cast<std::size_t>(k)];
    const long long n_ang = std::max<long long>(6, static_cast<long long>(std::ceil(
                                     kTwoPi * sh / spacing)));
    // Conflicts are possible only with the same ring and ring k-1
    // (radial gaps of eps or more already guarantee separation).
    struct RingCheck {
      long long k2;
      double A, B, dth_max;
      bool whole;
      bool possible;
    };
    RingCheck checks[2];
    int ncheck = 0;
    for (long long k2 : {k, k - 1}) {
      if (k2 < 2) continue;
      double r2 = static_cast<double>(k2) * half;
      double A = std::cosh(r - r2);
      double B = 2.0 * sh * ring_sinh[static_cast<std::size_t>(k2)];
      RingCheck c{k2, A, B, 0.0, false, false};
      double s2 = (cosh_eps - A) / B;
      if (s2 > 0.0) {
        c.possible = true;
        if (s2 >= 1.0)
          c.whole = true;
        else
          c.dth_max = 2.0 * std::asin(std::sqrt(s2)) + 1e-9;
      }
      checks[ncheck++] = c;
    }

    for (long long a = 0; a < n_ang; ++a) {
      const double th = kTwoPi * static_cast<double>(a) / static_cast<double>(n_ang);
      bool conflict = false;
      for (int c = 0; c < ncheck && !conflict; ++c) {
        const RingCheck& rc = checks[c];
        if (!rc.possible) continue;
        const RingVec& ring = net.rings[static_cast<std::size_t>(rc.k2)];
        double lo = rc.whole ? 0.0 : th - rc.dth_max;
        double hi = rc.whole ? kTwoPi : th + rc.dth_max;
        scan_ring(ring, lo, hi, [&](std::uint32_t, double th2) {
          double sn = std::sin(0.5 * (th - th2));
          if (rc.A + rc.B * sn * sn < cosh_eps) conflict = true;
        });
      }
      if (!conflict) {
        std::uint32_t idx = static_cast<std::uint32_t>(net.points.size());
        net.points.push_back(hpoint_polar(r, th));
        net.r.push_back(r);
        net.theta.push_back(th);
        net.ring_idx.push_back(k);
        net.rings[static_cast<std::size_t>(k)].emplace_back(th, idx);
      }
    }
  }
  return net;
}

std::size_t choose_parent(std::size_t q, const HNet& net) {
  if (q == 0 || q >= net.size()) throw std::invalid_argument("choose_parent: bad point index");
  const double eps = net.epsilon;
  const long long k = net.ring_idx[q];
  const double d = net.r[q];
  const double th_q = net.theta[q];
  if (k <= 10) return 0;  // within 5*eps of the root (ring spacing is eps/2)

  // Admissible rings have radius strictly inside (d - 15eps, d - 5eps):
  // ring indices k-29 .. k-11.  Scan from the farthest down.
  const double sinh_eps = std::sinh(eps);
  long long best_ring = -1;
  std::uint32_t best_idx = 0;
  for (long long k2 = std::min<long long>(k - 11, static_cast<long long>(net.rings.size()) - 1);
       k2 >= std::max<long long>(1, k - 29) && best_ring < 0; --k2) {
    const RingVec& ring = net.rings[static_cast<std::size_t>(k2)];
    if (ring.empty()) continue;
    const double r2 = static_cast<double>(k2) * 0.5 * eps;
    double lo, hi;
    if (r2 <= eps) {
      lo = 0.0;
      hi = kTwoPi;
    } else {
      double s = sinh_eps / std::sinh(r2);
      double w = (s >= 1.0) ? 0.5 * kPi : std::asin(s);
      lo = th_q - w - 1e-9;
      hi = th_q + w + 1e-9;
    }
    bool found = false;
    double cand_seg = std::numeric_limits<double>::infinity();
    std::uint32_t cand_idx = 0;
    scan_ring(ring, lo, hi, [&](std::uint32_t idx, double th2) {
      double seg = dist_to_radial_segment(r2, th2, th_q, d);
      if (seg <= eps) {
        if (!found || seg < cand_seg || (seg == cand_seg && idx < cand_idx)) {
          found = true;
          cand_seg = seg;
          cand_idx = idx;
        }
      }
    });
    if (found) {
      best_ring = k2;
      best_idx = cand_idx;
    }
  }
  if (best_ring >= 0) return best_idx;
  if (k < 30) return 0;  // the root itself sits inside the admissible window
  throw ConstructionError("no admissible parent for net point " + std::to_string(q));
}

graphcore::MetricGraph build_tree(HNet& net) {
  const std::size_t n = net.size();
  if (n == 0) throw std::invalid_argument("build_tree: empty net");
  net.parent.assign(n, -1);
  net.tree_len.assign(n, 0.0);
  graphcore::MetricGraph g(n);
  for (std::size_t q = 1; q < n; ++q) {
    std::size_t p = choose_parent(q, net);
    if (!(net.r[p] < net.r[q]))
      throw ConstructionError("parent not strictly closer to the root (cycle risk)");
    net.parent[q] = static_cast<std::int64_t>(p);
    net.tree_len[q] = net.r[q] - net.r[p];  // ring radii are exact halves/fives
    g.add_edge(q, p, net.tree_len[q]);
  }
  return g;
}

double estimate_morse_D(const HNet& net, long long sample) {
  const std::size_t n = net.size();
  if (net.parent.size() != n) throw std::logic_error("estimate_morse_D: tree not built");
  if (sample < 1) throw std::invalid_argument("estimate_morse_D: sample must be >= 1");
  if (n <= 1) return 0.0;
  const std::size_t stride =
      std::max<std::size_t>(1, (n - 1) / static_cast<std::size_t>(sample));
  double worst = 0.0;
  for (std::size_t q = 1; q < n; q += stride) {
    std::int64_t v = static_cast<std::int64_t>(q);
    while (v > 0) {
      worst = std::max(worst, dist_to_radial_segment(net.r[static_cast<std::size_t>(v)],
                                                     net.theta[static_cast<std::size_t>(v)],
                                                     net.theta[q], net.r[q]));
      v = net.parent[static_cast<std::size_t>(v)];
    }
  }
  return 1.5 * worst;
}

namespace {

// Pairs of net points strictly closer than `radius`, i < j, via ring windows.
template <typename F>
void for_close_pairs(const HNet& net, double radius, F&& fn) {
  const double cosh_rad = std::cosh(radius);
  const double half = 0.5 * net.epsilon;
  const long long K = static_cast<long long>(net.rings.size()) - 1;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double r1 = net.r[i];
    const double th1 = net.theta[i];
    const double sh1 = std::sinh(r1);
    const long long kmin = std::max<long long>(
        0, static_cast<long long>(std::ceil((r1 - radius) / half - 1e-9)));
    const long long kmax =
        std::min<long long>(K, static_cast<long long>(std::floor((r1 + radius) / half + 1e-9)));
    for (long long k2 = kmin; k2 <= kmax; ++k2) {
      const RingVec& ring = net.rings[static_cast<std::size_t>(k2)];
      if (ring.empty()) continue;
      const double r2 = static_cast<double>(k2) * half;
      const double A = std::cosh(r1 - r2);
      const double B = 2.0 * sh1 * std::sinh(r2);
      double lo = 0.0, hi = kTwoPi;
      if (B > 0.0) {
        double s2 = (cosh_rad - A) / B;
        if (s2 <= 0.0) continue;
        if (s2 < 1.0) {
          double w = 2.0 * std::asin(std::sqrt(s2)) + 1e-9;
          lo = th1 - w;
          hi = th1 + w;
        }
      } else if (A >= cosh_rad) {
        continue;
      }
      scan_ring(ring, lo, hi, [&](std::uint32_t j, double th2) {
        if (j <= i) return;
        double sn = std::sin(0.5 * (th1 - th2));
        if (A + B * sn * sn < cosh_rad) fn(static_cast<std::uint32_t>(i), j);
      });
    }
  }
}

}  // namespace

ShortcutResult add_shortcuts(const HNet& net, const graphcore::MetricGraph& tree, double D_hat,
                             double delta, std::optional<double> D1_override) {
  if (!(D_hat >= 0.0) || !(delta > 0.0))
    throw std::invalid_argument("add_shortcuts: need D_hat >= 0, delta > 0");
  ShortcutResult res;
  res.D1 = D1_override ? *D1_override : D_hat + 100.0 * net.epsilon + delta;
  res.length = 2.0 * res.D1 + 4.0 * D_hat;
  res.graph = tree;
  double max_root = 0.0;
  for (double r : net.r) max_root = std::max(max_root, r);
  // Any route through the root costs at most 2*max_root, so a longer
  // shortcut can never shorten a path: skip materializing it.
  if (res.length >= 2.0 * max_root) {
    res.pruned = true;
    return res;
  }
  for_close_pairs(net, 2.0 * res.D1, [&](std::uint32_t i, std::uint32_t j) {
    if (res.graph.has_edge(i, j)) return;
    res.graph.add_edge(i, j, res.length);
    res.pairs.emplace_back(i, j);
  });
  return res;
}

IntegerizeResult integerize(const HNet& net, double D_hat, double delta,
                            std::optional<double> D1_override) {
  if (!(net.epsilon >= 10.0) || !(delta >= 10.0))
    throw std::invalid_argument("integerize: requires eps >= 10 and delta >= 10");
  const std::size_t n = net.size();
  if (net.parent.size() != n) throw std::logic_error("integerize: tree not built");
  IntegerizeResult res;
  res.D1 = D1_override ? *D1_override : D_hat + 100.0 * net.epsilon + delta;
  res.length = std::floor(2.0 * res.D1 + 4.0 * D_hat) + 1.0;
  res.graph = graphcore::MetricGraph(n);
  double max_floor = 0.0;
  for (std::size_t q = 0; q < n; ++q) max_floor = std::max(max_floor, std::floor(net.r[q]));
  for (std::size_t q = 1; q < n; ++q) {
    double len = std::floor(net.r[q]) - std::floor(net.r[static_cast<std::size_t>(net.parent[q])]);
    if (!(len > 0.0))
      throw ConstructionError("integerize: non-positive rounded edge at point " +
                              std::to_string(q));
    res.graph.add_edge(q, static_cast<std::size_t>(net.parent[q]), len);
  }
  if (res.length >= 2.0 * max_floor) {
    res.pruned = true;
    return res;
  }
  for_close_pairs(net, 2.0 * res.D1, [&](std::uint32_t i, std::uint32_t j) {
    if (res.graph.has_edge(i, j)) return;
    res.graph.add_edge(i, j, res.length);
    res.pairs.emplace_back(i, j);
  });
  return res;
}

VerifyHyperbolicResult verify_hyperbolic(const graphcore::MetricGraph& g, const HNet& net,
                                         long long samples, std::uint64_t seed, double D_hat,
                                         double D1, double delta, bool integer_lengths) {
  if (samples < 1) throw std::invalid_argument("verify_hyperbolic: samples must be >= 1");
  if (g.vertex_count() != net.size())
    throw std::invalid_argument("verify_hyperbolic: graph/net size mismatch");

  VerifyHyperbolicResult res;
  res.bound = 2.0 * D1 + 12.0 * D_hat + 2.0 * delta;

  // Root exactness first: one sweep certifies every point.
  std::vector<double> from_root = graphcore::shortest_path_all(g, 0);
  for (std::size_t q = 0; q < net.size(); ++q) {
    double expect = integer_lengths ? std::floor(net.r[q]) : net.r[q];
    res.root_exact_max = std::max(res.root_exact_max, std::fabs(from_root[q] - expect));
  }
  res.root_exact = res.root_exact_max <= 1e-9;

  // Sample pairs inside the margin ball where the closeness bound applies;
  // at desk scales R - 2*D1 is degenerate, so fall back to the full ball.
  double r_eff = net.radius - 2.0 * D1;
  if (!(r_eff > net.epsilon)) r_eff = net.radius;
  std::vector<std::uint32_t> eligible;
  for (std::size_t q = 0; q < net.size(); ++q)
    if (net.r[q] <= r_eff + 1e-12) eligible.push_back(static_cast<std::uint32_t>(q));
  if (eligible.size() < 2) throw std::invalid_argument("verify_hyperbolic: margin ball too small");

  Rng rng(seed);
  const long long targets_per_source = std::min<long long>(samples, 100);
  const long long sources = (samples + targets_per_source - 1) / targets_per_source;
  long long produced = 0;
  res.min_err = std::numeric_limits<double>::infinity();
  res.max_err = -std::numeric_limits<double>::infinity();
  res.rows.reserve(static_cast<std::size_t>(samples));

  for (long long s = 0; s < sources && produced < samples; ++s) {
    std::uint32_t p = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
    std::vector<double> dist = graphcore::shortest_path_all(g, p);
    const long long batch = std::min<long long>(targets_per_source, samples - produced);
    for (long long t = 0; t < batch; ++t) {
      std::uint32_t q;
      do {
        q = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
      } while (q == p);
      double truth = polar_dist(net.r[p], net.theta[p], net.r[q], net.theta[q]);
      double d = dist[q];
      double err = d - truth;
      if (!std::isfinite(d)) res.all_finite = false;
      if (err > res.bound + 1e-9) res.within_bound = false;
      if (err < -4.0 * D_hat - 1e-9) res.lower_ok = false;
      res.min_err = std::min(res.min_err, err);
      res.max_err = std::max(res.max_err, err);
      res.rows.push_back({p, q, truth, d, err});
      ++produced;
    }
  }

  std::vector<std::size_t> order(res.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (res.rows[a].hyper != res.rows[b].hyper) return res.rows[a].hyper < res.rows[b].hyper;
    return a < b;
  });
  const std::size_t n = order.size();
  for (int dec = 0; dec < 10; ++dec) {
    std::size_t lo = n * static_cast<std::size_t>(dec) / 10;
    std::size_t hi = n * (static_cast<std::size_t>(dec) + 1) / 10;
    double mx = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mx = std::max(mx, std::fabs(res.rows[order[i]].err));
    res.decile_max[static_cast<std::size_t>(dec)] = mx;
  }
  int first_nz = -1;
  for (int dec = 0; dec < 10; ++dec)
    if (res.decile_max[static_cast<std::size_t>(dec)] > 1e-15) {
      first_nz = dec;
      break;
    }
  if (first_nz >= 0)
    res.decile_flat = res.decile_max[9] <= 2.0 * res.decile_max[static_cast<std::size_t>(first_nz)];
  return res;
}

HyperBuild build_hyperbolic(const HyperSpec& spec) {
  if (spec.integer_mode && (!(spec.epsilon >= 10.0) || !(spec.delta >= 10.0)))
    throw std::invalid_argument("build_hyperbolic: integer mode requires eps, delta >= 10");
  HyperBuild b;
  b.net = build_net(spec.R, spec.epsilon, spec.density);
  b.tree = build_tree(b.net);
  b.D_hat = spec.D_hat_override ? *spec.D_hat_override : estimate_morse_D(b.net, spec.morse_sample);
  if (spec.integer_mode) {
    IntegerizeResult ir = integerize(b.net, b.D_hat, spec.delta, spec.D1_override);
    b.graph = std::move(ir.graph);
    b.D1 = ir.D1;
    b.shortcut_len = ir.length;
    b.shortcut_count = ir.pairs.size();
    b.pruned = ir.pruned;
  } else {
    ShortcutResult sr = add_shortcuts(b.net, b.tree, b.D_hat, spec.delta, spec.D1_override);
    b.graph = std::move(sr.graph);
    b.D1 = sr.D1;
    b.shortcut_len = sr.length;
    b.shortcut_count = sr.pairs.size();
    b.pruned = sr.pruned;
  }
  return b;
}

std::string net_csv(const HNet& net) {
  std::string out = "idx,x,y,z,parent_idx,tree_len\n";
  const bool with_tree = net.parent.size() == net.size();
  for (std::size_t q = 0; q < net.size(); ++q) {
    const HPoint& p = net.points[q];
    out += std::to_string(q) + "," + format_g17(p.x) + "," + format_g17(p.y) + "," +
           format_g17(p.z) + "," + std::to_string(with_tree ? net.parent[q] : -1) + "," +
           format_g17(with_tree ? net.tree_len[q] : 0.0) + "\n";
  }
  return out;
}

std::string report_csv(const VerifyHyperbolicResult& r, const HNet& net) {
  std::vector<std::string> rows;
  rows.reserve(r.rows.size());
  for (const auto& row : r.rows) {
    const HPoint& p = net.points[row.p];
    const HPoint& q = net.points[row.q];
    rows.push_back(format_g17(p.x) + "," + format_g17(p.y) + "," + format_g17(p.z) + "," +
                   format_g17(q.x) + "," + format_g17(q.y) + "," + format_g17(q.z) + "," +
                   format_g17(row.hyper) + "," + format_g17(row.graph_dist) + "," +
                   format_g17(row.err) + "\n");
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "px,py,pz,qx,qy,qz,hyper,graph_dist,err\n";
  for (const std::string& s : rows) out += s;
  return out;
}

std::vector<graphcore::EdgeRecord> edge_records(const graphcore::MetricGraph& g, const HNet& net) {
  if (g.vertex_count() != net.size())
    throw std::invalid_argument("edge_records: graph/net size mismatch");
  std::vector<graphcore::EdgeRecord> recs;
  recs.reserve(g.edge_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (const auto& [w, len] : g.neighbors(v))
      if (v < w)
        recs.push_back({net.points[v].x, net.points[v].y, 0, net.points[w].x, net.points[w].y, 0,
                        len});
  return recs;
}

}  // namespace umg::hyperbolic
