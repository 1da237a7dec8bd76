#include "umg/planar.hpp"

#include "umg/betaseq.hpp"
#include "umg/io.hpp"
#include "umg/profiles.hpp"
#include "umg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace umg::planar {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;

void check_spec(const LatticeSpec& spec) {
  if (spec.N < 2) throw std::invalid_argument("lattice spec: N must be >= 2");
  if (spec.N > 1'000'000) throw std::invalid_argument("lattice spec: N too large");
  if (spec.query_margin < 0 || spec.margin() > spec.N)
    throw std::invalid_argument("lattice spec: query margin must lie within the box");
  if (spec.constant_beta && !(std::fabs(*spec.constant_beta) < kSqrt2))
    throw std::invalid_argument("lattice spec: |constant beta| must be < sqrt2");
}
}  // namespace

std::function<double(long long)> LatticeSpec::beta_at() const {
  if (constant_beta) {
    double b = *constant_beta;
    return [b](long long) { return b; };
  }
  betaseq::BetaSequence seq(alpha);
  return [seq](long long k) { return seq.beta(k); };
}

std::uint64_t PlanarGraph::key(long long i, long long j, int layer) const {
  const std::uint64_t side = static_cast<std::uint64_t>(2 * spec.N + 1);
  return (static_cast<std::uint64_t>(i + spec.N) * side + static_cast<std::uint64_t>(j + spec.N)) *
             2 +
         static_cast<std::uint64_t>(layer);
}

std::size_t PlanarGraph::id_of(long long i, long long j, int layer) const {
  auto it = index.find(key(i, j, layer));
  if (it == index.end()) throw std::out_of_range("planar vertex not present");
  return it->second;
}

bool PlanarGraph::contains(long long i, long long j, int layer) const {
  if (std::llabs(i) > spec.N || std::llabs(j) > spec.N) return false;
  return index.find(key(i, j, layer)) != index.end();
}

namespace {

// Shared single-layer builder.  `transposed` selects the odd layer, whose
// edge lengths are indexed by the column instead of the row.
PlanarGraph build_layer(const LatticeSpec& spec, bool transposed) {
  check_spec(spec);
  const int layer = transposed ? kOdd : kEven;
  const int parity = transposed ? 1 : 0;
  auto beta = spec.beta_at();

  PlanarGraph g;
  g.spec = spec;
  g.glued = false;
  const long long N = spec.N;
  // Deterministic numbering: (j, i) ascending.
  for (long long j = -N; j <= N; ++j)
    for (long long i = -N; i <= N; ++i) {
      if (((i + j) % 2 + 2) % 2 != parity) continue;
      g.index.emplace(g.key(i, j, layer), static_cast<std::uint32_t>(g.coords.size()));
      g.coords.push_back({i, j, layer});
    }
  g.graph = graphcore::MetricGraph(g.coords.size());

  for (std::size_t v = 0; v < g.coords.size(); ++v) {
    const auto [i, j, l] = g.coords[v];
    // Diagonal steps that increase the profiled coordinate.
    long long k = transposed ? i : j;
    double u = kSqrt2 + beta(k);
    double w = kSqrt2 - beta(k);
    long long i2u = transposed ? i + 1 : i + 1;
    long long j2u = transposed ? j + 1 : j + 1;
    long long i2w = transposed ? i + 1 : i - 1;
    long long j2w = transposed ? j - 1 : j + 1;
    if (g.contains(i2u, j2u, layer)) g.graph.add_edge(v, g.id_of(i2u, j2u, layer), u);
    if (g.contains(i2w, j2w, layer)) g.graph.add_edge(v, g.id_of(i2w, j2w, layer), w);
  }
  return g;
}

}  // namespace

PlanarGraph build_even(const LatticeSpec& spec) { return build_layer(spec, false); }
PlanarGraph build_odd(const LatticeSpec& spec) { return build_layer(spec, true); }

PlanarGraph glue(const PlanarGraph& even, const PlanarGraph& odd, double M) {
  if (even.glued || odd.glued) throw std::invalid_argument("glue: layers must be unglued");
  if (even.spec.N != odd.spec.N) throw std::invalid_argument("glue: box size mismatch");
  if (even.spec.alpha.value != odd.spec.alpha.value ||
      even.spec.constant_beta != odd.spec.constant_beta)
    throw std::invalid_argument("glue: apex sequence mismatch");
  if (!(M > 0.0) || !std::isfinite(M)) throw std::invalid_argument("glue: M must be positive");

  PlanarGraph g;
  g.spec = even.spec;
  g.spec.M = M;
  g.glued = true;
  g.coords = even.coords;
  g.coords.insert(g.coords.end(), odd.coords.begin(), odd.coords.end());
  g.index.reserve(g.coords.size());
  for (std::size_t v = 0; v < g.coords.size(); ++v) {
    const auto [i, j, l] = g.coords[v];
    g.index.emplace(g.key(i, j, l), static_cast<std::uint32_t>(v));
  }
  g.graph = graphcore::MetricGraph(g.coords.size());
  const std::size_t off = even.coords.size();
  for (std::size_t v = 0; v < even.coords.size(); ++v)
    for (const auto& [w, len] : even.graph.neighbors(v))
      if (v < w) g.graph.add_edge(v, w, len);
  for (std::size_t v = 0; v < odd.coords.size(); ++v)
    for (const auto& [w, len] : odd.graph.neighbors(v))
      if (v < w) g.graph.add_edge(v + off, w + off, len);
  // Vertical glue: even (i,j) to odd (i, j+1).
  for (std::size_t v = 0; v < even.coords.size(); ++v) {
    const auto [i, j, l] = even.coords[v];
    if (g.contains(i, j + 1, kOdd)) g.graph.add_edge(v, g.id_of(i, j + 1, kOdd), M);
  }
  return g;
}

double closed_form_even_dist(const LatticeSpec& spec, std::array<long long, 2> p,
                             std::array<long long, 2> q) {
  check_spec(spec);
  if (((p[0] + p[1]) % 2 + 2) % 2 != 0 || ((q[0] + q[1]) % 2 + 2) % 2 != 0)
    throw std::invalid_argument("closed_form_even_dist: points must lie on the even layer");
  if (p[1] == q[1]) return kSqrt2 * static_cast<double>(std::llabs(p[0] - q[0]));

  const long long m = std::min(p[1], q[1]);
  const long long n = std::max(p[1], q[1]);
  // Orient the displacement so the profiled coordinate increases.
  long long dx_i = (q[1] > p[1]) ? q[0] - p[0] : p[0] - q[0];
  const double dy = static_cast<double>(n - m);
  auto beta = spec.beta_at();
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(n - m));
  for (long long k = m; k < n; ++k) window.push_back(beta(k));
  auto prof = profiles::averaged_profile(window, 0, window.size(), kSqrt2);
  return profiles::norm_from_profile(prof).eval(static_cast<double>(dx_i), dy);
}

double estimate_C(const LatticeSpec& spec, long long samples, std::uint64_t seed) {
  check_spec(spec);
  if (samples < 1) throw std::invalid_argument("estimate_C: samples must be >= 1");
  const long long mg = spec.margin();
  Rng rng(seed);
  auto draw_even = [&](long long& i, long long& j) {
    i = rng.range(-mg, mg);
    j = rng.range(-mg, mg);
    if ((((i + j) % 2) + 2) % 2 != 0) i += (i < mg) ? 1 : -1;
  };
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    long long pi, pj, qi, qj;
    draw_even(pi, pj);
    do {
      draw_even(qi, qj);
    } while (pi == qi && pj == qj);
    double d = closed_form_even_dist(spec, {pi, pj}, {qi, qj});
    double e = profiles::norm0(static_cast<double>(qi - pi), static_cast<double>(qj - pj));
    worst = std::max(worst, std::fabs(d - e));
  }
  return worst;
}

double glue_length_from_C(double c_hat) {
  if (!(c_hat >= 0.0) || !std::isfinite(c_hat))
    throw std::invalid_argument("glue_length_from_C: bad calibration constant");
  return std::ceil(2.0 * c_hat + 1.0);
}

VerifyPlanarResult verify_planar(const PlanarGraph& full, long long samples, std::uint64_t seed,
                                 double c_hat) {
  if (!full.glued) throw std::invalid_argument("verify_planar: graph must be glued");
  if (samples < 1) throw std::invalid_argument("verify_planar: samples must be >= 1");
  const long long mg = full.spec.margin();
  const double M = full.spec.M;

  VerifyPlanarResult res;
  res.c_hat = c_hat;
  res.m = M;
  res.m_invariant_ok = M >= 2.0 * c_hat + 1.0 - 1e-12;
  res.rows.reserve(static_cast<std::size_t>(samples));

  Rng rng(seed);
  auto draw = [&](long long& i, long long& j) {
    i = rng.range(-mg, mg);
    j = rng.range(-mg, mg);
  };

  const long long targets_per_source = std::min<long long>(samples, 100);
  const long long sources = (samples + targets_per_source - 1) / targets_per_source;
  long long produced = 0;
  res.min_err = std::numeric_limits<double>::infinity();
  res.max_err = -std::numeric_limits<double>::infinity();

  for (long long s = 0; s < sources && produced < samples; ++s) {
    long long pi, pj;
    draw(pi, pj);
    const int player = static_cast<int>((((pi + pj) % 2) + 2) % 2);
    const std::size_t pid = full.id_of(pi, pj, player);
    std::vector<double> dist = graphcore::shortest_path_all(full.graph, pid);
    const long long batch = std::min<long long>(targets_per_source, samples - produced);
    for (long long t = 0; t < batch; ++t) {
      long long qi, qj;
      do {
        draw(qi, qj);
      } while (qi == pi && qj == pj);
      const int qlayer = static_cast<int>((((qi + qj) % 2) + 2) % 2);
      const std::size_t qid = full.id_of(qi, qj, qlayer);
      const double euclid =
          std::hypot(static_cast<double>(qi - pi), static_cast<double>(qj - pj));
      const double d = dist[qid];
      const double err = d - euclid;
      if (!std::isfinite(d)) res.all_finite = false;
      res.min_err = std::min(res.min_err, err);
      res.max_err = std::max(res.max_err, err);
      res.max_abs_err = std::max(res.max_abs_err, std::fabs(err));
      if (d < euclid - (c_hat + 2.0 * M) - 1e-9) res.lower_bound_ok = false;
      res.rows.push_back({pi, pj, player, qi, qj, qlayer, euclid, d, err});
      ++produced;
    }
  }

  // Equal-count deciles by Euclidean distance.
  std::vector<std::size_t> order(res.rows.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (res.rows[a].euclid != res.rows[b].euclid) return res.rows[a].euclid < res.rows[b].euclid;
    return a < b;
  });
  const std::size_t n = order.size();
  for (int dec = 0; dec < 10; ++dec) {
    std::size_t lo = n * static_cast<std::size_t>(dec) / 10;
    std::size_t hi = n * (static_cast<std::size_t>(dec) + 1) / 10;
    double mx = 0.0;
    for (std::size_t k = lo; k < hi; ++k)
      mx = std::max(mx, std::fabs(res.rows[order[k]].err));
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

std::vector<graphcore::EdgeRecord> edge_records(const PlanarGraph& g) {
  std::vector<graphcore::EdgeRecord> recs;
  recs.reserve(g.graph.edge_count());
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v)
    for (const auto& [w, len] : g.graph.neighbors(v))
      if (v < w) {
        const auto [i1, j1, l1] = g.coords[v];
        const auto [i2, j2, l2] = g.coords[w];
        recs.push_back({static_cast<double>(i1), static_cast<double>(j1), static_cast<int>(l1),
                        static_cast<double>(i2), static_cast<double>(j2), static_cast<int>(l2),
                        len});
      }
  return recs;
}

std::string report_csv(const VerifyPlanarResult& r) {
  std::vector<std::string> rows;
  rows.reserve(r.rows.size());
  for (const auto& row : r.rows)
    rows.push_back(std::to_string(row.pi) + "," + std::to_string(row.pj) + "," +
                   std::to_string(row.player) + "," + std::to_string(row.qi) + "," +
                   std::to_string(row.qj) + "," + std::to_string(row.qlayer) + "," +
                   format_g17(row.euclid) + "," + format_g17(row.graph_dist) + "," +
                   format_g17(row.err) + "\n");
  std::sort(rows.begin(), rows.end());
  std::string out = "px,py,player,qx,qy,qlayer,euclid,graph_dist,err\n";
  for (const std::string& s : rows) out += s;
  return out;
}

}  // namespace umg::planar
