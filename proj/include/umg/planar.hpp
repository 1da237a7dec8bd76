#pragma once

#include "umg/graphcore.hpp"
#include "umg/lowdisc.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace umg::planar {

// Parameters of the planar lattice construction.  The graph lives on the
// integer points with |i|, |j| <= N, split by parity of i+j into two layers
// that each carry diagonal edges with row- (resp. column-) dependent
// lengths sqrt2 +- beta, and are glued by vertical edges of length M.
struct LatticeSpec {
  long long N = 64;
  lowdisc::QuadraticIrrational alpha = lowdisc::QuadraticIrrational::sqrt2_minus_1();
  double M = 3.0;
  long long query_margin = 0;           // 0 means N/2
  std::optional<double> constant_beta;  // debug mode: frozen apex value

  long long margin() const { return query_margin > 0 ? query_margin : N / 2; }
  // Apex value for row/column index k.
  std::function<double(long long)> beta_at() const;
};

enum Layer : int { kEven = 0, kOdd = 1 };

struct PlanarGraph {
  graphcore::MetricGraph graph;
  std::vector<std::array<long long, 3>> coords;  // id -> {i, j, layer}
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  LatticeSpec spec;
  bool glued = false;

  std::uint64_t key(long long i, long long j, int layer) const;
  std::size_t id_of(long long i, long long j, int layer) const;  // throws std::out_of_range
  bool contains(long long i, long long j, int layer) const;
};

// Even layer (i+j even): edges (i,j)->(i+1,j+1) of length sqrt2+beta_j and
// (i,j)->(i-1,j+1) of length sqrt2-beta_j.
PlanarGraph build_even(const LatticeSpec& spec);
// Odd layer (i+j odd): the transposed construction, lengths indexed by i.
PlanarGraph build_odd(const LatticeSpec& spec);
// Glue with vertical edges even(i,j) -> odd(i,j+1) of length M.
PlanarGraph glue(const PlanarGraph& even, const PlanarGraph& odd, double M);

// Exact even-layer distance: sqrt2*|di| within a row, otherwise the norm of
// the displacement under the tent profile averaged over the traversed rows.
double closed_form_even_dist(const LatticeSpec& spec, std::array<long long, 2> p,
                             std::array<long long, 2> q);

// Sampled sup |closed_form - norm0| over even pairs in the query box: the
// calibrated closeness constant of one layer.
double estimate_C(const LatticeSpec& spec, long long samples, std::uint64_t seed);

// Glue length from the calibration: smallest integer >= 2*C_hat + 1.
double glue_length_from_C(double c_hat);

struct PlanarPairRow {
  long long pi, pj;
  int player;
  long long qi, qj;
  int qlayer;
  double euclid, graph_dist, err;
};

struct VerifyPlanarResult {
  std::vector<PlanarPairRow> rows;
  std::array<double, 10> decile_max{};  // max |err| per equal-count distance decile
  double max_abs_err = 0.0, min_err = 0.0, max_err = 0.0;
  double c_hat = 0.0, m = 0.0;
  bool all_finite = true;
  bool lower_bound_ok = true;  // graph_dist >= euclid - (c_hat + 2M) everywhere
  bool decile_flat = true;     // farthest decile <= 2x nearest nonzero decile
  bool m_invariant_ok = true;  // M >= 2*c_hat + 1

  bool ok() const { return all_finite && lower_bound_ok && decile_flat && m_invariant_ok; }
};

// Sample `samples` vertex pairs in the query box of a glued graph (about
// samples/100 Dijkstra sweeps with 100 targets each) and compare graph
// distances against Euclidean distances.
VerifyPlanarResult verify_planar(const PlanarGraph& full, long long samples, std::uint64_t seed,
                                 double c_hat);

std::vector<graphcore::EdgeRecord> edge_records(const PlanarGraph& g);
std::string report_csv(const VerifyPlanarResult& r);

}  // namespace umg::planar
