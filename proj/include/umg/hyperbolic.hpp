#pragma once

#include "umg/graphcore.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace umg::hyperbolic {

// Point on the upper sheet of the hyperboloid z^2 - x^2 - y^2 = 1.
struct HPoint {
  double x = 0.0, y = 0.0, z = 1.0;
};

struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Geodesic distance acosh(z1*z2 - x1*x2 - y1*y2), clamped into domain.
double h_dist(const HPoint& a, const HPoint& b);

// Point at parameter t in [0,1] along the geodesic from a to b,
// renormalized back onto the hyperboloid.
HPoint geodesic_point(const HPoint& a, const HPoint& b, double t);

HPoint hpoint_polar(double r, double theta);

// Relative hyperboloid-constraint check: |z^2-x^2-y^2-1| small against z^2.
bool on_hyperboloid(const HPoint& p, double tol = 1e-10);

// Distance between polar points, stable at large radii:
// cosh d = cosh(r1-r2) + 2 sinh r1 sinh r2 sin^2(dtheta/2).
double polar_dist(double r1, double t1, double r2, double t2);

// Distance from (r, th) to the radial geodesic segment from the origin to
// (seglen, theta0).
double dist_to_radial_segment(double r, double th, double theta0, double seglen);

// Volume-style packing bound: max number of epsilon-separated points in a
// closed ball of the given radius.
double packing_bound(double ball_radius, double eps);

// Separated net on the ball of radius R, built greedily over a polar
// candidate grid: rings every eps/2, angular step eps/(2*density), points
// accepted when at least eps from all earlier ones.  Point 0 is the center.
struct HNet {
  double epsilon = 1.0, radius = 5.0, density = 2.0;
  std::vector<HPoint> points;
  std::vector<double> r, theta;       // polar coordinates (theta in [0, 2pi))
  std::vector<long long> ring_idx;    // ring number (0 for the center)
  // ring -> (theta, point index), theta ascending; ring 0 holds the center
  std::vector<std::vector<std::pair<double, std::uint32_t>>> rings;
  // filled by build_tree:
  std::vector<std::int64_t> parent;   // -1 for the root
  std::vector<double> tree_len;

  std::size_t size() const { return points.size(); }
};

HNet build_net(double R, double eps, double density = 2.0);

// Parent of point q under the descent rules: points within 5*eps of the
// root attach directly to it; otherwise the parent is an admissible point
// q' with  d(q,root)-15eps < d(q',root) < d(q,root)-5eps  lying within eps
// of the radial geodesic through q, and among those the one farthest from
// the root (ties: smaller segment distance, then smaller index).  Throws
// ConstructionError when no admissible point exists.
std::size_t choose_parent(std::size_t q, const HNet& net);

// Wire every point to its parent; edge length d(q,root) - d(parent,root).
// Fills net.parent / net.tree_len and returns the tree graph.
graphcore::MetricGraph build_tree(HNet& net);

// Largest deviation of any tree-path vertex from the radial geodesic of its
// endpoint, over a deterministic stride sample, scaled by 1.5 for headroom.
double estimate_morse_D(const HNet& net, long long sample = 20000);

struct ShortcutResult {
  graphcore::MetricGraph graph;           // tree plus shortcut edges
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  double length = 0.0;                    // common shortcut length
  double D1 = 0.0;
  bool pruned = false;                    // shortcuts provably never shorten paths
};

// Add an edge of length 2*D1 + 4*D_hat between every pair closer than 2*D1,
// with D1 = D_hat + 100*eps + delta unless overridden.  When the length
// already exceeds every root-route (2 * max distance to the root), the
// shortcuts cannot change any graph distance and are pruned.
ShortcutResult add_shortcuts(const HNet& net, const graphcore::MetricGraph& tree, double D_hat,
                             double delta, std::optional<double> D1_override = std::nullopt);

struct IntegerizeResult {
  graphcore::MetricGraph graph;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  double length = 0.0;  // integral shortcut length
  double D1 = 0.0;
  bool pruned = false;
};

// Integer-length variant for eps, delta >= 10: tree edges become
// floor(d(q,root)) - floor(d(parent,root)), shortcuts the smallest integer
// exceeding 2*D1 + 4*D_hat.
IntegerizeResult integerize(const HNet& net, double D_hat, double delta,
                            std::optional<double> D1_override = std::nullopt);

struct HyperPairRow {
  std::uint32_t p, q;
  double hyper, graph_dist, err;
};

struct VerifyHyperbolicResult {
  std::vector<HyperPairRow> rows;
  std::array<double, 10> decile_max{};
  double max_err = 0.0, min_err = 0.0, bound = 0.0;
  double root_exact_max = 0.0;  // max |d_graph(root,q) - expected| over all q
  bool all_finite = true;
  bool within_bound = true;   // err <= 2*D1 + 12*D_hat + 2*delta
  bool lower_ok = true;       // err >= -4*D_hat
  bool root_exact = true;     // root distances match exactly (1e-9)
  bool decile_flat = true;

  bool ok() const { return all_finite && within_bound && lower_ok && root_exact && decile_flat; }
};

// Sample pairs inside the ball of radius R - 2*D1 (the margin where the
// closeness bound applies; falls back to the full ball when the margin is
// degenerate) and compare graph against hyperbolic distances.
VerifyHyperbolicResult verify_hyperbolic(const graphcore::MetricGraph& g, const HNet& net,
                                         long long samples, std::uint64_t seed, double D_hat,
                                         double D1, double delta, bool integer_lengths = false);

// Whole-pipeline driver used by the CLI.
struct HyperSpec {
  double R = 12.0, epsilon = 1.0, delta = 1.0, density = 2.0;
  long long morse_sample = 20000;
  std::optional<double> D_hat_override, D1_override;
  bool integer_mode = false;
};

struct HyperBuild {
  HNet net;
  graphcore::MetricGraph tree;
  graphcore::MetricGraph graph;  // tree + shortcuts (or integerized variant)
  double D_hat = 0.0, D1 = 0.0, shortcut_len = 0.0;
  std::size_t shortcut_count = 0;
  bool pruned = false;
};

HyperBuild build_hyperbolic(const HyperSpec& spec);

// CSV: idx,x,y,z,parent_idx,tree_len (rows in index order).
std::string net_csv(const HNet& net);
// CSV: px,py,pz,qx,qy,qz,hyper,graph_dist,err (rows sorted as strings).
std::string report_csv(const VerifyHyperbolicResult& r, const HNet& net);
// Edge records with (x, y) coordinates, layer 0.
std::vector<graphcore::EdgeRecord> edge_records(const graphcore::MetricGraph& g, const HNet& net);

}  // namespace umg::hyperbolic
