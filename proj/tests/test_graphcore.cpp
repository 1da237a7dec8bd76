#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "umg/graphcore.hpp"
#include "umg/rng.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace umg::graphcore;
using umg::Rng;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent oracle: all-pairs shortest paths by Floyd-Warshall.
std::vector<std::vector<double>> floyd_warshall(const MetricGraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0.0;
    for (auto [j, w] : g.neighbors(static_cast<uint32_t>(i)))
      d[i][j] = std::min(d[i][j], w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}
}  // namespace

TEST_CASE("edge validation rejects malformed input") {
  MetricGraph g(4);
  CHECK(g.vertex_count() == 4);
  g.add_edge(0, 1, 1.5);
  CHECK_THROWS_AS(g.add_edge(0, 0, 1.0), std::invalid_argument);   // self loop
  CHECK_THROWS_AS(g.add_edge(0, 1, 2.0), std::invalid_argument);   // duplicate
  CHECK_THROWS_AS(g.add_edge(1, 0, 2.0), std::invalid_argument);   // duplicate, reversed
  CHECK_THROWS_AS(g.add_edge(0, 4, 1.0), std::out_of_range);       // vertex out of range
  CHECK_THROWS_AS(g.add_edge(0, 2, 0.0), std::invalid_argument);   // nonpositive
  CHECK_THROWS_AS(g.add_edge(0, 2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2, kInf), std::invalid_argument);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("shortest paths on a path graph and disconnected pieces") {
  MetricGraph g(5);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 2.0);
  g.add_edge(2, 3, 0.5);
  // vertex 4 isolated
  std::vector<double> d = shortest_path_all(g, 0);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 1.0);
  CHECK(d[2] == 3.0);
  CHECK(d[3] == 3.5);
  CHECK(d[4] == kInf);

  auto m = shortest_path_dist(g, 0, {3, 4});
  CHECK(m.at(3) == 3.5);
  CHECK(m.at(4) == kInf);
}

TEST_CASE("Dijkstra agrees with Floyd-Warshall on random graphs") {
  Rng rng(321);
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t n = 40 + static_cast<std::size_t>(rng.below(30));
    MetricGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.real01() < 0.08)
          g.add_edge(static_cast<uint32_t>(i), static_cast<uint32_t>(j), rng.real(0.1, 2.0));
    auto oracle = floyd_warshall(g);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<double> d = shortest_path_all(g, static_cast<uint32_t>(s));
      for (std::size_t t = 0; t < n; ++t) {
        if (oracle[s][t] == kInf)
          CHECK(d[t] == kInf);
        else
          CHECK(d[t] == doctest::Approx(oracle[s][t]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("graph metric: symmetry and triangle inequality, sampled") {
  Rng rng(322);
  std::size_t n = 50;
  MetricGraph g(n);
  for (std::size_t i = 1; i < n; ++i)
    g.add_edge(static_cast<uint32_t>(rng.below(i)), static_cast<uint32_t>(i), rng.real(0.2, 3.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.real01() < 0.05 && !g.has_edge(i, j))
        g.add_edge(static_cast<uint32_t>(i), static_cast<uint32_t>(j), rng.real(0.2, 3.0));

  std::vector<std::vector<double>> d(n);
  for (std::size_t s = 0; s < n; ++s) d[s] = shortest_path_all(g, static_cast<uint32_t>(s));
  for (int k = 0; k < 3000; ++k) {
    std::size_t a = rng.below(n), b = rng.below(n), c = rng.below(n);
    CHECK(d[a][b] == doctest::Approx(d[b][a]).epsilon(1e-12));
    CHECK(d[a][c] <= d[a][b] + d[b][c] + 1e-9);
  }
}

TEST_CASE("uniformity report: degrees and length range") {
  MetricGraph g(4);
  g.add_edge(0, 1, 0.5);
  g.add_edge(1, 2, 2.0);
  g.add_edge(1, 3, 1.0);
  UniformityReport r = uniformity_report(g);
  CHECK_FALSE(r.empty);
  CHECK(r.max_degree == 3);
  CHECK(r.min_length == 0.5);
  CHECK(r.max_length == 2.0);

  UniformityReport re = uniformity_report(MetricGraph(3));
  CHECK(re.empty);
  CHECK(re.max_degree == 0);
}

TEST_CASE("edge CSV: canonical orientation, sorted rows, full precision") {
  std::vector<EdgeRecord> recs;
  recs.push_back({1.0, 2.0, 0, 0.0, 0.0, 0, 0.5});         // will flip endpoints
  recs.push_back({0.0, 0.0, 0, 1.0, 1.0, 1, 1.0 / 3.0});
  recs.push_back({-1.0, 0.0, 1, 0.0, 0.0, 0, std::sqrt(2.0)});
  std::string csv = graph_csv(recs);
  std::string expect =
      "x1,y1,layer1,x2,y2,layer2,length\n"
      "-1,0,1,0,0,0,1.4142135623730951\n"
      "0,0,0,1,1,1,0.33333333333333331\n"
      "0,0,0,1,2,0,0.5\n";
  CHECK(csv == expect);
}

TEST_CASE("CSV output is deterministic across rebuilds") {
  auto build = [] {
    Rng rng(5);
    std::vector<EdgeRecord> recs;
    for (int i = 0; i < 50; ++i)
      recs.push_back({rng.real(-5, 5), rng.real(-5, 5), 0, rng.real(-5, 5), rng.real(-5, 5), 1,
                      rng.real(0.1, 2.0)});
    return graph_csv(recs);
  };
  CHECK(build() == build());
}
