#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace umg::graphcore {

// Undirected graph with positive real edge lengths.  Vertices are dense
// indices; callers keep their own coordinate tables.
class MetricGraph {
 public:
  explicit MetricGraph(std::size_t n = 0) : adj_(n) {}

  std::size_t add_vertex();
  // Rejects self-loops, duplicate edges, non-positive or non-finite lengths.
  void add_edge(std::size_t a, std::size_t b, double length);

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::pair<std::uint32_t, double>>& neighbors(std::size_t v) const;
  bool has_edge(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj_;
  std::size_t edge_count_ = 0;
};

// Dijkstra from `source`; unreachable vertices get +infinity.
std::vector<double> shortest_path_all(const MetricGraph& g, std::size_t source);

// Distances to selected targets only (still one full Dijkstra sweep).
std::map<std::size_t, double> shortest_path_dist(const MetricGraph& g, std::size_t source,
                                                 const std::vector<std::size_t>& targets);

struct UniformityReport {
  bool empty = true;  // no edges: min/max lengths are meaningless
  std::size_t max_degree = 0;
  double min_length = 0.0;
  double max_length = 0.0;
};

UniformityReport uniformity_report(const MetricGraph& g);

// One edge with embedded endpoint coordinates, for CSV export.
struct EdgeRecord {
  double x1, y1;
  int layer1;
  double x2, y2;
  int layer2;
  double length;
};

// CSV with header x1,y1,layer1,x2,y2,layer2,length; endpoints oriented
// canonically (lesser coordinate triple first) and rows sorted
// lexicographically as strings, so equal graphs serialize identically.
std::string graph_csv(std::vector<EdgeRecord> edges);

}  // namespace umg::graphcore
