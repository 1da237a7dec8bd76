#include "umg/graphcore.hpp"

#include "umg/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace umg::graphcore {

std::size_t MetricGraph::add_vertex() {
  adj_.emplace_back();
  return adj_.size() - 1;
}

void MetricGraph::add_edge(std::size_t a, std::size_t b, double length) {
  if (a >= adj_.size() || b >= adj_.size())
    throw std::out_of_range("add_edge: vertex index out of range");
  if (a == b) throw std::invalid_argument("add_edge: self-loop rejected");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("add_edge: length must be positive and finite");
  for (const auto& [nb, len] : adj_[a])
    if (nb == b) throw std::invalid_argument("add_edge: duplicate edge rejected");
  adj_[a].emplace_back(static_cast<std::uint32_t>(b), length);
  adj_[b].emplace_back(static_cast<std::uint32_t>(a), length);
  ++edge_count_;
}

const std::vector<std::pair<std::uint32_t, double>>& MetricGraph::neighbors(std::size_t v) const {
  if (v >= adj_.size()) throw std::out_of_range("neighbors: vertex index out of range");
  return adj_[v];
}

bool MetricGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a >= adj_.size() || b >= adj_.size()) return false;
  for (const auto& [nb, len] : adj_[a])
    if (nb == b) return true;
  return false;
}

std::vector<double> shortest_path_all(const MetricGraph& g, std::size_t source) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw std::out_of_range("shortest_path_all: source out of range");
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0.0;
  pq.emplace(0.0, static_cast<std::uint32_t>(source));
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;  // stale entry
    for (const auto& [w, len] : g.neighbors(v)) {
      double nd = d + len;
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
  return dist;
}

std::map<std::size_t, double> shortest_path_dist(const MetricGraph& g, std::size_t source,
                                                 const std::vector<std::size_t>& targets) {
  std::vector<double> dist = shortest_path_all(g, source);
  std::map<std::size_t, double> out;
  for (std::size_t t : targets) {
    if (t >= g.vertex_count()) throw std::out_of_range("shortest_path_dist: target out of range");
    out[t] = dist[t];
  }
  return out;
}

UniformityReport uniformity_report(const MetricGraph& g) {
  UniformityReport r;
  r.min_length = std::numeric_limits<double>::infinity();
  r.max_length = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& nb = g.neighbors(v);
    r.max_degree = std::max(r.max_degree, nb.size());
    for (const auto& [w, len] : nb) {
      r.empty = false;
      r.min_length = std::min(r.min_length, len);
      r.max_length = std::max(r.max_length, len);
    }
  }
  if (r.empty) {
    r.min_length = 0.0;
    r.max_length = 0.0;
  }
  return r;
}

std::string graph_csv(std::vector<EdgeRecord> edges) {
  std::vector<std::string> rows;
  rows.reserve(edges.size());
  for (EdgeRecord e : edges) {
    // Canonical orientation: lesser (x, y, layer) triple first.
    bool swap = (e.x2 < e.x1) ||
                (e.x2 == e.x1 && (e.y2 < e.y1 || (e.y2 == e.y1 && e.layer2 < e.layer1)));
    if (swap) {
      std::swap(e.x1, e.x2);
      std::swap(e.y1, e.y2);
      std::swap(e.layer1, e.layer2);
    }
    rows.push_back(format_g17(e.x1) + "," + format_g17(e.y1) + "," + std::to_string(e.layer1) +
                   "," + format_g17(e.x2) + "," + format_g17(e.y2) + "," +
                   std::to_string(e.layer2) + "," + format_g17(e.length) + "\n");
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "x1,y1,layer1,x2,y2,layer2,length\n";
  for (const std::string& r : rows) out += r;
  return out;
}

}  // namespace umg::graphcore
