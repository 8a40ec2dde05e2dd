#include "matlift/graph.hpp"

#include <algorithm>
#include <string>

#include "matlift/error.hpp"

namespace matlift {

GraphSpec::GraphSpec(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  require(n >= 1, errc::invalid_argument, "GraphSpec: need n >= 1");
  for (auto& [i, j] : edges) {
    require(i != j, errc::invalid_argument, "GraphSpec: self-loop at vertex " + std::to_string(i));
    require(i >= 0 && j >= 0 && i < n && j < n, errc::invalid_argument,
            "GraphSpec: edge endpoint out of range");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(), errc::invalid_argument,
          "GraphSpec: duplicate edge");
  edges_ = std::move(edges);
}

BaseMatrix adjacency_from_graph(const GraphSpec& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (auto [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return validate_base(a);
}

int max_degree(const GraphSpec& g) {
  std::vector<int> deg(g.n(), 0);
  for (auto [i, j] : g.edges()) {
    ++deg[i];
    ++deg[j];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

GraphSpec complete_graph(int n) {
  require(n >= 2, errc::invalid_argument, "complete_graph: need n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return GraphSpec(n, std::move(edges));
}

GraphSpec path_graph(int n) {
  require(n >= 2, errc::invalid_argument, "path_graph: need n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return GraphSpec(n, std::move(edges));
}

GraphSpec petersen_graph() {
  // Outer 5-cycle, inner pentagram, five spokes.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    edges.emplace_back(i, 5 + i);
  }
  return GraphSpec(10, std::move(edges));
}

GraphSpec clique_union_graph(int n, int s) {
  require(s >= 1, errc::invalid_argument, "clique_union_graph: need s >= 1");
  require(n >= s, errc::invalid_argument, "clique_union_graph: need n >= s");
  int actual = ((n + s - 1) / s) * s;
  std::vector<std::pair<int, int>> edges;
  for (int base = 0; base < actual; base += s)
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) edges.emplace_back(base + i, base + j);
  return GraphSpec(actual, std::move(edges));
}

}  // namespace matlift
