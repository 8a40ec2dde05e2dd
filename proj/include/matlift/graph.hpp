#pragma once

#include <utility>
#include <vector>

#include "matlift/base_matrix.hpp"

namespace matlift {

// Simple undirected graph. Edges are stored as (i, j) with i < j, sorted,
// without duplicates; construction enforces that.
class GraphSpec {
 public:
  // Throws InvalidArgument on self-loops, out-of-range endpoints,
  // duplicate edges, or n < 1.
  GraphSpec(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

BaseMatrix adjacency_from_graph(const GraphSpec& g);
int max_degree(const GraphSpec& g);

// Named families used by the experiments.
GraphSpec complete_graph(int n);
GraphSpec path_graph(int n);
GraphSpec petersen_graph();

// Disjoint union of cliques K_s covering n vertices. If s does not divide n,
// n is padded up to the next multiple of s (the actual vertex count is
// whatever the returned GraphSpec reports).
GraphSpec clique_union_graph(int n, int s);

}  // namespace matlift
