// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace setfam::graph {

using Adjacency = std::vector<std::vector<int>>;

/// Maximum-cardinality matching in a general simple graph (Edmonds' blossom
/// algorithm). Returns mate[v], or -1 for unmatched vertices.
std::vector<int> max_matching(const Adjacency& adj);

/// Maximum bipartite matching, left vertices 0..left_size-1 with adjacency
/// into right vertices 0..right_size-1. Returns the right mate of each left
/// vertex, or -1.
std::vector<int> bipartite_matching(const Adjacency& left_adj, int right_size);

struct CoverLimits {
  int max_vertices = 1024;
  std::uint64_t max_nodes = 50'000'000;
};

/// Exact minimum vertex cover by branch and bound. Throws ResourceLimit if
/// the graph or the search exceeds the limits. Returns the cover vertices.
std::vector<int> min_vertex_cover(const Adjacency& adj, const CoverLimits& limits = {});

}  // namespace setfam::graph
