#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sttlab/rational.hpp"
#include "sttlab/topology.hpp"

namespace sttlab {

// A search tree over (a connected piece of) a topology: a root node plus one
// subtree per connected component left after deleting the root.
struct SearchTree {
  int root = -1;
  std::vector<SearchTree> children;
};

using NodeMask = std::uint32_t;

NodeMask full_mask(int n);
std::vector<NodeMask> split_components(const Topology& u, NodeMask nodes);

// Every search tree over u, in a fixed deterministic order.
std::vector<SearchTree> enumerate_stts(const Topology& u);
std::uint64_t count_stts(const Topology& u);

// LP-convention depths: the root sits at depth 0.
std::vector<int> stt_depths(const SearchTree& t, int n);
RatVector stt_depth_vector(const SearchTree& t, int n);

// One row per enumerated search tree, same order as enumerate_stts.
RatMatrix stt_depth_matrix(const Topology& u);

// cost(T,f) = f . depths + sum(f); the query of the root costs one visit.
Rational stt_cost(const SearchTree& t, const RatVector& f);

std::string stt_to_text(const SearchTree& t);
SearchTree parse_stt(const std::string& text, const Topology& u);

struct BestSttResult {
  SearchTree tree;               // witness with the lexicographically least depths
  Rational value;                // min f . depths over all search trees
  std::vector<int> depths;       // depths of the witness
  std::vector<int> optimal_roots;  // roots of all optimal search trees, ascending
};

BestSttResult best_stt(const Topology& u, const RatVector& f, int node_cap = 8);

struct StarOptimum {
  SearchTree tree;
  Rational cost;  // cost convention (root depth 1)
};

// Direct optimum over the star with the given leaf weights: query leaves in
// decreasing weight order and try every insertion depth for the center.
// Node layout matches make_star(): leaves are 1,3..n and the center is 2.
StarOptimum optimal_star_stt(const Rational& center_weight,
                             const std::vector<Rational>& leaf_weights);

}  // namespace sttlab
