#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sttlab/lp_model.hpp"
#include "sttlab/polytope.hpp"
#include "sttlab/rational.hpp"
#include "sttlab/search_tree.hpp"
#include "sttlab/topology.hpp"

namespace sttlab {

struct ChoiceStep {
  std::vector<int> component;   // ascending, size >= 2
  int root = -1;
  std::vector<int> candidates;  // ascending
};

struct RoundingOutcome {
  SearchTree stt;
  std::vector<int> depths;
  std::vector<ChoiceStep> trace;
};

// Nodes r of the component that keep, for every other member v, at least
// half a unit of ancestry mass on r's side of v: the sum of X_uv over
// members u whose path to v passes through r (u itself counts, v does not)
// is at least 1/2. An empty result signals a bug, not bad input: a feasible
// point always admits such a node.
std::vector<int> candidate_roots(const RatVector& point, const VariableSpace& vars,
                                 NodeMask component, const Topology& u);

struct RoundingSet {
  std::vector<RoundingOutcome> outcomes;  // every distinct rounding, capped
  bool complete = true;                   // false when the cap cut the list short
  Rational best = 0;                      // min f.depths, exact even when capped
  Rational worst = 0;                     // max f.depths, exact even when capped
};

// Exhaustive expansion of every candidate-root choice at every step. Best
// and worst objective values come from a component-wise sweep, so they stay
// exact even when the materialized outcome list hits the cap.
RoundingSet round_all(const RatVector& point, const VariableSpace& vars, const Topology& u,
                      const RatVector& f, long outcome_cap = 200000);

using RootPicker = std::function<int(const std::vector<int>&)>;

// Root rounding that re-solves the depth LP on each component before picking
// its root. The picker receives the candidate set in ascending order; the
// default takes the smallest index.
RoundingOutcome iterated_round(const RatVector& point, const LpModel& model, const Topology& u,
                               const RatVector& f, const RootPicker& pick = {});

struct RatioRow {
  std::string topology;
  RatVector direction;
  Rational opt_cost = 0;  // min over search trees of f.depths + sum(f)
  Rational bc_cost = 0;   // best rounding outcome, same convention
  Rational wc_cost = 0;   // worst rounding outcome
  Rational bc_ratio = 0;
  Rational wc_ratio = 0;
};

// Solves the depth LP in direction f, rounds the optimum every possible way,
// and compares against the best search tree under the root-depth-one cost.
RatioRow rounding_ratio_row(const Topology& u, const RatVector& f);

std::string ratio_table_tsv(const std::vector<RatioRow>& rows);

struct BcSearchResult {
  RatVector direction;     // sums to one; empty when no guess was feasible
  Rational separation = 0;  // min rounding value minus min search tree value
  Rational bc_ratio = 1;   // realized by round_all under the found direction
};

// Sweeps the guessed minimizer over every search tree depth vector, solves
// the separation LP for each, and keeps the direction with the widest gap
// between the roundings of the given point and the best search tree.
BcSearchResult bc_ratio_search(const Topology& u, const LpModel& model, const RatVector& point,
                               const Rational& epsilon = Rational(0));

// One row per false-facet direction: solve the LP there, round the optimum
// every way, and compare the worst outcome against the best search tree.
std::vector<RatioRow> wc_over_primary(const Topology& u, const std::vector<Facet>& false_facets);

}  // namespace sttlab
