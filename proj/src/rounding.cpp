#include "sttlab/rounding.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sttlab/simplex.hpp"

namespace sttlab {

namespace {

std::vector<int> mask_members(NodeMask mask) {
  std::vector<int> members;
  while (mask) {
    members.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return members;
}

struct RoundContext {
  const RatVector& point;
  const VariableSpace& vars;
  const Topology& u;
  const RatVector& f;
  std::map<NodeMask, std::vector<int>> roots;
  std::map<NodeMask, std::pair<Rational, Rational>> range;
  long budget;
  bool complete = true;
};

const std::vector<int>& roots_for(RoundContext& ctx, NodeMask mask) {
  auto it = ctx.roots.find(mask);
  if (it == ctx.roots.end())
    it = ctx.roots.emplace(mask, candidate_roots(ctx.point, ctx.vars, mask, ctx.u)).first;
  return it->second;
}

// Min and max of sum f_i * depth_i within the component, over all choice
// sequences. Removing the root pushes every survivor one level down, so the
// value decomposes over the leftover components.
std::pair<Rational, Rational> range_of(RoundContext& ctx, NodeMask mask) {
  if ((mask & (mask - 1)) == 0) return {Rational(0), Rational(0)};
  const auto it = ctx.range.find(mask);
  if (it != ctx.range.end()) return it->second;

  std::pair<Rational, Rational> result;
  bool first = true;
  for (int r : roots_for(ctx, mask)) {
    Rational lo = 0, hi = 0;
    for (NodeMask comp : split_components(ctx.u, mask & ~(NodeMask(1) << r))) {
      Rational weight = 0;
      for (int v : mask_members(comp)) weight += ctx.f(v);
      const auto sub = range_of(ctx, comp);
      lo += weight + sub.first;
      hi += weight + sub.second;
    }
    if (first || lo < result.first) result.first = lo;
    if (first || hi > result.second) result.second = hi;
    first = false;
  }
  ctx.range[mask] = result;
  return result;
}

struct PartialOutcome {
  SearchTree tree;
  std::vector<ChoiceStep> trace;
};

std::vector<PartialOutcome> expand(RoundContext& ctx, NodeMask mask) {
  if ((mask & (mask - 1)) == 0)
    return {PartialOutcome{SearchTree{std::countr_zero(mask), {}}, {}}};

  const std::vector<int>& candidates = roots_for(ctx, mask);
  const std::vector<int> members = mask_members(mask);
  std::vector<PartialOutcome> outcomes;
  for (int r : candidates) {
    std::vector<std::vector<PartialOutcome>> parts;
    for (NodeMask comp : split_components(ctx.u, mask & ~(NodeMask(1) << r)))
      parts.push_back(expand(ctx, comp));

    std::vector<std::size_t> pick(parts.size(), 0);
    while (true) {
      if (ctx.budget <= 0) {
        ctx.complete = false;
        return outcomes;
      }
      --ctx.budget;
      PartialOutcome out;
      out.tree.root = r;
      out.trace.push_back({members, r, candidates});
      for (std::size_t p = 0; p < parts.size(); ++p) {
        const PartialOutcome& part = parts[p][pick[p]];
        out.tree.children.push_back(part.tree);
        out.trace.insert(out.trace.end(), part.trace.begin(), part.trace.end());
      }
      outcomes.push_back(std::move(out));

      std::size_t level = 0;
      while (level < pick.size() && ++pick[level] == parts[level].size()) {
        pick[level] = 0;
        ++level;
      }
      if (level == pick.size()) break;
    }
  }
  return outcomes;
}

struct SubProblem {
  Topology topology;
  std::vector<int> to_orig;  // local node -> node of the parent topology
};

SubProblem induced_subtree(const Topology& u, NodeMask mask) {
  const std::vector<int> nodes = mask_members(mask);
  std::vector<int> local(u.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : u.edges())
    if (local[a] >= 0 && local[b] >= 0) edges.emplace_back(local[a] + 1, local[b] + 1);
  return {Topology(static_cast<int>(nodes.size()), edges), nodes};
}

SearchTree iterate_level(const Topology& local, const std::vector<int>& to_orig,
                         const RatVector& point, const VariableSpace& vars,
                         const RatVector& f, const RootPicker& pick,
                         std::vector<ChoiceStep>& trace) {
  const int k = local.size();
  if (k == 1) return SearchTree{to_orig[0], {}};

  const std::vector<int> local_roots = candidate_roots(point, vars, full_mask(k), local);
  std::vector<int> candidates;
  candidates.reserve(local_roots.size());
  for (int r : local_roots) candidates.push_back(to_orig[r]);

  const int chosen = pick ? pick(candidates) : candidates.front();
  const auto at = std::find(candidates.begin(), candidates.end(), chosen);
  if (at == candidates.end())
    throw std::invalid_argument("the root picker returned a non-candidate node");
  trace.push_back({to_orig, chosen, candidates});
  const int chosen_local = local_roots[at - candidates.begin()];

  SearchTree node{chosen, {}};
  for (NodeMask comp : split_components(local, full_mask(k) & ~(NodeMask(1) << chosen_local))) {
    SubProblem sub = induced_subtree(local, comp);
    for (int& v : sub.to_orig) v = to_orig[v];
    if (sub.topology.size() == 1) {
      node.children.push_back(SearchTree{sub.to_orig[0], {}});
      continue;
    }
    const LpModel model = build_primal(sub.topology);
    RatVector f_sub(sub.topology.size());
    for (int i = 0; i < sub.topology.size(); ++i) f_sub(i) = f(sub.to_orig[i]);
    const OptResult res =
        solve_with_separation(model, depth_objective(model, f_sub), Sense::Minimize);
    if (res.status != OptStatus::Optimal)
      throw std::runtime_error("a component solve failed during iterated rounding");
    node.children.push_back(
        iterate_level(sub.topology, sub.to_orig, res.point, model.vars, f, pick, trace));
  }
  return node;
}

Rational sum_of(const RatVector& f) {
  Rational total = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i) total += f(i);
  return total;
}

RatMatrix distinct_rows(const RatMatrix& m) {
  std::vector<Eigen::Index> keep;
  std::map<std::vector<Rational>, bool> seen;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<Rational> key(m.row(r).begin(), m.row(r).end());
    if (seen.emplace(std::move(key), true).second) keep.push_back(r);
  }
  RatMatrix out(keep.size(), m.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) out.row(r) = m.row(keep[r]);
  return out;
}

}  // namespace

std::vector<int> candidate_roots(const RatVector& point, const VariableSpace& vars,
                                 NodeMask component, const Topology& u) {
  if (component == 0) throw std::invalid_argument("the component is empty");
  const std::vector<int> members = mask_members(component);
  if (members.back() >= u.size())
    throw std::invalid_argument("the component mentions nodes outside the topology");

  std::vector<int> roots;
  for (int r : members) {
    bool holds = true;
    for (int v : members) {
      if (v == r) continue;
      Rational mass = 0;
      for (int w : members) {
        if (w == v) continue;
        const std::vector<int> path = u.path_inclusive(w, v);
        if (std::find(path.begin(), path.end() - 1, r) != path.end() - 1)
          mass += point(vars.x(w, v));
      }
      if (mass < Rational(1, 2)) {
        holds = false;
        break;
      }
    }
    if (holds) roots.push_back(r);
  }
  if (roots.empty())
    throw std::logic_error("a component admits no root; the point cannot be feasible");
  return roots;
}

RoundingSet round_all(const RatVector& point, const VariableSpace& vars, const Topology& u,
                      const RatVector& f, long outcome_cap) {
  if (f.size() != u.size()) throw std::invalid_argument("weight vector length mismatch");
  RoundContext ctx{point, vars, u, f, {}, {}, outcome_cap};
  const NodeMask all = full_mask(u.size());

  RoundingSet set;
  const auto range = range_of(ctx, all);
  set.best = range.first;
  set.worst = range.second;
  for (PartialOutcome& part : expand(ctx, all))
    set.outcomes.push_back(
        {std::move(part.tree), {}, std::move(part.trace)});
  for (RoundingOutcome& out : set.outcomes) out.depths = stt_depths(out.stt, u.size());
  set.complete = ctx.complete;
  return set;
}

RoundingOutcome iterated_round(const RatVector& point, const LpModel& model, const Topology& u,
                               const RatVector& f, const RootPicker& pick) {
  if (f.size() != u.size()) throw std::invalid_argument("weight vector length mismatch");
  std::vector<int> identity(u.size());
  for (int i = 0; i < u.size(); ++i) identity[i] = i;

  RoundingOutcome out;
  out.stt = iterate_level(u, identity, point, model.vars, f, pick, out.trace);
  out.depths = stt_depths(out.stt, u.size());
  return out;
}

RatioRow rounding_ratio_row(const Topology& u, const RatVector& f) {
  const LpModel model = build_primal(u);
  const OptResult res = solve_with_separation(model, depth_objective(model, f), Sense::Minimize);
  if (res.status != OptStatus::Optimal)
    throw std::runtime_error("the depth LP did not reach an optimum");

  const RoundingSet set = round_all(res.point, model.vars, u, f);
  const BestSttResult best = best_stt(u, f);
  const Rational total = sum_of(f);

  RatioRow row;
  row.topology = catalog_display_name(u);
  row.direction = f;
  row.opt_cost = best.value + total;
  row.bc_cost = set.best + total;
  row.wc_cost = set.worst + total;
  row.bc_ratio = Rational(row.bc_cost / row.opt_cost);
  row.wc_ratio = Rational(row.wc_cost / row.opt_cost);
  return row;
}

std::string ratio_table_tsv(const std::vector<RatioRow>& rows) {
  std::ostringstream out;
  out << "topology\tdirection\topt_cost\tbc_cost\twc_cost"
         "\tbc_ratio\tbc_ratio_dec\twc_ratio\twc_ratio_dec\n";
  for (const RatioRow& row : rows) {
    out << row.topology << '\t';
    for (Eigen::Index i = 0; i < row.direction.size(); ++i)
      out << (i ? " " : "") << to_string(row.direction(i));
    out << '\t' << to_string(row.opt_cost) << '\t' << to_string(row.bc_cost) << '\t'
        << to_string(row.wc_cost) << '\t' << to_string(row.bc_ratio) << '\t'
        << to_decimal_string(row.bc_ratio) << '\t' << to_string(row.wc_ratio) << '\t'
        << to_decimal_string(row.wc_ratio) << '\n';
  }
  return out.str();
}

BcSearchResult bc_ratio_search(const Topology& u, const LpModel& model, const RatVector& point,
                               const Rational& epsilon) {
  const std::vector<int> depth_vars = model.vars.of_kind(VarKind::D);
  RatVector p_depths(depth_vars.size());
  for (std::size_t c = 0; c < depth_vars.size(); ++c) p_depths(c) = point(depth_vars[c]);

  const RatMatrix depth_rows = distinct_rows(stt_depth_matrix(u));
  const RoundingSet set = round_all(point, model.vars, u, RatVector::Zero(u.size()));
  RatMatrix roundings(set.outcomes.size(), u.size());
  for (std::size_t r = 0; r < set.outcomes.size(); ++r)
    for (int i = 0; i < u.size(); ++i) roundings(r, i) = set.outcomes[r].depths[i];
  roundings = distinct_rows(roundings);

  BcSearchResult result;
  bool any = false;
  for (Eigen::Index g = 0; g < depth_rows.rows(); ++g) {
    const RatVector dprime = depth_rows.row(g).transpose();
    const LpModel lp = build_bc_ratio_lp(p_depths, dprime, depth_rows, roundings, epsilon);
    const OptResult res = solve(lp, bc_ratio_objective(lp, dprime), Sense::Maximize);
    if (res.status != OptStatus::Optimal) continue;
    if (!any || res.value > result.separation) {
      any = true;
      result.separation = res.value;
      RatVector f(u.size());
      for (int v : lp.vars.of_kind(VarKind::Freq)) f(lp.vars.keys()[v].a) = res.point(v);
      result.direction = std::move(f);
    }
  }
  if (!any) return result;

  Rational bc = roundings.row(0).dot(result.direction);
  for (Eigen::Index r = 1; r < roundings.rows(); ++r)
    bc = std::min(bc, Rational(roundings.row(r).dot(result.direction)));
  const Rational opt = best_stt(u, result.direction).value;
  result.bc_ratio = Rational((bc + 1) / (opt + 1));
  return result;
}

std::vector<RatioRow> wc_over_primary(const Topology& u, const std::vector<Facet>& false_facets) {
  std::vector<RatioRow> rows;
  rows.reserve(false_facets.size());
  for (const Facet& facet : false_facets) {
    RatVector f(facet.normal.size());
    for (Eigen::Index i = 0; i < facet.normal.size(); ++i) f(i) = Rational(facet.normal(i));
    rows.push_back(rounding_ratio_row(u, f));
  }
  return rows;
}

}  // namespace sttlab
