#include "sttlab/lp_model.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace sttlab {

namespace {

std::string id(int v) { return std::to_string(v + 1); }

class RowBuilder {
 public:
  RowBuilder& add(int var, const Rational& coef) {
    coef_[var] += coef;
    return *this;
  }
  LinearRow done(Relation relation, Rational rhs, std::string label) {
    LinearRow row;
    for (const auto& [var, coef] : coef_)
      if (coef != 0) row.terms.emplace_back(var, coef);
    row.relation = relation;
    row.rhs = std::move(rhs);
    row.label = std::move(label);
    return row;
  }

 private:
  std::map<int, Rational> coef_;
};

void add_bound_rows(LpModel& model, VarKind kind) {
  for (int v : model.vars.of_kind(kind))
    model.rows.push_back(RowBuilder().add(v, 1).done(Relation::GreaterEq, 0,
                                                     model.vars.keys()[v].name() + ">=0"));
}

void add_x_and_d_variables(LpModel& model, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) model.vars.add({VarKind::X, i, j, -1});
  for (int i = 0; i < n; ++i) model.vars.add({VarKind::D, i, -1, -1});
}

void add_depth_rows(LpModel& model, int n) {
  for (int i = 0; i < n; ++i) {
    RowBuilder b;
    b.add(model.vars.d(i), 1);
    for (int j = 0; j < n; ++j)
      if (j != i) b.add(model.vars.x(j, i), -1);
    model.rows.push_back(b.done(Relation::GreaterEq, 0, "depth(" + id(i) + ")"));
  }
}

// One member of the expanded ancestry family for the pair {i,j}: side[t]
// picks X_{interior[t], side[t]} with side[t] in {i, j}.
LinearRow ancestry_choice_row(const VariableSpace& vars, int i, int j,
                              const std::vector<int>& interior, const std::vector<int>& side) {
  RowBuilder b;
  b.add(vars.x(i, j), 1).add(vars.x(j, i), 1);
  std::string label = "ancestry(" + id(i) + "," + id(j) + ")";
  std::string suffix;
  for (std::size_t t = 0; t < interior.size(); ++t) {
    b.add(vars.x(interior[t], side[t]), 1);
    if (!suffix.empty()) suffix += ",";
    suffix += id(interior[t]) + "->" + id(side[t]);
  }
  if (!suffix.empty()) label += "|" + suffix;
  return b.done(Relation::GreaterEq, 1, std::move(label));
}

LinearRow derangement_row(const VariableSpace& vars, const std::vector<int>& perm) {
  RowBuilder b;
  std::string images;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    b.add(vars.x(static_cast<int>(i), perm[i]), 1);
    if (i) images += ",";
    images += id(perm[i]);
  }
  return b.done(Relation::GreaterEq, 1, "derangement(" + images + ")");
}

}  // namespace

std::string VarKey::name() const {
  switch (kind) {
    case VarKind::X:
      return "X_" + id(a) + "_" + id(b);
    case VarKind::Z:
      return "Z_" + id(a) + "_" + id(b) + "_" + id(c);
    case VarKind::D:
      return "D_" + id(a);
    case VarKind::DualR:
      return "R_" + id(a) + "_" + id(b);
    case VarKind::DualQ:
      return "Q_" + id(a) + "_" + id(b) + "_" + id(c);
    case VarKind::RowMin:
      return "m_" + id(a);
    case VarKind::RowMax:
      return "M_" + id(a);
    case VarKind::Scalar:
      return "x";
    case VarKind::Freq:
      return "f_" + id(a);
  }
  return "?";
}

int VariableSpace::add(const VarKey& key) {
  auto [it, fresh] = lookup_.emplace(key, size());
  if (!fresh) throw std::logic_error("variable declared twice: " + key.name());
  keys_.push_back(key);
  return it->second;
}

int VariableSpace::index(const VarKey& key) const {
  auto it = lookup_.find(key);
  if (it == lookup_.end()) throw std::out_of_range("unknown variable: " + key.name());
  return it->second;
}

bool VariableSpace::contains(const VarKey& key) const { return lookup_.count(key) > 0; }

std::vector<int> VariableSpace::of_kind(VarKind kind) const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (keys_[v].kind == kind) out.push_back(v);
  return out;
}

Rational row_activity(const LinearRow& row, const RatVector& point) {
  Rational v = 0;
  for (const auto& [var, coef] : row.terms) v += coef * point(var);
  return v;
}

bool row_satisfied(const LinearRow& row, const RatVector& point) {
  const Rational v = row_activity(row, point);
  switch (row.relation) {
    case Relation::LessEq:
      return v <= row.rhs;
    case Relation::GreaterEq:
      return v >= row.rhs;
    case Relation::Equal:
      return v == row.rhs;
  }
  return false;
}

std::string family_name(Family family) {
  switch (family) {
    case Family::path_monotonicity:
      return "path-monotonicity";
    case Family::transitivity:
      return "transitivity";
    case Family::lca_separation:
      return "lca-separation";
    case Family::refined_z:
      return "refined-z";
    case Family::rowmin_colmax:
      return "rowmin-colmax";
    case Family::fixed_point_free:
      return "fixed-point-free";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : all_families())
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown constraint family: '" + name + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families{
      Family::path_monotonicity, Family::transitivity,  Family::lca_separation,
      Family::refined_z,         Family::rowmin_colmax, Family::fixed_point_free,
  };
  return families;
}

LpModel build_primal(const Topology& u) {
  const int n = u.size();
  LpModel model;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) model.vars.add({VarKind::X, i, j, -1});
  std::vector<std::tuple<int, int, int>> zkeys;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k : u.path_between(i, j)) zkeys.emplace_back(k, i, j);
  std::sort(zkeys.begin(), zkeys.end());
  for (auto [k, i, j] : zkeys) model.vars.add({VarKind::Z, k, i, j});
  for (int i = 0; i < n; ++i) model.vars.add({VarKind::D, i, -1, -1});

  add_bound_rows(model, VarKind::X);
  add_bound_rows(model, VarKind::Z);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      RowBuilder b;
      b.add(model.vars.x(i, j), 1).add(model.vars.x(j, i), 1);
      for (int k : u.path_between(i, j)) b.add(model.vars.z(k, i, j), 1);
      model.rows.push_back(
          b.done(Relation::GreaterEq, 1, "ancestry(" + id(i) + "," + id(j) + ")"));
    }
  for (auto [k, i, j] : zkeys) {
    const std::string zname = VarKey{VarKind::Z, k, i, j}.name();
    for (int end : {i, j}) {
      RowBuilder b;
      b.add(model.vars.z(k, i, j), 1).add(model.vars.x(k, end), -1);
      model.rows.push_back(b.done(Relation::LessEq, 0,
                                  zname + "<=" + VarKey{VarKind::X, k, end, -1}.name()));
    }
  }
  add_depth_rows(model, n);
  return model;
}

void add_refinement(LpModel& model, const Topology& u, Family family) {
  const int n = u.size();
  switch (family) {
    case Family::path_monotonicity:
      for (int a = 0; a < n; ++a)
        for (auto [p, q] : u.edges()) {
          const int near = u.distance(a, p) < u.distance(a, q) ? p : q;
          const int far = near == p ? q : p;
          if (near == a) continue;
          model.rows.push_back(
              RowBuilder().add(model.vars.x(a, near), 1).add(model.vars.x(a, far), -1).done(
                  Relation::GreaterEq, 0,
                  "mono(" + id(a) + ";" + id(near) + "," + id(far) + ")"));
        }
      break;
    case Family::transitivity:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            if (i == j || j == k || i == k) continue;
            RowBuilder b;
            b.add(model.vars.x(i, k), 1).add(model.vars.x(i, j), -1).add(model.vars.x(j, k), -1);
            model.rows.push_back(b.done(Relation::GreaterEq, -1,
                                        "trans(" + id(i) + "," + id(j) + "," + id(k) + ")"));
          }
      break;
    case Family::lca_separation:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          std::vector<int> ks = u.path_between(i, j);
          ks.push_back(j);
          for (int k : ks) {
            RowBuilder b;
            b.add(model.vars.x(k, i), 1).add(model.vars.x(i, j), 1);
            model.rows.push_back(b.done(Relation::LessEq, 1,
                                        "lcasep(" + id(i) + "," + id(j) + ";" + id(k) + ")"));
          }
        }
      break;
    case Family::refined_z:
      for (const VarKey& key : model.vars.keys()) {
        if (key.kind != VarKind::Z) continue;
        const int k = key.a, i = key.b, j = key.c;
        RowBuilder b;
        b.add(model.vars.z(k, i, j), 1).add(model.vars.x(k, i), -1).add(model.vars.x(k, j), -1);
        model.rows.push_back(
            b.done(Relation::GreaterEq, -1, "zlower(" + id(k) + ";" + id(i) + "," + id(j) + ")"));
      }
      break;
    case Family::rowmin_colmax: {
      if (n < 3) break;
      for (int i = 0; i < n; ++i) model.vars.add({VarKind::RowMin, i, -1, -1});
      for (int i = 0; i < n; ++i) model.vars.add({VarKind::RowMax, i, -1, -1});
      add_bound_rows(model, VarKind::RowMin);
      add_bound_rows(model, VarKind::RowMax);
      RowBuilder min_total, max_total;
      for (int i = 0; i < n; ++i) {
        const int mi = model.vars.index({VarKind::RowMin, i, -1, -1});
        const int Mi = model.vars.index({VarKind::RowMax, i, -1, -1});
        min_total.add(mi, 1);
        max_total.add(Mi, 1);
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          model.rows.push_back(RowBuilder().add(model.vars.x(i, j), 1).add(mi, -1).done(
              Relation::GreaterEq, 0, "rowmin(" + id(i) + ";" + id(j) + ")"));
          model.rows.push_back(RowBuilder().add(Mi, 1).add(model.vars.x(j, i), -1).done(
              Relation::GreaterEq, 0, "colmax(" + id(i) + ";" + id(j) + ")"));
        }
      }
      model.rows.push_back(min_total.done(Relation::Equal, 1, "rowmin_total"));
      model.rows.push_back(max_total.done(Relation::Equal, n - 1, "colmax_total"));
      break;
    }
    case Family::fixed_point_free: {
      if (n < 2) break;
      const VariableSpace vars = model.vars;
      const Topology topo = u;
      model.families.push_back(ImplicitFamily{
          family_name(family),
          [vars, topo](const RatVector& point) {
            return separation_fixed_point_free(point, topo, vars);
          },
          [vars, topo]() {
            if (topo.size() > 8)
              throw std::length_error("too many fixed-point-free permutations to expand");
            std::vector<LinearRow> rows;
            std::vector<int> perm(topo.size());
            for (int i = 0; i < topo.size(); ++i) perm[i] = i;
            do {
              bool fixed_point = false;
              for (int i = 0; i < topo.size(); ++i)
                if (perm[i] == i) fixed_point = true;
              if (!fixed_point) rows.push_back(derangement_row(vars, perm));
            } while (std::next_permutation(perm.begin(), perm.end()));
            return rows;
          }});
      break;
    }
  }
}

LpModel build_refined(const Topology& u, const std::set<Family>& families) {
  LpModel model = build_primal(u);
  for (Family f : families) add_refinement(model, u, f);
  return model;
}

LpModel build_z_eliminated(const Topology& u, int expand_cap) {
  const int n = u.size();
  LpModel model;
  add_x_and_d_variables(model, n);
  add_bound_rows(model, VarKind::X);

  std::vector<std::pair<int, int>> deferred;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::vector<int> interior = u.path_between(i, j);
      const int d = static_cast<int>(interior.size());
      if (d > expand_cap) {
        deferred.emplace_back(i, j);
        continue;
      }
      std::vector<int> side(interior.size());
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
        for (int t = 0; t < d; ++t) side[t] = (mask >> t) & 1 ? j : i;
        model.rows.push_back(ancestry_choice_row(model.vars, i, j, interior, side));
      }
    }
  add_depth_rows(model, n);

  const VariableSpace vars = model.vars;
  const Topology topo = u;
  model.families.push_back(ImplicitFamily{
      "ancestry-min",
      [vars, topo](const RatVector& point) {
        return separation_z_eliminated(point, topo, vars);
      },
      [vars, topo, deferred]() {
        std::vector<LinearRow> rows;
        for (auto [i, j] : deferred) {
          const std::vector<int> interior = topo.path_between(i, j);
          const int d = static_cast<int>(interior.size());
          if (d > 20) throw std::length_error("ancestry expansion too large");
          std::vector<int> side(interior.size());
          for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
            for (int t = 0; t < d; ++t) side[t] = (mask >> t) & 1 ? j : i;
            rows.push_back(ancestry_choice_row(vars, i, j, interior, side));
          }
        }
        return rows;
      }});
  return model;
}

std::optional<LinearRow> separation_z_eliminated(const RatVector& point, const Topology& u,
                                                 const VariableSpace& vars) {
  const int n = u.size();
  std::optional<LinearRow> best;
  Rational best_violation = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::vector<int> interior = u.path_between(i, j);
      Rational value = point(vars.x(i, j)) + point(vars.x(j, i));
      std::vector<int> side(interior.size());
      for (std::size_t t = 0; t < interior.size(); ++t) {
        const Rational& xi = point(vars.x(interior[t], i));
        const Rational& xj = point(vars.x(interior[t], j));
        side[t] = xi <= xj ? i : j;
        value += xi <= xj ? xi : xj;
      }
      if (value < 1 && Rational(1) - value > best_violation) {
        best_violation = Rational(1) - value;
        best = ancestry_choice_row(vars, i, j, interior, side);
      }
    }
  return best;
}

std::optional<LinearRow> separation_fixed_point_free(const RatVector& point, const Topology& u,
                                                     const VariableSpace& vars) {
  const int n = u.size();
  if (n < 2) throw std::invalid_argument("fixed-point-free rows need at least two nodes");
  if (n > 16) throw std::length_error("assignment search capped at 16 nodes");

  // subset DP: dp[mask] = cheapest assignment of rows 0..popcount-1 onto the
  // column set in mask, with the diagonal forbidden
  const std::uint32_t full = (std::uint32_t(1) << n) - 1;
  std::vector<std::optional<Rational>> dp(full + 1);
  std::vector<int> pick(full + 1, -1);
  dp[0] = Rational(0);
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (!dp[mask]) continue;
    const int row = std::popcount(mask);
    for (int j = 0; j < n; ++j) {
      if (j == row || (mask >> j) & 1) continue;
      const std::uint32_t next = mask | (std::uint32_t(1) << j);
      const Rational cost = *dp[mask] + point(vars.x(row, j));
      if (!dp[next] || cost < *dp[next]) {
        dp[next] = cost;
        pick[next] = j;
      }
    }
  }
  if (*dp[full] >= 1) return std::nullopt;

  std::vector<int> perm(n);
  std::uint32_t mask = full;
  for (int row = n - 1; row >= 0; --row) {
    perm[row] = pick[mask];
    mask &= ~(std::uint32_t(1) << perm[row]);
  }
  return derangement_row(vars, perm);
}

LpModel build_dual(const Topology& u, const RatVector& f) {
  const int n = u.size();
  if (f.size() != n) throw std::invalid_argument("weight vector length mismatch");
  for (int i = 0; i < n; ++i)
    if (f(i) < 0) throw std::invalid_argument("weights must be nonnegative");

  LpModel model;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) model.vars.add({VarKind::DualR, i, j, -1});
  std::vector<std::tuple<int, int, int>> qkeys;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k : u.path_between(i, j)) qkeys.emplace_back(i, k, j);
    }
  std::sort(qkeys.begin(), qkeys.end());
  for (auto [i, k, j] : qkeys) model.vars.add({VarKind::DualQ, i, k, j});

  add_bound_rows(model, VarKind::DualR);
  add_bound_rows(model, VarKind::DualQ);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int rij = model.vars.index({VarKind::DualR, i, j, -1});
      for (int k : u.path_between(i, j)) {
        RowBuilder b;
        b.add(rij, 1);
        b.add(model.vars.index({VarKind::DualQ, i, k, j}), -1);
        b.add(model.vars.index({VarKind::DualQ, j, k, i}), -1);
        model.rows.push_back(
            b.done(Relation::LessEq, 0, "cap(" + id(i) + "," + id(j) + ";" + id(k) + ")"));
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RowBuilder b;
      b.add(model.vars.index({VarKind::DualR, std::min(i, j), std::max(i, j), -1}), 1);
      for (int a = 0; a < n; ++a) {
        if (a == i || a == j) continue;
        const std::vector<int> interior = u.path_between(j, a);
        if (std::find(interior.begin(), interior.end(), i) != interior.end())
          b.add(model.vars.index({VarKind::DualQ, j, i, a}), 1);
      }
      model.rows.push_back(b.done(Relation::LessEq, f(j), "freq(" + id(i) + "," + id(j) + ")"));
    }
  return model;
}

LpModel build_bc_ratio_lp(const RatVector& p_depths, const RatVector& dprime,
                          const RatMatrix& stt_depth_rows, const RatMatrix& roundings,
                          const Rational& epsilon) {
  const Eigen::Index n = p_depths.size();
  if (dprime.size() != n) throw std::invalid_argument("depth guess length mismatch");
  if (stt_depth_rows.rows() == 0 || stt_depth_rows.cols() != n)
    throw std::invalid_argument("depth rows must be nonempty with matching width");
  if (roundings.rows() > 0 && roundings.cols() != n)
    throw std::invalid_argument("rounding rows width mismatch");
  if (epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
  bool known = false;
  for (Eigen::Index r = 0; r < stt_depth_rows.rows() && !known; ++r) {
    bool same = true;
    for (Eigen::Index i = 0; i < n; ++i)
      if (stt_depth_rows(r, i) != dprime(i)) same = false;
    known = same;
  }
  if (!known) throw std::invalid_argument("depth guess is not one of the given depth vectors");

  LpModel model;
  for (int i = 0; i < n; ++i) model.vars.add({VarKind::Freq, i, -1, -1});
  const int x = model.vars.add({VarKind::Scalar, -1, -1, -1});
  add_bound_rows(model, VarKind::Freq);

  RowBuilder total;
  for (int i = 0; i < n; ++i) total.add(i, 1);
  model.rows.push_back(total.done(Relation::Equal, 1, "f_total"));

  RowBuilder dominated;
  for (int i = 0; i < n; ++i) dominated.add(i, dprime(i) - p_depths(i));
  model.rows.push_back(dominated.done(Relation::GreaterEq, epsilon, "dominated"));

  for (Eigen::Index r = 0; r < stt_depth_rows.rows(); ++r) {
    RowBuilder b;
    for (int i = 0; i < n; ++i) b.add(i, stt_depth_rows(r, i) - dprime(i));
    model.rows.push_back(b.done(Relation::GreaterEq, 0, "guess(" + std::to_string(r + 1) + ")"));
  }
  for (Eigen::Index r = 0; r < roundings.rows(); ++r) {
    RowBuilder b;
    for (int i = 0; i < n; ++i) b.add(i, roundings(r, i));
    b.add(x, -1);
    model.rows.push_back(b.done(Relation::GreaterEq, 0, "round(" + std::to_string(r + 1) + ")"));
  }
  return model;
}

RatVector depth_objective(const LpModel& model, const RatVector& f) {
  RatVector obj = RatVector::Zero(model.vars.size());
  const std::vector<int> dvars = model.vars.of_kind(VarKind::D);
  if (static_cast<Eigen::Index>(dvars.size()) != f.size())
    throw std::invalid_argument("weight vector length mismatch");
  for (int v : dvars) obj(v) = f(model.vars.keys()[v].a);
  return obj;
}

RatVector dual_objective(const LpModel& model) {
  RatVector obj = RatVector::Zero(model.vars.size());
  for (int v : model.vars.of_kind(VarKind::DualR)) obj(v) = 1;
  return obj;
}

RatVector bc_ratio_objective(const LpModel& model, const RatVector& dprime) {
  RatVector obj = RatVector::Zero(model.vars.size());
  for (int v : model.vars.of_kind(VarKind::Freq)) obj(v) = -dprime(model.vars.keys()[v].a);
  for (int v : model.vars.of_kind(VarKind::Scalar)) obj(v) = 1;
  return obj;
}

RatVector induced_point(const LpModel& model, const SearchTree& t, const Topology& u) {
  const int n = u.size();
  std::vector<int> parent(n, -1);
  const std::vector<int> depth = stt_depths(t, n);
  std::vector<const SearchTree*> stack{&t};
  while (!stack.empty()) {
    const SearchTree* node = stack.back();
    stack.pop_back();
    for (const SearchTree& child : node->children) {
      parent[child.root] = node->root;
      stack.push_back(&child);
    }
  }
  // ancestor[i][j]: i is a strict ancestor of j
  std::vector<std::vector<char>> ancestor(n, std::vector<char>(n, 0));
  for (int j = 0; j < n; ++j)
    for (int i = parent[j]; i >= 0; i = parent[i]) ancestor[i][j] = 1;
  const auto lca = [&](int i, int j) {
    while (i != j) {
      if (depth[i] >= depth[j])
        i = parent[i];
      else
        j = parent[j];
    }
    return i;
  };

  RatVector point = RatVector::Zero(model.vars.size());
  for (int v = 0; v < model.vars.size(); ++v) {
    const VarKey& key = model.vars.keys()[v];
    switch (key.kind) {
      case VarKind::X:
        point(v) = ancestor[key.a][key.b] ? 1 : 0;
        break;
      case VarKind::Z:
        point(v) = lca(key.b, key.c) == key.a ? 1 : 0;
        break;
      case VarKind::D:
        point(v) = depth[key.a];
        break;
      case VarKind::RowMin: {
        Rational value = 1;
        for (int j = 0; j < n; ++j)
          if (j != key.a && !ancestor[key.a][j]) value = 0;
        point(v) = value;
        break;
      }
      case VarKind::RowMax: {
        Rational value = 0;
        for (int j = 0; j < n; ++j)
          if (j != key.a && ancestor[j][key.a]) value = 1;
        point(v) = value;
        break;
      }
      default:
        throw std::invalid_argument("model has variables no search tree induces");
    }
  }
  return point;
}

std::vector<std::string> check_feasible(const LpModel& model, const RatVector& point) {
  if (point.size() != model.vars.size())
    throw std::invalid_argument("point dimension does not match the model");
  std::vector<std::string> violated;
  std::set<std::string> seen;
  for (const LinearRow& row : model.rows)
    if (!row_satisfied(row, point) && seen.insert(row.label).second)
      violated.push_back(row.label);
  for (const ImplicitFamily& family : model.families)
    if (auto row = family.separate(point); row && seen.insert(row->label).second)
      violated.push_back(row->label);
  return violated;
}

RatMatrix x_matrix(const VariableSpace& vars, const RatVector& point, int n) {
  RatMatrix m = RatMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m(i, j) = point(vars.x(i, j));
  return m;
}

std::string model_to_text(const LpModel& model) {
  std::ostringstream out;
  for (const LinearRow& row : model.rows) {
    out << row.label << ": ";
    bool first = true;
    for (const auto& [var, coef] : row.terms) {
      const std::string name = model.vars.keys()[var].name();
      const Rational mag = abs(coef);
      if (first) {
        if (coef < 0) out << "-";
        first = false;
      } else {
        out << (coef < 0 ? " - " : " + ");
      }
      if (mag == 1)
        out << name;
      else
        out << to_string(mag) << "*" << name;
    }
    if (first) out << "0";
    switch (row.relation) {
      case Relation::LessEq:
        out << " <= ";
        break;
      case Relation::GreaterEq:
        out << " >= ";
        break;
      case Relation::Equal:
        out << " = ";
        break;
    }
    out << to_string(row.rhs) << "\n";
  }
  return out.str();
}

std::string point_to_text(const VariableSpace& vars, const RatVector& point) {
  std::ostringstream out;
  for (int v = 0; v < vars.size(); ++v)
    out << vars.keys()[v].name() << "=" << to_string(point(v)) << "\n";
  return out.str();
}

RatVector point_from_text(const VariableSpace& vars, const std::string& text) {
  std::map<std::string, int> by_name;
  for (int v = 0; v < vars.size(); ++v) by_name[vars.keys()[v].name()] = v;
  RatVector point = RatVector::Zero(vars.size());
  std::set<int> assigned;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string compact;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    if (compact.empty()) continue;
    const auto eq = compact.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected name=value, got '" + line + "'");
    const std::string name = compact.substr(0, eq);
    const auto it = by_name.find(name);
    if (it == by_name.end()) throw std::invalid_argument("unknown variable: '" + name + "'");
    if (!assigned.insert(it->second).second)
      throw std::invalid_argument("variable assigned twice: '" + name + "'");
    point(it->second) = parse_rational(compact.substr(eq + 1));
  }
  return point;
}

}  // namespace sttlab
