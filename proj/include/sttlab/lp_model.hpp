#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sttlab/rational.hpp"
#include "sttlab/search_tree.hpp"
#include "sttlab/topology.hpp"

namespace sttlab {

enum class VarKind { X, Z, D, DualR, DualQ, RowMin, RowMax, Scalar, Freq };

// One LP variable. Field meaning by kind (all node ids 0-based here):
//   X: a=i, b=j          ancestry indicator, i ancestor of j
//   Z: a=k, b<c pair     k is the LCA of {b,c}; Z_kij and Z_kji coincide
//   D: a=i               depth of i
//   DualR: a<b pair      dual of the ancestry row
//   DualQ: a=i, b=k, c=j dual of the loosely-LCA row Z_kij <= X_ki
//   RowMin/RowMax: a=i   auxiliary m_i / M_i
//   Scalar               the lone x of the ratio LP
//   Freq: a=i            frequency f_i of the ratio LP
struct VarKey {
  VarKind kind = VarKind::X;
  int a = -1;
  int b = -1;
  int c = -1;

  auto operator<=>(const VarKey&) const = default;
  std::string name() const;  // 1-based, e.g. "X_1_2", "Z_2_1_3", "m_1", "x"
};

class VariableSpace {
 public:
  int add(const VarKey& key);
  int index(const VarKey& key) const;  // throws std::out_of_range when absent
  bool contains(const VarKey& key) const;
  int size() const { return static_cast<int>(keys_.size()); }
  const std::vector<VarKey>& keys() const { return keys_; }

  int x(int i, int j) const { return index({VarKind::X, i, j, -1}); }
  int z(int k, int i, int j) const {
    return index({VarKind::Z, k, std::min(i, j), std::max(i, j)});
  }
  int d(int i) const { return index({VarKind::D, i, -1, -1}); }

  std::vector<int> of_kind(VarKind kind) const;

 private:
  std::vector<VarKey> keys_;
  std::map<VarKey, int> lookup_;
};

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearRow {
  std::vector<std::pair<int, Rational>> terms;  // variable ordinal ascending
  Relation relation = Relation::GreaterEq;
  Rational rhs = 0;
  std::string label;
};

Rational row_activity(const LinearRow& row, const RatVector& point);
bool row_satisfied(const LinearRow& row, const RatVector& point);

// A set of rows kept out of the explicit model. separate() returns the most
// violated member at a point (or none); expand() materializes the members
// that are not already explicit rows.
struct ImplicitFamily {
  std::string name;
  std::function<std::optional<LinearRow>(const RatVector&)> separate;
  std::function<std::vector<LinearRow>()> expand;
};

struct LpModel {
  VariableSpace vars;
  std::vector<LinearRow> rows;
  std::vector<ImplicitFamily> families;
};

enum class Family {
  path_monotonicity,
  transitivity,
  lca_separation,
  refined_z,
  rowmin_colmax,
  fixed_point_free,
};

std::string family_name(Family family);
Family parse_family(const std::string& name);
const std::vector<Family>& all_families();

// min f.D relaxation: X,Z,D variables; X,Z bounds; one ancestry row per pair;
// two loosely-LCA rows per Z variable; one depth row per node.
LpModel build_primal(const Topology& u);

// Primal plus the selected row families (rowmin-colmax also adds variables).
LpModel build_refined(const Topology& u, const std::set<Family>& families);
void add_refinement(LpModel& model, const Topology& u, Family family);

// X,D-only formulation: each ancestry row is replaced by 2^d rows picking
// X_{k,i} or X_{k,j} per interior node k. Pairs with more than expand_cap
// interior nodes stay implicit (served by the attached family).
LpModel build_z_eliminated(const Topology& u, int expand_cap = 12);

// Most violated min-form ancestry row, ties to the lexicographically first
// pair and to the i side per interior node.
std::optional<LinearRow> separation_z_eliminated(const RatVector& point, const Topology& u,
                                                 const VariableSpace& vars);

// Exact minimum-cost fixed-point-free assignment on the X matrix; a row
// sum_i X_{i,pi(i)} >= 1 is returned when the minimum falls below 1.
std::optional<LinearRow> separation_fixed_point_free(const RatVector& point, const Topology& u,
                                                     const VariableSpace& vars);

// max sum R: R per pair, Q per ordered colinear triple; capping and
// frequency rows; f gives the right-hand sides.
LpModel build_dual(const Topology& u, const RatVector& f);

// max x - Dprime.f subject to sum f = 1, f >= 0, P.f + epsilon <= Dprime.f,
// Dprime.f <= D^i.f per depth row, x <= S^i.f per rounding row.
LpModel build_bc_ratio_lp(const RatVector& p_depths, const RatVector& dprime,
                          const RatMatrix& stt_depth_rows, const RatMatrix& roundings,
                          const Rational& epsilon);

// Dense objective vectors aligned to a model's variables.
RatVector depth_objective(const LpModel& model, const RatVector& f);  // f.D (minimize)
RatVector dual_objective(const LpModel& model);                       // sum R (maximize)
RatVector bc_ratio_objective(const LpModel& model, const RatVector& dprime);  // maximize

// The 0/1 point a search tree induces, aligned to the model's variables
// (ancestry indicators, LCA indicators, depths, and m/M when present).
RatVector induced_point(const LpModel& model, const SearchTree& t, const Topology& u);

// Labels of all violated rows (explicit rows first, then one per implicit
// family); empty means feasible.
std::vector<std::string> check_feasible(const LpModel& model, const RatVector& point);

// X values as an n x n matrix, zero diagonal.
RatMatrix x_matrix(const VariableSpace& vars, const RatVector& point, int n);

std::string model_to_text(const LpModel& model);
std::string point_to_text(const VariableSpace& vars, const RatVector& point);
// Lines "name=value"; missing variables default to 0, unknown names reject.
RatVector point_from_text(const VariableSpace& vars, const std::string& text);

}  // namespace sttlab
