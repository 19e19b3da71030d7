#include "sttlab/simplex.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

namespace sttlab {

namespace {

// x >= 0 is already structural for every variable, so rows that merely
// restate it stay out of the tableau.
bool is_bound_row(const LinearRow& row) {
  return row.relation == Relation::GreaterEq && row.rhs == 0 && row.terms.size() == 1 &&
         row.terms[0].second == 1;
}

constexpr int kDegenerateStreakLimit = 32;

}  // namespace

SimplexSolver::SimplexSolver(const LpModel& model, int pivot_cap)
    : model_(&model), pivot_cap_(pivot_cap), num_vars_(model.vars.size()) {
  for (int r = 0; r < static_cast<int>(model.rows.size()); ++r)
    if (!is_bound_row(model.rows[r])) kept_rows_.push_back(r);
  num_rows_ = static_cast<int>(kept_rows_.size());

  columns_.resize(num_vars_);
  rhs_ = RatVector::Zero(num_rows_);
  basis_.assign(num_rows_, -1);
  for (int t = 0; t < num_rows_; ++t) {
    const LinearRow& row = model.rows[kept_rows_[t]];
    const Rational flip = row.rhs < 0 ? -1 : 1;
    rhs_(t) = Rational(row.rhs * flip);
    for (const auto& [v, c] : row.terms) columns_[v].entries.emplace_back(t, Rational(c * flip));
    if (row.relation != Relation::Equal) {
      Column slack;
      const Rational s = Rational((row.relation == Relation::LessEq ? 1 : -1) * flip);
      slack.entries.emplace_back(t, s);
      columns_.push_back(std::move(slack));
      if (s == 1) basis_[t] = static_cast<int>(columns_.size()) - 1;
    }
  }
  for (int t = 0; t < num_rows_; ++t) {
    if (basis_[t] >= 0) continue;
    Column art;
    art.entries.emplace_back(t, Rational(1));
    art.artificial = true;
    columns_.push_back(std::move(art));
    basis_[t] = static_cast<int>(columns_.size()) - 1;
  }
  in_basis_.assign(columns_.size(), 0);
  for (int b : basis_) in_basis_[b] = 1;
  binv_ = RatMatrix::Identity(num_rows_, num_rows_);
  xb_ = rhs_;
}

Rational SimplexSolver::reduced_cost(int col, const RatVector& costs, const RatVector& y) const {
  Rational d = costs(col);
  for (const auto& [t, c] : columns_[col].entries) d -= y(t) * c;
  return d;
}

RatVector SimplexSolver::tableau_column(int col) const {
  RatVector u = RatVector::Zero(num_rows_);
  for (const auto& [t, c] : columns_[col].entries) u += c * binv_.col(t);
  return u;
}

void SimplexSolver::pivot(int entering, int leaving_pos, const RatVector& u) {
  const int r = leaving_pos;
  const Rational piv = u(r);
  binv_.row(r) /= piv;
  xb_(r) /= piv;
  for (int i = 0; i < num_rows_; ++i) {
    if (i == r || u(i) == 0) continue;
    binv_.row(i) -= u(i) * binv_.row(r);
    xb_(i) -= Rational(u(i) * xb_(r));
  }
  in_basis_[basis_[r]] = 0;
  basis_[r] = entering;
  in_basis_[entering] = 1;
}

bool SimplexSolver::optimize(const RatVector& costs) {
  const int total = static_cast<int>(columns_.size());
  int degenerate_streak = 0;
  bool bland = false;
  for (;;) {
    RatVector cb(num_rows_);
    for (int t = 0; t < num_rows_; ++t) cb(t) = costs(basis_[t]);
    const RatVector y = binv_.transpose() * cb;

    int entering = -1;
    Rational best = 0;
    for (int j = 0; j < total; ++j) {
      if (in_basis_[j] || columns_[j].artificial) continue;
      const Rational d = reduced_cost(j, costs, y);
      if (d >= 0) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (entering == -1 || d < best) {
        best = d;
        entering = j;
      }
    }
    if (entering == -1) return true;

    const RatVector u = tableau_column(entering);
    int leaving = -1;
    Rational best_ratio = 0;
    for (int i = 0; i < num_rows_; ++i) {
      Rational ratio;
      if (u(i) > 0)
        ratio = Rational(xb_(i) / u(i));
      else if (u(i) != 0 && columns_[basis_[i]].artificial)
        ratio = 0;  // a basic artificial sits at zero and must stay there
      else
        continue;
      if (leaving == -1 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[leaving]))
        best_ratio = ratio, leaving = i;
    }
    if (leaving == -1) return false;

    if (best_ratio == 0) {
      if (++degenerate_streak > kDegenerateStreakLimit) bland = true;
    } else {
      degenerate_streak = 0;
      bland = false;
    }
    if (++pivots_ > pivot_cap_) throw std::runtime_error("simplex pivot limit exceeded");
    if (trace_)
      *trace_ << "pivot " << pivots_ << ": col " << entering << " replaces row " << leaving
              << " at ratio " << to_string(best_ratio) << "\n";
    pivot(entering, leaving, u);
  }
}

int SimplexSolver::run_phase_one() {
  bool any = false;
  for (const Column& col : columns_) any = any || col.artificial;
  if (!any) return 0;

  RatVector costs = RatVector::Zero(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j)
    if (columns_[j].artificial) costs(j) = 1;
  if (!optimize(costs)) throw std::logic_error("phase one reported an unbounded ray");

  Rational residue = 0;
  for (int t = 0; t < num_rows_; ++t)
    if (columns_[basis_[t]].artificial) residue += xb_(t);
  if (residue > 0) return 1;

  // swap basic artificials (all at zero) for real columns where possible
  for (int t = 0; t < num_rows_; ++t) {
    if (!columns_[basis_[t]].artificial) continue;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (in_basis_[j] || columns_[j].artificial) continue;
      const RatVector u = tableau_column(static_cast<int>(j));
      if (u(t) != 0) {
        pivot(static_cast<int>(j), t, u);
        break;
      }
    }
  }
  return 0;
}

OptResult SimplexSolver::solve(const RatVector& objective, Sense sense) {
  if (objective.size() != num_vars_)
    throw std::invalid_argument("objective length does not match the model");
  pivots_ = 0;

  OptResult res;
  if (!basis_ready_) {
    if (run_phase_one() != 0) {
      res.status = OptStatus::Infeasible;
      res.pivots = pivots_;
      return res;
    }
    basis_ready_ = true;
  }

  RatVector costs = RatVector::Zero(columns_.size());
  for (int v = 0; v < num_vars_; ++v)
    costs(v) = sense == Sense::Minimize ? objective(v) : Rational(-objective(v));
  if (!optimize(costs)) {
    res.status = OptStatus::Unbounded;
    res.pivots = pivots_;
    return res;
  }

  res.status = OptStatus::Optimal;
  res.pivots = pivots_;
  res.point = RatVector::Zero(num_vars_);
  for (int t = 0; t < num_rows_; ++t)
    if (basis_[t] < num_vars_) res.point(basis_[t]) = xb_(t);
  res.value = objective.dot(res.point);

  RatVector cb(num_rows_);
  for (int t = 0; t < num_rows_; ++t) cb(t) = costs(basis_[t]);
  const RatVector y = binv_.transpose() * cb;
  res.unique = true;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (in_basis_[j] || columns_[j].artificial) continue;
    if (reduced_cost(static_cast<int>(j), costs, y) == 0) res.unique = false;
  }

  std::set<std::string> tight;
  for (const LinearRow& row : model_->rows)
    if (row_activity(row, res.point) == row.rhs) tight.insert(row.label);
  for (int v = 0; v < num_vars_; ++v)
    if (res.point(v) == 0) tight.insert(model_->vars.keys()[v].name() + ">=0");
  res.basis.assign(tight.begin(), tight.end());
  return res;
}

OptResult solve(const LpModel& model, const RatVector& objective, Sense sense) {
  SimplexSolver solver(model);
  return solver.solve(objective, sense);
}

OptResult solve_with_separation(const LpModel& model, const RatVector& objective, Sense sense) {
  if (model.families.empty()) return solve(model, objective, sense);
  LpModel work = model;
  std::set<std::string> labels;
  for (const auto& row : work.rows) labels.insert(row.label);
  int cuts = 0;
  for (;;) {
    SimplexSolver solver(work);
    OptResult res = solver.solve(objective, sense);
    res.cuts = cuts;
    if (res.status != OptStatus::Optimal) return res;
    bool added = false;
    for (const auto& family : work.families) {
      auto cut = family.separate(res.point);
      if (!cut) continue;
      if (!labels.insert(cut->label).second)
        throw std::runtime_error("separation repeated the row '" + cut->label + "'");
      work.rows.push_back(*cut);
      added = true;
      ++cuts;
    }
    if (!added) return res;
    if (cuts > 100000) throw std::runtime_error("separation cut limit exceeded");
  }
}

bool is_vertex(const LpModel& model, const RatVector& point) {
  if (!check_feasible(model, point).empty())
    throw std::invalid_argument("the point is not feasible");
  std::vector<const LinearRow*> rows;
  std::vector<LinearRow> expanded;
  for (const auto& family : model.families)
    for (LinearRow& row : family.expand()) expanded.push_back(std::move(row));
  for (const auto& row : model.rows) rows.push_back(&row);
  for (const auto& row : expanded) rows.push_back(&row);

  std::vector<RatVector> normals;
  for (const LinearRow* row : rows) {
    if (row_activity(*row, point) != row->rhs) continue;
    RatVector nrm = RatVector::Zero(model.vars.size());
    for (const auto& [v, c] : row->terms) nrm(v) = c;
    normals.push_back(std::move(nrm));
  }
  for (int v = 0; v < model.vars.size(); ++v) {
    if (point(v) != 0) continue;
    RatVector nrm = RatVector::Zero(model.vars.size());
    nrm(v) = 1;
    normals.push_back(std::move(nrm));
  }

  RatMatrix m(static_cast<Eigen::Index>(normals.size()), model.vars.size());
  for (std::size_t r = 0; r < normals.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = normals[r];
  return exact_rank(m) == model.vars.size();
}

bool certify_unique_optimum(const LpModel& model, const RatVector& objective,
                            const RatVector& point, Sense sense) {
  if (!check_feasible(model, point).empty())
    throw std::invalid_argument("the point is not feasible");
  const OptResult base = solve_with_separation(model, objective, sense);
  if (base.status != OptStatus::Optimal)
    throw std::invalid_argument("the objective has no finite optimum");
  const Rational value = objective.dot(point);
  if (value != base.value) throw std::invalid_argument("the point is not optimal");

  if (base.unique) {
    for (int v = 0; v < model.vars.size(); ++v)
      if (base.point(v) != point(v)) return false;
    return true;
  }

  LpModel face = model;
  LinearRow level;
  for (int v = 0; v < model.vars.size(); ++v)
    if (objective(v) != 0) level.terms.emplace_back(v, objective(v));
  level.relation = Relation::Equal;
  level.rhs = value;
  level.label = "objective-level";
  face.rows.push_back(level);

  for (int v = 0; v < model.vars.size(); ++v) {
    RatVector probe = RatVector::Zero(model.vars.size());
    probe(v) = 1;
    for (Sense dir : {Sense::Maximize, Sense::Minimize}) {
      const OptResult res = solve_with_separation(face, probe, dir);
      if (res.status == OptStatus::Unbounded) return false;
      if (res.status != OptStatus::Optimal) throw std::runtime_error("face probe failed");
      if (res.value != point(v)) return false;
    }
  }
  return true;
}

}  // namespace sttlab
