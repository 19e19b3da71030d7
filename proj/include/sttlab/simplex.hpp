#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sttlab/lp_model.hpp"
#include "sttlab/rational.hpp"

namespace sttlab {

enum class Sense { Minimize, Maximize };
enum class OptStatus { Optimal, Infeasible, Unbounded };

struct OptResult {
  OptStatus status = OptStatus::Infeasible;
  Rational value = 0;
  RatVector point;                  // empty unless optimal
  std::vector<std::string> basis;   // labels of rows and bounds tight at point, sorted
  bool unique = false;              // every nonbasic reduced cost is nonzero (sufficient only)
  int pivots = 0;
  int cuts = 0;                     // rows added by separation
};

// Two-phase revised simplex over the rationals. Every variable is taken to be
// nonnegative, so rows that literally restate a single bound (x >= 0) are
// dropped from the working tableau. The basis is kept between solve() calls:
// changing only the objective warm-starts from the previous optimum.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpModel& model, int pivot_cap = 200000);

  OptResult solve(const RatVector& objective, Sense sense);

  void set_trace(std::ostream* out) { trace_ = out; }

 private:
  struct Column {
    std::vector<std::pair<int, Rational>> entries;  // (row, coefficient)
    bool artificial = false;
  };

  Rational reduced_cost(int col, const RatVector& costs, const RatVector& y) const;
  RatVector tableau_column(int col) const;
  void pivot(int entering, int leaving_pos, const RatVector& u);
  // Runs simplex with the current basis on the given costs. Returns false on
  // an unbounded ray.
  bool optimize(const RatVector& costs);
  int run_phase_one();

  const LpModel* model_;
  int pivot_cap_;
  int pivots_ = 0;
  std::ostream* trace_ = nullptr;

  int num_vars_ = 0;   // original variables
  int num_rows_ = 0;   // kept rows
  std::vector<Column> columns_;
  RatVector rhs_;
  std::vector<int> kept_rows_;  // model row index per tableau row

  bool basis_ready_ = false;
  std::vector<int> basis_;      // column in basis per tableau row
  std::vector<char> in_basis_;
  RatMatrix binv_;
  RatVector xb_;
};

OptResult solve(const LpModel& model, const RatVector& objective, Sense sense);

// Cutting-plane loop: solve the explicit rows, ask every implicit family for
// a violated member at the optimum, add what comes back, repeat.
OptResult solve_with_separation(const LpModel& model, const RatVector& objective, Sense sense);

// True iff the rows, bounds, and implicit members tight at the point have
// normals of full rank. The point must be feasible.
bool is_vertex(const LpModel& model, const RatVector& point);

// True iff the optimal face for this objective is the single point given.
// The point must be feasible and optimal.
bool certify_unique_optimum(const LpModel& model, const RatVector& objective,
                            const RatVector& point, Sense sense = Sense::Minimize);

}  // namespace sttlab
