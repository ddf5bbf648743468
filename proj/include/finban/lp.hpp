#pragma once

#include <cstddef>
#include <vector>

#include "finban/matrix.hpp"
#include "finban/rational.hpp"

namespace finban {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// min c.y  s.t.  A y = b, y >= 0.
struct StandardResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  RatVec y;      // primal optimum
  RatVec dual;   // multipliers pi with A^T pi <= c, b.pi = value
};

StandardResult solve_standard(const RatMat& A, const RatVec& b, const RatVec& c);

enum class Sense { Le, Ge, Eq };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  RatVec x;         // primal certificate
  RatVec row_duals; // sum l_r a_r = c and sum l_r rhs_r = value
};

// Free-variable LP  opt c.x  s.t.  rows.  Solved through its dual in standard
// form, which keeps the tableau small when rows greatly outnumber variables.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  void minimize(RatVec c);
  void maximize(RatVec c);
  void add_row(RatVec a, Sense sense, Rat rhs);
  void add_le(RatVec a, Rat rhs) { add_row(std::move(a), Sense::Le, std::move(rhs)); }
  void add_ge(RatVec a, Rat rhs) { add_row(std::move(a), Sense::Ge, std::move(rhs)); }
  void add_eq(RatVec a, Rat rhs) { add_row(std::move(a), Sense::Eq, std::move(rhs)); }

  std::size_t num_vars() const { return n_; }
  std::size_t num_rows() const { return rows_.size(); }

  LpResult solve() const;

 private:
  struct Row {
    RatVec a;
    Sense sense;
    Rat rhs;
  };
  std::size_t n_;
  RatVec c_;
  bool maximize_ = false;
  std::vector<Row> rows_;
};

// Throws Infeasible / Unbounded instead of returning a status.
LpResult solve_or_throw(const LinearProgram& lp);

// Is p a convex combination of `others`? Solved as a phase-one feasibility LP.
bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& others);

}  // namespace finban
