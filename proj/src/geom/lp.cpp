#include "finban/lp.hpp"

#include <algorithm>

#include "finban/errors.hpp"

namespace finban {

namespace {

// Dense tableau simplex. Rows are constraints, columns are variables; the
// last column holds the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m * (n + 1), Rat(0)), basis_(m) {}

  Rat& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  Rat& rhs(std::size_t i) { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j)
      if (sgn(at(r, j)) != 0) at(r, j) *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(at(i, c)) == 0) continue;
      Rat f = at(i, c);
      for (std::size_t j = 0; j <= n_; ++j)
        if (sgn(at(r, j)) != 0) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * (n_ + 1)),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (n_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<Rat> t_;
  std::vector<std::size_t> basis_;
};

enum class Phase { Optimal, Unbounded };

// Minimizes cost.x over the tableau's current basic feasible solution.
// Only columns with allowed[j] may enter.
Phase run_simplex(Tableau& tab, const RatVec& cost, const std::vector<bool>& allowed) {
  const std::size_t n = tab.cols();
  std::size_t degenerate_streak = 0;
  bool bland = false;
  while (true) {
    // Reduced costs d_j = c_j - sum_i c_B(i) * t_ij.
    std::vector<Rat> cb(tab.rows());
    for (std::size_t i = 0; i < tab.rows(); ++i) cb[i] = cost[tab.basis()[i]];
    std::size_t enter = n;
    Rat best = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!allowed[j]) continue;
      Rat d = cost[j];
      for (std::size_t i = 0; i < tab.rows(); ++i)
        if (sgn(cb[i]) != 0 && sgn(tab.at(i, j)) != 0) d -= cb[i] * tab.at(i, j);
      if (sgn(d) < 0) {
        if (bland) {
          enter = j;
          break;
        }
        if (enter == n || d < best) {
          best = d;
          enter = j;
        }
      }
    }
    if (enter == n) return Phase::Optimal;

    std::size_t leave = tab.rows();
    Rat ratio;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (sgn(tab.at(i, enter)) <= 0) continue;
      Rat q = tab.rhs(i) / tab.at(i, enter);
      if (leave == tab.rows() || q < ratio || (q == ratio && tab.basis()[i] < tab.basis()[leave])) {
        leave = i;
        ratio = q;
      }
    }
    if (leave == tab.rows()) return Phase::Unbounded;
    if (sgn(ratio) == 0) {
      if (++degenerate_streak > 50) bland = true;
    } else {
      degenerate_streak = 0;
    }
    tab.pivot(leave, enter);
  }
}

}  // namespace

StandardResult solve_standard(const RatMat& A, const RatVec& b, const RatVec& c) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (b.size() != m || c.size() != n) fail(ErrorKind::DimMismatch, "solve_standard shapes");

  StandardResult result;
  Tableau tab(m, n + m);
  std::vector<int> row_sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    row_sign[i] = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(A(i, j)) != 0) tab.at(i, j) = row_sign[i] < 0 ? Rat(-A(i, j)) : A(i, j);
    tab.at(i, n + i) = 1;
    tab.rhs(i) = row_sign[i] < 0 ? Rat(-b[i]) : b[i];
    tab.basis()[i] = n + i;
  }
  // Rows keep their original index so duals can be reported per input row.
  std::vector<std::size_t> row_id(m);
  for (std::size_t i = 0; i < m; ++i) row_id[i] = i;

  // Phase one: minimize the sum of artificials.
  RatVec cost1(n + m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) cost1[n + i] = 1;
  std::vector<bool> allowed(n + m, true);
  run_simplex(tab, cost1, allowed);
  Rat infeas = 0;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] >= n) infeas += tab.rhs(i);
  if (sgn(infeas) > 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // Drive remaining (zero-level) artificials out, dropping redundant rows.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < n && sgn(tab.at(i, j)) == 0) ++j;
    if (j < n) {
      tab.pivot(i, j);
      ++i;
    } else {
      tab.drop_row(i);
      row_id.erase(row_id.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase two.
  RatVec cost2(n + m, Rat(0));
  for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
  for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;
  if (run_simplex(tab, cost2, allowed) == Phase::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.y.assign(n, Rat(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) result.y[tab.basis()[i]] = tab.rhs(i);
  result.value = dot(c, result.y);

  // Duals from B^T pi = c_B over the surviving rows.
  const std::size_t k = tab.rows();
  result.dual.assign(m, Rat(0));
  if (k > 0) {
    RatMat bt(k, k);
    RatVec cb(k);
    for (std::size_t r = 0; r < k; ++r) {
      std::size_t col = tab.basis()[r];
      cb[r] = c[col];
      for (std::size_t s = 0; s < k; ++s) bt(r, s) = A(row_id[s], col);
    }
    auto pi = solve(bt, cb);
    if (!pi) fail(ErrorKind::ConstructionFailed, "simplex basis singular");
    for (std::size_t s = 0; s < k; ++s) result.dual[row_id[s]] = (*pi)[s];
  }
  return result;
}

LinearProgram::LinearProgram(std::size_t num_vars) : n_(num_vars), c_(num_vars, Rat(0)) {}

void LinearProgram::minimize(RatVec c) {
  if (c.size() != n_) fail(ErrorKind::DimMismatch, "objective size");
  c_ = std::move(c);
  maximize_ = false;
}

void LinearProgram::maximize(RatVec c) {
  if (c.size() != n_) fail(ErrorKind::DimMismatch, "objective size");
  c_ = std::move(c);
  maximize_ = true;
}

void LinearProgram::add_row(RatVec a, Sense sense, Rat rhs) {
  if (a.size() != n_) fail(ErrorKind::DimMismatch, "constraint size");
  rows_.push_back({std::move(a), sense, std::move(rhs)});
}

LpResult LinearProgram::solve() const {
  // Normalize to  max g.x  s.t.  a_k.x <= b_k, whose dual is
  //   min b.y  s.t.  sum_k y_k a_k = g, y >= 0.
  std::vector<RatVec> a;
  RatVec b;
  std::vector<std::pair<std::size_t, int>> origin;  // (row, sign)
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Row& row = rows_[r];
    if (row.sense == Sense::Le || row.sense == Sense::Eq) {
      a.push_back(row.a);
      b.push_back(row.rhs);
      origin.push_back({r, 1});
    }
    if (row.sense == Sense::Ge || row.sense == Sense::Eq) {
      a.push_back(neg(row.a));
      b.push_back(-row.rhs);
      origin.push_back({r, -1});
    }
  }
  RatVec g = maximize_ ? c_ : neg(c_);
  RatMat M(n_, a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t j = 0; j < n_; ++j) M(j, k) = a[k][j];

  LpResult out;
  StandardResult d = solve_standard(M, g, b);
  if (d.status == LpStatus::Optimal) {
    out.status = LpStatus::Optimal;
    out.x = d.dual;
    Rat v = d.value;
    out.value = maximize_ ? v : Rat(-v);
    out.row_duals.assign(rows_.size(), Rat(0));
    for (std::size_t k = 0; k < a.size(); ++k) {
      auto [r, s] = origin[k];
      if (s > 0) out.row_duals[r] += d.y[k];
      else out.row_duals[r] -= d.y[k];
    }
    if (!maximize_)
      for (auto& l : out.row_duals) l = -l;
    return out;
  }
  if (d.status == LpStatus::Unbounded) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  // Dual infeasible: the primal is unbounded if it is feasible at all.
  StandardResult feas = solve_standard(M, zeros(n_), b);
  out.status = feas.status == LpStatus::Optimal ? LpStatus::Unbounded : LpStatus::Infeasible;
  return out;
}

LpResult solve_or_throw(const LinearProgram& lp) {
  LpResult r = lp.solve();
  if (r.status == LpStatus::Infeasible) fail(ErrorKind::Infeasible, "linear program has no feasible point");
  if (r.status == LpStatus::Unbounded) fail(ErrorKind::Unbounded, "linear program is unbounded");
  return r;
}

bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& others) {
  if (others.empty()) return false;
  const std::size_t m = p.size();
  RatMat A(m + 1, others.size());
  for (std::size_t k = 0; k < others.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) A(i, k) = others[k][i];
    A(m, k) = 1;
  }
  RatVec b = p;
  b.push_back(1);
  StandardResult r = solve_standard(A, b, zeros(others.size()));
  return r.status == LpStatus::Optimal;
}

}  // namespace finban
