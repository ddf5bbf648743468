#include "finban/matrix.hpp"

#include <cctype>

#include "finban/errors.hpp"

namespace finban {

RatMat::RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

RatMat RatMat::identity(std::size_t n) {
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::from_rows(const std::vector<RatVec>& rows, std::size_t cols_if_empty) {
  std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
  RatMat m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) fail(ErrorKind::DimMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMat RatMat::from_cols(const std::vector<RatVec>& cols, std::size_t rows_if_empty) {
  return from_rows(cols, rows_if_empty).transpose();
}

RatVec RatMat::row(std::size_t i) const {
  RatVec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

RatVec RatMat::col(std::size_t j) const {
  RatVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<RatVec> RatMat::row_list() const {
  std::vector<RatVec> r;
  r.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
  return r;
}

std::vector<RatVec> RatMat::col_list() const {
  std::vector<RatVec> c;
  c.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) c.push_back(col(j));
  return c;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatVec RatMat::apply(const RatVec& x) const {
  if (x.size() != cols_) fail(ErrorKind::DimMismatch, "matrix of " + std::to_string(cols_) + " columns applied to vector of size " + std::to_string(x.size()));
  RatVec y(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::DimMismatch, "matrix product shapes");
  RatMat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (sgn(o(k, j)) != 0) r(i, j) += a * o(k, j);
    }
  return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::DimMismatch, "matrix sum shapes");
  RatMat r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::DimMismatch, "matrix difference shapes");
  RatMat r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
  return r;
}

RatMat RatMat::scaled(const Rat& s) const {
  RatMat r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

RatMat RatMat::hcat(const RatMat& right) const {
  if (rows_ != right.rows_) fail(ErrorKind::DimMismatch, "hcat rows");
  RatMat r(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) r(i, cols_ + j) = right(i, j);
  }
  return r;
}

RatMat RatMat::vcat(const RatMat& below) const {
  if (cols_ != below.cols_) fail(ErrorKind::DimMismatch, "vcat cols");
  RatMat r(rows_ + below.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = below(i, j);
  return r;
}

RatMat RatMat::select_rows(const std::vector<std::size_t>& idx) const {
  RatMat r(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
  return r;
}

RatMat RatMat::select_cols(const std::vector<std::size_t>& idx) const {
  RatMat r(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
  return r;
}

Echelon rref(const RatMat& m) {
  RatMat a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const RatMat& m) { return rref(m).pivots.size(); }

std::size_t rank(const std::vector<RatVec>& vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(RatMat::from_rows(vectors, dim));
}

RatMat nullspace(const RatMat& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(m.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return RatMat::from_cols(basis, m.cols());
}

std::optional<RatMat> inverse(const RatMat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  Echelon e = rref(m.hcat(RatMat::identity(n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  if (b.size() != m.rows()) fail(ErrorKind::DimMismatch, "solve rhs");
  RatMat aug = m.hcat(RatMat::from_cols({b}, m.rows()));
  Echelon e = rref(aug);
  RatVec x(m.cols(), Rat(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

std::vector<std::size_t> independent_subset(const std::vector<RatVec>& vectors, std::size_t dim) {
  // Incremental elimination against a reduced basis.
  std::vector<RatVec> basis;
  std::vector<std::size_t> lead;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < vectors.size() && basis.size() < dim; ++k) {
    RatVec v = vectors[k];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (sgn(v[lead[b]]) == 0) continue;
      Rat f = v[lead[b]];
      for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(basis[b][j]) != 0) v[j] -= f * basis[b][j];
    }
    std::size_t p = 0;
    while (p < v.size() && sgn(v[p]) == 0) ++p;
    if (p == v.size()) continue;
    Rat inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (sgn(basis[b][p]) == 0) continue;
      Rat f = basis[b][p];
      for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(v[j]) != 0) basis[b][j] -= f * v[j];
    }
    basis.push_back(std::move(v));
    lead.push_back(p);
    chosen.push_back(k);
  }
  return chosen;
}

std::string to_string(const RatMat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += to_string(m(i, j));
    }
  }
  return s + "]";
}

RatMat parse_mat(const std::string& text) {
  std::vector<RatVec> rows;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(';', pos);
    std::string item = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    bool blank = true;
    for (char ch : item)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (!blank) rows.push_back(parse_vec(item));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (rows.empty()) fail(ErrorKind::InvalidArgument, "empty matrix '" + text + "'");
  return RatMat::from_rows(rows);
}

}  // namespace finban
