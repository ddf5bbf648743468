#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "finban/rational.hpp"

namespace finban {

// Dense row-major rational matrix. Shapes are checked on every operation.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols);

  static RatMat identity(std::size_t n);
  static RatMat from_rows(const std::vector<RatVec>& rows, std::size_t cols_if_empty = 0);
  static RatMat from_cols(const std::vector<RatVec>& cols, std::size_t rows_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RatVec row(std::size_t i) const;
  RatVec col(std::size_t j) const;
  std::vector<RatVec> row_list() const;
  std::vector<RatVec> col_list() const;

  RatMat transpose() const;
  RatVec apply(const RatVec& x) const;
  RatMat operator*(const RatMat& other) const;
  RatMat operator+(const RatMat& other) const;
  RatMat operator-(const RatMat& other) const;
  RatMat scaled(const Rat& s) const;

  // Horizontal / vertical concatenation.
  RatMat hcat(const RatMat& right) const;
  RatMat vcat(const RatMat& below) const;
  RatMat select_rows(const std::vector<std::size_t>& idx) const;
  RatMat select_cols(const std::vector<std::size_t>& idx) const;

  bool operator==(const RatMat& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

struct Echelon {
  RatMat reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Echelon rref(const RatMat& m);
std::size_t rank(const RatMat& m);
std::size_t rank(const std::vector<RatVec>& vectors, std::size_t dim);

// Basis of {x : m x = 0} as columns, one per free variable of the RREF.
RatMat nullspace(const RatMat& m);

std::optional<RatMat> inverse(const RatMat& m);

// Some solution of m x = b, if any.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

// Indices of a greedy maximal independent subfamily, scanning in order.
std::vector<std::size_t> independent_subset(const std::vector<RatVec>& vectors, std::size_t dim);

std::string to_string(const RatMat& m);
RatMat parse_mat(const std::string& text);  // rows separated by ';', entries by ','

}  // namespace finban
