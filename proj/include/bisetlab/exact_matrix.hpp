#ifndef BISETLAB_EXACT_MATRIX_HPP
#define BISETLAB_EXACT_MATRIX_HPP

#include <vector>

#include "bisetlab/cyclotomic.hpp"

namespace bisetlab {

// Dense matrix over cyclotomic fields with exact rank and right-kernel
// computations.  Elimination is fraction-free (Bareiss): rows are scaled to
// clear denominators and the integral domain division at each step is exact,
// which keeps intermediate entries at minor size instead of compounding
// rational gcd work.
class ExactMatrix {
public:
  ExactMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static ExactMatrix identity(size_t n);
  static ExactMatrix from_rows(std::vector<std::vector<Cyclotomic>> const &rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Cyclotomic &at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  Cyclotomic const &at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  ExactMatrix transposed() const;
  ExactMatrix operator*(ExactMatrix const &o) const;
  ExactMatrix operator+(ExactMatrix const &o) const;
  ExactMatrix operator-(ExactMatrix const &o) const;
  ExactMatrix scaled(Cyclotomic const &c) const;
  bool operator==(ExactMatrix const &o) const;
  bool is_zero() const;

  size_t rank() const;
  // Basis of { v : M v = 0 }, each vector normalized to integral entries
  // with content one and positive leading coefficient.  Deterministic.
  std::vector<std::vector<Cyclotomic>> right_kernel() const;

  std::vector<std::vector<std::string>> str_rows() const;

private:
  size_t rows_, cols_;
  std::vector<Cyclotomic> a_;
};

size_t rank_of_rows(std::vector<std::vector<Cyclotomic>> const &rows);

// Incrementally maintained row space; used for span membership tests and
// dimension tracking while closing sets under products.  Plain exact
// Gauss-Jordan, adequate for the small spans it is used on.
class RowSpan {
public:
  explicit RowSpan(size_t width) : width_(width) {}

  // Returns true if the vector enlarged the span.
  bool add(std::vector<Cyclotomic> v);
  bool contains(std::vector<Cyclotomic> v) const;
  size_t dim() const { return rows_.size(); }
  size_t width() const { return width_; }
  std::vector<std::vector<Cyclotomic>> const &basis() const { return rows_; }

private:
  size_t width_;
  std::vector<std::vector<Cyclotomic>> rows_;
  std::vector<size_t> pivots_;

  void reduce(std::vector<Cyclotomic> &v) const;
};

// Normalizes a vector of field elements to integral entries with content one
// and positive leading coefficient (scaling by a positive rational and sign).
void normalize_vector(std::vector<Cyclotomic> &v);

} // namespace bisetlab

#endif
