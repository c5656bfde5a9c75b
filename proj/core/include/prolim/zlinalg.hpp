#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace prolim {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Raised on malformed input: dimension mismatches, ill-defined maps,
/// violated preconditions. The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense matrix of arbitrary-precision integers, row-major.
///
/// Zero-sized matrices are legal (0 x n, n x 0) and stand for maps to or
/// from the trivial group.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  /// Columns must all have length `rows`.
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix diagonal(std::size_t rows, std::size_t cols, std::span<const Integer> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Integer> data() const { return data_; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;
  IntMatrix column_range(std::size_t first, std::size_t count) const;
  IntMatrix row_range(std::size_t first, std::size_t count) const;
  IntMatrix select_columns(std::span<const std::size_t> idx) const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_column(std::size_t c);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& x);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
/// a (x) I_n, i.e. each entry replaced by entry * I_n.
IntMatrix kron_identity(const IntMatrix& a, std::size_t n);
/// I_n (x) a.
IntMatrix identity_kron(std::size_t n, const IntMatrix& a);

IntVector zero_vector(std::size_t n);
IntVector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const IntVector& v);
IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const Integer& s, const IntVector& v);

/// Smith normal form U * A * V = D.
///
/// D is diagonal with d_1 | d_2 | ... | d_rank, all positive, followed by
/// zeros. U and V are unimodular; `u_inverse` is U^{-1}, tracked alongside
/// so that lattice computations never need a separate inversion.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  IntMatrix u_inverse;
  std::size_t rank = 0;

  /// Diagonal entries d(i,i) for i < min(rows, cols).
  std::vector<Integer> diagonal() const;
};

SmithForm snf(const IntMatrix& a);

/// Canonical (column Hermite) basis of the lattice spanned by the columns
/// of `a`. Result has full column rank; pivots are positive and strictly
/// descending down the columns, entries left of a pivot lie in [0, pivot).
IntMatrix hermite_basis(const IntMatrix& a);

/// Basis of {x : A x = 0} as columns, in Hermite form. n x 0 when trivial.
IntMatrix kernel_basis(const IntMatrix& a);

/// Some integer x with A x = b, if one exists.
std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b);

std::size_t rank(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

/// A sublattice of Z^n held by its Hermite basis; membership and
/// coordinates are triangular back-substitutions.
class Lattice {
 public:
  Lattice() = default;
  /// Lattice spanned by the columns of `generators` in Z^{generators.rows()}.
  explicit Lattice(const IntMatrix& generators);

  std::size_t ambient_dimension() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVector& x) const;
  /// Unique y with basis * y = x, if x lies in the lattice.
  std::optional<IntVector> coordinates(const IntVector& x) const;

 private:
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace prolim
