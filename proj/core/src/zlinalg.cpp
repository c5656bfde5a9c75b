#include "prolim/zlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace prolim {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw InputError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw InputError("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(std::size_t rows, std::size_t cols, std::span<const Integer> diag) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m(i, i) = diag[i];
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::column_range(std::size_t first, std::size_t count) const {
  IntMatrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t count) const {
  IntMatrix m(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
  return m;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Integer& s = (*this)(src, j);
    if (sgn(s) != 0) (*this)(dst, j) += factor * s;
  }
}

void IntMatrix::add_column_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, src);
    if (sgn(s) != 0) (*this)(i, dst) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_column(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw InputError("matrix product dimension mismatch: " + std::to_string(a.rows_) + "x" +
                     std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                     std::to_string(b.cols_));
  }
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Integer& bkj = b(k, j);
        if (sgn(bkj) != 0) c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols_ != x.size()) throw InputError("matrix-vector dimension mismatch");
  IntVector y(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (sgn(x[j]) != 0) y[i] += a(i, j) * x[j];
  return y;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hcat row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

IntMatrix vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InputError("vcat column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

IntMatrix kron_identity(const IntMatrix& a, std::size_t n) {
  IntMatrix m(a.rows() * n, a.cols() * n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0)
        for (std::size_t k = 0; k < n; ++k) m(i * n + k, j * n + k) = a(i, j);
  return m;
}

IntMatrix identity_kron(std::size_t n, const IntMatrix& a) {
  IntMatrix m(a.rows() * n, a.cols() * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(k * a.rows() + i, k * a.cols() + j) = a(i, j);
  return m;
}

IntVector zero_vector(std::size_t n) { return IntVector(n); }

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IntVector operator*(const Integer& s, const IntVector& v) {
  IntVector c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = s * v[i];
  return c;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(d.rows(), d.cols());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Elimination state for U * A * V = D with U^{-1} maintained in lockstep.
struct SmithWork {
  IntMatrix d, u, uinv, v;

  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
    uinv.swap_columns(a, b);
  }
  void swap_columns(std::size_t a, std::size_t b) {
    d.swap_columns(a, b);
    v.swap_columns(a, b);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    d.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
    uinv.add_column_multiple(src, dst, -f);
  }
  void add_column(std::size_t dst, std::size_t src, const Integer& f) {
    d.add_column_multiple(dst, src, f);
    v.add_column_multiple(dst, src, f);
  }
  void negate_row(std::size_t r) {
    d.negate_row(r);
    u.negate_row(r);
    uinv.negate_column(r);
  }
};

}  // namespace

SmithForm snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithWork w{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& d = w.d;

  std::size_t t = 0;
  Integer q;
  while (t < m && t < n) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m && !(pr < m && abs(d(pr, pc)) == 1); ++i) {
      for (std::size_t j = t; j < n; ++j) {
        const Integer& x = d(i, j);
        if (sgn(x) != 0 && (pr == m || abs(x) < abs(d(pr, pc)))) {
          pr = i;
          pc = j;
          if (abs(x) == 1) break;
        }
      }
    }
    if (pr == m) break;
    w.swap_rows(t, pr);
    w.swap_columns(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (sgn(d(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        w.add_column(j, t, -q);
        if (sgn(d(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // A remainder survived; it is smaller than the pivot, so move it in.
        std::size_t br = t, bc = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(d(i, t)) != 0 && abs(d(i, t)) < abs(d(br, bc))) br = i, bc = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(d(t, j)) != 0 && abs(d(t, j)) < abs(d(br, bc))) br = t, bc = j;
        w.swap_rows(t, br);
        w.swap_columns(t, bc);
        continue;
      }
      if (abs(d(t, t)) == 1) break;
      // Divisibility: pull any offending row into the pivot row.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.add_row(t, bad, Integer(1));
    }
    if (sgn(d(t, t)) < 0) w.negate_row(t);
    ++t;
  }

  return SmithForm{std::move(w.d), std::move(w.u), std::move(w.v), std::move(w.uinv), t};
}

IntMatrix hermite_basis(const IntMatrix& a) {
  IntMatrix w = a;
  const std::size_t n = w.rows();
  const std::size_t t = w.cols();
  std::size_t col = 0;
  Integer q;
  for (std::size_t r = 0; r < n && col < t; ++r) {
    for (;;) {
      std::size_t best = t;
      std::size_t nonzero = 0;
      for (std::size_t c = col; c < t; ++c) {
        if (sgn(w(r, c)) == 0) continue;
        ++nonzero;
        if (best == t || abs(w(r, c)) < abs(w(r, best))) best = c;
      }
      if (best == t) break;
      w.swap_columns(col, best);
      if (nonzero == 1) break;
      for (std::size_t c = col + 1; c < t; ++c) {
        if (sgn(w(r, c)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w(r, c).get_mpz_t(), w(r, col).get_mpz_t());
        w.add_column_multiple(c, col, -q);
      }
    }
    if (sgn(w(r, col)) == 0) continue;
    if (sgn(w(r, col)) < 0) w.negate_column(col);
    for (std::size_t c = 0; c < col; ++c) {
      if (sgn(w(r, c)) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), w(r, c).get_mpz_t(), w(r, col).get_mpz_t());
      w.add_column_multiple(c, col, -q);
    }
    ++col;
  }
  return w.column_range(0, col);
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const SmithForm s = snf(a);
  return hermite_basis(s.v.column_range(s.rank, a.cols() - s.rank));
}

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) {
    throw InputError("solve: right-hand side has length " + std::to_string(b.size()) +
                     ", matrix has " + std::to_string(a.rows()) + " rows");
  }
  const SmithForm s = snf(a);
  const IntVector ub = s.u * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), s.d(i, i).get_mpz_t());
    } else if (sgn(ub[i]) != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

std::size_t rank(const IntMatrix& a) { return hermite_basis(a).cols(); }

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Lattice::Lattice(const IntMatrix& generators) : basis_(hermite_basis(generators)) {
  pivots_.reserve(basis_.cols());
  std::size_t r = 0;
  for (std::size_t c = 0; c < basis_.cols(); ++c) {
    while (sgn(basis_(r, c)) == 0) ++r;
    pivots_.push_back(r);
  }
}

std::optional<IntVector> Lattice::coordinates(const IntVector& x) const {
  if (x.size() != basis_.rows()) throw InputError("lattice membership: vector length mismatch");
  IntVector rest = x;
  IntVector y(basis_.cols());
  std::size_t r = 0;
  for (std::size_t c = 0; c < basis_.cols(); ++c) {
    for (; r < pivots_[c]; ++r)
      if (sgn(rest[r]) != 0) return std::nullopt;
    const Integer& p = basis_(r, c);
    if (!mpz_divisible_p(rest[r].get_mpz_t(), p.get_mpz_t())) return std::nullopt;
    mpz_divexact(y[c].get_mpz_t(), rest[r].get_mpz_t(), p.get_mpz_t());
    for (std::size_t i = r; i < rest.size(); ++i)
      if (sgn(basis_(i, c)) != 0) rest[i] -= y[c] * basis_(i, c);
    ++r;
  }
  for (; r < rest.size(); ++r)
    if (sgn(rest[r]) != 0) return std::nullopt;
  return y;
}

bool Lattice::contains(const IntVector& x) const { return coordinates(x).has_value(); }

}  // namespace prolim
