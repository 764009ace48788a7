#ifndef CSLRANK_EXACTLIN_HPP
#define CSLRANK_EXACTLIN_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cslrank/errors.hpp"

namespace cslrank {

/*
 * Exact complex-rational arithmetic.
 *
 * A Scalar is re + im*i with re, im arbitrary-precision rationals kept in
 * lowest terms by GMP, so equality is structural. Vectors and matrices are
 * dense and small (n <= ~64 is the intended size); every routine here is
 * exact and deterministic.
 *
 * Conventions:
 *   - inner(a, b) = sum_k a_k * conj(b_k)   (linear in the first slot)
 *   - outer(x, f) = x * f^*, the operator g -> <g, f> x
 *   - adjoint() is the conjugate transpose in the fixed standard basis
 */
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re) : re_(std::move(re)) {}  // NOLINT
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar ratio(long num, long den);
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  // |z|^2, always real.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // throws SingularError on zero

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Text form: "p/q", "p/q+r/s i", "p/q-r/s i"; integers may drop "/1".
  std::string to_string() const;
  static Scalar parse(std::string_view text);  // throws InputError

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : entries_(n) {}
  Vector(std::initializer_list<Scalar> init) : entries_(init) {}
  explicit Vector(std::vector<Scalar> entries) : entries_(std::move(entries)) {}

  static Vector basis(std::size_t n, std::size_t k);

  std::size_t size() const { return entries_.size(); }
  const Scalar& operator[](std::size_t k) const { return entries_[k]; }
  Scalar& operator[](std::size_t k) { return entries_[k]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  bool is_zero() const;
  // Index of the first nonzero entry, or size() when zero.
  std::size_t first_nonzero() const;
  Vector conj() const;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(const Scalar& s);
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, const Scalar& s) { return a *= s; }
  friend Vector operator*(const Scalar& s, Vector a) { return a *= s; }
  friend bool operator==(const Vector& a, const Vector& b) = default;

  std::string to_string() const;

 private:
  std::vector<Scalar> entries_;
};

Scalar inner(const Vector& a, const Vector& b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  // The matrix unit E_ij (0-based).
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  void set_column(std::size_t j, const Vector& v);

  bool is_zero() const;
  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;
  Vector apply(const Vector& v) const;
  // Row-major flattening, handy for collinearity of whole matrices.
  Vector flatten() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

// x * f^*
Matrix outer(const Vector& x, const Vector& f);

// Exact rank by fraction-free (Bareiss) elimination over the Gaussian
// integers, after clearing denominators row by row.
std::size_t rank(const Matrix& a);

// lambda with a = lambda * b. When b == 0 the only collinear a is 0 and the
// returned lambda is 0 by convention. Absent means "not collinear".
std::optional<Scalar> collinear(const Vector& a, const Vector& b);

struct RankOneFactors {
  Vector u;
  Vector v;
};

// Canonical B = u v^*: u is the first nonzero column of B, and v is then
// forced (its entry at that column index equals 1). Throws RankError unless
// rank(B) == 1.
RankOneFactors rank_one_factor(const Matrix& b);

// The unique w with B = w v^*, computed as B v / <v, v>. Throws
// ZeroVectorError for v == 0 and FactorError when no such w exists.
Vector match_factor(const Matrix& b, const Vector& v);

// Exact inverse by Gauss-Jordan elimination. Throws SingularError.
Matrix inverse(const Matrix& a);

}  // namespace cslrank

#endif  // CSLRANK_EXACTLIN_HPP
