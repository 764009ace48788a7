#include "cslrank/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace cslrank {

namespace {

std::string rational_text(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// "[+-]p" or "[+-]p/q" with q > 0.
mpq_class parse_rational(std::string_view text, std::string_view whole) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s = trim(s.substr(1));
  }
  const auto slash = s.find('/');
  std::string_view num = slash == std::string_view::npos ? s : trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den)) {
    throw InputError("malformed scalar '" + std::string(whole) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in scalar '" + std::string(whole) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

// Gaussian integer used only inside the fraction-free elimination.
struct GaussInt {
  mpz_class re;
  mpz_class im;

  bool is_zero() const { return re == 0 && im == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// a / b where b divides a exactly in Z[i].
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
  const mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  mpz_class qre, qim;
  mpz_divexact(qre.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(qim.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
  return {qre, qim};
}

}  // namespace

// ---------------------------------------------------------------- Scalar

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw SingularError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw SingularError("division by zero scalar");
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ /= o.re_;
    return *this;
  }
  const mpq_class d = o.norm2();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return rational_text(re_);
  std::string out = rational_text(re_);
  out += sgn(im_) < 0 ? "-" : "+";
  out += rational_text(abs(im_));
  out += " i";
  return out;
}

Scalar Scalar::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty scalar");
  if (s.back() != 'i') return Scalar(parse_rational(s, text));

  s = trim(s.substr(0, s.size() - 1));
  if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
  // Split at the last sign that is not leading; that sign starts the
  // imaginary part.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view real_part = split == std::string_view::npos ? std::string_view() : s.substr(0, split);
  std::string_view imag_part = split == std::string_view::npos ? s : s.substr(split);
  imag_part = trim(imag_part);
  mpq_class im;
  if (imag_part.empty() || imag_part == "+") {
    im = 1;
  } else if (imag_part == "-") {
    im = -1;
  } else {
    im = parse_rational(imag_part, text);
  }
  mpq_class re = real_part.empty() ? mpq_class(0) : parse_rational(real_part, text);
  return Scalar(re, im);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---------------------------------------------------------------- Vector

Vector Vector::basis(std::size_t n, std::size_t k) {
  Vector v(n);
  v[k] = Scalar(1);
  return v;
}

bool Vector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::size_t Vector::first_nonzero() const {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!entries_[k].is_zero()) return k;
  }
  return entries_.size();
}

Vector Vector::conj() const {
  Vector out(*this);
  for (auto& e : out.entries_) e = e.conj();
  return out;
}

Vector& Vector::operator+=(const Vector& o) {
  if (o.size() != size()) throw DimensionError("vector length mismatch");
  for (std::size_t k = 0; k < size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  if (o.size() != size()) throw DimensionError("vector length mismatch");
  for (std::size_t k = 0; k < size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

Vector& Vector::operator*=(const Scalar& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

std::string Vector::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < size(); ++k) {
    if (k) out += ", ";
    out += entries_[k].to_string();
  }
  return out + ")";
}

Scalar inner(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch");
  Scalar acc;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k].conj();
  return acc;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar(1);
  return m;
}

Matrix Matrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  Matrix m(rows, cols);
  m(i, j) = Scalar(1);
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw DimensionError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::conj() const {
  Matrix m(*this);
  for (auto& e : m.data_) e = e.conj();
  return m;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar acc;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!v[j].is_zero()) acc += (*this)(i, j) * v[j];
    }
    out[i] = std::move(acc);
  }
  return out;
}

Vector Matrix::flatten() const { return Vector(data_); }

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& e : data_) e *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

std::string Matrix::to_string() const {
  std::vector<std::string> cells(data_.size());
  std::size_t width = 1;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    cells[k] = data_[k].to_string();
    width = std::max(width, cells[k].size());
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      const std::string& c = cells[i * cols_ + j];
      os << (j ? " " : "") << std::string(width - c.size(), ' ') << c;
    }
    os << "]\n";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

Matrix outer(const Vector& x, const Vector& f) {
  Matrix m(x.size(), f.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < f.size(); ++j) m(i, j) = x[i] * f[j].conj();
  }
  return m;
}

// ---------------------------------------------------------------- kernels

std::size_t rank(const Matrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::vector<GaussInt>> m(rows, std::vector<GaussInt>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class scale = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a(i, j).re().get_den_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a(i, j).im().get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class re = a(i, j).re() * scale;
      const mpq_class im = a(i, j).im() * scale;
      m[i][j] = {re.get_num(), im.get_num()};
    }
  }

  GaussInt prev{1, 0};
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const GaussInt pivot = m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const GaussInt lead = m[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = divexact(sub(mul(pivot, m[i][j]), mul(lead, m[r][j])), prev);
      }
      m[i][c] = {0, 0};
    }
    prev = pivot;
    ++r;
  }
  return r;
}

std::optional<Scalar> collinear(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("collinear: length mismatch");
  const std::size_t k = b.first_nonzero();
  if (k == b.size()) {
    if (a.is_zero()) return Scalar(0);
    return std::nullopt;
  }
  Scalar lambda = a[k] / b[k];
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!(a[t] == lambda * b[t])) return std::nullopt;
  }
  return lambda;
}

RankOneFactors rank_one_factor(const Matrix& b) {
  const std::size_t r = rank(b);
  if (r != 1) throw RankError("rank_one_factor: matrix has rank " + std::to_string(r));
  std::size_t lead = 0;
  while (b.column(lead).is_zero()) ++lead;
  Vector u = b.column(lead);
  Vector v(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    // column j = conj(v_j) * u
    auto c = collinear(b.column(j), u);
    if (!c) throw RankError("rank_one_factor: inconsistent column");
    v[j] = c->conj();
  }
  return {std::move(u), std::move(v)};
}

Vector match_factor(const Matrix& b, const Vector& v) {
  if (v.is_zero()) throw ZeroVectorError("match_factor: zero co-factor");
  if (v.size() != b.cols()) throw DimensionError("match_factor: shape mismatch");
  Vector w = b.apply(v);
  w *= Scalar(1) / inner(v, v);
  if (!(outer(w, v) == b)) throw FactorError("match_factor: matrix is not of the form w v^*");
  return w;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix m = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) throw SingularError("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const Scalar scale = Scalar(1) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace cslrank
