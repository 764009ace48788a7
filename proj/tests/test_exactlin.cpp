#include <gtest/gtest.h>

#include "support.hpp"

using namespace cslrank;
using namespace testing_support;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v(xs.size());
  std::size_t k = 0;
  for (long x : xs) v[k++] = Scalar(x);
  return v;
}

}  // namespace

TEST(Scalar, ParsesTextForms) {
  EXPECT_EQ(Scalar::parse("3"), Scalar(3));
  EXPECT_EQ(Scalar::parse("2/4"), Scalar::ratio(1, 2));
  EXPECT_EQ(Scalar::parse("-1/2+3/4 i"), Scalar(mpq_class(-1, 2), mpq_class(3, 4)));
  EXPECT_EQ(Scalar::parse("1/2-1/3 i"), Scalar(mpq_class(1, 2), mpq_class(-1, 3)));
  EXPECT_EQ(Scalar::parse("i"), Scalar::i());
  EXPECT_EQ(Scalar::parse("-2 i"), Scalar(mpq_class(0), mpq_class(-2)));
  EXPECT_THROW(Scalar::parse("abc"), InputError);
  EXPECT_THROW(Scalar::parse("1/0"), InputError);
  EXPECT_THROW(Scalar::parse(""), InputError);
}

TEST(Scalar, CanonicalText) {
  EXPECT_EQ(Scalar::ratio(2, 4).to_string(), "1/2");
  EXPECT_EQ(Scalar(-3).to_string(), "-3");
  EXPECT_EQ(Scalar(mpq_class(1, 2), mpq_class(-1, 3)).to_string(), "1/2-1/3 i");
}

TEST(Scalar, TextRoundTripProperty) {
  ExactRng rng(11);
  for (int t = 0; t < 500; ++t) {
    const Scalar s = rng.scalar() * rng.scalar() + rng.scalar();
    EXPECT_EQ(Scalar::parse(s.to_string()), s) << s.to_string();
  }
}

TEST(Scalar, FieldAxiomsProperty) {
  ExactRng rng(12);
  for (int t = 0; t < 300; ++t) {
    const Scalar a = rng.scalar(), b = rng.scalar(), c = rng.nonzero();
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a / c * c, a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ(Scalar((a * a.conj()).re()), a * a.conj());
  }
}

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Scalar(1) / Scalar(0), SingularError); }

TEST(Inner, LinearInFirstSlot) {
  const Vector a{Scalar::i(), Scalar(1)};
  const Vector b{Scalar(1), Scalar::i()};
  // i*1 + 1*conj(i) = i - i = 0
  EXPECT_EQ(inner(a, b), Scalar(0));
  EXPECT_EQ(inner(a * Scalar::i(), b), Scalar::i() * inner(a, b));
  EXPECT_EQ(inner(a, b * Scalar::i()), Scalar::i().conj() * inner(a, b));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix::zero(3, 3)), 0u);
  EXPECT_EQ(rank(Matrix::identity(4)), 4u);
  EXPECT_EQ(rank(outer(Vector::basis(3, 0), vec({1, 2, 0}))), 1u);
  EXPECT_EQ(rank(Matrix(0, 5)), 0u);
}

TEST(Rank, AgreesWithGaussJordanOracle) {
  ExactRng rng(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng.index(6), cols = 1 + rng.index(6), inner_dim = 1 + rng.index(6);
    const Matrix a = random_matrix(rng, rows, inner_dim) * random_matrix(rng, inner_dim, cols);
    EXPECT_EQ(rank(a), oracle_rank(a));
  }
}

TEST(Rank, ProductAndEquivalenceProperties) {
  ExactRng rng(22);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng.index(4), k = 1 + rng.index(n);
    const Matrix a = random_matrix(rng, n, k) * random_matrix(rng, k, n);
    const Matrix b = random_matrix(rng, n, n);
    EXPECT_LE(rank(a * b), std::min(rank(a), rank(b)));
    const Matrix p = random_invertible(rng, n), q = random_invertible(rng, n);
    EXPECT_EQ(rank(p * a * q), rank(a));
  }
}

TEST(Collinear, Examples) {
  EXPECT_EQ(collinear(vec({2, 4}), vec({1, 2})), Scalar(2));
  EXPECT_FALSE(collinear(vec({1, 0}), vec({0, 1})).has_value());
  EXPECT_EQ(collinear(vec({0, 0}), vec({1, 1})), Scalar(0));
  EXPECT_EQ(collinear(vec({0, 0}), vec({0, 0})), Scalar(0));
  EXPECT_FALSE(collinear(vec({1, 0}), vec({0, 0})).has_value());
}

TEST(Collinear, SymmetricForNonzeroPairsProperty) {
  ExactRng rng(31);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.index(4);
    Vector a = rng.supported_on(CoordSet::full(n));
    Vector b = rng.index(2) ? a * rng.nonzero() : rng.supported_on(CoordSet::full(n));
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ(collinear(a, b).has_value(), collinear(b, a).has_value());
  }
}

TEST(RankOneFactor, Examples) {
  const auto [u, v] = rank_one_factor(Matrix::unit(2, 2, 0, 1));
  EXPECT_EQ(u, Vector::basis(2, 0));
  EXPECT_EQ(v, Vector::basis(2, 1));

  const Vector x = vec({1, 2});
  const Vector f{Scalar(1), Scalar::i()};
  const Matrix b = outer(x, f);
  EXPECT_EQ(b, (Matrix{{Scalar(1), -Scalar::i()}, {Scalar(2), Scalar(-2) * Scalar::i()}}));
  const auto [u2, v2] = rank_one_factor(b);
  EXPECT_EQ(u2, x);
  EXPECT_EQ(v2, f);

  EXPECT_THROW(rank_one_factor(Matrix::identity(2)), RankError);
  EXPECT_THROW(rank_one_factor(Matrix::zero(2, 2)), RankError);
}

TEST(RankOneFactor, ReproducesEveryRankOneProperty) {
  ExactRng rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.index(5);
    const Vector x = rng.supported_on(CoordSet::full(n)), f = rng.supported_on(CoordSet::full(n));
    const Matrix b = outer(x, f);
    const auto [u, v] = rank_one_factor(b);
    EXPECT_EQ(outer(u, v), b);
  }
}

TEST(MatchFactor, Examples) {
  EXPECT_EQ(match_factor(Matrix::unit(2, 2, 0, 1), Vector::basis(2, 1)), Vector::basis(2, 0));
  EXPECT_EQ(match_factor(Matrix::zero(2, 2), Vector::basis(2, 0)), Vector(2));
  EXPECT_THROW(match_factor(Matrix::unit(2, 2, 0, 1), Vector::basis(2, 0)), FactorError);
  EXPECT_THROW(match_factor(Matrix::unit(2, 2, 0, 1), Vector(2)), ZeroVectorError);
}

TEST(MatchFactor, RoundTripProperty) {
  ExactRng rng(42);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.index(5);
    const Vector u = rng.supported_on(CoordSet::full(n)), v = rng.supported_on(CoordSet::full(n));
    EXPECT_EQ(match_factor(outer(u, v), v), u);
  }
}

TEST(Inverse, RandomInvertibleProperty) {
  ExactRng rng(51);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.index(5);
    const Matrix a = random_invertible(rng, n);
    EXPECT_EQ(a * inverse(a), Matrix::identity(n));
    EXPECT_EQ(inverse(a) * a, Matrix::identity(n));
  }
  EXPECT_THROW(inverse(Matrix::unit(2, 2, 0, 1)), SingularError);
}

TEST(Matrix, AdjointAndTranspose) {
  const Matrix a{{Scalar(1), Scalar::i()}, {Scalar(2), Scalar(3)}};
  EXPECT_EQ(a.adjoint(), (Matrix{{Scalar(1), Scalar(2)}, {-Scalar::i(), Scalar(3)}}));
  EXPECT_EQ(a.transpose().transpose(), a);
  EXPECT_EQ(a.adjoint(), a.transpose().conj());
}
