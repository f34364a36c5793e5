#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bisetlab/cyclotomic.hpp"
#include "bisetlab/exact_matrix.hpp"

using namespace bisetlab;

TEST_CASE("euler phi")
{
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(6) == 2);
  CHECK(euler_phi(8) == 4);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(105) == 48);
}

TEST_CASE("cyclotomic polynomials")
{
  auto coeffs = [](unsigned n) {
    std::vector<long> v;
    for (auto const &c : cyclotomic_polynomial(n))
      v.push_back(c.get_si());
    return v;
  };
  CHECK(coeffs(1) == std::vector<long>{-1, 1});
  CHECK(coeffs(2) == std::vector<long>{1, 1});
  CHECK(coeffs(3) == std::vector<long>{1, 1, 1});
  CHECK(coeffs(4) == std::vector<long>{1, 0, 1});
  CHECK(coeffs(6) == std::vector<long>{1, -1, 1});
  CHECK(coeffs(12) == std::vector<long>{1, 0, -1, 0, 1});
  // First cyclotomic polynomial with a coefficient of magnitude 2.
  CHECK(cyclotomic_polynomial(105)[7] == -2);
}

TEST_CASE("roots of unity identities")
{
  CHECK(Cyclotomic::zeta(2) == Cyclotomic(-1));
  CHECK(Cyclotomic::zeta(4) * Cyclotomic::zeta(4) == Cyclotomic(-1));
  CHECK(Cyclotomic::zeta(8, 2) == Cyclotomic::zeta(4));
  CHECK(Cyclotomic::zeta(6) == -(Cyclotomic::zeta(3) * Cyclotomic::zeta(3)));

  for (unsigned n : {3u, 5u, 6u, 8u, 12u}) {
    Cyclotomic sum;
    for (unsigned long k = 0; k < n; ++k)
      sum += Cyclotomic::zeta(n, k);
    CHECK(sum.is_zero());
  }

  // zeta5 + zeta5^4 solves x^2 + x - 1 = 0.
  Cyclotomic g = Cyclotomic::zeta(5) + Cyclotomic::zeta(5, 4);
  CHECK((g * g + g - Cyclotomic(1)).is_zero());

  Cyclotomic r = Cyclotomic::zeta(5) + Cyclotomic::zeta(5, 2) +
                 Cyclotomic::zeta(5, 3) + Cyclotomic::zeta(5, 4);
  CHECK(r.is_rational());
  CHECK(r.to_rational() == -1);
}

TEST_CASE("galois and conjugation")
{
  Cyclotomic z = Cyclotomic::zeta(5);
  CHECK(z.conj() == Cyclotomic::zeta(5, 4));
  Cyclotomic v = Cyclotomic(make_rat(2, 3)) + Cyclotomic(make_rat(1, 7)) * z;
  CHECK(v.galois(2).galois(3) == v.galois(6 % 5));
  CHECK((v * v.conj()).conj() == v * v.conj());
}

TEST_CASE("field division")
{
  Cyclotomic a = Cyclotomic(1) + Cyclotomic::zeta(5);
  CHECK((a.inverse() * a).to_rational() == 1);
  Cyclotomic b = Cyclotomic(make_rat(3, 2)) - Cyclotomic::zeta(12, 7);
  CHECK((b / b).to_rational() == 1);
  CHECK_THROWS_AS(Cyclotomic().inverse(), std::domain_error);
}

TEST_CASE("serialization round trip")
{
  std::vector<Cyclotomic> vals = {
      Cyclotomic(),
      Cyclotomic(make_rat(-7, 3)),
      Cyclotomic::zeta(4),
      Cyclotomic(make_rat(1, 2)) - Cyclotomic(make_rat(5, 3)) * Cyclotomic::zeta(8, 3),
      Cyclotomic::zeta(12, 5) + Cyclotomic(3),
  };
  for (auto const &v : vals) {
    CAPTURE(v.str());
    CHECK(Cyclotomic::parse(v.str()) == v);
  }
  CHECK(Cyclotomic::parse("5") == Cyclotomic(5));
  CHECK(Cyclotomic::parse("-3/6") == Cyclotomic(make_rat(-1, 2)));
  CHECK_THROWS(Cyclotomic::parse("(1/2)*q3^1"));
}

TEST_CASE("total order")
{
  Cyclotomic a = Cyclotomic::zeta(3);
  Cyclotomic b = Cyclotomic::zeta(6);
  CHECK(Cyclotomic::cmp(a, a) == 0);
  CHECK(Cyclotomic::cmp(a, b) == -Cyclotomic::cmp(b, a));
  CHECK(Cyclotomic::cmp(Cyclotomic(0), Cyclotomic(1)) < 0);
}

static ExactMatrix from_ints(std::vector<std::vector<long>> const &rows)
{
  ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m.at(i, j) = Cyclotomic(rows[i][j]);
  return m;
}

TEST_CASE("matrix rank basics")
{
  CHECK(ExactMatrix::identity(4).rank() == 4);
  CHECK(ExactMatrix(3, 5).rank() == 0);
  CHECK(from_ints({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}).rank() == 2);
  CHECK(from_ints({{1, 2}, {3, 4}}).rank() == 2);

  // Hilbert 5x5 is invertible; exercises denominator clearing.
  ExactMatrix h(5, 5);
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = 0; j < 5; ++j)
      h.at(i, j) = Cyclotomic(make_rat(1, (long)(i + j + 1)));
  CHECK(h.rank() == 5);
}

TEST_CASE("rank over cyclotomic entries")
{
  ExactMatrix m(2, 2);
  m.at(0, 0) = Cyclotomic(1);
  m.at(0, 1) = Cyclotomic(1);
  m.at(1, 0) = Cyclotomic::zeta(3);
  m.at(1, 1) = Cyclotomic::zeta(3, 2);
  CHECK(m.rank() == 2);

  ExactMatrix s(2, 2);
  s.at(0, 0) = Cyclotomic(1);
  s.at(0, 1) = Cyclotomic::zeta(4);
  s.at(1, 0) = Cyclotomic::zeta(4, 3);
  s.at(1, 1) = Cyclotomic(1);
  // Second row is -i times the first.
  CHECK(s.rank() == 1);
}

TEST_CASE("right kernel")
{
  auto k1 = from_ints({{1, 1, 1}}).right_kernel();
  REQUIRE(k1.size() == 2);

  ExactMatrix m = from_ints({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  auto ker = m.right_kernel();
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(-2), Cyclotomic(1)});

  ExactMatrix c(1, 2);
  c.at(0, 0) = Cyclotomic(1);
  c.at(0, 1) = Cyclotomic::zeta(4);
  auto kc = c.right_kernel();
  REQUIRE(kc.size() == 1);
  for (size_t j = 0; j < 2; ++j) {
    Cyclotomic acc;
    for (size_t i = 0; i < 2; ++i)
      acc += c.at(0, i) * kc[0][i];
    CHECK(acc.is_zero());
  }
}

TEST_CASE("rank and kernel on pseudorandom rational matrices")
{
  std::mt19937 rng(20260823);
  for (int trial = 0; trial < 12; ++trial) {
    size_t rows = 2 + rng() % 5, cols = 2 + rng() % 5;
    ExactMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        m.at(i, j) = Cyclotomic(make_rat((long)(rng() % 11) - 5, 1 + (long)(rng() % 4)));
    size_t r = m.rank();
    CHECK(r == m.transposed().rank());
    auto ker = m.right_kernel();
    CHECK(r + ker.size() == cols);
    for (auto const &v : ker) {
      for (size_t i = 0; i < rows; ++i) {
        Cyclotomic acc;
        for (size_t j = 0; j < cols; ++j)
          acc += m.at(i, j) * v[j];
        CHECK(acc.is_zero());
      }
    }
  }
}

TEST_CASE("row span")
{
  RowSpan span(3);
  CHECK(span.add({Cyclotomic(1), Cyclotomic(2), Cyclotomic(3)}));
  CHECK(!span.add({Cyclotomic(2), Cyclotomic(4), Cyclotomic(6)}));
  CHECK(span.add({Cyclotomic(0), Cyclotomic(1), Cyclotomic(1)}));
  CHECK(span.dim() == 2);
  CHECK(span.contains({Cyclotomic(1), Cyclotomic(3), Cyclotomic(4)}));
  CHECK(!span.contains({Cyclotomic(0), Cyclotomic(0), Cyclotomic(1)}));
}
