#include <doctest.h>

#include <array>
#include <random>
#include <vector>

#include "cliffmc/algebra.hpp"
#include "cliffmc/rng.hpp"

using namespace cliffmc;

namespace {

// Independent sign oracle: insertion-sort the concatenated generator list
// counting inversions, then cancel equal neighbours with e_k^2 = -1.
int slow_sign(BladeIndex a, BladeIndex b) {
  std::vector<int> gens;
  for (int k = 0; k < 32; ++k)
    if ((a >> k) & 1u) gens.push_back(k);
  for (int k = 0; k < 32; ++k)
    if ((b >> k) & 1u) gens.push_back(k);
  int sign = 1;
  for (std::size_t i = 1; i < gens.size(); ++i)
    for (std::size_t j = i; j > 0 && gens[j - 1] > gens[j]; --j) {
      std::swap(gens[j - 1], gens[j]);
      sign = -sign;
    }
  for (std::size_t i = 0; i + 1 < gens.size();) {
    if (gens[i] == gens[i + 1]) {
      sign = -sign;
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i),
                 gens.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      if (i > 0) --i;
    } else {
      ++i;
    }
  }
  return sign;
}

Multivector rand_mv(int n, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m(n);
  for (std::size_t i = 0; i < m.size(); ++i) m[static_cast<BladeIndex>(i)] = u(eng);
  return m;
}

}  // namespace

TEST_CASE("blade product matches the permutation oracle for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const BladeIndex count = BladeIndex{1} << n;
    for (BladeIndex a = 0; a < count; ++a)
      for (BladeIndex b = 0; b < count; ++b) {
        const BladeProduct p = blade_product(a, b, n);
        CHECK(p.blade == (a ^ b));
        CHECK(p.sign == static_cast<double>(slow_sign(a, b)));
      }
  }
}

TEST_CASE("blade product rejects out-of-dimension masks") {
  CHECK_THROWS_AS(blade_product(4, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(blade_product(0, 8, 3), std::invalid_argument);
}

TEST_CASE("generators anticommute and square to -1, exactly") {
  const int n = 6;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      const Multivector ej = Multivector::basis(n, BladeIndex{1} << (j - 1));
      const Multivector ek = Multivector::basis(n, BladeIndex{1} << (k - 1));
      const Multivector s = ej * ek + ek * ej;
      for (std::size_t c = 0; c < s.size(); ++c)
        CHECK(s[static_cast<BladeIndex>(c)] == (c == 0 && j == k ? -2.0 : 0.0));
    }
}

TEST_CASE("geometric product is associative") {
  auto eng = make_engine(17);
  for (int n : {2, 3, 5}) {
    for (int t = 0; t < 30; ++t) {
      const Multivector a = rand_mv(n, eng), b = rand_mv(n, eng), c = rand_mv(n, eng);
      const double scale = 1.0 + a.norm() * b.norm() * c.norm();
      CHECK(((a * b) * c - a * (b * c)).norm() / scale <= 1e-12);
    }
  }
}

TEST_CASE("conjugation is an involutory anti-automorphism") {
  auto eng = make_engine(18);
  for (int t = 0; t < 30; ++t) {
    const Multivector a = rand_mv(3, eng), b = rand_mv(3, eng);
    CHECK((a.conj().conj() - a).norm() == 0.0);
    CHECK(((a * b).conj() - b.conj() * a.conj()).norm() <=
          1e-12 * (1.0 + a.norm() * b.norm()));
  }
  // Sign pattern by grade: +, -, -, +.
  const Multivector e1 = Multivector::basis(3, 0b001);
  const Multivector e12 = Multivector::basis(3, 0b011);
  const Multivector e123 = Multivector::basis(3, 0b111);
  CHECK(e1.conj()[0b001] == -1.0);
  CHECK(e12.conj()[0b011] == -1.0);
  CHECK(e123.conj()[0b111] == 1.0);
  CHECK(Multivector::scalar(3, 2.0).conj()[0] == 2.0);
}

TEST_CASE("scalar and vector parts") {
  Multivector m(2);
  m[0] = 1.5;
  m[1] = 2.0;   // e_1
  m[2] = -3.0;  // e_2
  m[3] = 4.0;   // e_1 e_2
  CHECK(m.sc() == 1.5);
  const Multivector v = m.vec();
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 2.0);
  CHECK(v[2] == -3.0);
  CHECK(v[3] == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(Multivector(2) + Multivector(3), std::invalid_argument);
  CHECK_THROWS_AS(Multivector(2) * Multivector(3), std::invalid_argument);
}

TEST_CASE("para-vector norm identity x xbar = |x|^2") {
  auto eng = make_engine(19);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 30; ++t) {
    ParaVector x(3);
    for (int i = 0; i <= 3; ++i) x[i] = u(eng);
    const Multivector m = x.to_multivector();
    const Multivector target = Multivector::scalar(3, x.norm() * x.norm());
    CHECK((m * m.conj() - target).norm() <= 1e-12);
    CHECK((m.conj() * m - target).norm() <= 1e-12);
  }
}

TEST_CASE("para-vector arithmetic and dot product") {
  const ParaVector a(std::vector<double>{1.0, 2.0, 3.0});
  const ParaVector b(std::vector<double>{-1.0, 0.5, 2.0});
  CHECK((a + b)[0] == 0.0);
  CHECK((a - b)[2] == 1.0);
  CHECK((a * 2.0)[1] == 4.0);
  CHECK(a.dot(b) == 1.0 * -1.0 + 2.0 * 0.5 + 3.0 * 2.0);
}

TEST_CASE("discrete Clifford inner product") {
  const Multivector e1 = Multivector::basis(2, 1);
  const Multivector one = Multivector::scalar(2, 1.0);
  const std::array<Multivector, 2> f{e1, one};
  const std::array<Multivector, 2> g{e1, e1};
  const std::array<double, 2> w{0.25, 0.75};
  // 0.25 conj(e1) e1 + 0.75 conj(1) e1 = 0.25 + 0.75 e1.
  const Multivector ip = clifford_inner_product(f, g, w);
  CHECK(ip[0] == 0.25);
  CHECK(ip[1] == 0.75);
  const std::array<double, 1> bad_w{1.0};
  CHECK_THROWS_AS(clifford_inner_product(f, g, bad_w), std::invalid_argument);
}
