#include <array>
#include <random>
#include <set>

#include "doctest.h"
#include "thinlie/error.hpp"
#include "thinlie/gf.hpp"
#include "thinlie/linalg.hpp"

using namespace thinlie;
using gf::ExtElem;
using gf::ExtField;
using gf::PrimeField;
namespace la = thinlie::linalg;

namespace {

// Schoolbook product of (a0 + a1 t)(b0 + b1 t) reduced by t^2 = u t + v.
ExtElem naive_mul(int p, int u, int v, ExtElem a, ExtElem b) {
  long long c0 = 1LL * a.c0 * b.c0;
  long long c1 = 1LL * a.c0 * b.c1 + 1LL * a.c1 * b.c0;
  long long c2 = 1LL * a.c1 * b.c1;
  c0 += c2 * v;
  c1 += c2 * u;
  return {static_cast<std::uint32_t>(c0 % p), static_cast<std::uint32_t>(c1 % p)};
}

}  // namespace

TEST_CASE("prime field construction") {
  CHECK_NOTHROW(PrimeField(2));
  CHECK_NOTHROW(PrimeField(251));
  CHECK_THROWS_AS(PrimeField(4), Error);
  CHECK_THROWS_AS(PrimeField(1), Error);
  CHECK_THROWS_AS(PrimeField(257), Error);
  try {
    PrimeField f(9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
}

TEST_CASE("extension field construction") {
  ExtField f9(3, 0, 2);
  CHECK(f9.order() == 9);
  CHECK(f9.mul(f9.mu(), f9.mu()) == f9.make(2, 0));

  ExtField f4(2, 1, 1);
  CHECK(f4.mul(f4.mu(), f4.mu()) == f4.add(f4.mu(), f4.one()));

  try {
    ExtField bad(3, 0, 1);
    FAIL("t^2 - 1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReduciblePolynomial);
  }
  CHECK_THROWS_AS(ExtField(6, 0, 2), Error);
}

TEST_CASE("F_9 arithmetic examples") {
  ExtField f(3, 0, 2);
  auto mu = f.mu();
  auto one_mu = f.add(f.one(), mu);
  CHECK(f.mul(mu, mu) == f.make(2, 0));
  CHECK(f.mul(one_mu, one_mu) == f.make(0, 2));
  CHECK(f.inv(mu) == f.make(0, 2));
  CHECK(f.mul(mu, f.make(0, 2)) == f.one());
  CHECK_THROWS_AS(f.inv(f.zero()), Error);
  CHECK(f.pow(mu, 4) == f.make(1, 0));
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(7);
  for (auto [p, u, v] : {std::array{2, 1, 1}, std::array{3, 0, 2}, std::array{5, 0, 2}, std::array{3, 1, 1}}) {
    ExtField f(p, u, v);
    std::uniform_int_distribution<int> d(0, p - 1);
    auto rnd = [&] { return f.make(d(rng), d(rng)); };
    for (int trial = 0; trial < 1000; ++trial) {
      auto a = rnd(), b = rnd(), c = rnd();
      CHECK(f.mul(a, b) == naive_mul(p, u, v, a, b));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == f.zero());
      if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
    }
  }
}

TEST_CASE("Frobenius has order two") {
  for (auto [p, u, v] : {std::array{2, 1, 1}, std::array{3, 0, 2}, std::array{5, 0, 2}, std::array{5, 1, 3}}) {
    ExtField f(p, u, v);
    for (const auto& a : f.elements()) {
      CHECK(f.pow(a, static_cast<std::uint64_t>(p) * p) == a);
      CHECK(f.conj(f.conj(a)) == a);
      CHECK(f.conj(a) == f.pow(a, p));
      CHECK(f.mul(a, f.conj(a)) == f.embed(f.norm(a)));
    }
  }
}

TEST_CASE("coordinates are unique") {
  ExtField f(5, 0, 2);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& a : f.elements()) {
    CHECK(f.add(f.embed(a.c0), f.scale(a.c1, f.mu())) == a);
    CHECK(f.element(f.index(a)) == a);
    seen.insert({a.c0, a.c1});
  }
  CHECK(seen.size() == 25);
}

TEST_CASE("rref examples") {
  PrimeField f3(3);
  auto id = la::identity(f3, 2);
  auto e = la::rref(f3, id);
  CHECK(e.rank() == 2);
  CHECK(e.kernel.rows() == 0);

  auto z = la::zeros(f3, 2, 2);
  auto ez = la::rref(f3, z);
  CHECK(ez.rank() == 0);
  CHECK(ez.kernel == id);

  ExtField f9(3, 0, 2);
  auto m = la::from_rows(f9, 2, {{f9.one(), f9.mu()}});
  auto e9 = la::rref(f9, m);
  CHECK(e9.rank() == 1);
  REQUIRE(e9.kernel.rows() == 1);
  CHECK(e9.kernel(0, 0) == f9.make(0, 2));
  CHECK(e9.kernel(0, 1) == f9.one());
}

TEST_CASE("rref is idempotent and rank plus nullity is the width") {
  std::mt19937 rng(11);
  PrimeField f(5);
  std::uniform_int_distribution<int> d(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 6;
    la::Mat<PrimeField> m(r, c, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<PrimeField::Elem>(d(rng) < 2 ? 0 : d(rng));
    auto e = la::rref(f, m);
    auto again = la::rref(f, e.reduced);
    CHECK(again.reduced == e.reduced);
    CHECK(e.rank() + e.kernel.rows() == c);
    for (std::size_t k = 0; k < e.kernel.rows(); ++k)
      CHECK(la::is_zero(f, std::span<const PrimeField::Elem>(la::apply(f, m, e.kernel.row(k)))));
  }
}

TEST_CASE("inverse and solve") {
  ExtField f(3, 0, 2);
  auto a = la::from_rows(f, 2, {{f.one(), f.mu()}, {f.mu(), f.one()}});
  auto inv = la::inverse(f, a);
  REQUIRE(inv);
  CHECK(la::multiply(f, a, *inv) == la::identity(f, 2));
  std::vector<ExtElem> b{f.make(1, 1), f.make(2, 0)};
  auto x = la::solve_left(f, a, b);
  REQUIRE(x);
  std::vector<ExtElem> back{f.add(f.mul((*x)[0], a(0, 0)), f.mul((*x)[1], a(1, 0))),
                            f.add(f.mul((*x)[0], a(0, 1)), f.mul((*x)[1], a(1, 1)))};
  CHECK(back == b);
  auto singular = la::from_rows(f, 2, {{f.one(), f.mu()}, {f.mu(), f.make(2, 0)}});
  CHECK_FALSE(la::inverse(f, singular));
  CHECK(la::determinant(f, singular) == f.zero());
}
