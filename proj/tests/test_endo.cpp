#include <random>

#include "doctest.h"
#include "thinlie/endo.hpp"

using namespace thinlie;
using namespace thinlie::endo;
using maxclass::make_metabelian;
using subfield::GeneratorPair;
using subfield::Verdict;
namespace la = thinlie::linalg;

namespace {

struct Case {
  ExtField f;
  maxclass::Algebra m;
  subfield::SubalgebraAnalysis a;
};

// X = x + y, Y = mu x + (mu + 1) y on the metabelian algebra.
Case thin_case(ExtField f, int n) {
  maxclass::Algebra m(make_metabelian(f, n));
  Case c{f, std::move(m), {}};
  c.a = subfield::generate_subalgebra(c.m, GeneratorPair::make(f.one(), f.one(), f.mu(), f.add(f.mu(), f.one())), n);
  return c;
}

bool has_root(std::uint32_t p, const std::vector<PrimeField::Elem>& poly) {
  for (std::uint32_t t = 0; t < p; ++t) {
    std::uint64_t v = 0, pw = 1;
    for (auto c : poly) {
      v = (v + c * pw) % p;
      pw = pw * t % p;
    }
    if (v == 0) return true;
  }
  return false;
}

FVec combo(const PrimeField& F, const EndoRing& ring, PrimeField::Elem a, PrimeField::Elem b, const FVec& gen) {
  FVec out(ring.identity.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(F.mul(a, ring.identity[i]), F.mul(b, gen[i]));
  return out;
}

}  // namespace

TEST_CASE("thin metabelian pair over F_9") {
  auto c = thin_case(ExtField(3, 0, 2), 20);
  REQUIRE(c.a.verdict == Verdict::Thin);
  auto ring = compute_grend0(module_view(c.a, 3));
  CHECK(ring.dim() == 2);
  CHECK(ring.table_crosscheck);
  auto id = identify_field(ring, &c.f);
  CHECK(id.degree == 2);
  CHECK(id.is_field);
  CHECK(id.min_poly == std::vector<PrimeField::Elem>{1, 0, 1});  // t^2 - 2
  CHECK_FALSE(has_root(3, id.min_poly));
  CHECK((id.embedding == "mu" || id.embedding == "mu_conj"));
  CHECK(schur_check(ring));
}

TEST_CASE("other fields") {
  for (auto [p, u, v] : {std::array{2u, 1u, 1u}, std::array{5u, 0u, 2u}}) {
    auto c = thin_case(ExtField(p, u, v), 16);
    REQUIRE(c.a.verdict == Verdict::Thin);
    auto ring = compute_grend0(module_view(c.a, 3));
    CHECK(ring.dim() == 2);
    auto id = identify_field(ring, &c.f);
    CHECK(id.degree == 2);
    CHECK_FALSE(has_root(p, id.min_poly));
    // mu_hat satisfies the defining polynomial of mu.
    CHECK(id.min_poly == std::vector<PrimeField::Elem>{(p - v) % p, (p - u) % p, 1});
    CHECK(schur_check(ring));
  }
}

TEST_CASE("maximal and r-constrained pairs have scalar endomorphisms only") {
  ExtField f(3, 0, 2);
  maxclass::Algebra m(make_metabelian(f, 16));
  auto a = subfield::generate_subalgebra(m, GeneratorPair::make(f.one(), f.zero(), f.zero(), f.one()), 16);
  auto ring = compute_grend0(module_view(a, 3));
  CHECK(ring.dim() == 1);
  auto id = identify_field(ring, &f);
  CHECK(id.degree == 1);
  CHECK(id.embedding == "n/a");
  CHECK(grend_d_dimension(module_view(a, 3), 0).dim == 1);

  for (const auto& p : maxclass::search_sequences(f, 16, 10)) {
    maxclass::Algebra d(p);
    auto r = subfield::generate_subalgebra(d, GeneratorPair::make(f.zero(), f.one(), f.one(), f.mu()), 16);
    if (r.verdict != Verdict::RConstrained) continue;
    auto rr = compute_grend0(module_view(r, 3));
    CHECK(rr.dim() == 1);
    CHECK(schur_check(rr));
  }
}

TEST_CASE("ring axioms") {
  auto c = thin_case(ExtField(3, 0, 2), 16);
  auto ring = compute_grend0(module_view(c.a, 3));
  const auto& F = ring.view.field;
  std::vector<FVec> all;
  for (PrimeField::Elem a = 0; a < 3; ++a)
    for (PrimeField::Elem b = 0; b < 3; ++b) all.push_back({a, b});
  for (const auto& x : all) {
    CHECK(ring.multiply(ring.identity, x) == x);
    CHECK(ring.multiply(x, ring.identity) == x);
    for (const auto& y : all) {
      CHECK(ring.multiply(x, y) == ring.multiply(y, x));
      for (const auto& z : all) CHECK(ring.multiply(ring.multiply(x, y), z) == ring.multiply(x, ring.multiply(y, z)));
    }
    // F-scalars are central.
    auto two = FVec{F.mul(2, ring.identity[0]), F.mul(2, ring.identity[1])};
    CHECK(ring.multiply(two, x) == ring.multiply(x, two));
  }
}

TEST_CASE("Schur: every nonzero element is invertible in every degree") {
  auto c = thin_case(ExtField(3, 0, 2), 16);
  auto ring = compute_grend0(module_view(c.a, 3));
  const auto& F = ring.view.field;
  for (PrimeField::Elem a = 0; a < 3; ++a)
    for (PrimeField::Elem b = 0; b < 3; ++b) {
      if (a == 0 && b == 0) continue;
      auto m = ring.element(FVec{a, b});
      for (const auto& mat : m.maps) CHECK(la::determinant(F, mat) != 0);
    }
}

TEST_CASE("scalar action reproduces multiplication in E") {
  std::mt19937 rng(29);
  for (auto [p, u, v] : {std::array{3u, 0u, 2u}, std::array{2u, 1u, 1u}, std::array{5u, 0u, 2u}}) {
    auto c = thin_case(ExtField(p, u, v), 14);
    auto ring = compute_grend0(module_view(c.a, 3));
    auto id = identify_field(ring, &c.f);
    const auto& F = ring.view.field;
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    std::uniform_int_distribution<int> deg(3, 14);
    for (int trial = 0; trial < 100; ++trial) {
      auto a = d(rng), b = d(rng);
      int i = deg(rng);
      FVec vc{d(rng), d(rng)};
      auto e = combo(F, ring, a, b, id.mu_hat);
      auto got = ambient_coords(ring.view, i, scalar_action(ring, e, i, vc));
      auto amb = ambient_coords(ring.view, i, vc);
      auto h = subfield::from_f(i, amb);
      h.coords[0] = c.f.mul(c.f.make(a, b), h.coords[0]);
      CHECK(got == subfield::to_f(c.f, h));
    }
  }
}

TEST_CASE("identity acts trivially and the action commutes with ad") {
  auto c = thin_case(ExtField(3, 0, 2), 16);
  auto ring = compute_grend0(module_view(c.a, 3));
  auto id = identify_field(ring, &c.f);
  for (int i = 3; i < 16; ++i) {
    for (PrimeField::Elem s = 0; s < 3; ++s)
      for (PrimeField::Elem t = 0; t < 3; ++t) {
        FVec v{s, t};
        CHECK(scalar_action(ring, ring.identity, i, v) == v);
        // sigma_{i+1} = sigma_i: mu_hat([l, X]) = [mu_hat(l), X].
        auto l = ambient_coords(ring.view, i, v);
        auto fl = ambient_coords(ring.view, i, scalar_action(ring, id.mu_hat, i, v));
        auto lx = c.a.act(i, l, 0);
        auto flx = c.a.act(i, fl, 0);
        auto lhs = ambient_coords(ring.view, i + 1,
                                  scalar_action(ring, id.mu_hat, i + 1, module_coords(ring.view, i + 1, lx)));
        CHECK(lhs == flx);
      }
  }
  CHECK_THROWS_AS(scalar_action(ring, ring.identity, 17, FVec{1, 0}), Error);
  CHECK_THROWS_AS(scalar_action(ring, ring.identity, 2, FVec{1, 0}), Error);
}

TEST_CASE("graded endomorphisms of positive degree obey the bound") {
  auto c = thin_case(ExtField(3, 0, 2), 20);
  auto view = module_view(c.a, 3);
  auto g0 = grend_d_dimension(view, 0);
  CHECK(g0.dim == 2);
  CHECK(g0.bound == 2);
  for (int d = 1; d <= 3; ++d) {
    auto g = grend_d_dimension(view, d);
    CHECK(g.dim <= g.bound);
  }
  CHECK_THROWS_AS(solve_graded(view, 18), Error);
}
