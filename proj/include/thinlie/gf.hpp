#pragma once

// Exact arithmetic in F = F_p and in the quadratic extension
// E = F_p[mu] / (mu^2 - u*mu - v).

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "thinlie/error.hpp"

namespace thinlie::gf {

class PrimeField {
 public:
  using Elem = std::uint32_t;

  // Throws Error(NotPrime) unless 2 <= p <= 251 and p is prime.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t order() const noexcept { return p_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_int(long long x) const noexcept;

  Elem add(Elem a, Elem b) const noexcept { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const noexcept { return (a + p_ - b) % p_; }
  Elem neg(Elem a) const noexcept { return (p_ - a) % p_; }
  Elem mul(Elem a, Elem b) const noexcept { return (a * b) % p_; }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  bool is_zero(Elem a) const noexcept { return a == 0; }
  bool equal(Elem a, Elem b) const noexcept { return a == b; }

  // True when x is a square in F_p (0 counts as a square).
  bool is_square(Elem x) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
  std::vector<Elem> inverse_;
};

bool is_prime(std::uint32_t n) noexcept;

// c0 + c1*mu, coordinates reduced mod p.
struct ExtElem {
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;

  friend auto operator<=>(const ExtElem&, const ExtElem&) = default;
};

class ExtField {
 public:
  using Elem = ExtElem;

  // mu^2 = u*mu + v. Throws NotPrime or ReduciblePolynomial.
  ExtField(std::uint32_t p, std::uint32_t u, std::uint32_t v);

  const PrimeField& base() const noexcept { return base_; }
  std::uint32_t p() const noexcept { return base_.p(); }
  std::uint32_t u() const noexcept { return u_; }
  std::uint32_t v() const noexcept { return v_; }
  std::uint32_t order() const noexcept { return base_.p() * base_.p(); }

  Elem zero() const noexcept { return {}; }
  Elem one() const noexcept { return {1, 0}; }
  Elem mu() const noexcept { return {0, 1}; }
  Elem embed(PrimeField::Elem a) const noexcept { return {a, 0}; }
  Elem make(long long c0, long long c1) const noexcept;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  Elem scale(PrimeField::Elem s, Elem a) const noexcept;
  // Frobenius a -> a^p, the nontrivial automorphism over F.
  Elem conj(Elem a) const noexcept;
  // Norm and trace down to F.
  PrimeField::Elem norm(Elem a) const noexcept;
  PrimeField::Elem trace(Elem a) const noexcept;

  bool is_zero(Elem a) const noexcept { return a.c0 == 0 && a.c1 == 0; }
  bool equal(Elem a, Elem b) const noexcept { return a == b; }
  bool in_base(Elem a) const noexcept { return a.c1 == 0; }

  // Dense enumeration: index = c0 + p*c1, so F sits at indices [0, p).
  std::uint32_t index(Elem a) const noexcept { return a.c0 + p() * a.c1; }
  Elem element(std::uint32_t index) const noexcept { return {index % p(), index / p()}; }
  std::vector<Elem> elements() const;

  std::string format(Elem a) const;

  friend bool operator==(const ExtField& a, const ExtField& b) {
    return a.base_ == b.base_ && a.u_ == b.u_ && a.v_ == b.v_;
  }

 private:
  PrimeField base_;
  std::uint32_t u_;
  std::uint32_t v_;
};

// True when t^2 - u*t - v has no root in F_p.
bool quadratic_irreducible(const PrimeField& f, PrimeField::Elem u, PrimeField::Elem v) noexcept;

}  // namespace thinlie::gf
