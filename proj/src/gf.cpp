#include "thinlie/gf.hpp"

#include <string>

namespace thinlie {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroPair: return "ZeroPair";
    case ErrorCode::BadBound: return "BadBound";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::WindowTooLargeForBruteForce: return "WindowTooLargeForBruteForce";
    case ErrorCode::DegenerateGenerators: return "DegenerateGenerators";
    case ErrorCode::CoveringFails: return "CoveringFails";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NotEStable: return "NotEStable";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NotMetabelian: return "NotMetabelian";
    case ErrorCode::DimensionAnomaly: return "DimensionAnomaly";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
  }
  return "Unknown";
}

}  // namespace thinlie

namespace thinlie::gf {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 2 || p > 251 || !is_prime(p))
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime in [2, 251]");
  inverse_.assign(p, 0);
  for (Elem a = 1; a < p; ++a)
    for (Elem b = 1; b < p; ++b)
      if (a * b % p == 1) {
        inverse_[a] = b;
        break;
      }
}

PrimeField::Elem PrimeField::from_int(long long x) const noexcept {
  long long r = x % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a % p_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in F_" + std::to_string(p_));
  return inverse_[a % p_];
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = 1 % p_;
  Elem base = a % p_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool PrimeField::is_square(Elem x) const noexcept {
  for (Elem t = 0; t < p_; ++t)
    if (mul(t, t) == x % p_) return true;
  return false;
}

bool quadratic_irreducible(const PrimeField& f, PrimeField::Elem u, PrimeField::Elem v) noexcept {
  for (PrimeField::Elem t = 0; t < f.p(); ++t) {
    // t^2 - u t - v
    auto val = f.sub(f.sub(f.mul(t, t), f.mul(u, t)), v);
    if (val == 0) return false;
  }
  return true;
}

ExtField::ExtField(std::uint32_t p, std::uint32_t u, std::uint32_t v)
    : base_(p), u_(u % p), v_(v % p) {
  if (!quadratic_irreducible(base_, u_, v_))
    throw Error(ErrorCode::ReduciblePolynomial,
                "t^2 - " + std::to_string(u_) + "t - " + std::to_string(v_) + " has a root mod " +
                    std::to_string(p));
}

ExtElem ExtField::make(long long c0, long long c1) const noexcept {
  return {base_.from_int(c0), base_.from_int(c1)};
}

ExtElem ExtField::add(Elem a, Elem b) const noexcept {
  return {base_.add(a.c0, b.c0), base_.add(a.c1, b.c1)};
}

ExtElem ExtField::sub(Elem a, Elem b) const noexcept {
  return {base_.sub(a.c0, b.c0), base_.sub(a.c1, b.c1)};
}

ExtElem ExtField::neg(Elem a) const noexcept { return {base_.neg(a.c0), base_.neg(a.c1)}; }

ExtElem ExtField::mul(Elem a, Elem b) const noexcept {
  const auto& f = base_;
  auto c2 = f.mul(a.c1, b.c1);
  // (a0 + a1 mu)(b0 + b1 mu) = a0 b0 + (a0 b1 + a1 b0) mu + a1 b1 (u mu + v)
  return {f.add(f.mul(a.c0, b.c0), f.mul(c2, v_)),
          f.add(f.add(f.mul(a.c0, b.c1), f.mul(a.c1, b.c0)), f.mul(c2, u_))};
}

ExtElem ExtField::conj(Elem a) const noexcept {
  // mu^p = u - mu, so a0 + a1 mu -> (a0 + a1 u) - a1 mu.
  return {base_.add(a.c0, base_.mul(a.c1, u_)), base_.neg(a.c1)};
}

PrimeField::Elem ExtField::norm(Elem a) const noexcept { return mul(a, conj(a)).c0; }

PrimeField::Elem ExtField::trace(Elem a) const noexcept { return add(a, conj(a)).c0; }

ExtElem ExtField::inv(Elem a) const {
  if (is_zero(a)) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in E");
  auto n_inv = base_.inv(norm(a));
  return scale(n_inv, conj(a));
}

ExtElem ExtField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

ExtElem ExtField::scale(PrimeField::Elem s, Elem a) const noexcept {
  return {base_.mul(s, a.c0), base_.mul(s, a.c1)};
}

std::vector<ExtElem> ExtField::elements() const {
  std::vector<ExtElem> out;
  out.reserve(order());
  for (std::uint32_t i = 0; i < order(); ++i) out.push_back(element(i));
  return out;
}

std::string ExtField::format(Elem a) const {
  if (a.c1 == 0) return std::to_string(a.c0);
  std::string mu_part = (a.c1 == 1 ? std::string() : std::to_string(a.c1)) + "mu";
  if (a.c0 == 0) return mu_part;
  return std::to_string(a.c0) + "+" + mu_part;
}

}  // namespace thinlie::gf
