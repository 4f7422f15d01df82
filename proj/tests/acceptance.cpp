// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "thinlie/reconstruct.hpp"

using namespace thinlie;
using maxclass::Algebra;
using maxclass::make_metabelian;
using maxclass::Presentation;
using maxclass::search_sequences;
using subfield::GeneratorPair;
using subfield::Verdict;

namespace {

const gf::ExtField F4(2, 1, 1);
const gf::ExtField F9(3, 0, 2);
const gf::ExtField F25(5, 0, 2);

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

int failures = 0;

void criterion(const char* id, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.ok && limit_s > 0 && s >= limit_s) out.fail("runtime over limit");
  if (!out.ok) ++failures;
  std::string limit = limit_s > 0 ? " (limit " + std::to_string(static_cast<int>(limit_s)) + "s)" : "";
  std::printf("%s %s  %.3fs%s%s%s\n", id, out.ok ? "PASS" : "FAIL", s, limit.c_str(),
              out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
}

GeneratorPair thin_pair(const gf::ExtField& f) {
  return GeneratorPair::make(f.one(), f.one(), f.mu(), f.add(f.mu(), f.one()));
}

GeneratorPair xy(const gf::ExtField& f) { return GeneratorPair::make(f.one(), f.zero(), f.zero(), f.one()); }

std::set<int> deviations(const Presentation& p, int window) {
  auto cs = maxclass::two_step_centralizers(p);
  std::set<int> dev;
  for (int i = 2; i < window; ++i)
    if (!cs.at(i).is_ey()) dev.insert(i);
  return dev;
}

// First searched presentation that is not the metabelian one.
Presentation deviating(const gf::ExtField& f, int n) {
  for (const auto& p : search_sequences(f, n, 100))
    if (!deviations(p, n).empty()) return p;
  throw Error(ErrorCode::Precondition, "no deviating presentation");
}

bool has_root(std::uint32_t p, const std::vector<gf::PrimeField::Elem>& poly) {
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

std::string str(int v) { return std::to_string(v); }

void ac1(Outcome& o) {
  Algebra m(make_metabelian(F9, 40));
  auto a = subfield::generate_subalgebra(m, thin_pair(F9), 40);
  o.require(a.verdict == Verdict::Thin, "verdict is not thin");
  o.require(a.dim(1) == 2, "dim L_1 != 2");
  o.require(a.dim(2) == 1, "dim L_2 != 1");
  for (int i = 3; i <= 40; ++i) o.require(a.dim(i) == 2, "dim L_" + str(i) + " != 2");
  auto cov = subfield::verify_covering(a);
  o.require(cov.ok, "covering fails");
}

void ac2(Outcome& o) {
  Algebra m(make_metabelian(F9, 40));
  auto a = subfield::generate_subalgebra(m, xy(F9), 40);
  o.require(a.verdict == Verdict::MaximalClass, "verdict is not maximal");
  for (int i = 2; i < 40; ++i) o.require(a.d_at(i) == 1, "d_" + str(i) + " != 1");
  for (int i = 2; i <= 40; ++i) o.require(a.dim(i) == 1, "dim L_" + str(i) + " != 1");
}

void ac3(Outcome& o) {
  std::size_t checked = 0, disagreements = 0, thin = 0;
  for (const auto& f : {F4, F9}) {
    for (const auto& pres : {make_metabelian(f, 12), deviating(f, 12)}) {
      Algebra m(pres);
      for (const auto& g : subfield::normalized_pairs(f)) {
        auto a = subfield::generate_subalgebra(m, g, 12);
        bool by_verdict = a.verdict == Verdict::Thin;
        bool pattern = a.dim(1) == 2 && a.dim(2) == 1;
        for (int i = 3; i <= 12; ++i) pattern = pattern && a.dim(i) == 2;
        bool by_covering = pattern && subfield::verify_covering(a).ok;
        bool by_lines = subfield::thin_line_criterion(pres, g, 12).avoided;
        ++checked;
        thin += by_verdict;
        if (by_verdict != by_covering || by_verdict != by_lines) ++disagreements;
      }
    }
  }
  o.require(disagreements == 0, str(static_cast<int>(disagreements)) + " disagreements");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " pairs, " + std::to_string(thin) + " thin";
}

void ac4(Outcome& o) {
  // A class-16 searched presentation whose r-constrained pair has two gaps.
  std::optional<Presentation> chosen;
  for (const auto& p : search_sequences(F9, 16, 100)) {
    if (deviations(p, 16).size() < 3) continue;
    chosen = p;
    break;
  }
  if (!chosen) return o.fail("no presentation with three deviations");
  Algebra m(*chosen);
  auto dev = deviations(*chosen, 16);
  auto a = subfield::generate_subalgebra(m, GeneratorPair::make(F9.zero(), F9.one(), F9.one(), F9.mu()), 16);
  o.require(a.verdict == Verdict::RConstrained, "verdict is not r-constrained");
  std::set<int> zeros, ones;
  for (int i = 2; i < 16; ++i) (a.d_at(i) == 0 ? zeros : ones).insert(i);
  o.require(!zeros.empty() && !ones.empty(), "d is constant");
  o.require(zeros == dev, "zeros of d differ from the deviations");
  if (!a.t1 || !a.r_observed) return o.fail("t1 or r_observed missing");
  for (int i = 2; i <= *a.t1; ++i) o.require(a.dim(i) == 1, "dim L_" + str(i) + " != 1");
  for (int i = *a.t1 + 1; i <= 16; ++i) o.require(a.dim(i) == 2, "dim L_" + str(i) + " != 2");
  int r = *a.r_observed;
  o.require(subfield::verify_ideal_sandwich(a, r).ok, "sandwich fails at r_observed");
  auto w = subfield::verify_ideal_sandwich(a, r - 1);
  o.require(!w.ok, "no witness at r_observed - 1");
  // t_{j0-1} + 1, computed from the zero set directly.
  std::vector<int> t(zeros.begin(), zeros.end());
  std::optional<int> expect;
  for (std::size_t j = 1; j < t.size() && !expect; ++j)
    if (t[j] - t[j - 1] == r) expect = t[j - 1] + 1;
  o.require(expect && w.degree == expect, "witness degree differs from t_{j0-1} + 1");
  o.detail = "zeros at";
  for (int z : zeros) o.detail += " " + str(z);
  o.detail += ", r = " + str(r) + ", witness degree " + (w.degree ? str(*w.degree) : "none");
}

void ac5_thin(Outcome& o) {
  for (const auto& f : {F4, F9, F25}) {
    Algebra m(make_metabelian(f, 20));
    auto a = subfield::generate_subalgebra(m, thin_pair(f), 20);
    auto view = endo::module_view(a, 3);
    auto ring = endo::compute_grend0(view);
    auto id = endo::identify_field(ring, &f);
    o.require(ring.dim() == 2, "thin endo ring has dimension " + str(ring.dim()));
    o.require(id.is_field && id.degree == 2, "thin endo ring is not a quadratic field");
    o.require(id.min_poly.size() == 3 && !has_root(f.p(), id.min_poly), "minimal polynomial is reducible");
    // Commutativity on the F-basis.
    auto n = static_cast<std::size_t>(ring.dim());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        endo::FVec ei(n, 0), ej(n, 0);
        ei[i] = ej[j] = 1;
        o.require(ring.multiply(ei, ej) == ring.multiply(ej, ei), "not commutative");
      }
    o.require(endo::schur_check(ring), "Schur invertibility fails");
    for (int d : {0, 1}) {
      auto g = endo::grend_d_dimension(view, d);
      o.require(g.dim <= g.bound, "dimension bound fails at d = " + str(d));
    }
  }
}

void ac5_scalar(Outcome& o) {
  Algebra m(make_metabelian(F9, 20));
  auto a = subfield::generate_subalgebra(m, xy(F9), 20);
  auto ring = endo::compute_grend0(endo::module_view(a, 3));
  o.require(ring.dim() == 1, "maximal pair: dimension " + str(ring.dim()));
  o.require(endo::schur_check(ring), "maximal pair: Schur fails");

  Algebra d(deviating(F9, 16));
  auto r = subfield::generate_subalgebra(d, GeneratorPair::make(F9.zero(), F9.one(), F9.one(), F9.mu()), 16);
  o.require(r.verdict == Verdict::RConstrained, "deviating pair is not r-constrained");
  auto rr = endo::compute_grend0(endo::module_view(r, 3));
  o.require(rr.dim() == 1, "r-constrained pair: dimension " + str(rr.dim()));
  o.require(endo::schur_check(rr), "r-constrained pair: Schur fails");
  for (int dd : {0, 1}) {
    auto g = endo::grend_d_dimension(endo::module_view(r, 3), dd);
    o.require(g.dim <= g.bound, "r-constrained bound fails at d = " + str(dd));
  }
}

void roundtrip_case(Outcome& o, const Algebra& m, const GeneratorPair& g, int window,
                    reconstruct::Branch expect) {
  auto r = reconstruct::verify_roundtrip(m, g, window);
  o.require(r.branch == expect, "wrong branch " + std::string(reconstruct::to_string(r.branch)));
  o.require(r.iso, "not isomorphic: " + r.first_failure.value_or("?"));
  o.require(r.centralizers_agree, "centralizer sequences differ");
  o.require(r.extracted && maxclass::validate(*r.extracted).ok, "extracted presentation fails validate");
  o.detail = std::string(reconstruct::to_string(r.branch)) + ", k = " + str(r.k) + ", usable window " +
             str(r.usable_window);
}

// Random samples: ad l on M_i against C_i, and the centralizer properties of L.
void ac7(Outcome& o) {
  std::mt19937 rng(20261017);
  std::vector<Algebra> algebras;
  for (const auto& f : {F4, F9, F25}) {
    algebras.emplace_back(make_metabelian(f, 16));
  }
  for (const auto& p : search_sequences(F4, 12, 3)) algebras.emplace_back(p);
  for (const auto& p : search_sequences(F9, 14, 3)) algebras.emplace_back(p);
  for (const auto& p : search_sequences(F25, 13, 3)) algebras.emplace_back(p);

  int samples = 0;
  while (samples < 200) {
    const auto& m = algebras[rng() % algebras.size()];
    const auto& f = m.field();
    const auto& pres = m.presentation();
    const int n = m.class_n();
    auto el = [&] { return f.make(rng() % f.p(), rng() % f.p()); };
    auto g = GeneratorPair::make(el(), el(), el(), el());
    auto X = g.X.coords, Y = g.Y.coords;
    if (f.is_zero(f.sub(f.mul(X[0], Y[1]), f.mul(X[1], Y[0])))) continue;
    ++samples;

    // ad l on M_i is an E-bijection iff l is outside C_i iff alpha a_i + beta b_i != 0.
    const int i = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
    auto al = el(), be = el();
    if (f.is_zero(al) && f.is_zero(be)) al = f.one();
    auto ell = maxclass::HomElem::gen(al, be);
    auto c = el();
    auto img = m.bracket(maxclass::HomElem::v(i, c), ell);
    auto lin = f.add(f.mul(al, pres.pair(i).a), f.mul(be, pres.pair(i).b));
    bool in_c = maxclass::normalize(f, al, be) == maxclass::two_step_centralizers(pres).at(i);
    o.require(in_c == f.is_zero(lin), "centralizer membership disagrees with the linear form");
    if (!f.is_zero(c)) o.require(img.is_zero() == in_c, "ad l not bijective off C_" + str(i));
    auto img1 = m.bracket(maxclass::HomElem::v(i, f.one()), ell);
    o.require(img.coords[0] == f.mul(c, img1.coords[0]) && f.is_zero(img.coords[1]),
              "ad l is not E-linear on M_" + str(i));

    auto a = subfield::generate_subalgebra(m, g, n);
    auto lem = subfield::check_centralizer_properties(a);
    if (!lem.ok()) o.fail("centralizer properties: " + lem.first_failure);
  }
  o.detail = std::to_string(samples) + " samples" + (o.detail.empty() ? "" : "; " + o.detail);
}

void ac8(Outcome& o) {
  for (const auto& f : {F4, F9, F25})
    for (int n = 4; n <= 40; ++n)
      o.require(maxclass::validate(make_metabelian(f, n)).ok, "metabelian fails at n = " + str(n));

  std::vector<maxclass::AdjointPair> pairs(4, {F9.one(), F9.zero()});
  pairs[1] = {F9.zero(), F9.one()};
  auto rep = maxclass::validate(Presentation(F9, 6, pairs));
  o.require(!rep.ok && rep.first_failure && rep.first_failure->describe() == "jacobi (v2, x, y)",
            "mutated presentation does not fail at (v2, x, y)");

  std::size_t searched = 0;
  auto all = [&](const gf::ExtField& f, int n) {
    for (const auto& p : search_sequences(f, n, 1000)) {
      ++searched;
      o.require(maxclass::validate(p).ok, "searched presentation fails validate");
    }
  };
  all(F9, 12);
  all(F9, 14);
  all(F9, 16);
  all(F4, 12);
  all(F25, 13);
  if (o.ok) o.detail = std::to_string(searched) + " searched presentations valid";
}

void ac9(Outcome& o) {
  auto row = [&](const char* name, const Presentation& p) {
    auto t = subfield::scan(Algebra(p), 12);
    o.require(t.counts_agree(), std::string(name) + ": counts differ");
    o.detail += std::string(o.detail.empty() ? "" : ", ") + name + " " + std::to_string(t.thin) + "/" +
                std::to_string(t.thin_by_lines);
  };
  row("F4", make_metabelian(F4, 12));
  row("F9", make_metabelian(F9, 12));
  row("F9-deviating", deviating(F9, 12));
}

}  // namespace

int main() {
  criterion("AC1", 1, ac1);
  criterion("AC2", 1, ac2);
  criterion("AC3", 60, ac3);
  criterion("AC4", 30, ac4);
  criterion("AC5 thin", 5, ac5_thin);
  criterion("AC5 scalar", 5, ac5_scalar);
  criterion("AC6 rho'", 10, [](Outcome& o) {
    Algebra m(make_metabelian(F9, 40));
    roundtrip_case(o, m, thin_pair(F9), 40, reconstruct::Branch::RhoPrime);
  });
  criterion("AC6 rho", 10, [](Outcome& o) {
    Algebra m(search_sequences(F9, 16, 100).at(1));
    roundtrip_case(o, m, thin_pair(F9), 16, reconstruct::Branch::Rho);
  });
  criterion("AC7", 30, ac7);
  criterion("AC8", 10, ac8);
  criterion("AC9", 0, ac9);
  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
