#include "thinlie/subfield.hpp"

#include <algorithm>

namespace thinlie::subfield {

namespace la = linalg;
using maxclass::ProjPoint;

bool independent(const ExtField& f, const GeneratorPair& g) {
  return !f.is_zero(f.sub(f.mul(g.alpha(), g.delta()), f.mul(g.beta(), g.gamma())));
}

FVec to_f(const ExtField&, const HomElem& e) {
  if (e.degree == 1) return {e.coords[0].c0, e.coords[0].c1, e.coords[1].c0, e.coords[1].c1};
  return {e.coords[0].c0, e.coords[0].c1};
}

HomElem from_f(int degree, std::span<const PrimeField::Elem> c) {
  if (degree == 1) return {1, {ExtElem{c[0], c[1]}, ExtElem{c[2], c[3]}}};
  return {degree, {ExtElem{c[0], c[1]}, ExtElem{}}};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Thin: return "thin";
    case Verdict::MaximalClass: return "maximal";
    case Verdict::RConstrained: return "rconstrained";
    case Verdict::Degenerate: return "degenerate";
  }
  return "unknown";
}

FVec SubalgebraAnalysis::act(int degree, std::span<const PrimeField::Elem> u, int g) const {
  const auto& m = ad.at(static_cast<std::size_t>(degree))[static_cast<std::size_t>(g)];
  // row vector times matrix
  FVec out(m.cols(), 0);
  const auto& f = F();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (u[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] = f.add(out[c], f.mul(u[r], m(r, c)));
  }
  return out;
}

namespace {

// Calls fn on every element of the F-span of the rows of b whose first
// nonzero coefficient is 1; one representative per F-line.
template <class Fn>
bool for_each_line(const PrimeField& f, const FMat& b, Fn&& fn) {
  const std::size_t k = b.rows();
  if (k == 0) return true;
  const std::uint32_t p = f.p();
  std::vector<PrimeField::Elem> coef(k, 0);
  for (std::size_t lead = 0; lead < k; ++lead) {
    // coef[lead] = 1, coef[j] = 0 for j < lead, free for j > lead.
    std::size_t free = k - lead - 1;
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < free; ++j) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      FVec v(b.row(lead).begin(), b.row(lead).end());
      for (std::size_t j = lead + 1; j < k; ++j) {
        auto c = static_cast<PrimeField::Elem>(rest % p);
        rest /= p;
        if (c != 0) v = la::axpy(f, c, b.row(j), v);
      }
      if (!fn(v)) return false;
    }
  }
  return true;
}

std::uint64_t line_count(std::uint32_t p, std::size_t k) {
  std::uint64_t n = 0, pw = 1;
  for (std::size_t j = 0; j < k; ++j) {
    n += pw;
    pw *= p;
  }
  return n;
}

constexpr std::uint64_t kBruteForceBudget = 50'000'000;

void check_budget(const SubalgebraAnalysis& a, std::uint64_t per_element) {
  std::uint64_t total = 0;
  for (int i = 1; i <= a.window; ++i) total += line_count(a.F().p(), a.L(i).rows()) * per_element;
  if (total > kBruteForceBudget)
    throw Error(ErrorCode::WindowTooLargeForBruteForce,
                "brute force over " + std::to_string(total) + " elements exceeds the budget");
}

FMat span_of(const PrimeField& f, std::size_t cols, const std::vector<FVec>& rows) {
  return la::span(f, la::from_rows(f, cols, rows));
}

FMat centralizer_f_basis(const ExtField& f, const ProjPoint& c) {
  auto e = HomElem::gen(c.alpha, c.beta);
  auto me = HomElem::gen(f.mul(f.mu(), c.alpha), f.mul(f.mu(), c.beta));
  return la::from_rows(f.base(), 4, {to_f(f, e), to_f(f, me)});
}

int d_value(const ExtField& f, const FMat& l1, const ProjPoint& c) {
  auto r = la::rank(f.base(), la::stack<PrimeField>(l1, centralizer_f_basis(f, c)));
  return 4 - static_cast<int>(r);
}

void check_window(const Algebra& alg, int window) {
  if (window < 4 || window > alg.class_n())
    throw Error(ErrorCode::BadBound, "window " + std::to_string(window) + " outside [4, " +
                                         std::to_string(alg.class_n()) + "]");
}

}  // namespace

SubalgebraAnalysis generate_subalgebra(const Algebra& alg, const GeneratorPair& g, int window) {
  check_window(alg, window);
  const auto& E = alg.field();
  const auto& F = E.base();
  SubalgebraAnalysis a;
  a.algebra = &alg;
  a.gens = g;
  a.window = window;
  const auto n = static_cast<std::size_t>(window) + 1;
  a.basis.resize(n);
  a.ad.resize(n);
  a.dims.assign(n, 0);
  a.d.assign(n, -1);

  // ad X, ad Y on the ambient F-basis of each M_i.
  for (int i = 1; i < window; ++i) {
    for (int gi = 0; gi < 2; ++gi) {
      const auto& gen = gi == 0 ? g.X : g.Y;
      FMat m(0, ambient_dim(i + 1), 0);
      for (std::size_t k = 0; k < ambient_dim(i); ++k) {
        FVec unit(ambient_dim(i), 0);
        unit[k] = 1;
        m.append_row(to_f(E, alg.bracket(from_f(i, unit), gen)));
      }
      a.ad[static_cast<std::size_t>(i)][static_cast<std::size_t>(gi)] = std::move(m);
    }
  }

  a.basis[1] = span_of(F, 4, {to_f(E, g.X), to_f(E, g.Y)});
  for (int i = 1; i < window; ++i) {
    std::vector<FVec> rows;
    const auto& li = a.L(i);
    for (std::size_t r = 0; r < li.rows(); ++r)
      for (int gi = 0; gi < 2; ++gi) rows.push_back(a.act(i, li.row(r), gi));
    a.basis[static_cast<std::size_t>(i + 1)] =
        rows.empty() ? FMat(0, 2, 0) : span_of(F, 2, rows);
  }
  for (int i = 1; i <= window; ++i) a.dims[static_cast<std::size_t>(i)] = static_cast<int>(a.L(i).rows());

  a.centralizers = maxclass::two_step_centralizers(alg.presentation());
  if (!independent(E, g)) {
    a.verdict = Verdict::Degenerate;
    return a;
  }
  for (int i = 2; i <= window - 1; ++i)
    a.d[static_cast<std::size_t>(i)] = d_value(E, a.L(1), a.centralizers.at(i));
  classify(a);
  return a;
}

std::vector<int> d_sequence(const Algebra& alg, const GeneratorPair& g, int window) {
  check_window(alg, window);
  const auto& E = alg.field();
  if (!independent(E, g)) throw Error(ErrorCode::DegenerateGenerators, "X and Y are E-dependent");
  auto l1 = span_of(E.base(), 4, {to_f(E, g.X), to_f(E, g.Y)});
  auto seq = maxclass::two_step_centralizers(alg.presentation());
  std::vector<int> out;
  for (int i = 2; i <= window - 1; ++i) out.push_back(d_value(E, l1, seq.at(i)));
  return out;
}

Verdict classify(SubalgebraAnalysis& a) {
  if (!independent(a.algebra->field(), a.gens))
    throw Error(ErrorCode::DegenerateGenerators, "X and Y are E-dependent");
  a.d0.clear();
  a.t1.reset();
  a.r_observed.reset();
  a.max_gap_end.reset();
  bool all_zero = true, all_one = true;
  for (int i = 2; i <= a.window - 1; ++i) {
    if (a.d_at(i) == 0) {
      a.d0.push_back(i);
      all_one = false;
    } else {
      all_zero = false;
    }
  }
  a.thin_pattern = a.dim(2) == 1;
  for (int i = 3; i <= a.window; ++i) a.thin_pattern = a.thin_pattern && a.dim(i) == 2;

  if (all_zero) {
    a.verdict = Verdict::Thin;
  } else if (all_one) {
    a.verdict = Verdict::MaximalClass;
  } else {
    a.verdict = Verdict::RConstrained;
    a.t1 = a.d0.front();
    for (std::size_t j = 1; j < a.d0.size(); ++j) {
      int gap = a.d0[j] - a.d0[j - 1];
      if (!a.r_observed || gap > *a.r_observed) {
        a.r_observed = gap;
        a.max_gap_end = a.d0[j];
      }
    }
    a.rc_pattern = true;
    for (int i = 2; i <= a.window; ++i) a.rc_pattern = a.rc_pattern && a.dim(i) == (i <= *a.t1 ? 1 : 2);
    a.r_bounds_ok = a.r_observed && *a.r_observed >= 2 && *a.r_observed <= *a.t1;
  }
  if (a.t1)
    for (std::size_t j = 1; j < a.d0.size(); ++j)
      if (a.d0[j] - a.d0[j - 1] > *a.t1) a.r_bounds_ok = false;
  return a.verdict;
}

BruteForceResult verify_covering(const SubalgebraAnalysis& a) {
  if (a.verdict == Verdict::Degenerate)
    throw Error(ErrorCode::DegenerateGenerators, "X and Y are E-dependent");
  check_budget(a, 1);
  const auto& F = a.F();
  BruteForceResult res;
  for (int i = 1; i < a.window && res.ok; ++i) {
    const auto& target = a.L(i + 1);
    for_each_line(F, a.L(i), [&](const FVec& u) {
      auto img = span_of(F, 2, {a.act(i, u, 0), a.act(i, u, 1)});
      if (img == target) return true;
      res = {false, i, u};
      return false;
    });
  }
  return res;
}

BruteForceResult verify_ideal_sandwich(const SubalgebraAnalysis& a, int r) {
  if (a.verdict == Verdict::Degenerate)
    throw Error(ErrorCode::DegenerateGenerators, "X and Y are E-dependent");
  if (r < 1) throw Error(ErrorCode::BadBound, "r must be positive");
  check_budget(a, static_cast<std::uint64_t>(r));
  const auto& F = a.F();
  BruteForceResult res;
  for (int i = 1; i + r <= a.window && res.ok; ++i) {
    for_each_line(F, a.L(i), [&](const FVec& l) {
      // Ideal closure of l, degree by degree, up to degree i + r.
      FMat cur = la::from_rows(F, ambient_dim(i), {l});
      for (int j = i; j < i + r; ++j) {
        std::vector<FVec> rows;
        for (std::size_t k = 0; k < cur.rows(); ++k)
          for (int gi = 0; gi < 2; ++gi) rows.push_back(a.act(j, cur.row(k), gi));
        cur = span_of(F, 2, rows);
      }
      if (cur == a.L(i + r)) return true;
      res = {false, i, l};
      return false;
    });
  }
  return res;
}

std::optional<int> expected_sandwich_witness(const SubalgebraAnalysis& a) {
  if (!a.max_gap_end) return std::nullopt;
  auto it = std::find(a.d0.begin(), a.d0.end(), *a.max_gap_end);
  return *(it - 1) + 1;
}

CentralizerReport check_centralizer_properties(const SubalgebraAnalysis& a) {
  CentralizerReport rep;
  const auto& F = a.F();
  auto fail = [&](bool& item, const std::string& what) {
    item = false;
    if (rep.first_failure.empty()) rep.first_failure = what;
  };
  if (a.dim(2) != 1) fail(rep.dim_l2_is_1, "dim L_2 = " + std::to_string(a.dim(2)));
  for (int i = 2; i < a.window; ++i)
    if (a.dim(i + 1) < a.dim(i)) fail(rep.dims_nondecreasing, "dim L_" + std::to_string(i + 1) + " drops");
  for (int i = 2; i <= a.window - 1; ++i) {
    const int di = a.d_at(i);
    if (di > 1) fail(rep.d_at_most_1, "d_" + std::to_string(i) + " = " + std::to_string(di));
    for_each_line(F, a.L(i), [&](const FVec& l) {
      auto r = la::rank(F, la::from_rows(F, 2, {a.act(i, l, 0), a.act(i, l, 1)}));
      if (di == 0 && r != 2) fail(rep.d0_images_2dim, "d_" + std::to_string(i) + " = 0 but image rank 1");
      if (di == 1 && r != 1)
        fail(rep.d1_images_1dim, "d_" + std::to_string(i) + " = 1 but image rank " + std::to_string(r));
      return true;
    });
  }
  return rep;
}

NormalizedPair normalize_generators(const Presentation& pres, const GeneratorPair& g) {
  const auto& f = pres.field();
  if (!maxclass::is_standard(pres)) throw Error(ErrorCode::Precondition, "presentation is not in standard form");
  if (!independent(f, g)) throw Error(ErrorCode::DegenerateGenerators, "X and Y are E-dependent");

  ExtElem al = g.alpha(), be = g.beta(), ga = g.gamma(), de = g.delta();
  if (f.is_zero(al)) {
    std::swap(al, ga);
    std::swap(be, de);
  }
  // Graded scaling u -> c^{deg u} u is an automorphism of M; use c = alpha^{-1}.
  auto ai = f.inv(al);
  be = f.mul(be, ai);
  ga = f.mul(ga, ai);
  de = f.mul(de, ai);
  al = f.one();

  std::string note;
  if (f.in_base(ga)) {
    de = f.sub(de, f.mul(ga, be));
    ga = f.zero();
    note = "L_1 meets Ey";
  } else {
    const auto a0 = f.embed(ga.c0);
    const auto b_inv = f.embed(f.base().inv(ga.c1));
    de = f.mul(f.sub(de, f.mul(a0, be)), b_inv);
    ga = f.mu();
  }

  auto t = la::identity(f, 2);
  if (!f.is_zero(be)) {
    t(1, 1) = be;
    de = f.div(de, be);
    be = f.one();
  } else if (note.empty()) {
    note = "X lies in Ex";
  }
  auto pres2 = maxclass::change_basis(pres, t);
  return {GeneratorPair::make(al, be, ga, de), std::move(pres2), std::move(t), note.empty(), note};
}

LineCriterion thin_line_criterion(const Presentation& pres, const GeneratorPair& g, int window) {
  const auto& f = pres.field();
  if (window < 4 || window > pres.class_n())
    throw Error(ErrorCode::BadBound, "window " + std::to_string(window) + " outside [4, class]");
  if (!independent(f, g)) throw Error(ErrorCode::DegenerateGenerators, "X and Y are E-dependent");
  LineCriterion res;
  auto seq = maxclass::two_step_centralizers(pres);
  for (int i = 2; i <= window - 1; ++i) {
    const auto& c = seq.at(i);
    if (c.is_ey())
      res.ey_occurs = true;
    else
      res.script_l.push_back(c.beta);
  }
  std::sort(res.script_l.begin(), res.script_l.end());
  res.script_l.erase(std::unique(res.script_l.begin(), res.script_l.end()), res.script_l.end());
  auto forbidden = [&](ExtElem lam) { return std::binary_search(res.script_l.begin(), res.script_l.end(), lam); };

  const auto al = g.alpha(), be = g.beta(), ga = g.gamma(), de = g.delta();
  const auto p = f.p();
  // (s : t) runs over (1 : t), t in F, then (0 : 1).
  res.ey_condition = true;
  bool pencil_clear = true;
  for (std::uint32_t k = 0; k <= p; ++k) {
    ExtElem s = k < p ? f.one() : f.zero();
    ExtElem t = k < p ? f.embed(k) : f.one();
    auto den = f.add(f.mul(s, al), f.mul(t, ga));
    auto num = f.add(f.mul(s, be), f.mul(t, de));
    if (f.is_zero(den)) {
      res.ey_condition = false;
      continue;
    }
    auto lam = f.div(num, den);
    res.pencil.push_back(lam);
    if (forbidden(lam)) pencil_clear = false;
  }
  res.avoided = (res.ey_condition || !res.ey_occurs) && pencil_clear;

  if (!f.is_zero(al) && !f.is_zero(ga)) {
    auto l0 = f.div(be, al), l1 = f.div(de, ga);
    if (l0 != l1) {
      bool clear = true;
      for (std::uint32_t k = 0; k < p; ++k) {
        auto tt = f.embed(k);
        auto lam = f.add(f.mul(tt, l0), f.mul(f.sub(f.one(), tt), l1));
        res.lambda_line.push_back(lam);
        if (forbidden(lam)) clear = false;
      }
      res.affine_line_avoided = clear && res.ey_condition;
    }
  }
  return res;
}

}  // namespace thinlie::subfield
