#include "thinlie/reconstruct.hpp"

#include <algorithm>

namespace thinlie::reconstruct {

namespace la = linalg;
using gf::PrimeField;
using maxclass::HomElem;
using subfield::from_f;
using subfield::to_f;
using Elem = PrimeField::Elem;

std::string_view to_string(Branch b) { return b == Branch::Rho ? "rho" : "rho_prime"; }

namespace {

// [a, b] for a in T_da, b in T_db, ambient coordinates.
FVec t_bracket(const SubalgebraAnalysis& t, int da, std::span<const Elem> a, int db, std::span<const Elem> b) {
  const auto& alg = *t.algebra;
  return to_f(alg.field(), alg.bracket(from_f(da, a), from_f(db, b)));
}

bool nonzero(std::span<const Elem> v) {
  return std::any_of(v.begin(), v.end(), [](Elem e) { return e != 0; });
}

// Some [T_i, T_j] with i, j >= from and i + j <= window is nonzero.
std::optional<std::pair<int, int>> nonabelian_witness(const SubalgebraAnalysis& t, int from, int window) {
  for (int i = from; 2 * i <= window; ++i)
    for (int j = i; i + j <= window; ++j)
      for (std::size_t r = 0; r < t.L(i).rows(); ++r)
        for (std::size_t s = 0; s < t.L(j).rows(); ++s)
          if (nonzero(t_bracket(t, i, t.L(i).row(r), j, t.L(j).row(s)))) return std::pair{i, j};
  return std::nullopt;
}

FVec coords_in_T(const SubalgebraAnalysis& t, int degree, std::span<const Elem> u) {
  auto e = la::rref(t.F(), t.L(degree), false);
  auto c = la::coordinates_in_echelon(t.F(), e, u);
  if (!c) throw Error(ErrorCode::Precondition, "element is not in T_" + std::to_string(degree));
  return *c;
}

// E-vector of an E-matrix, row-major.
std::vector<ExtElem> flatten(const EMat& m) { return m.data(); }

std::size_t e_rank(const ExtField& f, const std::vector<EMat>& mats) {
  if (mats.empty()) return 0;
  la::Mat<ExtField> m(0, mats.front().data().size(), f.zero());
  for (const auto& x : mats) m.append_row(flatten(x));
  return la::rank(f, m);
}

// Rank over F of the matrices viewed as F-vectors.
std::size_t f_rank(const PrimeField& F, const std::vector<EMat>& mats) {
  if (mats.empty()) return 0;
  subfield::FMat m(0, 2 * mats.front().data().size(), 0);
  for (const auto& x : mats) {
    FVec row;
    for (const auto& e : x.data()) {
      row.push_back(e.c0);
      row.push_back(e.c1);
    }
    m.append_row(row);
  }
  return la::rank(F, m);
}

}  // namespace

StructureFlags detect_structure(const SubalgebraAnalysis& t, int window) {
  if (t.verdict != subfield::Verdict::Thin) throw Error(ErrorCode::Precondition, "T is not thin");
  if (window > t.window) throw Error(ErrorCode::OutOfWindow, "window exceeds the analysis window");
  StructureFlags flags;
  flags.metabelian = !nonabelian_witness(t, 2, window);
  if (flags.metabelian) {
    flags.k = 2;
  } else {
    bool found = false;
    for (int k = 3; 2 * k + 1 <= window; ++k)
      if (!nonabelian_witness(t, k, window)) {
        flags.k = k;
        found = true;
        break;
      }
    if (!found) {
      flags.witness = nonabelian_witness(t, 3, window);
      if (!flags.witness && 7 > window)
        throw Error(ErrorCode::WindowTooSmall, "window " + std::to_string(window) + " cannot separate T^3 from abelian");
      flags.k = 3;
      flags.insoluble_or_undetected = true;
    }
  }
  flags.z_degree = flags.k - 1;
  flags.z = t.L(flags.z_degree).row_vector(0);
  return flags;
}

ThinContext make_context(const SubalgebraAnalysis& t) {
  if (t.verdict != subfield::Verdict::Thin) throw Error(ErrorCode::Precondition, "T is not thin");
  ThinContext ctx;
  ctx.t = &t;
  ctx.ring = endo::compute_grend0(endo::module_view(t, 3));
  ctx.field = endo::identify_field(ctx.ring, &t.algebra->field());
  if (ctx.field.degree != 2) throw Error(ErrorCode::Precondition, "endomorphism field has degree 1");
  return ctx;
}

std::size_t RhoRep::position(int degree) const {
  return slot_degrees.size() + static_cast<std::size_t>(degree - k);
}

namespace {

struct ECoords {
  std::vector<subfield::FMat> inv;  // inverse of [w_i ; mu_hat w_i] by degree
};

RhoRep build_generic(const ThinContext& ctx, Branch branch, int k, std::vector<int> slot_degrees,
                     std::vector<FVec> slot_elems) {
  const auto& t = *ctx.t;
  const auto& E = t.algebra->field();
  const auto& F = t.F();
  RhoRep rep;
  rep.branch = branch;
  rep.k = k;
  rep.top = t.window;
  rep.slot_degrees = std::move(slot_degrees);
  rep.slot_elems = std::move(slot_elems);
  const int top = rep.top;
  rep.w.resize(static_cast<std::size_t>(top) + 1);
  rep.dim = rep.slot_degrees.size() + static_cast<std::size_t>(top - k + 1);

  // E-coordinates on I through w_i and mu_hat w_i.
  std::vector<subfield::FMat> inv(static_cast<std::size_t>(top) + 1);
  for (int i = k; i <= top; ++i) {
    if (t.dim(i) != 2) throw Error(ErrorCode::NotEStable, "T_" + std::to_string(i) + " is not an E-line");
    auto wi = t.L(i).row_vector(0);
    auto mc = endo::module_coords(ctx.ring.view, i, wi);
    auto mw = endo::ambient_coords(ctx.ring.view, i, endo::scalar_action(ctx.ring, ctx.field.mu_hat, i, mc));
    auto b = la::from_rows(F, 2, {wi, mw});
    auto bi = la::inverse(F, b);
    if (!bi) throw Error(ErrorCode::NotEStable, "mu_hat fixes the line of w_" + std::to_string(i));
    rep.w[static_cast<std::size_t>(i)] = std::move(wi);
    inv[static_cast<std::size_t>(i)] = std::move(*bi);
  }
  auto ecoord = [&](int i, const FVec& v) {
    const auto& bi = inv[static_cast<std::size_t>(i)];
    return ExtElem{F.add(F.mul(v[0], bi(0, 0)), F.mul(v[1], bi(1, 0))),
                   F.add(F.mul(v[0], bi(0, 1)), F.mul(v[1], bi(1, 1)))};
  };

  rep.images.resize(static_cast<std::size_t>(top) + 1);
  for (int d = 1; d <= top; ++d) {
    for (std::size_t r = 0; r < t.L(d).rows(); ++r) {
      const auto tv = t.L(d).row(r);
      EMat a = la::zeros(E, rep.dim, rep.dim);
      for (std::size_t s = 0; s < rep.slot_degrees.size(); ++s) {
        const int target = rep.slot_degrees[s] + d;
        if (target > top) continue;
        auto img = t_bracket(t, rep.slot_degrees[s], rep.slot_elems[s], d, tv);
        if (target >= k) {
          a(rep.position(target), s) = ecoord(target, img);
          continue;
        }
        if (!nonzero(img)) continue;
        bool placed = false;
        for (std::size_t s2 = 0; s2 < rep.slot_degrees.size() && !placed; ++s2) {
          if (rep.slot_degrees[s2] != target) continue;
          auto c = la::solve_left(F, la::from_rows(F, img.size(), {rep.slot_elems[s2]}), std::span<const Elem>(img));
          if (c) {
            a(s2, s) = E.embed((*c)[0]);
            placed = true;
          }
        }
        if (!placed) throw Error(ErrorCode::Precondition, "slot image leaves the representation space");
      }
      for (int i = k; i + d <= top; ++i) {
        auto img = t_bracket(t, i, rep.w[static_cast<std::size_t>(i)], d, tv);
        a(rep.position(i + d), rep.position(i)) = ecoord(i + d, img);
      }
      rep.images[static_cast<std::size_t>(d)].push_back(std::move(a));
    }
  }

  // rho([t, t']) = [rho(t), rho(t')]_N on basis pairs.
  for (int da = 1; da <= top && rep.homomorphism_ok; ++da)
    for (int db = da; da + db <= top && rep.homomorphism_ok; ++db)
      for (std::size_t r = 0; r < t.L(da).rows() && rep.homomorphism_ok; ++r)
        for (std::size_t s = 0; s < t.L(db).rows() && rep.homomorphism_ok; ++s) {
          auto br = t_bracket(t, da, t.L(da).row(r), db, t.L(db).row(s));
          auto lhs = rho_of(ctx, rep, da + db, br);
          auto rhs = n_bracket(E, rep.images[static_cast<std::size_t>(da)][r], rep.images[static_cast<std::size_t>(db)][s]);
          if (!(lhs == rhs)) {
            rep.homomorphism_ok = false;
            rep.homomorphism_failure = "basis pair in degrees (" + std::to_string(da) + ", " + std::to_string(db) + ")";
          }
        }

  for (int d = 1; d <= rep.usable_window(); ++d)
    if (f_rank(F, rep.images[static_cast<std::size_t>(d)]) != static_cast<std::size_t>(t.dim(d)))
      rep.unfaithful_degrees.push_back(d);
  if (!rep.unfaithful_degrees.empty())
    throw Error(ErrorCode::NotFaithful, "representation is not faithful in degree " +
                                            std::to_string(rep.unfaithful_degrees.front()));
  return rep;
}

}  // namespace

EMat n_bracket(const ExtField& f, const EMat& p, const EMat& q) {
  return la::subtract(f, la::multiply(f, q, p), la::multiply(f, p, q));
}

EMat rho_of(const ThinContext& ctx, const RhoRep& rep, int degree, std::span<const Elem> u) {
  const auto& E = ctx.t->algebra->field();
  EMat out = la::zeros(E, rep.dim, rep.dim);
  if (degree > rep.top) return out;
  auto c = coords_in_T(*ctx.t, degree, u);
  const auto& imgs = rep.images[static_cast<std::size_t>(degree)];
  for (std::size_t r = 0; r < c.size(); ++r)
    if (c[r] != 0) out = la::add(E, out, la::scaled(E, E.embed(c[r]), imgs[r]));
  return out;
}

RhoRep build_rho(const ThinContext& ctx, const StructureFlags& flags) {
  if (flags.metabelian) throw Error(ErrorCode::Precondition, "T is metabelian; use rho'");
  return build_generic(ctx, Branch::Rho, flags.k, {flags.z_degree}, {flags.z});
}

RhoRep build_rho_prime(const ThinContext& ctx, const StructureFlags& flags) {
  if (!flags.metabelian) throw Error(ErrorCode::NotMetabelian, "[T^2, T^2] is nonzero in the window");
  const auto& t = *ctx.t;
  const auto& E = t.algebra->field();
  auto y = to_f(E, t.gens.Y);
  auto yx = to_f(E, t.algebra->bracket(t.gens.Y, t.gens.X));
  return build_generic(ctx, Branch::RhoPrime, 3, {1, 2}, {y, yx});
}

ReconstructedAlgebra assemble_N(const ThinContext& ctx, const RhoRep& rep) {
  const auto& t = *ctx.t;
  const auto& E = t.algebra->field();
  const int u = rep.usable_window();
  if (u < 4) throw Error(ErrorCode::WindowTooSmall, "usable window " + std::to_string(u) + " is below 4");

  std::vector<int> dims(static_cast<std::size_t>(u) + 1, 0);
  for (int d = 1; d <= u; ++d) {
    dims[static_cast<std::size_t>(d)] = static_cast<int>(e_rank(E, rep.images[static_cast<std::size_t>(d)]));
    const int want = d == 1 ? 2 : 1;
    if (dims[static_cast<std::size_t>(d)] != want)
      throw Error(ErrorCode::DimensionAnomaly, "dim_E N_" + std::to_string(d) + " = " +
                                                   std::to_string(dims[static_cast<std::size_t>(d)]));
  }
  auto nx = rho_of(ctx, rep, 1, to_f(E, t.gens.X));
  auto ny = rho_of(ctx, rep, 1, to_f(E, t.gens.Y));
  if (e_rank(E, {nx, ny}) != 2) throw Error(ErrorCode::DimensionAnomaly, "rho(X), rho(Y) are E-dependent");

  auto spans_N = [&](int d, const EMat& m) {
    auto mats = rep.images[static_cast<std::size_t>(d)];
    mats.push_back(m);
    return !la::is_zero(E, m) && e_rank(E, mats) == 1;
  };
  std::vector<EMat> n(static_cast<std::size_t>(u) + 1);
  n[2] = n_bracket(E, ny, nx);
  if (!spans_N(2, n[2])) throw Error(ErrorCode::DimensionAnomaly, "[N_1, N_1] != N_2");
  std::vector<maxclass::AdjointPair> pairs;
  for (int i = 2; i < u; ++i) {
    const auto& cur = n[static_cast<std::size_t>(i)];
    auto p = n_bracket(E, cur, nx);
    auto q = n_bracket(E, cur, ny);
    if (!la::is_zero(E, p)) {
      // q = b p
      const auto& pd = p.data();
      auto it = std::find_if(pd.begin(), pd.end(), [&](const ExtElem& e) { return !E.is_zero(e); });
      auto b = E.div(q.data()[static_cast<std::size_t>(it - pd.begin())], *it);
      if (!(q == la::scaled(E, b, p)))
        throw Error(ErrorCode::DimensionAnomaly, "[N_" + std::to_string(i) + ", N_1] is not a line");
      pairs.push_back({E.one(), b});
      n[static_cast<std::size_t>(i + 1)] = std::move(p);
    } else if (!la::is_zero(E, q)) {
      pairs.push_back({E.zero(), E.one()});
      n[static_cast<std::size_t>(i + 1)] = std::move(q);
    } else {
      throw Error(ErrorCode::DimensionAnomaly, "[N_" + std::to_string(i) + ", N_1] = 0");
    }
    if (!spans_N(i + 1, n[static_cast<std::size_t>(i + 1)]))
      throw Error(ErrorCode::DimensionAnomaly, "[N_" + std::to_string(i) + ", N_1] != N_" + std::to_string(i + 1));
  }
  Presentation pres(E, u, std::move(pairs));
  bool ok = maxclass::validate(pres).ok;
  return {u, std::move(dims), std::move(nx), std::move(ny), std::move(n), std::move(pres), ok};
}

bool centralizers_match(const Presentation& a, const Presentation& b) {
  if (a.class_n() != b.class_n() || !(a.field() == b.field())) return false;
  const auto& f = a.field();
  auto sa = maxclass::two_step_centralizers(maxclass::standard_generators(a).pres);
  auto sb = maxclass::two_step_centralizers(maxclass::standard_generators(b).pres);
  std::optional<ExtElem> scale;
  for (int i = 2; i < a.class_n(); ++i) {
    const auto& ca = sa.at(i);
    const auto& cb = sb.at(i);
    if (ca.is_ey() != cb.is_ey()) return false;
    if (ca.is_ey()) continue;
    if (f.is_zero(ca.beta) != f.is_zero(cb.beta)) return false;
    if (f.is_zero(ca.beta)) continue;
    auto s = f.div(cb.beta, ca.beta);
    if (scale && *scale != s) return false;
    scale = s;
  }
  return true;
}

RoundtripReport verify_roundtrip(const maxclass::Algebra& m, const subfield::GeneratorPair& g, int window) {
  const auto& E = m.field();
  auto t = subfield::generate_subalgebra(m, g, window);
  if (t.verdict != subfield::Verdict::Thin)
    throw Error(ErrorCode::Precondition, std::string("pair is ") + std::string(subfield::to_string(t.verdict)) + ", not thin");
  auto ctx = make_context(t);
  RoundtripReport rep;
  rep.embedding = ctx.field.embedding;
  rep.flags = detect_structure(t, window);
  auto rho = rep.flags.metabelian ? build_rho_prime(ctx, rep.flags) : build_rho(ctx, rep.flags);
  rep.branch = rho.branch;
  rep.k = rho.k;
  rep.usable_window = rho.usable_window();
  auto fail = [&](std::string what) {
    if (!rep.first_failure) rep.first_failure = std::move(what);
  };
  if (!rho.homomorphism_ok) fail("rho is not a homomorphism: " + rho.homomorphism_failure);

  auto n = assemble_N(ctx, rho);
  rep.extracted = n.pres;
  if (!n.validated) fail("extracted presentation fails validation");
  const int u = n.usable_window;

  // phi: M -> N, E-linear extension of rho.
  auto ginv = la::inverse(E, la::from_rows(E, 2, {{g.alpha(), g.beta()}, {g.gamma(), g.delta()}}));
  std::vector<EMat> phi(static_cast<std::size_t>(u) + 1);
  phi[0] = la::add(E, la::scaled(E, (*ginv)(0, 0), n.nx), la::scaled(E, (*ginv)(0, 1), n.ny));
  phi[1] = la::add(E, la::scaled(E, (*ginv)(1, 0), n.nx), la::scaled(E, (*ginv)(1, 1), n.ny));
  for (int i = 2; i <= u; ++i) {
    auto li = t.L(i).row_vector(0);
    auto c = from_f(i, li).coords[0];
    phi[static_cast<std::size_t>(i)] = la::scaled(E, E.inv(c), rho_of(ctx, rho, i, li));
  }
  auto phi_of = [&](const HomElem& e) {
    if (e.degree == 1)
      return la::add(E, la::scaled(E, e.coords[0], phi[0]), la::scaled(E, e.coords[1], phi[1]));
    return la::scaled(E, e.coords[0], phi[static_cast<std::size_t>(e.degree)]);
  };
  for (int i = 1; i <= u; ++i)
    for (std::size_t r = 0; r < t.L(i).rows(); ++r)
      if (!(phi_of(from_f(i, t.L(i).row(r))) == rho_of(ctx, rho, i, t.L(i).row(r))))
        fail("phi is not well defined in degree " + std::to_string(i));
  if (e_rank(E, {phi[0], phi[1]}) != 2) fail("phi is not injective in degree 1");
  for (int i = 2; i <= u; ++i)
    if (la::is_zero(E, phi[static_cast<std::size_t>(i)])) fail("phi vanishes in degree " + std::to_string(i));
  const auto& model = m.model();
  for (int b1 = 0; b1 <= u; ++b1)
    for (int b2 = 0; b2 <= u; ++b2) {
      const int s = maxclass::degree_of(b1) + maxclass::degree_of(b2);
      if (s > u) continue;
      auto c = model.basis_bracket(b1, b2);
      auto lhs = la::scaled(E, c, phi[static_cast<std::size_t>(s)]);
      auto rhs = n_bracket(E, phi[static_cast<std::size_t>(b1)], phi[static_cast<std::size_t>(b2)]);
      if (!(lhs == rhs))
        fail("phi([" + maxclass::basis_name(b1) + ", " + maxclass::basis_name(b2) + "]) differs");
    }
  rep.centralizers_agree = centralizers_match(maxclass::quotient(m.presentation(), u), n.pres);
  if (!rep.centralizers_agree) fail("centralizer sequences differ");
  rep.iso = !rep.first_failure;
  return rep;
}

IsoResult iso_search(const Presentation& a, const Presentation& b, int window) {
  const auto& f = a.field();
  if (!(f == b.field())) throw Error(ErrorCode::Precondition, "presentations over different fields");
  if (f.order() > 9 && window > 20)
    throw Error(ErrorCode::WindowTooLargeForBruteForce, "|E| > 9 with window > 20");
  auto qa = maxclass::quotient(a, window);
  auto qb = maxclass::quotient(b, window);
  const auto elems = f.elements();
  IsoResult res;
  EMat g = la::zeros(f, 2, 2);
  for (const auto& t00 : elems)
    for (const auto& t01 : elems)
      for (const auto& t10 : elems)
        for (const auto& t11 : elems) {
          // First nonzero entry is 1.
          const ExtElem entries[] = {t00, t01, t10, t11};
          auto lead = std::find_if(std::begin(entries), std::end(entries), [&](const ExtElem& e) { return !f.is_zero(e); });
          if (lead == std::end(entries) || *lead != f.one()) continue;
          if (f.is_zero(f.sub(f.mul(t00, t11), f.mul(t01, t10)))) continue;
          g(0, 0) = t00;
          g(0, 1) = t01;
          g(1, 0) = t10;
          g(1, 1) = t11;
          if (maxclass::change_basis(qa, g) == qb) {
            res.found = true;
            res.g1 = g;
            return res;
          }
        }
  return res;
}

}  // namespace thinlie::reconstruct
