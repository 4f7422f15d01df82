#include "thinlie/endo.hpp"

#include <algorithm>
#include <limits>

namespace thinlie::endo {

namespace la = linalg;
using Elem = PrimeField::Elem;

GradedModuleView module_view(const subfield::SubalgebraAnalysis& a, int k0, std::optional<int> top) {
  const int t = top.value_or(a.window);
  if (k0 < 1 || t > a.window || k0 > t)
    throw Error(ErrorCode::OutOfWindow, "module window [" + std::to_string(k0) + ", " + std::to_string(t) +
                                            "] outside [1, " + std::to_string(a.window) + "]");
  const auto& F = a.F();
  GradedModuleView v;
  v.field = F;
  v.k0 = k0;
  v.top = t;
  v.ext = a.algebra->field();
  const auto n = static_cast<std::size_t>(t) + 1;
  v.dims.assign(n, 0);
  v.ambient.resize(n);
  v.act[0].resize(n);
  v.act[1].resize(n);
  for (int i = k0; i <= t; ++i) {
    v.dims[static_cast<std::size_t>(i)] = a.dim(i);
    v.ambient[static_cast<std::size_t>(i)] = a.L(i);
  }
  for (int i = k0; i < t; ++i) {
    auto target = la::rref(F, a.L(i + 1));
    for (int g = 0; g < 2; ++g) {
      FMat m(0, static_cast<std::size_t>(a.dim(i + 1)), 0);
      for (std::size_t r = 0; r < a.L(i).rows(); ++r) {
        auto img = a.act(i, a.L(i).row(r), g);
        auto c = la::coordinates_in_echelon(F, target, std::span<const Elem>(img));
        if (!c) throw Error(ErrorCode::Precondition, "L is not closed under its generators");
        m.append_row(*c);
      }
      v.act[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)] = std::move(m);
    }
  }
  return v;
}

FVec module_coords(const GradedModuleView& v, int degree, std::span<const Elem> ambient) {
  auto e = la::rref(v.field, v.ambient.at(static_cast<std::size_t>(degree)));
  auto c = la::coordinates_in_echelon(v.field, e, ambient);
  if (!c) throw Error(ErrorCode::Precondition, "vector is not in V_" + std::to_string(degree));
  return *c;
}

FVec ambient_coords(const GradedModuleView& v, int degree, std::span<const Elem> coords) {
  const auto& b = v.ambient.at(static_cast<std::size_t>(degree));
  FVec out(b.cols(), 0);
  for (std::size_t r = 0; r < b.rows(); ++r)
    if (coords[r] != 0) out = la::axpy(v.field, coords[r], b.row(r), out);
  return out;
}

namespace {

FMat combine(const PrimeField& f, const std::vector<FMat>& parts, std::span<const Elem> theta) {
  FMat out = la::zeros(f, parts.front().rows(), parts.front().cols());
  for (std::size_t q = 0; q < parts.size(); ++q)
    if (theta[q] != 0) out = la::add(f, out, la::scaled(f, theta[q], parts[q]));
  return out;
}

FVec flatten(const FMat& m) { return m.data(); }

}  // namespace

std::vector<GradedMap> solve_graded(const GradedModuleView& v, int d) {
  const auto& F = v.field;
  if (d < 0 || v.k0 + d > v.top)
    throw Error(ErrorCode::OutOfWindow, "shift " + std::to_string(d) + " leaves no room in the window");
  const auto rows0 = static_cast<std::size_t>(v.dim(v.k0));
  const auto cols0 = static_cast<std::size_t>(v.dim(v.k0 + d));
  const std::size_t nparams = rows0 * cols0;
  if (nparams == 0) return {};

  // per_param[q][i - k0]: the map at degree i when theta = e_q.
  std::vector<std::vector<FMat>> per_param(nparams);
  for (std::size_t q = 0; q < nparams; ++q) {
    FMat m = la::zeros(F, rows0, cols0);
    m(q / cols0, q % cols0) = 1;
    per_param[q].push_back(std::move(m));
  }
  FMat constraints(0, nparams, 0);

  for (int i = v.k0; i + d < v.top; ++i) {
    const auto di1 = static_cast<std::size_t>(v.dim(i + 1));
    auto G = la::stack<PrimeField>(v.action(0, i), v.action(1, i));
    // Greedy choice of independent rows of G.
    std::vector<std::size_t> piv;
    FMat chosen(0, G.cols(), 0);
    for (std::size_t r = 0; r < G.rows() && piv.size() < di1; ++r) {
      auto trial = chosen;
      trial.append_row(G.row(r));
      if (la::rank(F, trial) == trial.rows()) {
        chosen = std::move(trial);
        piv.push_back(r);
      }
    }
    if (piv.size() < di1)
      throw Error(ErrorCode::CoveringFails, "V_" + std::to_string(i + 1) + " is not generated by V_" +
                                                std::to_string(i) + " under X, Y");
    auto inv = la::inverse(F, chosen);

    for (std::size_t q = 0; q < nparams; ++q) {
      const auto& fi = per_param[q].back();
      auto R = la::stack<PrimeField>(la::multiply(F, fi, v.action(0, i + d)),
                                     la::multiply(F, fi, v.action(1, i + d)));
      FMat Rp(0, R.cols(), 0);
      for (auto r : piv) Rp.append_row(R.row(r));
      per_param[q].push_back(la::multiply(F, *inv, Rp));
    }
    // Remaining rows: consistency of the propagation, linear in theta.
    for (std::size_t r = 0; r < G.rows(); ++r) {
      if (std::find(piv.begin(), piv.end(), r) != piv.end()) continue;
      const auto tcols = static_cast<std::size_t>(v.dim(i + 1 + d));
      std::vector<FVec> rows(tcols, FVec(nparams, 0));
      for (std::size_t q = 0; q < nparams; ++q) {
        const auto& fi = per_param[q][per_param[q].size() - 2];
        const auto& fnext = per_param[q].back();
        const auto& act = r < v.action(0, i).rows() ? v.action(0, i + d) : v.action(1, i + d);
        const auto src = r < v.action(0, i).rows() ? r : r - v.action(0, i).rows();
        // [f_i(b_src), g] - f_{i+1}([b_src, g])
        FVec lhs(tcols, 0);
        for (std::size_t k = 0; k < fi.cols(); ++k)
          if (fi(src, k) != 0) lhs = la::axpy(F, fi(src, k), act.row(k), lhs);
        for (std::size_t m = 0; m < di1; ++m)
          if (G(r, m) != 0) lhs = la::axpy(F, F.neg(G(r, m)), fnext.row(m), lhs);
        for (std::size_t c = 0; c < tcols; ++c) rows[c][q] = lhs[c];
      }
      for (const auto& row : rows)
        if (!la::is_zero(F, std::span<const Elem>(row))) constraints.append_row(row);
    }
  }

  auto kernel = la::rref(F, constraints).kernel;
  std::vector<GradedMap> out;
  for (std::size_t s = 0; s < kernel.rows(); ++s) {
    GradedMap gm;
    gm.shift = d;
    for (std::size_t lvl = 0; lvl < per_param.front().size(); ++lvl) {
      std::vector<FMat> parts;
      for (std::size_t q = 0; q < nparams; ++q) parts.push_back(per_param[q][lvl]);
      gm.maps.push_back(combine(F, parts, kernel.row(s)));
    }
    out.push_back(std::move(gm));
  }
  return out;
}

GradedMap EndoRing::element(std::span<const Elem> coords) const {
  GradedMap out;
  out.maps.resize(basis.front().maps.size());
  for (std::size_t lvl = 0; lvl < out.maps.size(); ++lvl) {
    std::vector<FMat> parts;
    for (const auto& b : basis) parts.push_back(b.maps[lvl]);
    out.maps[lvl] = combine(view.field, parts, coords);
  }
  return out;
}

FVec EndoRing::multiply(std::span<const Elem> a, std::span<const Elem> b) const {
  const auto& F = view.field;
  FVec out(basis.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out = la::axpy(F, F.mul(a[i], b[j]), mult[i][j], out);
    }
  }
  return out;
}

EndoRing compute_grend0(const GradedModuleView& v) {
  const auto& F = v.field;
  EndoRing ring;
  ring.view = v;
  ring.basis = solve_graded(v, 0);
  const std::size_t n = ring.basis.size();
  if (n == 0) throw Error(ErrorCode::NotAField, "no nonzero endomorphisms");

  auto level_matrix = [&](std::size_t lvl) {
    FMat m(0, flatten(ring.basis.front().maps[lvl]).size(), 0);
    for (const auto& b : ring.basis) m.append_row(flatten(b.maps[lvl]));
    return m;
  };
  const auto at_k0 = level_matrix(0);
  auto coords_of = [&](const FMat& m) {
    auto c = la::solve_left(F, at_k0, std::span<const Elem>(m.data()));
    if (!c) throw Error(ErrorCode::NotAField, "composition leaves the endomorphism space");
    return *c;
  };
  ring.identity = coords_of(la::identity(F, static_cast<std::size_t>(v.dim(v.k0))));
  ring.mult.assign(n, std::vector<FVec>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      ring.mult[a][b] = coords_of(la::multiply(F, ring.basis[a].maps[0], ring.basis[b].maps[0]));

  ring.table_crosscheck = true;
  if (ring.basis.front().maps.size() > 1) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto prod = la::multiply(F, ring.basis[a].maps[1], ring.basis[b].maps[1]);
        auto expect = ring.element(ring.mult[a][b]).maps[1];
        if (!(prod == expect)) ring.table_crosscheck = false;
      }
  }
  return ring;
}

namespace {

// All coordinate vectors of F^n in index order (first coordinate fastest).
template <class Fn>
void for_each_element(std::uint32_t p, std::size_t n, Fn&& fn) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    FVec c(n, 0);
    auto rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = static_cast<Elem>(rest % p);
      rest /= p;
    }
    if (!fn(c)) return;
  }
}

std::string match_embedding(const EndoRing& ring, const FVec& gen, const ExtField& E) {
  const auto& v = ring.view;
  if (!v.ext || v.ambient.empty()) return "n/a";
  const int k0 = v.k0;
  const auto elem0 = ring.element(gen);
  const auto& fk = elem0.maps[0];
  const auto mu = E.mu();
  const auto mu_conj = E.conj(mu);
  bool is_mu = true, is_conj = true;
  const auto& b = v.ambient[static_cast<std::size_t>(k0)];
  for (std::size_t r = 0; r < b.rows(); ++r) {
    auto elem = subfield::from_f(k0, b.row(r));
    auto scaled = [&](gf::ExtElem s) {
      auto e = elem;
      e.coords[0] = E.mul(s, e.coords[0]);
      e.coords[1] = E.mul(s, e.coords[1]);
      auto amb = subfield::to_f(E, e);
      auto ech = la::rref(v.field, b);
      return la::coordinates_in_echelon(v.field, ech, std::span<const Elem>(amb));
    };
    auto m1 = scaled(mu), m2 = scaled(mu_conj);
    if (!m1 || !m2) return "n/a";
    auto row = fk.row_vector(r);
    if (*m1 != row) is_mu = false;
    if (*m2 != row) is_conj = false;
  }
  if (is_mu) return "mu";
  if (is_conj) return "mu_conj";
  return "n/a";
}

}  // namespace

bool schur_check(const EndoRing& ring) {
  const auto& F = ring.view.field;
  bool ok = true;
  for_each_element(F.p(), ring.basis.size(), [&](const FVec& c) {
    if (la::is_zero(F, std::span<const Elem>(c))) return true;
    auto e = ring.element(c);
    for (const auto& m : e.maps)
      if (F.is_zero(la::determinant(F, m))) {
        ok = false;
        return false;
      }
    return true;
  });
  return ok;
}

FieldId identify_field(const EndoRing& ring, const ExtField* target) {
  const auto& F = ring.view.field;
  const std::size_t n = ring.basis.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (ring.mult[a][b] != ring.mult[b][a]) throw Error(ErrorCode::NotCommutative, "endomorphisms do not commute");
  if (n > 2) throw Error(ErrorCode::NotAField, "degree " + std::to_string(n) + " exceeds 2");
  if (!schur_check(ring)) throw Error(ErrorCode::NotAField, "a nonzero endomorphism is singular");

  FieldId id;
  id.degree = static_cast<int>(n);
  id.is_field = true;
  if (n == 1) {
    id.min_poly = {F.neg(1), 1};
    id.generator = ring.identity;
    return id;
  }
  if (!target && ring.view.ext) target = &*ring.view.ext;
  auto is_scalar = [&](const FVec& c) {
    // c in F * identity
    for (Elem s = 0; s < F.p(); ++s) {
      FVec t(n, 0);
      t = la::axpy(F, s, std::span<const Elem>(ring.identity), t);
      if (t == c) return true;
    }
    return false;
  };
  if (target) {
    const Elem u = target->u(), v = target->v();
    for_each_element(F.p(), n, [&](const FVec& c) {
      auto sq = ring.multiply(c, c);
      auto rhs = la::axpy(F, v, std::span<const Elem>(ring.identity), la::axpy(F, u, std::span<const Elem>(c), FVec(n, 0)));
      if (sq == rhs) {
        id.generator = c;
        return false;
      }
      return true;
    });
    if (id.generator.empty()) throw Error(ErrorCode::NotAField, "no root of the extension polynomial");
    id.min_poly = {F.neg(v), F.neg(u), 1};
    id.embedding = match_embedding(ring, id.generator, *target);
    id.mu_hat = id.generator;
    if (id.embedding == "mu_conj")
      id.mu_hat = la::axpy(F, F.neg(1), std::span<const Elem>(id.generator),
                           la::axpy(F, u, std::span<const Elem>(ring.identity), FVec(n, 0)));
    return id;
  }
  for_each_element(F.p(), n, [&](const FVec& c) {
    if (is_scalar(c)) return true;
    id.generator = c;
    return false;
  });
  // generator^2 = c0 + c1 generator
  auto sq = ring.multiply(id.generator, id.generator);
  FMat basis(0, n, 0);
  basis.append_row(ring.identity);
  basis.append_row(id.generator);
  auto c = la::solve_left(F, basis, std::span<const Elem>(sq));
  id.min_poly = {F.neg((*c)[0]), F.neg((*c)[1]), 1};
  id.is_field = gf::quadratic_irreducible(F, (*c)[1], (*c)[0]);
  if (!id.is_field) throw Error(ErrorCode::NotAField, "minimal polynomial is reducible");
  id.mu_hat = id.generator;
  return id;
}

FVec scalar_action(const EndoRing& ring, std::span<const Elem> e, int degree, std::span<const Elem> v) {
  const auto& view = ring.view;
  if (degree < view.k0 || degree > view.top)
    throw Error(ErrorCode::OutOfWindow, "degree " + std::to_string(degree) + " outside the module window");
  const auto elem = ring.element(e);
  const auto& m = elem.maps[static_cast<std::size_t>(degree - view.k0)];
  FVec out(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (v[r] != 0) out = la::axpy(view.field, v[r], m.row(r), out);
  return out;
}

GrendDimension grend_d_dimension(const GradedModuleView& v, int d) {
  GrendDimension res;
  res.dim = static_cast<int>(solve_graded(v, d).size());
  res.bound = std::numeric_limits<int>::max();
  for (int i = v.k0; i + d <= v.top; ++i) res.bound = std::min(res.bound, v.dim(i + d));
  return res;
}

}  // namespace thinlie::endo
