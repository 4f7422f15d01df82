#include "thinlie/maxclass.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace thinlie::maxclass {

namespace la = linalg;

Presentation::Presentation(ExtField field, int class_n, std::vector<AdjointPair> adjoint)
    : field_(std::move(field)), class_n_(class_n), adjoint_(std::move(adjoint)) {
  if (class_n_ < 4) throw Error(ErrorCode::BadBound, "class must be at least 4");
  if (adjoint_.size() != static_cast<std::size_t>(class_n_ - 2))
    throw Error(ErrorCode::BadBound, "expected " + std::to_string(class_n_ - 2) +
                                         " adjoint pairs, got " + std::to_string(adjoint_.size()));
}

std::string basis_name(int index) {
  if (index == 0) return "x";
  if (index == 1) return "y";
  return "v" + std::to_string(index);
}

Presentation make_metabelian(const ExtField& field, int class_n) {
  if (class_n < 4) throw Error(ErrorCode::BadBound, "class must be at least 4");
  std::vector<AdjointPair> pairs(static_cast<std::size_t>(class_n - 2), {field.one(), field.zero()});
  return Presentation(field, class_n, std::move(pairs));
}

Presentation quotient(const Presentation& pres, int new_class) {
  if (new_class < 4 || new_class > pres.class_n())
    throw Error(ErrorCode::BadBound, "quotient bound " + std::to_string(new_class) +
                                         " outside [4, " + std::to_string(pres.class_n()) + "]");
  std::vector<AdjointPair> pairs(pres.adjoint().begin(), pres.adjoint().begin() + (new_class - 2));
  return Presentation(pres.field(), new_class, std::move(pairs));
}

// ---------------------------------------------------------------------------
// Adjoint model

namespace {

// ad([w, g]) = ad g * ad w - ad w * ad g under the right action e_u -> [u, w].
EMat bracket_of_ads(const ExtField& f, const EMat& ad_w, const EMat& ad_g) {
  return la::subtract(f, la::multiply(f, ad_g, ad_w), la::multiply(f, ad_w, ad_g));
}

void check_pairs_nonzero(const Presentation& pres) {
  const auto& f = pres.field();
  for (int i = 2; i < pres.class_n(); ++i) {
    const auto& pr = pres.pair(i);
    if (f.is_zero(pr.a) && f.is_zero(pr.b))
      throw Error(ErrorCode::ZeroPair, "(a_" + std::to_string(i) + ", b_" + std::to_string(i) + ") = (0, 0)");
  }
}

}  // namespace

AdjointModel AdjointModel::build(const Presentation& pres) {
  check_pairs_nonzero(pres);
  const auto& f = pres.field();
  const int n = pres.class_n();
  const auto dim = static_cast<std::size_t>(n + 1);

  AdjointModel model;
  model.class_n_ = n;
  model.ad_.reserve(dim);

  EMat ad_x = la::zeros(f, dim, dim);
  EMat ad_y = la::zeros(f, dim, dim);
  ad_x(2, 1) = f.one();        // [y, x] = v_2
  ad_y(2, 0) = f.neg(f.one());  // [x, y] = -v_2
  for (int i = 2; i < n; ++i) {
    const auto& pr = pres.pair(i);
    ad_x(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = pr.a;
    ad_y(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = pr.b;
  }
  model.ad_.push_back(std::move(ad_x));
  model.ad_.push_back(std::move(ad_y));
  // v_2 = [y, x]
  model.ad_.push_back(bracket_of_ads(f, model.ad_[1], model.ad_[0]));
  // v_{j+1} = c^{-1} [v_j, g], g = x when a_j != 0
  for (int j = 2; j < n; ++j) {
    const auto& pr = pres.pair(j);
    const bool use_x = !f.is_zero(pr.a);
    const auto c_inv = f.inv(use_x ? pr.a : pr.b);
    auto next = bracket_of_ads(f, model.ad_[static_cast<std::size_t>(j)], model.ad_[use_x ? 0 : 1]);
    model.ad_.push_back(la::scaled(f, c_inv, next));
  }
  return model;
}

ExtElem AdjointModel::basis_bracket(int u, int w) const {
  const int target = degree_of(u) + degree_of(w);
  if (target > class_n_) return {};
  return ad(w)(static_cast<std::size_t>(target), static_cast<std::size_t>(u));
}

// ---------------------------------------------------------------------------
// Brackets

namespace {

// Basis indices and coordinates of a homogeneous element.
template <class Fn>
void for_each_term(const HomElem& e, Fn&& fn) {
  if (e.degree == 1) {
    fn(0, e.coords[0]);
    fn(1, e.coords[1]);
  } else {
    fn(e.degree, e.coords[0]);
  }
}

HomElem bracket_with(const ExtField& f, const AdjointModel& model, const HomElem& u, const HomElem& w) {
  HomElem out;
  out.degree = u.degree + w.degree;
  if (out.degree > model.class_n()) return out;
  for_each_term(u, [&](int a, ExtElem ca) {
    if (f.is_zero(ca)) return;
    for_each_term(w, [&](int b, ExtElem cb) {
      if (f.is_zero(cb)) return;
      auto c = model.basis_bracket(a, b);
      out.coords[0] = f.add(out.coords[0], f.mul(f.mul(ca, cb), c));
    });
  });
  return out;
}

HomElem basis_elem(const ExtField& f, int index) {
  if (index == 0) return HomElem::gen(f.one(), f.zero());
  if (index == 1) return HomElem::gen(f.zero(), f.one());
  return HomElem::v(index, f.one());
}

HomElem add_hom(const ExtField& f, const HomElem& a, const HomElem& b) {
  HomElem out{a.degree, {f.add(a.coords[0], b.coords[0]), f.add(a.coords[1], b.coords[1])}};
  return out;
}

}  // namespace

Algebra::Algebra(Presentation pres) : pres_(std::move(pres)) {
  auto report = validate(pres_);
  if (!report.ok)
    throw Error(ErrorCode::InvalidPresentation, "Jacobi check failed: " + report.first_failure->describe());
  model_ = AdjointModel::build(pres_);
}

HomElem Algebra::bracket(const HomElem& u, const HomElem& w) const {
  return bracket_with(pres_.field(), model_, u, w);
}

// ---------------------------------------------------------------------------
// Validation

std::string JacobiFailure::describe() const {
  std::ostringstream os;
  switch (kind) {
    case CheckKind::Jacobi: os << "jacobi"; break;
    case CheckKind::Antisymmetry: os << "antisymmetry"; break;
    case CheckKind::AdConsistency: os << "ad-consistency"; break;
  }
  os << " (";
  for (std::size_t i = 0; i < basis.size(); ++i) os << (i ? ", " : "") << basis_name(basis[i]);
  os << ")";
  return os.str();
}

namespace {

std::vector<int> rotate_max_first(std::vector<int> triple) {
  auto it = std::max_element(triple.begin(), triple.end());
  std::rotate(triple.begin(), it, triple.end());
  return triple;
}

// Indices of basis elements of a given degree.
std::vector<int> indices_of_degree(int d) {
  if (d == 1) return {0, 1};
  return {d};
}

std::optional<JacobiFailure> check_degree(const ExtField& f, const AdjointModel& model, int s) {
  auto br = [&](const HomElem& a, const HomElem& b) { return bracket_with(f, model, a, b); };

  // Jacobi on ordered triples of total degree s.
  for (int da = 1; da <= s - 2; ++da)
    for (int db = 1; da + db <= s - 1; ++db) {
      const int dc = s - da - db;
      for (int a : indices_of_degree(da))
        for (int b : indices_of_degree(db))
          for (int c : indices_of_degree(dc)) {
            auto ea = basis_elem(f, a), eb = basis_elem(f, b), ec = basis_elem(f, c);
            auto j = add_hom(f, add_hom(f, br(br(ea, eb), ec), br(br(eb, ec), ea)), br(br(ec, ea), eb));
            if (!j.is_zero()) return JacobiFailure{CheckKind::Jacobi, rotate_max_first({a, b, c})};
          }
    }
  // Antisymmetry on pairs of total degree s.
  for (int da = 1; da <= s - 1; ++da)
    for (int a : indices_of_degree(da))
      for (int b : indices_of_degree(s - da)) {
        if (b < a) continue;
        auto sum = f.add(model.basis_bracket(a, b), model.basis_bracket(b, a));
        if (!f.is_zero(sum)) return JacobiFailure{CheckKind::Antisymmetry, {a, b}};
      }
  // ad([w, g]) = ad g ad w - ad w ad g, tested on columns u with
  // deg u + deg w + deg g = s. Every ad matrix is graded, so column u of
  // either side can only be nonzero in row s.
  for (int du = 1; du <= s - 2; ++du)
    for (int dw = 1; du + dw <= s - 1; ++dw)
      for (int u : indices_of_degree(du))
        for (int w : indices_of_degree(dw))
          for (int g : indices_of_degree(s - du - dw)) {
            const int wg = dw + degree_of(g);
            const auto row = static_cast<std::size_t>(s);
            const auto col = static_cast<std::size_t>(u);
            const auto uw = static_cast<std::size_t>(du + dw);
            const auto ug = static_cast<std::size_t>(du + degree_of(g));
            auto lhs = f.mul(model.basis_bracket(w, g), model.ad(wg)(row, col));
            auto rhs = f.sub(f.mul(model.ad(g)(row, uw), model.ad(w)(uw, col)),
                             f.mul(model.ad(w)(row, ug), model.ad(g)(ug, col)));
            if (!f.equal(lhs, rhs)) return JacobiFailure{CheckKind::AdConsistency, {w, g}};
          }
  return std::nullopt;
}

}  // namespace

namespace detail {

// Checks total degrees [from, class_n]; used incrementally by the search.
JacobiReport validate_from(const Presentation& pres, const AdjointModel& model, int from) {
  const auto& f = pres.field();
  for (int s = std::max(from, 2); s <= pres.class_n(); ++s)
    if (auto failure = check_degree(f, model, s)) return {false, std::move(failure)};
  return {true, std::nullopt};
}

}  // namespace detail

JacobiReport validate(const Presentation& pres) {
  auto model = AdjointModel::build(pres);
  return detail::validate_from(pres, model, 2);
}

// ---------------------------------------------------------------------------
// Centralizers and standard generators

ProjPoint normalize(const ExtField& f, ExtElem alpha, ExtElem beta) {
  if (!f.is_zero(alpha)) return {f.one(), f.div(beta, alpha)};
  if (f.is_zero(beta)) throw Error(ErrorCode::DivisionByZero, "projective point (0 : 0)");
  return {f.zero(), f.one()};
}

std::string format(const ExtField& f, const ProjPoint& p) {
  if (p.is_ey()) return "Ey";
  if (f.is_zero(p.beta)) return "Ex";
  return "E(x+" + f.format(p.beta) + "y)";
}

CentralizerSequence two_step_centralizers(const Presentation& pres) {
  const auto& f = pres.field();
  CentralizerSequence seq;
  for (int i = 2; i < pres.class_n(); ++i) {
    const auto& pr = pres.pair(i);
    // Kernel of (alpha, beta) -> alpha a_i + beta b_i.
    la::Mat<ExtField> form(1, 2, f.zero());
    form(0, 0) = pr.a;
    form(0, 1) = pr.b;
    auto ech = la::rref(f, form);
    if (ech.kernel.rows() != 1)
      throw Error(ErrorCode::ZeroPair, "centralizer of degree " + std::to_string(i) + " is not a line");
    seq.points.push_back(normalize(f, ech.kernel(0, 0), ech.kernel(0, 1)));
  }
  return seq;
}

Presentation change_basis(const Presentation& pres, const EMat& t) {
  const auto& f = pres.field();
  auto det = f.sub(f.mul(t(0, 0), t(1, 1)), f.mul(t(0, 1), t(1, 0)));
  if (f.is_zero(det)) throw Error(ErrorCode::DegenerateGenerators, "base change is singular");
  // v'_i = s v_i, starting from v'_2 = [y', x'] = det v_2.
  ExtElem s = det;
  std::vector<AdjointPair> pairs;
  for (int i = 2; i < pres.class_n(); ++i) {
    const auto& pr = pres.pair(i);
    auto ax = f.mul(s, f.add(f.mul(t(0, 0), pr.a), f.mul(t(0, 1), pr.b)));
    auto ay = f.mul(s, f.add(f.mul(t(1, 0), pr.a), f.mul(t(1, 1), pr.b)));
    if (!f.is_zero(ax)) {
      pairs.push_back({f.one(), f.div(ay, ax)});
      s = ax;
    } else {
      pairs.push_back({f.zero(), f.one()});
      s = ay;
    }
  }
  return Presentation(f, pres.class_n(), std::move(pairs));
}

StandardForm standard_generators(const Presentation& pres) {
  const auto& f = pres.field();
  auto seq = two_step_centralizers(pres);
  const auto& c2 = seq.at(2);
  std::optional<ProjPoint> deviation;
  for (const auto& c : seq.points)
    if (c != c2) {
      deviation = c;
      break;
    }
  ProjPoint xp;
  if (deviation) {
    xp = *deviation;
  } else {
    // Any complement of C_2: keep x unless C_2 = Ex.
    xp = (c2.alpha == f.one() && f.is_zero(c2.beta)) ? ProjPoint{f.zero(), f.one()}
                                                      : ProjPoint{f.one(), f.zero()};
  }
  EMat t = la::zeros(f, 2, 2);
  t(0, 0) = xp.alpha;
  t(0, 1) = xp.beta;
  t(1, 0) = c2.alpha;
  t(1, 1) = c2.beta;
  return {t, change_basis(pres, t)};
}

bool is_standard(const Presentation& pres) {
  auto seq = two_step_centralizers(pres);
  if (!seq.at(2).is_ey()) return false;
  for (const auto& c : seq.points)
    if (!c.is_ey()) return c.alpha == pres.field().one() && pres.field().is_zero(c.beta);
  return true;
}

DiagnosticsReport centralizer_stats(const Algebra& alg) {
  const auto& pres = alg.presentation();
  const auto p = pres.field().p();
  auto seq = two_step_centralizers(pres);
  DiagnosticsReport report;
  report.window = pres.class_n();
  report.standard = is_standard(pres);

  std::map<ProjPoint, std::size_t> slot;
  for (int i = seq.first_degree(); i <= seq.last_degree(); ++i) {
    const auto& c = seq.at(i);
    auto [it, inserted] = slot.emplace(c, report.centralizers.size());
    if (inserted) report.centralizers.push_back({c, i, false, {}, std::nullopt, true});
    report.centralizers[it->second].occurrences.push_back(i);
  }
  for (auto& stat : report.centralizers) {
    const int m = stat.first_occurrence;
    for (long long q = 2; q <= m; q *= p)
      if (q == m) stat.first_is_2p_power = true;
    for (std::size_t k = 1; k < stat.occurrences.size(); ++k) {
      int gap = stat.occurrences[k] - stat.occurrences[k - 1];
      stat.max_gap = std::max(stat.max_gap.value_or(0), gap);
      if (gap > m) stat.gap_within_first = false;
    }
  }
  return report;
}

}  // namespace thinlie::maxclass
