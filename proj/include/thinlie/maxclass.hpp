#pragma once

// Class-n truncations of graded Lie algebras of maximal class over E,
// generated in degree 1.
//
// Basis of M/M^{n+1}: index 0 = x, 1 = y, index i >= 2 is v_i, so the
// index of v_i equals its degree. The structure is fixed by
//   [y, x] = v_2,  [v_i, x] = a_i v_{i+1},  [v_i, y] = b_i v_{i+1}
// for 2 <= i <= n-1. Brackets overflowing degree n are zero.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thinlie/gf.hpp"
#include "thinlie/linalg.hpp"

namespace thinlie::maxclass {

using gf::ExtElem;
using gf::ExtField;
using EMat = linalg::Mat<ExtField>;

struct AdjointPair {
  ExtElem a;
  ExtElem b;
  friend bool operator==(const AdjointPair&, const AdjointPair&) = default;
};

class Presentation {
 public:
  // adjoint[k] is the pair of degree k + 2; requires class_n >= 4 and
  // adjoint.size() == class_n - 2 (BadBound otherwise).
  Presentation(ExtField field, int class_n, std::vector<AdjointPair> adjoint);

  const ExtField& field() const noexcept { return field_; }
  int class_n() const noexcept { return class_n_; }
  const std::vector<AdjointPair>& adjoint() const noexcept { return adjoint_; }
  const AdjointPair& pair(int degree) const { return adjoint_.at(static_cast<std::size_t>(degree - 2)); }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  ExtField field_;
  int class_n_;
  std::vector<AdjointPair> adjoint_;
};

inline int degree_of(int index) noexcept { return index < 2 ? 1 : index; }
std::string basis_name(int index);

Presentation make_metabelian(const ExtField& field, int class_n);

// Restriction to M/M^{n'+1}; BadBound unless 4 <= n' <= class_n.
Presentation quotient(const Presentation& pres, int new_class);

// Homogeneous element: coords (x, y) in degree 1, coords[0] * v_degree otherwise.
struct HomElem {
  int degree = 1;
  std::array<ExtElem, 2> coords{};

  static HomElem gen(ExtElem alpha, ExtElem beta) { return {1, {alpha, beta}}; }
  static HomElem v(int degree, ExtElem c) { return {degree, {c, ExtElem{}}}; }
  bool is_zero() const noexcept {
    return coords[0] == ExtElem{} && coords[1] == ExtElem{};
  }
  friend bool operator==(const HomElem&, const HomElem&) = default;
};

// ad g as (n+1)x(n+1) matrices over E with ad(g) e_u = [u, g].
class AdjointModel {
 public:
  static AdjointModel build(const Presentation& pres);

  int class_n() const noexcept { return class_n_; }
  const EMat& ad(int index) const { return ad_.at(static_cast<std::size_t>(index)); }

  // Coefficient c with [e_u, e_w] = c * v_{deg u + deg w}; zero past the window.
  ExtElem basis_bracket(int u, int w) const;

 private:
  int class_n_ = 0;
  std::vector<EMat> ad_;
};

enum class CheckKind { Jacobi, Antisymmetry, AdConsistency };

struct JacobiFailure {
  CheckKind kind;
  std::vector<int> basis;  // triple for Jacobi, pair otherwise
  std::string describe() const;
};

struct JacobiReport {
  bool ok = true;
  std::optional<JacobiFailure> first_failure;
};

// Checks, degree by degree, the Jacobi identity on all basis triples,
// antisymmetry on all basis pairs and ad([w,g]) = [ad w, ad g] within the
// window. Throws ZeroPair if some (a_i, b_i) = (0, 0).
JacobiReport validate(const Presentation& pres);

// A validated presentation together with its cached adjoint model.
class Algebra {
 public:
  // Throws InvalidPresentation when validate() fails.
  explicit Algebra(Presentation pres);

  const Presentation& presentation() const noexcept { return pres_; }
  const AdjointModel& model() const noexcept { return model_; }
  const ExtField& field() const noexcept { return pres_.field(); }
  int class_n() const noexcept { return pres_.class_n(); }

  // Bilinear and antisymmetric; the result has degree deg u + deg w and is
  // zero when that exceeds class_n.
  HomElem bracket(const HomElem& u, const HomElem& w) const;

 private:
  Presentation pres_;
  AdjointModel model_;
};

// A point (alpha : beta) of P^1(E) normalized to (1 : lambda) or (0 : 1).
struct ProjPoint {
  ExtElem alpha;
  ExtElem beta;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;

  bool is_ey() const noexcept { return alpha == ExtElem{}; }
};

ProjPoint normalize(const ExtField& f, ExtElem alpha, ExtElem beta);
std::string format(const ExtField& f, const ProjPoint& p);

// C_i for 2 <= i <= class_n - 1.
struct CentralizerSequence {
  std::vector<ProjPoint> points;
  const ProjPoint& at(int degree) const { return points.at(static_cast<std::size_t>(degree - 2)); }
  int first_degree() const noexcept { return 2; }
  int last_degree() const noexcept { return static_cast<int>(points.size()) + 1; }
};

CentralizerSequence two_step_centralizers(const Presentation& pres);

// Presentation of the same algebra on x' = t00 x + t01 y, y' = t10 x + t11 y.
Presentation change_basis(const Presentation& pres, const EMat& transform);

struct StandardForm {
  EMat transform;  // rows: x', y' in terms of x, y
  Presentation pres;
};

// Base change making C_2 = Ey and the first different centralizer Ex.
StandardForm standard_generators(const Presentation& pres);
bool is_standard(const Presentation& pres);

struct CentralizerStat {
  ProjPoint centralizer;
  int first_occurrence = 0;
  bool first_is_2p_power = false;  // m = 2 p^k for some k >= 0
  std::vector<int> occurrences;
  std::optional<int> max_gap;
  bool gap_within_first = true;  // every successive gap <= m
};

struct DiagnosticsReport {
  int window = 0;
  bool standard = false;
  std::vector<CentralizerStat> centralizers;
};

DiagnosticsReport centralizer_stats(const Algebra& alg);

struct SearchOptions {
  int soft_limit = 24;
  bool force = false;
};

// Depth-first enumeration of Jacobi-consistent class-n presentations in
// standard form, lexicographic in the pair order (1,0) < (1,b) < (0,1),
// metabelian first. Throws WindowTooLarge past the soft limit.
std::vector<Presentation> search_sequences(const ExtField& field, int class_n, std::size_t limit,
                                           SearchOptions options = {});

// Canonical representatives of P^1(E) in search order.
std::vector<AdjointPair> projective_pairs(const ExtField& field);

}  // namespace thinlie::maxclass
