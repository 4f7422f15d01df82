#pragma once

// F-subalgebras L = <X, Y> of a maximal-class algebra M over E, seen over
// F by restriction of scalars.
//
// Fixed F-coordinates: M_1 = F^4 via (x, mu x, y, mu y) and M_i = F^2 via
// (v_i, mu v_i) for i >= 2. Vectors are rows.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thinlie/maxclass.hpp"

namespace thinlie::subfield {

using gf::ExtElem;
using gf::ExtField;
using gf::PrimeField;
using maxclass::Algebra;
using maxclass::HomElem;
using maxclass::Presentation;
using FMat = linalg::Mat<PrimeField>;
using FVec = linalg::Vec<PrimeField>;

struct GeneratorPair {
  HomElem X;
  HomElem Y;

  // X = alpha x + beta y, Y = gamma x + delta y.
  static GeneratorPair make(ExtElem alpha, ExtElem beta, ExtElem gamma, ExtElem delta) {
    return {HomElem::gen(alpha, beta), HomElem::gen(gamma, delta)};
  }
  ExtElem alpha() const { return X.coords[0]; }
  ExtElem beta() const { return X.coords[1]; }
  ExtElem gamma() const { return Y.coords[0]; }
  ExtElem delta() const { return Y.coords[1]; }
};

// alpha delta - beta gamma != 0.
bool independent(const ExtField& f, const GeneratorPair& g);

FVec to_f(const ExtField& f, const HomElem& e);
HomElem from_f(int degree, std::span<const PrimeField::Elem> coords);
inline std::size_t ambient_dim(int degree) { return degree == 1 ? 4 : 2; }

enum class Verdict { Thin, MaximalClass, RConstrained, Degenerate };
std::string_view to_string(Verdict v);

struct SubalgebraAnalysis {
  const Algebra* algebra = nullptr;  // must outlive the analysis
  GeneratorPair gens;
  int window = 0;

  // Indexed by degree; entry 0 is unused.
  std::vector<FMat> basis;                    // rref F-basis of L_i in ambient coordinates
  std::vector<std::array<FMat, 2>> ad;        // right multiplication by X, Y: M_i -> M_{i+1}
  std::vector<int> dims;                      // dim_F L_i
  std::vector<int> d;                         // d_i for 2 <= i <= window - 1, else -1
  maxclass::CentralizerSequence centralizers;

  Verdict verdict = Verdict::Degenerate;
  std::vector<int> d0;              // degrees with d_i = 0
  std::optional<int> t1;            // least element of d0
  std::optional<int> r_observed;    // max gap t_j - t_{j-1}, j >= 2; a lower bound for r
  std::optional<int> max_gap_end;   // t_{j0} realising r_observed
  bool thin_pattern = false;        // dim L_2 = 1 and dim L_i = 2 for 3 <= i <= window
  bool rc_pattern = false;          // dims 1 on [2, t1], 2 on (t1, window]
  bool r_bounds_ok = false;         // 2 <= r_observed <= t1 and every gap <= t1

  int dim(int degree) const { return dims.at(static_cast<std::size_t>(degree)); }
  int d_at(int degree) const { return d.at(static_cast<std::size_t>(degree)); }
  const FMat& L(int degree) const { return basis.at(static_cast<std::size_t>(degree)); }

  // [u, X] or [u, Y] (g = 0 or 1) for u in M_degree, ambient coordinates.
  FVec act(int degree, std::span<const PrimeField::Elem> u, int g) const;
  const PrimeField& F() const { return algebra->field().base(); }
};

// L_1 = span_F{X, Y}, L_{i+1} = span [L_i, X] + [L_i, Y]. Degenerate
// pairs get verdict Degenerate and an empty d-sequence. BadBound unless
// 4 <= window <= class_n.
SubalgebraAnalysis generate_subalgebra(const Algebra& alg, const GeneratorPair& g, int window);

// d_i = dim_F (C_i cap L_1), i in [2, window-1]. DegenerateGenerators.
std::vector<int> d_sequence(const Algebra& alg, const GeneratorPair& g, int window);

// Recomputes the verdict fields from dims and d. DegenerateGenerators on
// dependent generators.
Verdict classify(SubalgebraAnalysis& analysis);

struct BruteForceResult {
  bool ok = true;
  std::optional<int> degree;  // of the witness
  FVec witness;               // ambient coordinates
};

// Every nonzero u in L_i, 1 <= i < window, has span{[u,X],[u,Y]} = L_{i+1}.
BruteForceResult verify_covering(const SubalgebraAnalysis& a);

// Every nonzero homogeneous l in L_i generates an ideal containing
// L_{i+r} (checked for i + r <= window).
BruteForceResult verify_ideal_sandwich(const SubalgebraAnalysis& a, int r);

// t_{j0-1} + 1 for the first j0 realising r_observed.
std::optional<int> expected_sandwich_witness(const SubalgebraAnalysis& a);

// Structural properties of L and the d-sequence, each checked over the window.
struct CentralizerReport {
  bool dim_l2_is_1 = true;
  bool dims_nondecreasing = true;
  bool d_at_most_1 = true;
  bool d0_images_2dim = true;
  bool d1_images_1dim = true;
  std::string first_failure;
  bool ok() const {
    return dim_l2_is_1 && dims_nondecreasing && d_at_most_1 && d0_images_2dim && d1_images_1dim;
  }
};
CentralizerReport check_centralizer_properties(const SubalgebraAnalysis& a);

struct NormalizedPair {
  GeneratorPair gens;      // in terms of x', y'
  Presentation pres;       // presentation on x', y'
  maxclass::EMat transform;  // rows: x', y' in terms of x, y
  bool complete = false;   // X' = x'+y', Y' = mu x' + delta' y'
  std::string note;        // why normalization stopped early
};

// Precondition unless pres is standard. DegenerateGenerators.
NormalizedPair normalize_generators(const Presentation& pres, const GeneratorPair& g);

struct LineCriterion {
  std::vector<ExtElem> script_l;  // lambda with E(x + lambda y) = C_i, sorted
  bool ey_occurs = false;
  std::vector<ExtElem> lambda_line;  // t beta/alpha + (1-t) delta/gamma, t in F
  std::vector<ExtElem> pencil;       // (s beta + t delta)/(s alpha + t gamma), (s:t) in P^1(F)
  bool ey_condition = false;         // s alpha + t gamma != 0 for (s, t) != 0
  bool affine_line_avoided = false;  // lambda_line is a line missing script_l
  bool avoided = false;              // ey_condition and pencil misses script_l
};

// Centralizers C_i for i in [2, window-1]. DegenerateGenerators.
LineCriterion thin_line_criterion(const Presentation& pres, const GeneratorPair& g, int window);

struct ScanOptions {
  bool raw = false;      // all |E|^4 pairs instead of normal forms
  unsigned threads = 0;  // 0: THINLIE_THREADS or hardware concurrency
};

struct ScanTable {
  int window = 0;
  std::size_t pairs = 0;
  std::size_t thin = 0;
  std::size_t maximal = 0;
  std::size_t degenerate = 0;
  std::map<int, std::size_t> rconstrained;  // by r_observed, -1 when undetermined
  std::size_t thin_by_lines = 0;
  bool counts_agree() const { return thin == thin_by_lines; }
};

// Pairs in normal form: X = x + beta y, Y = mu x + delta y (E-independent),
// and X = x + beta y, Y = delta y with delta in E*/F*, beta mod F delta.
std::vector<GeneratorPair> normalized_pairs(const ExtField& f);

ScanTable scan(const Algebra& alg, int window, ScanOptions options = {});

unsigned worker_count(unsigned requested);

}  // namespace thinlie::subfield
