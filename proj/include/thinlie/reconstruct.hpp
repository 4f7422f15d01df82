#pragma once

// Rebuilding a maximal-class algebra N = E rho(T) over E from a thin
// F-algebra T and its endomorphism field, and comparing N with M.
//
// Matrices act on columns: rho(t) e_w = [w, t], so the induced bracket on
// matrices is [P, Q]_N = QP - PQ and rho([t, t']) = [rho(t), rho(t')]_N.

#include <optional>
#include <string>
#include <vector>

#include "thinlie/endo.hpp"

namespace thinlie::reconstruct {

using gf::ExtElem;
using gf::ExtField;
using maxclass::EMat;
using maxclass::Presentation;
using subfield::FVec;
using subfield::SubalgebraAnalysis;

struct StructureFlags {
  bool metabelian = false;
  int k = 3;                       // least k with T^k abelian in the window
  bool insoluble_or_undetected = false;
  int z_degree = 2;
  FVec z;                          // ambient coordinates, z in T_{k-1}
  std::optional<std::pair<int, int>> witness;  // degrees of a nonzero [T_i, T_j], i, j >= 3
};

// Precondition unless T is thin. WindowTooSmall when neither an abelian
// T^k (2k + 1 <= window) nor a nonzero [T^3, T^3] can be observed.
StructureFlags detect_structure(const SubalgebraAnalysis& t, int window);

// Context shared by rho and rho': T, its endomorphism field and the
// generator acting as mu.
struct ThinContext {
  const SubalgebraAnalysis* t = nullptr;
  endo::EndoRing ring;
  endo::FieldId field;
};

// Precondition unless T is thin with an endomorphism field of degree 2.
ThinContext make_context(const SubalgebraAnalysis& t);

enum class Branch { Rho, RhoPrime };
std::string_view to_string(Branch b);

struct RhoRep {
  Branch branch = Branch::Rho;
  int k = 3;                        // I = T^k
  int top = 0;
  std::vector<int> slot_degrees;    // formal slots before I
  std::vector<FVec> slot_elems;     // their elements of T, ambient coordinates
  std::vector<FVec> w;              // w[i]: E-basis vector of I_i, indexed by degree
  std::size_t dim = 0;              // rep space dimension over E
  // images[d][r]: rho of the r-th F-basis vector of T_d.
  std::vector<std::vector<EMat>> images;
  bool homomorphism_ok = true;
  std::string homomorphism_failure;
  std::vector<int> unfaithful_degrees;  // within the usable window

  int usable_window() const { return top - k - 1; }
  std::size_t position(int degree) const;  // rep index of I_degree
};

// rho on E z + T^k. NotMetabelian is not raised; Precondition if metabelian.
// NotEStable, NotFaithful.
RhoRep build_rho(const ThinContext& ctx, const StructureFlags& flags);

// rho' on E Y + E [Y, X] + T^3. NotMetabelian, NotFaithful.
RhoRep build_rho_prime(const ThinContext& ctx, const StructureFlags& flags);

// rho(u) for u in T_degree given in ambient coordinates.
EMat rho_of(const ThinContext& ctx, const RhoRep& rep, int degree, std::span<const gf::PrimeField::Elem> u);

struct ReconstructedAlgebra {
  int usable_window = 0;
  std::vector<int> dims;  // dim_E N_i by degree, index 0 unused
  EMat nx, ny;            // rho(X), rho(Y)
  std::vector<EMat> n;    // n[i] spans N_i for i >= 2
  Presentation pres;      // on rho(X), rho(Y)
  bool validated = false;
};

// DimensionAnomaly on a wrong E-dimension or a failed [N_i, N_1] = N_{i+1};
// WindowTooSmall when the usable window is below 4.
ReconstructedAlgebra assemble_N(const ThinContext& ctx, const RhoRep& rep);

EMat n_bracket(const ExtField& f, const EMat& p, const EMat& q);

struct RoundtripReport {
  Branch branch = Branch::Rho;
  int k = 3;
  int usable_window = 0;
  bool iso = false;
  std::optional<std::string> first_failure;
  StructureFlags flags;
  std::string embedding;
  bool centralizers_agree = false;
  std::optional<Presentation> extracted;
};

// Full pipeline on M and a thin pair. Precondition when the pair is not thin.
RoundtripReport verify_roundtrip(const maxclass::Algebra& m, const subfield::GeneratorPair& g, int window);

// Standard-form centralizer sequences equal up to a common rescaling of y.
bool centralizers_match(const Presentation& a, const Presentation& b);

struct IsoResult {
  bool found = false;
  EMat g1;  // rows: generators of B in terms of those of A
};

// Brute force over PGL_2(E). WindowTooLargeForBruteForce when |E| > 9 and
// window > 20.
IsoResult iso_search(const Presentation& a, const Presentation& b, int window);

}  // namespace thinlie::reconstruct
