#pragma once

// Graded L-endomorphisms of a graded module V = V_k0 + ... + V_top on which
// L acts through its generators X, Y. An endomorphism of degree d is a
// family f_i : V_i -> V_{i+d} with f_{i+1}([v, g]) = [f_i(v), g]; it is
// parameterised by f_k0 and propagated upwards.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "thinlie/subfield.hpp"

namespace thinlie::endo {

using gf::ExtField;
using gf::PrimeField;
using subfield::FMat;
using subfield::FVec;

struct GradedModuleView {
  PrimeField field{2};
  int k0 = 3;
  int top = 0;
  std::vector<int> dims;                 // by degree, 0 outside [k0, top]
  std::array<std::vector<FMat>, 2> act;  // act[g][i]: V_i -> V_{i+1}, rows are images of basis rows
  // Present when V sits inside some M: basis rows in M's F-coordinates.
  std::vector<FMat> ambient;
  std::optional<ExtField> ext;

  int dim(int degree) const {
    return degree < 0 || degree >= static_cast<int>(dims.size()) ? 0 : dims[static_cast<std::size_t>(degree)];
  }
  const FMat& action(int g, int degree) const {
    return act[static_cast<std::size_t>(g)].at(static_cast<std::size_t>(degree));
  }
};

// L^{k0} restricted to degrees [k0, top] (top defaults to the window).
GradedModuleView module_view(const subfield::SubalgebraAnalysis& a, int k0 = 3, std::optional<int> top = {});

FVec module_coords(const GradedModuleView& v, int degree, std::span<const PrimeField::Elem> ambient);
FVec ambient_coords(const GradedModuleView& v, int degree, std::span<const PrimeField::Elem> coords);

// maps[i - k0] : V_i -> V_{i+d}, rows are images of basis rows.
struct GradedMap {
  int shift = 0;
  std::vector<FMat> maps;
};

// F-basis of the degree-d graded L-endomorphisms. CoveringFails when some
// V_{i+1} is not spanned by [V_i, X] + [V_i, Y]; OutOfWindow if k0+d > top.
std::vector<GradedMap> solve_graded(const GradedModuleView& v, int d);

struct EndoRing {
  GradedModuleView view;
  std::vector<GradedMap> basis;
  // mult[a][b]: coordinates of "apply basis[a], then basis[b]".
  std::vector<std::vector<FVec>> mult;
  FVec identity;
  bool table_crosscheck = false;  // table recomputed at k0 + 1 agrees

  int dim() const { return static_cast<int>(basis.size()); }
  GradedMap element(std::span<const PrimeField::Elem> coords) const;
  FVec multiply(std::span<const PrimeField::Elem> a, std::span<const PrimeField::Elem> b) const;
};

EndoRing compute_grend0(const GradedModuleView& v);

struct FieldId {
  int degree = 1;
  std::vector<PrimeField::Elem> min_poly;  // low degree first, monic
  bool is_field = false;
  FVec generator;
  std::string embedding = "n/a";  // "mu", "mu_conj" or "n/a"
  // Generator oriented so that it acts as multiplication by mu when an
  // ambient M is present.
  FVec mu_hat;
};

// With `target` (mu^2 = u mu + v), the generator is the first element
// satisfying that equation; otherwise the first non-scalar element.
// NotCommutative, NotAField.
FieldId identify_field(const EndoRing& ring, const ExtField* target = nullptr);

// e . v for v in V_degree (module coordinates). OutOfWindow.
FVec scalar_action(const EndoRing& ring, std::span<const PrimeField::Elem> e, int degree,
                   std::span<const PrimeField::Elem> v);

// Every nonzero element acts invertibly on every V_i of the window.
bool schur_check(const EndoRing& ring);

struct GrendDimension {
  int dim = 0;
  int bound = 0;  // min over the window of dim V_{i+d}
};
GrendDimension grend_d_dimension(const GradedModuleView& v, int d);

}  // namespace thinlie::endo
