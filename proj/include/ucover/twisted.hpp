#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ucover/cover.hpp"
#include "ucover/effective.hpp"
#include "ucover/groebner.hpp"
#include "ucover/poly.hpp"

namespace ucover {

/// Z[G] for G = Z/t_1 ⊕ … ⊕ Z/t_l ⊕ Z^f as R/I with
/// R = Z[t1, t1inv, …, f1, f1inv, …] and
/// I = (x x̄ − 1 for every factor, x^t − 1 for torsion factors).
struct GroupAlgebra {
  AbelianInvariants invariants;
  Ring ring;
  std::vector<Poly> ideal_generators;
  GroebnerBasis ideal;

  std::size_t factors() const { return invariants.rank(); }
  /// Number of elements; 0 when G is infinite.
  Integer order() const;
  Poly normal_form(const Poly& p) const { return ideal.reduce(p); }
  PolyMatrix normal_form(PolyMatrix m) const;
  /// ν(g) for a coordinate vector (torsion first, reduced mod t_i).
  Poly element(const std::vector<Integer>& g) const;
  /// "Multivariate Polynomial Ring in f1, f1inv over Integer Ring"
  std::string ring_description() const;
};

GroupAlgebra group_algebra(const AbelianInvariants& inv);

struct ModulePresentation {
  std::shared_ptr<const GroupAlgebra> algebra;
  std::size_t ambient_rank = 0;
  /// Rows of length ambient_rank over the polynomial ring R.
  std::vector<std::vector<Poly>> relations;

  std::vector<std::vector<std::string>> relation_strings() const;
  /// Text in the style of a computer algebra system's quotient module.
  std::string listing() const;
};

/// τ pushed through the abelianization: one coordinate vector per
/// nondegenerate simplex of dimension ≥ 1 (the last edge's value).
struct AbelianTwisting {
  SetPtr base;
  Abelianization abelianization;
  std::vector<std::vector<std::vector<Integer>>> values;  // [dim][simplex]
};

AbelianTwisting abelian_twisting(SetPtr x);

/// M^n: rows are (n−1)-simplices, columns n-simplices; (−1)^d for the
/// inner faces and (−1)^n ν(τ(σ)^-1) at the last face; degenerate faces
/// contribute nothing. Entries are in normal form.
PolyMatrix twisted_boundary_matrix(const GroupAlgebra& ga, const AbelianTwisting& t,
                                   int n);

/// Generators of the kernel of M over R/I: columns of the result.
PolyMatrix syzygies_mod_ideal(const GroupAlgebra& ga, const PolyMatrix& m,
                              bool reduce_entries);

struct TwistedOptions {
  /// Keep the presentation as computed and append the ideal relations for
  /// every generator.
  bool raw = false;
  /// Skip the check that π₁ is abelian.
  bool assume_abelian = false;
  std::size_t max_cosets = kDefaultMaxCosets;
};

struct TwistedHomology {
  int degree = 0;
  std::shared_ptr<const GroupAlgebra> algebra;
  PolyMatrix m_n, m_n1;  // M^n and M^{n+1}
  PolyMatrix n_mat;      // kernel generators of M^n
  PolyMatrix r1, r2;     // M^{n+1} = N R1 (mod I); N R2 = 0 (mod I)
  ModulePresentation presentation;
};

/// Throws Unsupported when π₁ cannot be certified abelian.
TwistedHomology twisted_homology(SetPtr x, int n, const TwistedOptions& opts = {});

/// True iff every basis vector of the ambient module lies in the span of
/// the relations (over R).
bool module_is_trivial(const ModulePresentation& p);

/// Unit-pivot elimination, zero and duplicate row removal, sign
/// normalization. The presented module is unchanged up to isomorphism.
ModulePresentation simplify(ModulePresentation p);

/// For finite G: the presentation as an abelian group, each ring element
/// expanded through the regular representation.
HomologyGroup integer_specialization(const ModulePresentation& p);

}  // namespace ucover
