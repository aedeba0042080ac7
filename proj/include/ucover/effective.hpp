#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ucover/cover.hpp"
#include "ucover/homalg.hpp"
#include "ucover/snf.hpp"

namespace ucover {

struct HomologyGroup {
  int degree = 0;
  int betti = 0;
  std::vector<Integer> torsion;  // entries ≥ 2, each dividing the next

  bool operator==(const HomologyGroup&) const = default;
  bool trivial() const { return betti == 0 && torsion.empty(); }
  /// "0", "Z", "Z^11", "Z x C2", "C2 x C2"
  std::string str() const;
};

/// Boundary d_n as a sparse matrix: rows basis(n-1), columns basis(n).
SparseMatrix boundary_matrix(const ChainComplex& c, int n);

HomologyGroup homology(const ChainComplex& c, int n);
/// Degrees 0..max_degree (default: the complex's top degree).
std::vector<HomologyGroup> homology_all(const ChainComplex& c,
                                        int max_degree = -1);
/// H0 with one Z removed (reduced homology of a nonempty space).
std::vector<HomologyGroup> reduced(std::vector<HomologyGroup> hs);
std::string format_homology(const std::vector<HomologyGroup>& hs);

/// Left: DX ⇒ C(X); right: DX ⇒ EX.
struct Equivalence {
  Reduction left;
  Reduction right;
};

Equivalence identity_equivalence(const ChainComplex& cx);

/// C(K(H,0)) with one degree-0 cell [k] per element.
ChainComplex kh0_chain(const FiniteGroupTable& h);

/// C(K(H,0) × X) ⇒ C(K(H,0)) ⊗ C(X): f(s…s k, x) = k⊗x, g the inverse,
/// h = 0. Product cells are [k·|X_n| + x].
Reduction ez_kh0(const FiniteGroupTable& h, SetPtr x, const ChainComplex& ck,
                 const ChainComplex& cx);

/// δ(k,x) = (-1)^n [(τ(x)·k, ∂_n x) − (k, ∂_n x)] on C(K(H,0) × X).
LinearMap twist_perturbation(const TwistingOperator& tau);

struct PerturbationResult {
  Reduction rho1, rho2, rho3;
  LinearMap delta;    // on C(K(H,0) × X)
  LinearMap delta1;   // δ' on C(K) ⊗ C(X)
  LinearMap delta2;   // δ'' on C(K) ⊗ DX
  LinearMap delta3;   // induced on C(K) ⊗ EX
  Reduction rho1_hat, rho2_hat, rho3_hat;
  Equivalence equivalence;  // from C(K)⊗_t DX to the cover and to C(K)⊗_t EX
  std::vector<HomologyGroup> homology;
};

/// The six-step construction for a finite group H. eq.left.bottom must be
/// chain_of(tau.base()). NilpotencyFailure in the last step surfaces as
/// CoverNotEffective.
PerturbationResult effective_homology_universal_cover(
    const TwistingOperator& tau, const Equivalence& eq,
    std::optional<std::size_t> max_iter = std::nullopt);

enum class EquivalenceKind { identity, morse };

struct CoverHomologyOptions {
  std::size_t max_cosets = kDefaultMaxCosets;
  std::optional<std::size_t> max_iter;
  EquivalenceKind equivalence = EquivalenceKind::identity;
};

/// π₁ (rejecting Z factors in the abelianization and coset-enumeration
/// failures with CoverNotEffective), τ, the chosen equivalence of X,
/// then the perturbation route.
PerturbationResult cover_homology_via_perturbation(
    SetPtr x, const CoverHomologyOptions& opts = {});

/// SNF homology of the explicit universal cover.
std::vector<HomologyGroup> homology_of_cover_direct(
    SetPtr x, std::size_t max_cosets = kDefaultMaxCosets);

}  // namespace ucover
