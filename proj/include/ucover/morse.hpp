#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ucover/cover.hpp"
#include "ucover/effective.hpp"
#include "ucover/homalg.hpp"

namespace ucover {

/// (source, target) pairs; the source is a regular face of the target.
struct DiscreteVectorField {
  std::vector<std::pair<Cell, Cell>> vectors;
};

/// Cells that count as faces of a cell when following V-paths. The
/// default is the support of d; simplicial complexes can use every
/// nondegenerate face (see simplicial_incidence).
using Incidence = std::function<std::vector<Cell>(const Cell&)>;

Incidence support_incidence(const ChainComplex& c);
Incidence simplicial_incidence(SetPtr x);

std::vector<std::string> validate_dvf(const ChainComplex& c,
                                      const DiscreteVectorField& v);

struct AdmissibilityCertificate {
  bool admissible = true;
  /// Longest V-path length starting at each source.
  std::map<Cell, int> lambda;
  /// Sources along a cycle when not admissible.
  std::vector<Cell> cycle;
};

AdmissibilityCertificate check_admissible(const ChainComplex& c,
                                          const DiscreteVectorField& v,
                                          const Incidence& incidence = {});

/// C ⇒ critical complex. Rejects invalid or inadmissible fields and
/// checks the reduction axioms on every cell before returning.
Reduction morse_reduction(const ChainComplex& c, const DiscreteVectorField& v);

/// (trivial(C), morse_reduction(C, V))
Equivalence morse_equivalence(const ChainComplex& c,
                              const DiscreteVectorField& v);

/// Free-face collapses, then a greedy acyclic matching of the remaining
/// cells (highest degree first). With an rng the candidate order is
/// shuffled.
DiscreteVectorField greedy_collapse_field(const ChainComplex& c,
                                          const Incidence& incidence = {},
                                          std::mt19937_64* rng = nullptr);

/// Lift of a base field to the cover H × X whose last face is
/// (h·τ(σ)^-1, ∂_n σ). Cells of chain_of(cover.set) are [h·|X_n| + σ].
DiscreteVectorField induced_cover_dvf(const TwistingOperator& tau,
                                      const CoverSet& cover,
                                      const DiscreteVectorField& v);

std::size_t critical_count(const ChainComplex& c, const DiscreteVectorField& v,
                           int degree);

struct DvfCoverHomology {
  std::vector<HomologyGroup> homology;
  std::vector<std::size_t> critical_cells;  // per degree, in the cover
};

/// Universal cover in the lifted form, the induced field, its Morse
/// reduction and SNF homology of the critical complex.
DvfCoverHomology cover_homology_via_dvf(SetPtr x, const DiscreteVectorField& v,
                                        std::size_t max_cosets = kDefaultMaxCosets);

}  // namespace ucover
