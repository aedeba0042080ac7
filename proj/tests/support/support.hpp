#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ucover/cover.hpp"
#include "ucover/effective.hpp"
#include "ucover/homalg.hpp"
#include "ucover/morse.hpp"
#include "ucover/snf.hpp"

namespace testsupport {

using ucover::Integer;
using ucover::IntMatrix;

std::string data_path(const std::string& name);
ucover::SetPtr fixture(const std::string& name);
/// Fixtures with finite π₁.
const std::vector<std::string>& finite_corpus();

// Integer matrices -------------------------------------------------------

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                        int lo, int hi);
/// A random product of elementary operations and its inverse.
std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng,
                                                  std::size_t n, int steps);
/// Invariant factors by plain row/column elimination (no transforms, no
/// sparse tricks).
std::vector<Integer> naive_invariants(IntMatrix a);
bool is_diagonal_chain(const IntMatrix& d);

// Matrix-backed chain complexes -----------------------------------------

/// Cells [tag, i] in each degree; d[n] is dims[n-1] × dims[n] (d[0] empty).
struct MatComplex {
  std::int64_t tag = 0;
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> d;
  ucover::ChainComplex complex;
};

MatComplex make_complex(std::vector<std::size_t> dims, std::vector<IntMatrix> d);

/// Linear map of the given degree; m[n] has columns indexed by the source
/// cells of degree n and rows by the target cells of degree n + degree.
ucover::LinearMap matrix_map(int degree, std::int64_t src_tag, std::int64_t dst_tag,
                             std::vector<IntMatrix> m);
/// Column i of a map as a matrix (for tests that go back and forth).
IntMatrix map_matrix(const ucover::LinearMap& f, const MatComplex& src,
                     const MatComplex& dst, int n, int degree);

/// Canonical blocks (free cells, x ↦ c·y pairs) conjugated degree-wise by
/// random unimodular matrices.
MatComplex random_complex(std::mt19937_64& rng, int top_degree, std::size_t max_cells);

struct MatReduction {
  MatComplex top;
  MatComplex bottom;
  std::vector<IntMatrix> f, g, h;
  ucover::Reduction reduction;
  /// A perturbation of the top with hδ nilpotent: δ = ψdψ⁻¹ − d for a
  /// unipotent ψ that strictly lowers a weight the canonical h respects.
  ucover::LinearMap nilpotent_top_perturbation;
};

/// top = bottom ⊕ (contractible pairs), conjugated by a random unimodular
/// change of basis; f, g, h transported accordingly.
MatReduction random_extension(std::mt19937_64& rng, const MatComplex& bottom,
                              std::size_t max_pairs);

/// δ = ψdψ⁻¹ − d on c for a random unimodular ψ.
ucover::LinearMap conjugation_perturbation(std::mt19937_64& rng, const MatComplex& c);

/// C(semiline) ⇒ C(point) with h(n) = [0,1] + … + [n−1,n].
ucover::Reduction semiline_reduction();
std::vector<ucover::Cell> semiline_sample(int n);

/// Random abstract simplicial complex on `vertices` vertices as a
/// simplicial set (faces delete a vertex).
ucover::SimplicialSet random_simplicial_complex(std::mt19937_64& rng, int vertices,
                                                int facets, int max_dim);

/// Two triangles glued along their boundary.
ucover::SimplicialSet two_triangle_sphere();
/// RP² with a loop c and a triangle u, ∂u = (a, s0 v, c); c is a free face.
ucover::SimplicialSet rp2_with_flap();

// perturbation route closed forms ----------------------------------------------

/// Differences between the generic outputs and the closed-form δ′, δ″ and
/// h₃δ″ expressions, one message per mismatching generator.
std::vector<std::string> lemma_mismatches(const ucover::TwistingOperator& tau,
                                          const ucover::Equivalence& eq,
                                          const ucover::PerturbationResult& r);

// Morse helpers ----------------------------------------------------------

/// λ̃ = λ∘π, counts × |H|, validity and admissibility of the lifted field.
std::vector<std::string> lifted_field_problems(ucover::SetPtr x,
                                               const ucover::DiscreteVectorField& v);

/// Runs the randomized reduction-axiom suite; returns failures and the
/// number of reductions checked.
struct SuiteResult {
  std::size_t checked = 0;
  std::vector<std::string> failures;
};
SuiteResult reduction_axiom_suite(std::uint64_t seed, std::size_t trials);
SuiteResult morse_suite(std::uint64_t seed, std::size_t fields_per_complex);
SuiteResult snf_suite(std::uint64_t seed, std::size_t trials);

std::string homology_string(const std::vector<ucover::HomologyGroup>& hs);

}  // namespace testsupport
