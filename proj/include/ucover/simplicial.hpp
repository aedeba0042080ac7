#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ucover {

/// Canonical degeneracy operator s_{j_k} ... s_{j_1} with j_k > ... > j_1.
/// Indices are stored outermost first, so the vector is strictly decreasing.
class DegeneracyWord {
 public:
  DegeneracyWord() = default;
  explicit DegeneracyWord(std::vector<int> indices);

  static bool is_canonical(std::span<const int> indices);

  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(int j) const;

  /// The canonical form of s_j composed on the left of this word.
  DegeneracyWord prepend(int j) const;

  auto operator<=>(const DegeneracyWord&) const = default;

 private:
  std::vector<int> indices_;
};

/// A simplex of a simplicial set: a degeneracy word applied to a
/// nondegenerate generator.
struct Simplex {
  DegeneracyWord degeneracies;
  int generator_dim = 0;
  int generator = 0;

  int dim() const {
    return generator_dim + static_cast<int>(degeneracies.size());
  }
  bool degenerate() const { return !degeneracies.empty(); }

  auto operator<=>(const Simplex&) const = default;
};

Simplex nondegenerate(int dim, int generator);

/// s_j applied to a simplex, kept in canonical form.
Simplex degenerate(const Simplex& s, int j);

/// s_w applied to a simplex, word given outermost first.
Simplex degenerate(const Simplex& s, const DegeneracyWord& word);

/// Finite simplicial set. Generators are listed per dimension; the faces
/// of every generator are stored once and never change.
class SimplicialSet {
 public:
  SimplicialSet() = default;

  int max_dim() const { return static_cast<int>(names_.size()) - 1; }
  std::size_t count(int dim) const;
  std::size_t total_count() const;

  const std::string& name(int dim, int generator) const;
  std::optional<int> find(int dim, std::string_view name) const;
  /// Looks a name up across all dimensions: (dim, index).
  std::optional<std::pair<int, int>> find(std::string_view name) const;

  const Simplex& generator_face(int dim, int generator, int i) const;
  std::span<const Simplex> generator_faces(int dim, int generator) const;

  /// ∂_i s, rewritten through the simplicial identities until the face
  /// operator reaches a generator.
  Simplex face(const Simplex& s, int i) const;

  std::string describe(const Simplex& s) const;

 private:
  friend class SimplicialSetBuilder;

  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<Simplex>>> faces_;
  std::unordered_map<std::string, std::pair<int, int>> index_;
};

/// Incremental construction. Faces must reference generators that were
/// added earlier; the simplicial identities are not checked here (use
/// validate_simplicial).
class SimplicialSetBuilder {
 public:
  int add(int dim, std::string name, std::vector<Simplex> faces = {});
  int add_vertex(std::string name) { return add(0, std::move(name)); }
  std::size_t count(int dim) const;
  SimplicialSet build() &&;

 private:
  SimplicialSet set_;
};

struct IdentityViolation {
  int dim = 0;
  int generator = 0;
  int i = 0;
  int j = 0;
  std::string message;
};

/// Checks ∂_i ∂_j = ∂_{j-1} ∂_i (i < j) on every generator, plus face
/// dimensions. An empty result means the set is valid.
std::vector<IdentityViolation> validate_simplicial(const SimplicialSet& x);

/// Cartesian product with its projection data. Nondegenerate n-simplices
/// are pairs (s_A x, s_B y) with disjoint degeneracy supports.
struct ProductSet {
  SimplicialSet set;
  std::vector<std::vector<std::pair<Simplex, Simplex>>> components;

  std::optional<int> find(const Simplex& a, const Simplex& b) const;

 private:
  friend ProductSet cartesian_product(const SimplicialSet&,
                                      const SimplicialSet&);
  std::vector<std::map<std::pair<Simplex, Simplex>, int>> lookup_;
};

ProductSet cartesian_product(const SimplicialSet& x, const SimplicialSet& y);

/// The point Δ⁰, the standard simplex Δⁿ (all faces nondegenerate), and a
/// few small models used throughout tests and fixtures.
namespace models {
SimplicialSet point();
SimplicialSet standard_simplex(int n);
SimplicialSet circle();
SimplicialSet sphere(int n);
SimplicialSet wedge_circle_sphere();
SimplicialSet torus();
/// n-skeleton of the nerve of Z/m. For m = 2 this is RP^n.
SimplicialSet cyclic_nerve_skeleton(int m, int n);
SimplicialSet real_projective_space(int n);
}  // namespace models

}  // namespace ucover
