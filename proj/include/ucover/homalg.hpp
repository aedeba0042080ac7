#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucover/integer.hpp"
#include "ucover/simplicial.hpp"

namespace ucover {

/// A basis element: degree plus an opaque integer key. Tensor cells store
/// [deg_a, len_a, key_a..., key_b...].
struct Cell {
  int degree = 0;
  std::vector<std::int64_t> key;

  auto operator<=>(const Cell&) const = default;
};

Cell make_cell(int degree, std::initializer_list<std::int64_t> key);
Cell tensor_cell(const Cell& a, const Cell& b);
std::pair<Cell, Cell> split_tensor(const Cell& c);

/// Finite linear combination with nonzero coefficients only.
using Chain = std::map<Cell, Integer>;

void add_term(Chain& c, const Cell& cell, const Integer& coeff);
void add_chain(Chain& c, const Chain& other, const Integer& scale = 1);
Chain scaled(const Chain& c, const Integer& s);
Chain difference(const Chain& a, const Chain& b);
Chain single(const Cell& cell, const Integer& coeff = 1);
std::string format_chain(const Chain& c,
                         const std::function<std::string(const Cell&)>& name);

/// Linear map given on basis cells. Copies share the implementation (and
/// the cache when memoized); id() identifies the implementation.
class LinearMap {
 public:
  using Fn = std::function<Chain(const Cell&)>;

  LinearMap();  // zero of degree 0
  LinearMap(int degree, Fn fn, bool memoize = false);

  static LinearMap zero(int degree);
  static LinearMap identity();

  int degree() const;
  bool is_zero() const;
  bool is_identity() const;
  std::uint64_t id() const;

  Chain operator()(const Cell& c) const;
  Chain operator()(const Chain& c) const;

  bool same_as(const LinearMap& other) const { return impl_ == other.impl_; }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// a ∘ b
LinearMap compose(const LinearMap& a, const LinearMap& b);
LinearMap operator+(const LinearMap& a, const LinearMap& b);
LinearMap operator-(const LinearMap& a, const LinearMap& b);
LinearMap negate(const LinearMap& a);
LinearMap memoized(const LinearMap& a);

/// Graded free Z-module with differential. Finite complexes enumerate a
/// basis per degree; function-backed ones only answer membership.
class ChainComplex {
 public:
  using Namer = std::function<std::string(const Cell&)>;

  static ChainComplex finite(std::string name,
                             std::vector<std::vector<Cell>> basis,
                             LinearMap d, Namer namer = {});
  static ChainComplex function_backed(std::string name, LinearMap d,
                                      std::function<bool(const Cell&)> contains,
                                      Namer namer = {});

  const std::string& name() const { return name_; }
  std::uint64_t id() const { return id_; }
  const LinearMap& d() const { return d_; }
  bool effective() const { return effective_; }
  /// Highest degree with a basis element (finite complexes), else -1.
  int top_degree() const;
  /// Throws NotEffective for function-backed complexes.
  const std::vector<Cell>& basis(int n) const;
  bool contains(const Cell& c) const;
  std::string describe(const Cell& c) const;
  std::string describe(const Chain& c) const;

  /// Same basis, differential d + δ. δ = 0 gives back this complex.
  ChainComplex perturbed(const LinearMap& delta) const;

 private:
  friend ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
  std::string name_;
  std::uint64_t id_ = 0;
  LinearMap d_;
  bool effective_ = true;
  std::shared_ptr<const std::vector<std::vector<Cell>>> basis_;
  std::function<bool(const Cell&)> contains_;
  Namer namer_;
};

/// A ⊗ B with d(a⊗b) = da⊗b + (-1)^|a| a⊗db. Identity depends only on the
/// factors, so equal factors give equal tensor complexes.
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);

/// (F⊗G)(a⊗b) = (-1)^{|G||a|} F(a)⊗G(b)
LinearMap tensor_maps(const LinearMap& f, const LinearMap& g);

/// Normalized chains: one cell [generator] per nondegenerate simplex,
/// d = Σ(-1)^i ∂_i with degenerate faces dropped.
ChainComplex chain_of(std::shared_ptr<const SimplicialSet> x,
                      std::string name = "C(X)");

/// f: top → bottom, g: bottom → top, h: top → top of degree +1.
struct Reduction {
  ChainComplex top;
  ChainComplex bottom;
  LinearMap f;
  LinearMap g;
  LinearMap h;
};

/// Violations of d² = 0, chain-map conditions and the five reduction
/// axioms. Checks every basis cell up to max_degree (all when negative).
std::vector<std::string> check_reduction(const Reduction& r,
                                         int max_degree = -1);
/// Same checks on explicit cells (for function-backed complexes).
std::vector<std::string> check_reduction_on(const Reduction& r,
                                            const std::vector<Cell>& top_cells,
                                            const std::vector<Cell>& bottom_cells);
std::vector<std::string> check_differential(const ChainComplex& c,
                                            int max_degree = -1);

Reduction trivial_reduction(const ChainComplex& c);
/// r1: D ⇒ C, r2: C ⇒ E gives D ⇒ E.
Reduction compose_reductions(const Reduction& r1, const Reduction& r2);
Reduction tensor_reduction(const Reduction& r, const Reduction& rp);
/// An isomorphism (h = 0) read backwards.
Reduction invert_isomorphism(const Reduction& r);

struct PerturbedReduction {
  Reduction reduction;
  LinearMap induced;  // perturbation on the other end
};

/// Perturbation δ of the bottom; the top gets g δ f.
PerturbedReduction tpl(const Reduction& r, const LinearMap& delta_bottom);

/// Perturbation δ of the top with hδ locally nilpotent. The series
/// Σ(-1)^i (hδ)^i x must vanish within max_iter terms for every cell it
/// meets, otherwise NilpotencyFailure.
PerturbedReduction bpl(const Reduction& r, const LinearMap& delta_top,
                       std::size_t max_iter);

/// 1 + (largest degree) × (largest basis size) over the given complexes.
std::size_t default_max_iter(const std::vector<const ChainComplex*>& cs);

}  // namespace ucover
