#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ucover/fundamental_group.hpp"
#include "ucover/simplicial.hpp"

namespace ucover {

using SetPtr = std::shared_ptr<const SimplicialSet>;
using GroupPtr = std::shared_ptr<const FiniteGroupTable>;

/// τ: X → K(H,0), stored on nondegenerate edges and extended by
/// τ(vertex) = τ(s0 v) = 1 and τ(σ) = τ(∂0 σ) in dimension ≥ 2.
class TwistingOperator {
 public:
  TwistingOperator(SetPtr base, GroupPtr group, std::vector<int> edge_values);

  const SimplicialSet& base() const { return *base_; }
  const SetPtr& base_ptr() const { return base_; }
  const FiniteGroupTable& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const std::vector<int>& edge_values() const { return edge_values_; }

  /// τ of an arbitrary simplex of dimension ≥ 1.
  int operator()(const Simplex& s) const;
  int of_generator(int dim, int generator) const;

 private:
  SetPtr base_;
  GroupPtr group_;
  std::vector<int> edge_values_;
  std::vector<std::vector<int>> memo_;  // per dimension ≥ 1
};

/// Edge values χ∘τ' from a maximal tree and a group whose word_images
/// are indexed by the presentation generators. Checks every 2-simplex.
TwistingOperator build_tau(SetPtr x, const MaximalTree& t,
                           const GroupPresentation& p, GroupPtr chi);

/// Constant-identity twisting.
TwistingOperator trivial_tau(SetPtr x, GroupPtr group);

/// Violations of the twisting identities (compatibility on 2-simplices and
/// the face/degeneracy identities on generators and their degeneracies).
std::vector<std::string> check_twisting(const TwistingOperator& tau);

/// Throws NotSurjective unless the images generate the group.
void require_surjective(const FiniteGroupTable& g);

/// H × X with pair bookkeeping; generator (h, σ) of dimension n has index
/// h * |X_n| + σ.
struct CoverSet {
  SimplicialSet set;
  SetPtr base;
  GroupPtr group;

  int index(int dim, int h, int sigma) const {
    return h * static_cast<int>(base->count(dim)) + sigma;
  }
  std::pair<int, int> component(int dim, int idx) const {
    const int c = static_cast<int>(base->count(dim));
    return {idx / c, idx % c};
  }
};

/// K(H,0) ×_τ X with ∂_n(h, σ) = (τ(σ)·h, ∂_n σ).
CoverSet twisted_product(const TwistingOperator& tau);

/// The χ-cover H × X with ∂_n(h, σ) = (h·τ(σ)^-1, ∂_n σ).
CoverSet cover(const TwistingOperator& tau);
CoverSet cover(SetPtr x, const MaximalTree& t, const GroupPresentation& p,
               GroupPtr chi);

/// K(H,0) as a finite simplicial set: one vertex per element, named by
/// the element index.
SimplicialSet kh0(const FiniteGroupTable& g);

struct UniversalCover {
  SetPtr base;
  MaximalTree tree;
  GroupPresentation presentation;
  GroupPtr group;
  std::shared_ptr<const TwistingOperator> tau;
  CoverSet cover;
};

/// Maximal tree, presentation, coset enumeration, τ, twisted product.
UniversalCover universal_cover(SetPtr x,
                               std::size_t max_cosets = kDefaultMaxCosets);

/// Product of the universal covers.
ProductSet product_cover(SetPtr x, SetPtr y,
                         std::size_t max_cosets = kDefaultMaxCosets);

}  // namespace ucover
