#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ucover/integer.hpp"
#include "ucover/simplicial.hpp"
#include "ucover/snf.hpp"

namespace ucover {

/// Letters are ±(k+1) for generator k; a negative letter is an inverse.
using Word = std::vector<int>;

Word free_reduce(Word w);
Word inverse(const Word& w);

struct MaximalTree {
  int root = 0;
  std::vector<int> edges;       // generator indices of tree edges, BFS order
  std::vector<char> in_tree;    // per nondegenerate edge
};

MaximalTree maximal_tree(const SimplicialSet& x, int basepoint = 0);

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  /// For each nondegenerate edge: its generator, or -1 for tree edges.
  std::vector<int> edge_generator;

  std::string format_word(const Word& w) const;
  /// "< g1, g2 | w1, w2 >"; empty relators are not printed.
  std::string str() const;
};

GroupPresentation pi1_presentation(const SimplicialSet& x,
                                   const MaximalTree& t);

/// Tietze moves: drop trivial and repeated relators, eliminate generators
/// that occur exactly once in some relator. edge_generator is cleared.
GroupPresentation simplify_presentation(GroupPresentation p);

/// A finite group by multiplication table. Element 0 is the identity.
struct FiniteGroupTable {
  int order = 1;
  std::vector<std::vector<int>> mul;
  int identity = 0;
  std::vector<int> inv;
  /// Image of each presentation generator (when built from one).
  std::vector<int> word_images;

  int multiply(int a, int b) const {
    return mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  int inverse(int a) const { return inv[static_cast<std::size_t>(a)]; }
  /// Image of a word under word_images.
  int evaluate(const Word& w) const;

  /// Associativity, identity and inverse laws; relators if given.
  std::vector<std::string> check(const std::vector<Word>& relators = {}) const;

  static FiniteGroupTable trivial();
  static FiniteGroupTable cyclic(int m);
  /// Closure of the given permutations (all on {0..n-1}); word_images are
  /// the generators themselves.
  static FiniteGroupTable from_permutations(
      const std::vector<std::vector<int>>& gens, std::size_t max_order);
  /// Checks the table and fills inv.
  static FiniteGroupTable from_table(std::vector<std::vector<int>> mul,
                                     std::vector<int> word_images);
};

constexpr std::size_t kDefaultMaxCosets = 100000;
constexpr std::size_t kMaxTableOrder = 5000;

/// Coset enumeration over the trivial subgroup (HLT with lookahead-free
/// scanning). Throws GroupTooLargeOrInfinite past max_cosets.
FiniteGroupTable todd_coxeter(const GroupPresentation& p,
                              std::size_t max_cosets = kDefaultMaxCosets);

struct AbelianInvariants {
  std::vector<Integer> torsion;
  int free_rank = 0;

  std::size_t rank() const { return torsion.size() + free_rank; }
  bool trivial() const { return torsion.empty() && free_rank == 0; }
  std::string str() const;
};

/// Abelianization with explicit coordinates: a generator maps to a vector
/// of length rank(), torsion coordinates first (reduced mod t_i).
struct Abelianization {
  AbelianInvariants invariants;
  std::vector<std::vector<Integer>> generator_images;

  std::vector<Integer> image(const Word& w) const;
};

Abelianization abelianize(const GroupPresentation& p);
AbelianInvariants abelian_invariants(const GroupPresentation& p);

namespace models {
/// One vertex, an edge and an inverse edge per generator, triangles
/// realizing each relator (auxiliary diagonals for long relators).
SimplicialSet presentation_complex(const GroupPresentation& p);
}  // namespace models

}  // namespace ucover
