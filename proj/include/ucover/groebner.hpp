#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "ucover/poly.hpp"

namespace ucover {

/// Strong Gröbner basis over Z of a submodule of a free module. Leading
/// coefficients are kept positive; reduction divides leading
/// coefficients with a nonnegative remainder.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(const Ring& ring, const std::vector<Vec>& generators);

  const Ring& ring() const { return ring_; }
  const std::vector<Vec>& elements() const { return g_; }

  /// Full remainder: no term is reducible afterwards.
  Vec reduce(Vec f) const;
  /// Reduces only while the leading term is reducible and its position
  /// is below `below`.
  Vec reduce_lead(Vec f, int below = std::numeric_limits<int>::max()) const;
  bool contains(const Vec& f) const { return reduce_lead(f).empty(); }

 private:
  // Index of an element whose leading term reduces t, or -1.
  int reducer(const Term& t) const;

  Ring ring_;
  std::vector<Vec> g_;
};

/// Elimination over the columns c_1..c_k of a matrix with `rows` rows:
/// Gröbner basis of the vectors (c_j, e_j) in position-over-term order.
class ColumnModule {
 public:
  ColumnModule(const Ring& ring, std::size_t rows, std::vector<Vec> columns);

  /// Generators of {a : Σ a_j c_j = 0}, restricted to the first `keep`
  /// coordinates (all of them by default).
  std::vector<Vec> syzygies(std::optional<std::size_t> keep = std::nullopt) const;
  /// a with Σ a_j c_j = v, restricted to the first `keep` coordinates, or
  /// nullopt when v is outside the column module.
  std::optional<Vec> lift(const Vec& v,
                          std::optional<std::size_t> keep = std::nullopt) const;

  std::size_t size() const { return columns_.size(); }

 private:
  Vec restrict(const Vec& e_part, std::size_t keep) const;

  Ring ring_;
  std::size_t rows_;
  std::vector<Vec> columns_;
  GroebnerBasis gb_;
};

}  // namespace ucover
