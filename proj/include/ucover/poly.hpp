#pragma once

#include <string>
#include <vector>

#include "ucover/integer.hpp"

namespace ucover {

using Monomial = std::vector<int>;

/// Term of a free-module element: coeff · mono · e_pos.
struct Term {
  int pos = 0;
  Monomial mono;
  Integer coeff;

  bool operator==(const Term&) const = default;
};

/// Module element as a term list, strictly decreasing in the module
/// order. A polynomial is a Vec whose terms all sit at position 0.
using Vec = std::vector<Term>;
using Poly = Vec;

/// Integer polynomial ring with degrevlex on a chosen variable precedence
/// and position-over-term on free modules (lower position is greater).
class Ring {
 public:
  Ring() = default;
  /// order[k] is the storage index of the k-th greatest variable.
  Ring(std::vector<std::string> names, std::vector<int> order);

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  Monomial one() const { return Monomial(names_.size(), 0); }
  Monomial var(int i, int power = 1) const;

  /// Sign of a − b in the monomial order.
  int compare(const Monomial& a, const Monomial& b) const;
  int compare(const Term& a, const Term& b) const;
  /// Same comparison in the plain storage order (used for printing).
  int display_compare(const Monomial& a, const Monomial& b) const;

  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  /// a · c · m, with every position shifted by `shift`.
  static Vec mul_term(const Vec& a, const Integer& c, const Monomial& m,
                      int shift = 0);
  Vec mul(const Poly& p, const Vec& v) const;
  Vec normalized(Vec v) const;  // sorts and merges an arbitrary term list

  Poly constant(const Integer& c) const;
  Poly monomial(const Monomial& m, const Integer& c = 1) const;

  std::string format(const Poly& p) const;
  std::string format_monomial(const Monomial& m) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> order_;
};

bool divides(const Monomial& a, const Monomial& b);
Monomial quotient(const Monomial& b, const Monomial& a);  // b / a
Monomial lcm(const Monomial& a, const Monomial& b);
int total_degree(const Monomial& m);

/// Dense matrix of polynomials; columns are read as module elements with
/// the row index as position.
struct PolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Poly> entries;  // row-major

  PolyMatrix() = default;
  PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  Poly& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

  Vec column(std::size_t j) const;
  std::vector<Vec> columns() const;
  static PolyMatrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
  PolyMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const PolyMatrix&) const = default;
};

PolyMatrix multiply(const Ring& r, const PolyMatrix& a, const PolyMatrix& b);

}  // namespace ucover
