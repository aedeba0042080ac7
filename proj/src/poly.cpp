#include "ucover/poly.hpp"

#include <algorithm>
#include <numeric>

#include "ucover/errors.hpp"

namespace ucover {

Ring::Ring(std::vector<std::string> names, std::vector<int> order)
    : names_(std::move(names)), order_(std::move(order)) {
  std::vector<int> check = order_;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != static_cast<int>(i) || check.size() != names_.size())
      throw ContractViolation("variable order must be a permutation");
}

Monomial Ring::var(int i, int power) const {
  Monomial m = one();
  m.at(static_cast<std::size_t>(i)) = power;
  return m;
}

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

int Ring::compare(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t k = order_.size(); k-- > 0;) {
    const auto v = static_cast<std::size_t>(order_[k]);
    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
  }
  return 0;
}

int Ring::display_compare(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t v = a.size(); v-- > 0;)
    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
  return 0;
}

int Ring::compare(const Term& a, const Term& b) const {
  if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
  return compare(a.mono, b.mono);
}

Vec Ring::add(const Vec& a, const Vec& b) const {
  Vec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i], b[j]);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      Integer s = a[i].coeff + b[j].coeff;
      if (s != 0) out.push_back(Term{a[i].pos, a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return out;
}

Vec Ring::sub(const Vec& a, const Vec& b) const {
  return add(a, mul_term(b, -1, one()));
}

Vec Ring::mul_term(const Vec& a, const Integer& c, const Monomial& m, int shift) {
  Vec out;
  if (c == 0) return out;
  out.reserve(a.size());
  for (const auto& t : a) {
    Monomial mono = t.mono;
    for (std::size_t k = 0; k < mono.size(); ++k) mono[k] += m[k];
    out.push_back(Term{t.pos + shift, std::move(mono), t.coeff * c});
  }
  return out;
}

Vec Ring::mul(const Poly& p, const Vec& v) const {
  Vec out;
  for (const auto& t : p) out = add(out, mul_term(v, t.coeff, t.mono));
  return out;
}

Vec Ring::normalized(Vec v) const {
  std::sort(v.begin(), v.end(),
            [this](const Term& a, const Term& b) { return compare(a, b) > 0; });
  Vec out;
  for (auto& t : v) {
    if (!out.empty() && compare(out.back(), t) == 0) {
      out.back().coeff += t.coeff;
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Poly Ring::constant(const Integer& c) const {
  if (c == 0) return {};
  return {Term{0, one(), c}};
}

Poly Ring::monomial(const Monomial& m, const Integer& c) const {
  if (c == 0) return {};
  return {Term{0, m, c}};
}

std::string Ring::format_monomial(const Monomial& m) const {
  std::string out;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += names_[v];
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out;
}

std::string Ring::format(const Poly& p) const {
  if (p.empty()) return "0";
  Poly terms = p;
  std::sort(terms.begin(), terms.end(), [this](const Term& a, const Term& b) {
    return display_compare(a.mono, b.mono) > 0;
  });
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const bool neg = t.coeff < 0;
    const Integer mag = abs(t.coeff);
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const std::string mono = format_monomial(t.mono);
    if (mono.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.get_str() + "*" + mono;
  }
  return out;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = b[k] - a[k];
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
  return out;
}

Vec PolyMatrix::column(std::size_t j) const {
  Vec out;
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& t : at(i, j)) out.push_back(Term{static_cast<int>(i), t.mono, t.coeff});
  return out;  // entries are sorted, positions ascend: already in order
}

std::vector<Vec> PolyMatrix::columns() const {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < cols; ++j) out.push_back(column(j));
  return out;
}

PolyMatrix PolyMatrix::from_columns(std::size_t rows, const std::vector<Vec>& cs) {
  PolyMatrix m(rows, cs.size());
  for (std::size_t j = 0; j < cs.size(); ++j)
    for (const auto& t : cs[j]) {
      if (t.pos < 0 || static_cast<std::size_t>(t.pos) >= rows)
        throw ContractViolation("column entry outside the matrix");
      m.at(static_cast<std::size_t>(t.pos), j).push_back(Term{0, t.mono, t.coeff});
    }
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Poly& p) { return p.empty(); });
}

PolyMatrix multiply(const Ring& r, const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols != b.rows) throw ContractViolation("matrix shapes do not match");
  PolyMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k).empty()) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        if (!b.at(k, j).empty())
          out.at(i, j) = r.add(out.at(i, j), r.mul(a.at(i, k), b.at(k, j)));
    }
  return out;
}

}  // namespace ucover
