#include "ucover/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <utility>

#include "ucover/errors.hpp"

namespace ucover {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw ContractViolation("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Integer& z) { return z == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw ContractViolation("matrix shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw ContractViolation("determinant of non-square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<Integer> SNFResult::invariants() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

namespace {

// Works on a matrix while tracking the inverse operations so that the
// original equals U * A * V at every step.
class SnfWorker {
 public:
  SnfWorker(const IntMatrix& a, bool track)
      : a_(a), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a.rows());
      ui_ = u_;
      v_ = IntMatrix::identity(a.cols());
      vi_ = v_;
    }
  }

  void run();

  IntMatrix a_;
  bool track_;
  IntMatrix u_, ui_, v_, vi_;

 private:
  std::size_t m() const { return a_.rows(); }
  std::size_t n() const { return a_.cols(); }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n(); ++k) std::swap(a_(i, k), a_(j, k));
    if (!track_) return;
    for (std::size_t k = 0; k < m(); ++k) std::swap(u_(k, i), u_(k, j));
    for (std::size_t k = 0; k < m(); ++k) std::swap(ui_(i, k), ui_(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < m(); ++k) std::swap(a_(k, i), a_(k, j));
    if (!track_) return;
    for (std::size_t k = 0; k < n(); ++k) std::swap(v_(i, k), v_(j, k));
    for (std::size_t k = 0; k < n(); ++k) std::swap(vi_(k, i), vi_(k, j));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < n(); ++k)
      if (a_(j, k) != 0) a_(i, k) += c * a_(j, k);
    if (!track_) return;
    for (std::size_t k = 0; k < m(); ++k)
      if (u_(k, i) != 0) u_(k, j) -= c * u_(k, i);
    for (std::size_t k = 0; k < m(); ++k)
      if (ui_(j, k) != 0) ui_(i, k) += c * ui_(j, k);
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < m(); ++k)
      if (a_(k, j) != 0) a_(k, i) += c * a_(k, j);
    if (!track_) return;
    for (std::size_t k = 0; k < n(); ++k)
      if (v_(i, k) != 0) v_(j, k) -= c * v_(i, k);
    for (std::size_t k = 0; k < n(); ++k)
      if (vi_(k, j) != 0) vi_(k, i) += c * vi_(k, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < n(); ++k) a_(i, k) = -a_(i, k);
    if (!track_) return;
    for (std::size_t k = 0; k < m(); ++k) u_(k, i) = -u_(k, i);
    for (std::size_t k = 0; k < m(); ++k) ui_(i, k) = -ui_(i, k);
  }
};

void SnfWorker::run() {
  const std::size_t lim = std::min(m(), n());
  for (std::size_t t = 0; t < lim; ++t) {
    // smallest nonzero |entry| in the trailing block; ties go to the first
    // in row-major order
    std::size_t pi = m(), pj = n();
    Integer best;
    for (std::size_t i = t; i < m(); ++i)
      for (std::size_t j = t; j < n(); ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        if (pi == m() || ucover::abs(x) < best) {
          best = ucover::abs(x);
          pi = i;
          pj = j;
        }
      }
    if (pi == m()) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m(); ++i) {
        if (a_(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (a_(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n(); ++j) {
        if (a_(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (a_(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // a remainder smaller than the pivot exists; move it to the corner
        std::size_t bi = t, bj = t;
        Integer b = ucover::abs(a_(t, t));
        for (std::size_t i = t + 1; i < m(); ++i)
          if (a_(i, t) != 0 && ucover::abs(a_(i, t)) < b) {
            b = ucover::abs(a_(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n(); ++j)
          if (a_(t, j) != 0 && ucover::abs(a_(t, j)) < b) {
            b = ucover::abs(a_(t, j));
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // row and column clear; enforce divisibility on the trailing block
      std::size_t bad = m();
      for (std::size_t i = t + 1; i < m() && bad == m(); ++i)
        for (std::size_t j = t + 1; j < n(); ++j)
          if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m()) break;
      add_row(t, bad, 1);
    }
    if (a_(t, t) < 0) negate_row(t);
  }
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& a) {
  SnfWorker w(a, true);
  w.run();
  return SNFResult{std::move(w.a_), std::move(w.u_), std::move(w.v_),
                   std::move(w.ui_), std::move(w.vi_)};
}

void SparseMatrix::add(std::size_t i, std::size_t j, const Integer& v) {
  if (v == 0) return;
  auto& row = entries.at(i);
  auto [it, inserted] = row.emplace(j, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  }
}

IntMatrix SparseMatrix::dense() const {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& [j, v] : entries[i]) m(i, j) = v;
  return m;
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  SnfWorker w(m, false);
  w.run();
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (w.a_(i, i) != 0) out.push_back(w.a_(i, i));
  return out;
}

std::vector<Integer> invariant_factors(SparseMatrix m) {
  std::vector<std::set<std::size_t>> col_rows(m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (const auto& [j, v] : m.entries[i]) col_rows[j].insert(i);
  std::vector<char> row_alive(m.rows, 1);
  std::size_t unit_pivots = 0;

  for (;;) {
    // Markowitz-style choice among unit entries
    std::size_t pr = m.rows, pc = m.cols, cost = SIZE_MAX;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (!row_alive[i]) continue;
      const std::size_t rl = m.entries[i].size();
      if (rl == 0) continue;
      for (const auto& [j, v] : m.entries[i]) {
        if (!is_unit(v)) continue;
        const std::size_t c = (rl - 1) * (col_rows[j].size() - 1);
        if (c < cost) {
          cost = c;
          pr = i;
          pc = j;
          if (c == 0) break;
        }
      }
      if (cost == 0) break;
    }
    if (pr == m.rows) break;
    ++unit_pivots;
    const Integer pv = m.entries[pr].at(pc);
    const auto pivot_row = m.entries[pr];
    std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (std::size_t r : targets) {
      if (r == pr) continue;
      const Integer factor = -m.entries[r].at(pc) * pv;  // pv = ±1
      for (const auto& [j, v] : pivot_row) {
        auto& row = m.entries[r];
        auto [it, inserted] = row.emplace(j, factor * v);
        if (!inserted) {
          it->second += factor * v;
          if (it->second == 0) {
            row.erase(it);
            col_rows[j].erase(r);
          }
        } else {
          col_rows[j].insert(r);
        }
      }
    }
    for (const auto& [j, v] : pivot_row) col_rows[j].erase(pr);
    m.entries[pr].clear();
    row_alive[pr] = 0;
    // column pc is now empty apart from the removed row
  }

  // residual block on the surviving nonzero rows and columns
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < m.rows; ++i)
    if (row_alive[i] && !m.entries[i].empty()) rows.push_back(i);
  for (std::size_t j = 0; j < m.cols; ++j)
    if (!col_rows[j].empty()) cols.push_back(j);
  std::vector<std::size_t> col_pos(m.cols, 0);
  for (std::size_t k = 0; k < cols.size(); ++k) col_pos[cols[k]] = k;
  IntMatrix rest(rows.size(), cols.size());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (const auto& [j, v] : m.entries[rows[k]]) rest(k, col_pos[j]) = v;

  std::vector<Integer> out(unit_pivots, Integer(1));
  for (auto& d : invariant_factors(rest)) out.push_back(d);
  return out;
}

}  // namespace ucover
