#include "ucover/groebner.hpp"

#include <queue>
#include <tuple>

namespace ucover {

namespace {

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides_int(const Integer& a, const Integer& b) {
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

}  // namespace

int GroebnerBasis::reducer(const Term& t) const {
  int fallback = -1;
  for (std::size_t i = 0; i < g_.size(); ++i) {
    const Term& lt = g_[i].front();
    if (lt.pos != t.pos || !divides(lt.mono, t.mono)) continue;
    if (divides_int(lt.coeff, t.coeff)) return static_cast<int>(i);
    if (fallback < 0 && fdiv(t.coeff, lt.coeff) != 0) fallback = static_cast<int>(i);
  }
  return fallback;
}

Vec GroebnerBasis::reduce(Vec f) const {
  Vec rest;
  while (!f.empty()) {
    const int i = reducer(f.front());
    if (i < 0) {
      rest.push_back(std::move(f.front()));
      f.erase(f.begin());
      continue;
    }
    const Vec& g = g_[static_cast<std::size_t>(i)];
    const Integer q = fdiv(f.front().coeff, g.front().coeff);
    f = ring_.add(f, Ring::mul_term(g, -q, quotient(f.front().mono, g.front().mono)));
  }
  return rest;
}

Vec GroebnerBasis::reduce_lead(Vec f, int below) const {
  while (!f.empty() && f.front().pos < below) {
    const int i = reducer(f.front());
    if (i < 0) break;
    const Vec& g = g_[static_cast<std::size_t>(i)];
    const Integer q = fdiv(f.front().coeff, g.front().coeff);
    f = ring_.add(f, Ring::mul_term(g, -q, quotient(f.front().mono, g.front().mono)));
  }
  return f;
}

GroebnerBasis::GroebnerBasis(const Ring& ring, const std::vector<Vec>& generators)
    : ring_(ring) {
  // normal strategy: pairs with the smallest lcm degree first, ties in
  // creation order
  using Pair = std::tuple<int, std::size_t, std::size_t, std::size_t>;
  std::priority_queue<Pair, std::vector<Pair>, std::greater<>> pairs;
  std::size_t serial = 0;
  auto insert = [&](Vec f) {
    f = reduce(std::move(f));
    if (f.empty()) return;
    if (f.front().coeff < 0) f = Ring::mul_term(f, -1, ring_.one());
    const std::size_t k = g_.size();
    for (std::size_t i = 0; i < k; ++i)
      if (g_[i].front().pos == f.front().pos)
        pairs.emplace(total_degree(lcm(g_[i].front().mono, f.front().mono)), serial++, i, k);
    g_.push_back(std::move(f));
  };
  for (const auto& f : generators) insert(ring_.normalized(f));

  while (!pairs.empty()) {
    const auto [deg, order, i, j] = pairs.top();
    pairs.pop();
    const Vec f = g_[i];
    const Vec g = g_[j];
    const Term& a = f.front();
    const Term& b = g.front();
    const Monomial l = lcm(a.mono, b.mono);
    const Monomial mf = quotient(l, a.mono), mg = quotient(l, b.mono);
    Integer c;
    mpz_lcm(c.get_mpz_t(), a.coeff.get_mpz_t(), b.coeff.get_mpz_t());
    insert(ring_.sub(Ring::mul_term(f, c / a.coeff, mf),
                     Ring::mul_term(g, c / b.coeff, mg)));
    if (!divides_int(a.coeff, b.coeff) && !divides_int(b.coeff, a.coeff)) {
      Integer d, u, v;
      mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.coeff.get_mpz_t(),
                 b.coeff.get_mpz_t());
      insert(ring_.add(Ring::mul_term(f, u, mf), Ring::mul_term(g, v, mg)));
    }
  }

  // drop elements whose leading term another element strongly divides
  std::vector<bool> gone(g_.size(), false);
  for (std::size_t i = 0; i < g_.size(); ++i)
    for (std::size_t j = 0; j < g_.size(); ++j) {
      if (i == j || gone[j]) continue;
      const Term& ti = g_[i].front();
      const Term& tj = g_[j].front();
      if (ti.pos != tj.pos || !divides(tj.mono, ti.mono) ||
          !divides_int(tj.coeff, ti.coeff))
        continue;
      if (tj.mono == ti.mono && tj.coeff == ti.coeff && j > i) continue;
      gone[i] = true;
      break;
    }
  std::vector<Vec> kept;
  for (std::size_t i = 0; i < g_.size(); ++i)
    if (!gone[i]) kept.push_back(std::move(g_[i]));
  g_ = std::move(kept);
}

ColumnModule::ColumnModule(const Ring& ring, std::size_t rows, std::vector<Vec> columns)
    : ring_(ring), rows_(rows), columns_(std::move(columns)) {
  std::vector<Vec> aug;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    Vec v = ring_.normalized(columns_[j]);
    v.push_back(Term{static_cast<int>(rows_ + j), ring_.one(), 1});
    aug.push_back(std::move(v));
  }
  gb_ = GroebnerBasis(ring_, aug);
}

Vec ColumnModule::restrict(const Vec& e_part, std::size_t keep) const {
  Vec out;
  for (const auto& t : e_part) {
    const int p = t.pos - static_cast<int>(rows_);
    if (p >= 0 && static_cast<std::size_t>(p) < keep) out.push_back(Term{p, t.mono, t.coeff});
  }
  return out;
}

std::vector<Vec> ColumnModule::syzygies(std::optional<std::size_t> keep) const {
  const std::size_t k = keep.value_or(columns_.size());
  std::vector<Vec> out;
  for (const auto& g : gb_.elements()) {
    if (g.front().pos < static_cast<int>(rows_)) continue;
    Vec s = restrict(g, k);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::optional<Vec> ColumnModule::lift(const Vec& v, std::optional<std::size_t> keep) const {
  const Vec f = gb_.reduce_lead(ring_.normalized(v), static_cast<int>(rows_));
  if (!f.empty() && f.front().pos < static_cast<int>(rows_)) return std::nullopt;
  return Ring::mul_term(restrict(f, keep.value_or(columns_.size())), -1, ring_.one());
}

}  // namespace ucover
