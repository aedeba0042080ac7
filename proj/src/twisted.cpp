#include "ucover/twisted.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ucover/errors.hpp"

namespace ucover {

namespace {

int small(const Integer& z, const char* what) {
  if (!z.fits_sint_p() || z > 1000000)
    throw Unsupported(std::string(what) + " " + z.get_str() + " is too large");
  return static_cast<int>(z.get_si());
}

bool is_constant_unit(const Poly& p) {
  return p.size() == 1 && total_degree(p.front().mono) == 0 && is_unit(p.front().coeff);
}

// Entry-wise normal form of a module element.
Vec reduce_entries(const GroupAlgebra& ga, const Vec& v) {
  std::map<int, Poly> parts;
  for (const auto& t : v) parts[t.pos].push_back(Term{0, t.mono, t.coeff});
  Vec out;
  for (auto& [pos, p] : parts)
    for (auto& t : ga.normal_form(ga.ring.normalized(p)))
      out.push_back(Term{pos, std::move(t.mono), std::move(t.coeff)});
  return out;
}

// Rewrites x̄ as x^{m-1} for every torsion factor, exponents of x taken mod m.
// This is the isomorphism onto Z[x]/(x^m − 1) in those variables.
Vec without_torsion_inverses(const GroupAlgebra& ga, const Vec& v) {
  const auto& torsion = ga.invariants.torsion;
  if (torsion.empty()) return v;
  Vec out;
  for (Term t : v) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      const int m = static_cast<int>(torsion[i].get_si());
      t.mono[2 * i] = (t.mono[2 * i] + t.mono[2 * i + 1] * (m - 1)) % m;
      t.mono[2 * i + 1] = 0;
    }
    out.push_back(std::move(t));
  }
  return ga.ring.normalized(std::move(out));
}

std::vector<Vec> without_torsion_inverses(const GroupAlgebra& ga, std::vector<Vec> cols) {
  for (auto& c : cols) c = without_torsion_inverses(ga, c);
  return cols;
}

// Columns of m followed by p·e_i for every row i and every p cutting out the
// group algebra. Entries are normal forms, so a torsion inverse x̄ never occurs
// and x^m − 1 alone describes that factor; x·x̄ − 1 would only let the
// elimination wander into powers of x̄.
std::vector<Vec> with_ideal_blocks(const GroupAlgebra& ga, std::vector<Vec> cols,
                                   std::size_t rows) {
  const Ring& r = ga.ring;
  std::vector<Poly> blocks;
  for (std::size_t v = 0; v < ga.invariants.rank(); ++v) {
    Monomial m = r.one();
    if (v < ga.invariants.torsion.size())
      m[2 * v] = static_cast<int>(ga.invariants.torsion[v].get_si());
    else
      m[2 * v] = m[2 * v + 1] = 1;
    blocks.push_back(r.add(r.monomial(m), r.constant(-1)));
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& p : blocks)
      cols.push_back(Ring::mul_term(p, 1, r.one(), static_cast<int>(i)));
  return cols;
}

std::vector<Word> cyclic_forms(const Word& w) {
  std::vector<Word> out;
  for (const Word& base : {w, inverse(w)})
    for (std::size_t r = 0; r < base.size(); ++r) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(r), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(r));
      out.push_back(std::move(rot));
    }
  return out;
}

void certify_abelian(const GroupPresentation& p, const AbelianInvariants& inv,
                     std::size_t max_cosets) {
  const GroupPresentation sp = simplify_presentation(p);
  const int g = static_cast<int>(sp.generators.size());
  if (g <= 1) return;
  std::set<Word> rels;
  for (const auto& r : sp.relators)
    for (auto& w : cyclic_forms(free_reduce(r))) rels.insert(std::move(w));
  bool commutators = true;
  for (int a = 1; a <= g && commutators; ++a)
    for (int b = a + 1; b <= g && commutators; ++b)
      commutators = rels.count(Word{a, b, -a, -b}) > 0;
  if (commutators) return;
  if (inv.free_rank > 0)
    throw Unsupported("π1 = " + sp.str() +
                      " is infinite and could not be certified abelian "
                      "(use --assume-abelian to skip this check)");
  Integer ab = 1;
  for (const auto& t : inv.torsion) ab *= t;
  FiniteGroupTable table;
  try {
    table = todd_coxeter(sp, max_cosets);
  } catch (const GroupTooLargeOrInfinite& e) {
    throw Unsupported(std::string("could not certify that π1 is abelian: ") + e.what());
  }
  if (Integer(table.order) != ab)
    throw Unsupported("π1 has order " + std::to_string(table.order) +
                      " but its abelianization has order " + ab.get_str() +
                      "; the group is not abelian");
}

}  // namespace

Integer GroupAlgebra::order() const {
  if (invariants.free_rank > 0) return 0;
  Integer n = 1;
  for (const auto& t : invariants.torsion) n *= t;
  return n;
}

PolyMatrix GroupAlgebra::normal_form(PolyMatrix m) const {
  for (auto& p : m.entries) p = normal_form(p);
  return m;
}

Poly GroupAlgebra::element(const std::vector<Integer>& g) const {
  if (g.size() != factors())
    throw ContractViolation("group element has the wrong number of coordinates");
  Monomial m = ring.one();
  const std::size_t l = invariants.torsion.size();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i < l) {
      Integer a = g[i] % invariants.torsion[i];
      if (a < 0) a += invariants.torsion[i];
      m[2 * i] = small(a, "exponent");
    } else if (g[i] >= 0) {
      m[2 * i] = small(g[i], "exponent");
    } else {
      m[2 * i + 1] = small(Integer(-g[i]), "exponent");
    }
  }
  return ring.monomial(m);
}

std::string GroupAlgebra::ring_description() const {
  if (ring.nvars() == 0) return "Integer Ring";
  std::string vars;
  for (std::size_t i = 0; i < ring.nvars(); ++i) vars += (i ? ", " : "") + ring.names()[i];
  return "Multivariate Polynomial Ring in " + vars + " over Integer Ring";
}

GroupAlgebra group_algebra(const AbelianInvariants& inv) {
  GroupAlgebra ga;
  ga.invariants = inv;
  std::vector<std::string> names;
  std::vector<int> order;
  for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
    names.push_back("t" + std::to_string(i + 1));
    names.push_back("t" + std::to_string(i + 1) + "inv");
  }
  for (int j = 0; j < inv.free_rank; ++j) {
    names.push_back("f" + std::to_string(j + 1));
    names.push_back("f" + std::to_string(j + 1) + "inv");
  }
  // the inverse variable is the greater one, so x̄ reduces to a power of x
  for (std::size_t v = 0; v < names.size(); v += 2) {
    order.push_back(static_cast<int>(v + 1));
    order.push_back(static_cast<int>(v));
  }
  ga.ring = Ring(std::move(names), std::move(order));
  const Ring& r = ga.ring;
  for (std::size_t i = 0; i < inv.rank(); ++i) {
    Monomial xx = r.one();
    xx[2 * i] = xx[2 * i + 1] = 1;
    ga.ideal_generators.push_back(r.add(r.monomial(xx), r.constant(-1)));
    if (i < inv.torsion.size())
      ga.ideal_generators.push_back(r.add(
          r.monomial(r.var(static_cast<int>(2 * i), small(inv.torsion[i], "torsion"))),
          r.constant(-1)));
  }
  ga.ideal = GroebnerBasis(r, ga.ideal_generators);
  return ga;
}

std::vector<std::vector<std::string>> ModulePresentation::relation_strings() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : relations) {
    std::vector<std::string> s;
    for (const auto& p : row) s.push_back(algebra->ring.format(p));
    out.push_back(std::move(s));
  }
  return out;
}

std::string ModulePresentation::listing() const {
  const Ring& r = algebra->ring;
  std::string vars = "Integer Ring";
  if (r.nvars() > 0) {
    vars = "Multivariate Polynomial Ring in ";
    for (std::size_t i = 0; i < r.nvars(); ++i) vars += (i ? ", " : "") + r.names()[i];
    vars += "\nover Integer Ring";
  }
  std::string out = "Quotient module by Submodule of Ambient free module of rank " +
                    std::to_string(ambient_rank) + "\nover the integral domain " +
                    vars + "\nGenerated by the rows of the matrix:\n";
  const auto strs = relation_strings();
  if (strs.empty()) return out + "[]";
  std::vector<std::size_t> width(ambient_rank, 0);
  for (const auto& row : strs)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  for (std::size_t i = 0; i < strs.size(); ++i) {
    out += "[";
    for (std::size_t j = 0; j < strs[i].size(); ++j) {
      if (j) out += " ";
      out += std::string(width[j] - strs[i][j].size(), ' ') + strs[i][j];
    }
    out += "]";
    if (i + 1 < strs.size()) out += "\n";
  }
  return out;
}

AbelianTwisting abelian_twisting(SetPtr x) {
  AbelianTwisting t;
  t.base = x;
  const MaximalTree tree = maximal_tree(*x);
  const GroupPresentation p = pi1_presentation(*x, tree);
  t.abelianization = abelianize(p);
  const std::size_t rank = t.abelianization.invariants.rank();
  const std::vector<Integer> zero(rank, 0);
  const auto& torsion = t.abelianization.invariants.torsion;
  auto add = [&](std::vector<Integer> a, const std::vector<Integer>& b) {
    for (std::size_t i = 0; i < rank; ++i) {
      a[i] += b[i];
      if (i < torsion.size()) {
        a[i] %= torsion[i];
        if (a[i] < 0) a[i] += torsion[i];
      }
    }
    return a;
  };

  t.values.resize(static_cast<std::size_t>(x->max_dim() + 1));
  if (x->max_dim() < 1) return t;
  for (std::size_t e = 0; e < x->count(1); ++e) {
    const int gen = p.edge_generator.at(e);
    t.values[1].push_back(gen < 0 ? zero
                                  : t.abelianization.generator_images.at(
                                        static_cast<std::size_t>(gen)));
  }
  std::function<std::vector<Integer>(const Simplex&)> of = [&](const Simplex& s) {
    if (!s.degenerate())
      return t.values.at(static_cast<std::size_t>(s.dim()))
          .at(static_cast<std::size_t>(s.generator));
    if (s.dim() == 1) return zero;
    return of(x->face(s, 0));
  };
  for (int n = 2; n <= x->max_dim(); ++n)
    for (int s = 0; s < static_cast<int>(x->count(n)); ++s)
      t.values[static_cast<std::size_t>(n)].push_back(of(x->generator_face(n, s, 0)));
  for (int s = 0; s < static_cast<int>(x->count(2)); ++s) {
    const auto lhs = of(x->generator_face(2, s, 1));
    const auto rhs = add(of(x->generator_face(2, s, 2)), of(x->generator_face(2, s, 0)));
    if (lhs != rhs)
      throw InternalConsistencyError("abelianized τ is not compatible on " +
                                     x->name(2, s));
  }
  return t;
}

PolyMatrix twisted_boundary_matrix(const GroupAlgebra& ga, const AbelianTwisting& t,
                                   int n) {
  const auto& x = *t.base;
  const std::size_t cols = n <= x.max_dim() ? x.count(n) : 0;
  const std::size_t rows = n >= 1 && n - 1 <= x.max_dim() ? x.count(n - 1) : 0;
  PolyMatrix m(rows, cols);
  if (n == 0) return m;
  const Ring& r = ga.ring;
  for (std::size_t j = 0; j < cols; ++j) {
    for (int d = 0; d <= n; ++d) {
      const Simplex& f = x.generator_face(n, static_cast<int>(j), d);
      if (f.degenerate()) continue;
      const int sign = d % 2 == 0 ? 1 : -1;
      Poly entry = r.constant(sign);
      if (d == n) {
        std::vector<Integer> inv = t.values.at(static_cast<std::size_t>(n)).at(j);
        for (auto& c : inv) c = -c;
        entry = Ring::mul_term(ga.element(inv), sign, r.one());
      }
      Poly& cell = m.at(static_cast<std::size_t>(f.generator), j);
      cell = r.add(cell, entry);
    }
  }
  return ga.normal_form(std::move(m));
}

PolyMatrix syzygies_mod_ideal(const GroupAlgebra& ga, const PolyMatrix& m,
                              bool reduce) {
  const std::size_t k = m.cols;
  if (m.rows == 0) {
    PolyMatrix id(k, k);
    for (std::size_t i = 0; i < k; ++i) id.at(i, i) = ga.ring.constant(1);
    return id;
  }
  const ColumnModule cm(ga.ring, m.rows,
                        with_ideal_blocks(ga, without_torsion_inverses(ga, m.columns()), m.rows));
  std::vector<Vec> syz;
  std::set<std::vector<std::pair<int, std::string>>> seen;
  for (auto& s : cm.syzygies(k)) {
    if (reduce) s = reduce_entries(ga, s);
    if (s.empty()) continue;
    if (s.front().coeff < 0) s = Ring::mul_term(s, -1, ga.ring.one());
    std::vector<std::pair<int, std::string>> key;
    for (const auto& t : s)
      key.emplace_back(t.pos, ga.ring.format_monomial(t.mono) + ":" + t.coeff.get_str());
    if (seen.insert(key).second) syz.push_back(std::move(s));
  }
  return PolyMatrix::from_columns(k, syz);
}

namespace {

Vec row_vec(const Ring& r, const std::vector<Poly>& row) {
  Vec v;
  for (std::size_t j = 0; j < row.size(); ++j)
    for (const auto& t : row[j]) v.push_back(Term{static_cast<int>(j), t.mono, t.coeff});
  return r.normalized(std::move(v));
}

// Basis elements of the relation module that lead with 1·e_j; these are
// unit pivots hidden behind combinations of the given rows.
std::vector<std::vector<Poly>> hidden_pivots(const ModulePresentation& p) {
  const Ring& r = p.algebra->ring;
  std::vector<Vec> rows;
  for (const auto& row : p.relations) rows.push_back(row_vec(r, row));
  const GroebnerBasis gb(r, rows);
  std::vector<std::vector<Poly>> out;
  for (const auto& g : gb.elements()) {
    if (g.front().coeff != 1 || total_degree(g.front().mono) != 0) continue;
    std::vector<Poly> row(p.ambient_rank);
    for (const auto& t : g) row[static_cast<std::size_t>(t.pos)].push_back(Term{0, t.mono, t.coeff});
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ModulePresentation simplify(ModulePresentation p) {
  const Ring& r = p.algebra->ring;
  auto& rows = p.relations;
  for (bool searched = false;;) {
    std::size_t pr = rows.size(), pc = 0;
    for (std::size_t i = 0; i < rows.size() && pr == rows.size(); ++i)
      for (std::size_t j = 0; j < p.ambient_rank; ++j)
        if (is_constant_unit(rows[i][j])) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == rows.size()) {
      if (searched || p.ambient_rank == 0) break;
      searched = true;
      auto extra = hidden_pivots(p);
      if (extra.empty()) break;
      rows.insert(rows.end(), extra.begin(), extra.end());
      continue;
    }
    searched = false;
    const std::vector<Poly> pivot = rows[pr];
    const Integer u = pivot[pc].front().coeff;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pr || rows[i][pc].empty()) continue;
      const Poly factor = Ring::mul_term(rows[i][pc], -u, r.one());
      for (std::size_t j = 0; j < p.ambient_rank; ++j)
        if (!pivot[j].empty()) rows[i][j] = r.add(rows[i][j], r.mul(factor, pivot[j]));
    }
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pr));
    for (auto& row : rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(pc));
    --p.ambient_rank;
  }
  std::vector<std::vector<Poly>> kept;
  for (auto& row : rows) {
    auto first = std::find_if(row.begin(), row.end(), [](const Poly& q) { return !q.empty(); });
    if (first == row.end()) continue;
    const Term* lead = &first->front();
    for (const auto& t : *first)
      if (r.display_compare(t.mono, lead->mono) > 0) lead = &t;
    if (lead->coeff < 0)
      for (auto& q : row) q = Ring::mul_term(q, -1, r.one());
    if (std::find(kept.begin(), kept.end(), row) == kept.end()) kept.push_back(std::move(row));
  }
  rows = std::move(kept);
  return p;
}

TwistedHomology twisted_homology(SetPtr x, int n, const TwistedOptions& opts) {
  if (n < 0) throw ValidationError("degree must be nonnegative");
  const AbelianTwisting t = abelian_twisting(x);
  if (!opts.assume_abelian) {
    const GroupPresentation p = pi1_presentation(*x, maximal_tree(*x));
    certify_abelian(p, t.abelianization.invariants, opts.max_cosets);
  }
  auto ga = std::make_shared<const GroupAlgebra>(group_algebra(t.abelianization.invariants));
  const Ring& r = ga->ring;

  TwistedHomology out;
  out.degree = n;
  out.algebra = ga;
  out.m_n = twisted_boundary_matrix(*ga, t, n);
  out.m_n1 = twisted_boundary_matrix(*ga, t, n + 1);
  out.n_mat = syzygies_mod_ideal(*ga, out.m_n, true);
  const std::size_t k = out.n_mat.cols;
  const std::size_t m = out.n_mat.rows;

  const ColumnModule cm(
      r, m, with_ideal_blocks(*ga, without_torsion_inverses(*ga, out.n_mat.columns()), m));
  std::vector<Vec> lifts;
  for (std::size_t j = 0; j < out.m_n1.cols; ++j) {
    auto a = cm.lift(without_torsion_inverses(*ga, out.m_n1.column(j)), k);
    if (!a)
      throw InternalConsistencyError("column " + std::to_string(j) +
                                     " of the next boundary is not a cycle");
    lifts.push_back(reduce_entries(*ga, *a));
  }
  out.r1 = PolyMatrix::from_columns(k, lifts);
  out.r2 = PolyMatrix::from_columns(k, cm.syzygies(k));

  if (!ga->normal_form(multiply(r, out.m_n, out.n_mat)).is_zero())
    throw InternalConsistencyError("M·N ≠ 0");
  if (ga->normal_form(multiply(r, out.n_mat, out.r1)) != out.m_n1)
    throw InternalConsistencyError("N·R1 ≠ M^{n+1}");
  if (!ga->normal_form(multiply(r, out.n_mat, out.r2)).is_zero())
    throw InternalConsistencyError("N·R2 ≠ 0");

  ModulePresentation p;
  p.algebra = ga;
  p.ambient_rank = k;
  for (const PolyMatrix* block : {&out.r1, &out.r2})
    for (std::size_t j = 0; j < block->cols; ++j) {
      std::vector<Poly> row(k);
      for (std::size_t i = 0; i < k; ++i) row[i] = block->at(i, j);
      p.relations.push_back(std::move(row));
    }
  if (opts.raw) {
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& g : ga->ideal_generators) {
        std::vector<Poly> row(k);
        row[j] = g;
        p.relations.push_back(std::move(row));
      }
  } else {
    p = simplify(std::move(p));
  }
  out.presentation = std::move(p);
  return out;
}

bool module_is_trivial(const ModulePresentation& p) {
  if (p.ambient_rank == 0) return true;
  const Ring& r = p.algebra->ring;
  std::vector<Vec> rows;
  for (const auto& row : p.relations) rows.push_back(row_vec(r, row));
  const GroebnerBasis gb(r, rows);
  for (std::size_t j = 0; j < p.ambient_rank; ++j)
    if (!gb.contains(Vec{Term{static_cast<int>(j), r.one(), 1}})) return false;
  return true;
}

HomologyGroup integer_specialization(const ModulePresentation& p) {
  const GroupAlgebra& ga = *p.algebra;
  if (ga.invariants.free_rank > 0)
    throw Unsupported("integer specialization needs a finite group");
  const auto& tor = ga.invariants.torsion;
  std::vector<int> radix;
  for (const auto& t : tor) radix.push_back(small(t, "torsion"));
  const int order = small(ga.order(), "group order");
  auto index = [&](const std::vector<int>& a) {
    int idx = 0;
    for (std::size_t i = radix.size(); i-- > 0;) idx = idx * radix[i] + a[i];
    return idx;
  };
  auto coords = [&](int idx) {
    std::vector<int> a(radix.size());
    for (std::size_t i = 0; i < radix.size(); ++i) {
      a[i] = idx % radix[i];
      idx /= radix[i];
    }
    return a;
  };
  const std::size_t g = static_cast<std::size_t>(order);
  SparseMatrix m(p.relations.size() * g, p.ambient_rank * g);
  for (std::size_t r = 0; r < p.relations.size(); ++r)
    for (int h = 0; h < order; ++h) {
      const std::size_t row = r * g + static_cast<std::size_t>(h);
      const auto base = coords(h);
      for (std::size_t j = 0; j < p.ambient_rank; ++j)
        for (const auto& t : p.relations[r][j]) {
          auto a = base;
          for (std::size_t i = 0; i < radix.size(); ++i) {
            const int e = t.mono[2 * i] - t.mono[2 * i + 1];
            a[i] = ((a[i] + e) % radix[i] + radix[i]) % radix[i];
          }
          m.add(row, j * g + static_cast<std::size_t>(index(a)), t.coeff);
        }
    }
  const auto factors = m.rows == 0 || m.cols == 0 ? std::vector<Integer>{} : invariant_factors(m);
  HomologyGroup out;
  out.betti = static_cast<int>(p.ambient_rank * g - factors.size());
  for (const auto& d : factors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

}  // namespace ucover
