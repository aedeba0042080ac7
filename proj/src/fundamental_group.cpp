#include "ucover/fundamental_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ucover/errors.hpp"

namespace ucover {

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

namespace {

Word cyclic_reduce(Word w) {
  w = free_reduce(std::move(w));
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) {
    ++a;
    --b;
  }
  return Word(w.begin() + static_cast<long>(a), w.begin() + static_cast<long>(b));
}

// Smallest rotation of w or w^-1, so conjugate relators compare equal.
Word canonical_relator(const Word& w) {
  Word best = w;
  for (const Word& base : {w, inverse(w)}) {
    Word r = base;
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      best = std::min(best, r);
    }
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

MaximalTree maximal_tree(const SimplicialSet& x, int basepoint) {
  const int nv = static_cast<int>(x.count(0));
  if (basepoint < 0 || basepoint >= nv)
    throw ContractViolation("basepoint is not a vertex");
  const int ne = static_cast<int>(x.count(1));
  std::vector<std::pair<int, int>> ends(static_cast<std::size_t>(ne));
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(nv));
  for (int e = 0; e < ne; ++e) {
    const int tgt = x.generator_face(1, e, 0).generator;
    const int src = x.generator_face(1, e, 1).generator;
    ends[static_cast<std::size_t>(e)] = {src, tgt};
    incident[static_cast<std::size_t>(src)].push_back(e);
    if (tgt != src) incident[static_cast<std::size_t>(tgt)].push_back(e);
  }
  for (auto& v : incident) std::sort(v.begin(), v.end());

  MaximalTree t;
  t.root = basepoint;
  t.in_tree.assign(static_cast<std::size_t>(ne), 0);
  std::vector<char> seen(static_cast<std::size_t>(nv), 0);
  std::deque<int> queue{basepoint};
  seen[static_cast<std::size_t>(basepoint)] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : incident[static_cast<std::size_t>(u)]) {
      auto [s, d] = ends[static_cast<std::size_t>(e)];
      const int other = s == u ? d : s;
      if (seen[static_cast<std::size_t>(other)]) continue;
      seen[static_cast<std::size_t>(other)] = 1;
      t.in_tree[static_cast<std::size_t>(e)] = 1;
      t.edges.push_back(e);
      queue.push_back(other);
    }
  }
  for (int v = 0; v < nv; ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw NotConnected("vertex " + x.name(0, v) +
                         " is not reachable from " + x.name(0, basepoint));
  return t;
}

GroupPresentation pi1_presentation(const SimplicialSet& x,
                                   const MaximalTree& t) {
  GroupPresentation p;
  const int ne = static_cast<int>(x.count(1));
  p.edge_generator.assign(static_cast<std::size_t>(ne), -1);
  for (int e = 0; e < ne; ++e) {
    if (t.in_tree.at(static_cast<std::size_t>(e))) continue;
    p.edge_generator[static_cast<std::size_t>(e)] =
        static_cast<int>(p.generators.size());
    p.generators.push_back(x.name(1, e));
  }
  auto letter = [&](const Simplex& f, bool inv) -> Word {
    if (f.degenerate()) return {};
    const int g = p.edge_generator[static_cast<std::size_t>(f.generator)];
    if (g < 0) return {};
    return {inv ? -(g + 1) : g + 1};
  };
  for (int s = 0; s < static_cast<int>(x.count(2)); ++s) {
    Word w = letter(x.generator_face(2, s, 2), false);
    for (int l : letter(x.generator_face(2, s, 0), false)) w.push_back(l);
    for (int l : letter(x.generator_face(2, s, 1), true)) w.push_back(l);
    p.relators.push_back(free_reduce(std::move(w)));
  }
  return p;
}

std::string GroupPresentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    const int g = std::abs(w[i]) - 1;
    int power = 0;
    std::size_t j = i;
    while (j < w.size() && std::abs(w[j]) - 1 == g) {
      power += w[j] > 0 ? 1 : -1;
      ++j;
    }
    if (!first) os << '*';
    first = false;
    os << generators.at(static_cast<std::size_t>(g));
    if (power != 1) os << '^' << power;
    i = j;
  }
  return os.str();
}

std::string GroupPresentation::str() const {
  std::string gens, rels;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) gens += ", ";
    gens += generators[i];
  }
  bool first = true;
  for (const auto& r : relators) {
    if (r.empty()) continue;
    if (!first) rels += ", ";
    first = false;
    rels += format_word(r);
  }
  return "< " + gens + " | " + rels + " >";
}

GroupPresentation simplify_presentation(GroupPresentation p) {
  p.edge_generator.clear();
  for (;;) {
    std::vector<Word> rels;
    std::set<Word> seen;
    for (auto& r : p.relators) {
      Word c = cyclic_reduce(r);
      if (c.empty()) continue;
      if (seen.insert(canonical_relator(c)).second) rels.push_back(std::move(c));
    }
    p.relators = std::move(rels);

    // find (generator, relator) with a single occurrence
    int gen = -1;
    std::size_t rel = 0;
    for (int g = 0; g < static_cast<int>(p.generators.size()) && gen < 0; ++g) {
      for (std::size_t r = 0; r < p.relators.size(); ++r) {
        const auto& w = p.relators[r];
        const auto hits = std::count_if(w.begin(), w.end(), [&](int l) {
          return std::abs(l) == g + 1;
        });
        if (hits == 1) {
          gen = g;
          rel = r;
          break;
        }
      }
    }
    if (gen < 0) return p;

    Word w = p.relators[rel];
    auto pos = std::find_if(w.begin(), w.end(),
                            [&](int l) { return std::abs(l) == gen + 1; });
    std::rotate(w.begin(), pos, w.end());
    const bool positive = w.front() > 0;
    Word rest(w.begin() + 1, w.end());
    // g rest = 1  =>  g = rest^-1;   g^-1 rest = 1  =>  g = rest
    const Word replacement = positive ? inverse(rest) : rest;
    const Word replacement_inv = inverse(replacement);

    auto shift = [&](Word v) {
      for (int& l : v) {
        const int a = std::abs(l) - 1;
        const int s = a > gen ? a - 1 : a;
        l = l > 0 ? s + 1 : -(s + 1);
      }
      return v;
    };
    const Word rep_s = shift(replacement);
    const Word rep_inv_s = shift(replacement_inv);
    std::vector<Word> next;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      if (r == rel) continue;
      Word out;
      for (int l : p.relators[r]) {
        if (l == gen + 1) {
          out.insert(out.end(), rep_s.begin(), rep_s.end());
        } else if (l == -(gen + 1)) {
          out.insert(out.end(), rep_inv_s.begin(), rep_inv_s.end());
        } else {
          Word one = shift(Word{l});
          out.push_back(one.front());
        }
      }
      next.push_back(free_reduce(std::move(out)));
    }
    p.relators = std::move(next);
    p.generators.erase(p.generators.begin() + gen);
  }
}

// ---------------------------------------------------------------------------
// Finite groups

int FiniteGroupTable::evaluate(const Word& w) const {
  int acc = identity;
  for (int l : w) {
    const int g = word_images.at(static_cast<std::size_t>(std::abs(l) - 1));
    acc = multiply(acc, l > 0 ? g : inverse(g));
  }
  return acc;
}

std::vector<std::string> FiniteGroupTable::check(
    const std::vector<Word>& relators) const {
  std::vector<std::string> out;
  const int n = order;
  if (static_cast<int>(mul.size()) != n) out.push_back("table has wrong size");
  for (int a = 0; a < n && out.size() < 10; ++a) {
    if (multiply(identity, a) != a || multiply(a, identity) != a)
      out.push_back("identity law fails at " + std::to_string(a));
    if (multiply(a, inverse(a)) != identity ||
        multiply(inverse(a), a) != identity)
      out.push_back("inverse law fails at " + std::to_string(a));
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) {
          out.push_back("associativity fails at (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + ")");
          b = n;
          break;
        }
  }
  for (std::size_t r = 0; r < relators.size(); ++r)
    if (evaluate(relators[r]) != identity)
      out.push_back("relator " + std::to_string(r) + " is not the identity");
  return out;
}

FiniteGroupTable FiniteGroupTable::from_table(std::vector<std::vector<int>> mul,
                                              std::vector<int> word_images) {
  FiniteGroupTable g;
  g.order = static_cast<int>(mul.size());
  if (g.order == 0) throw ValidationError("empty group table");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != g.order)
      throw ValidationError("group table is not square");
    for (int v : row)
      if (v < 0 || v >= g.order)
        throw ValidationError("group table entry out of range");
  }
  g.mul = std::move(mul);
  // identity must be element 0
  for (int a = 0; a < g.order; ++a)
    if (g.mul[0][static_cast<std::size_t>(a)] != a ||
        g.mul[static_cast<std::size_t>(a)][0] != a)
      throw ValidationError("element 0 is not the identity");
  g.inv.assign(static_cast<std::size_t>(g.order), -1);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      if (g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 0) {
        g.inv[static_cast<std::size_t>(a)] = b;
        break;
      }
  for (int a = 0; a < g.order; ++a)
    if (g.inv[static_cast<std::size_t>(a)] < 0)
      throw ValidationError("element " + std::to_string(a) + " has no inverse");
  for (int w : word_images)
    if (w < 0 || w >= g.order)
      throw ValidationError("generator image out of range");
  g.word_images = std::move(word_images);
  auto problems = g.check();
  if (!problems.empty()) throw ValidationError("not a group: " + problems[0]);
  return g;
}

FiniteGroupTable FiniteGroupTable::trivial() { return cyclic(1); }

FiniteGroupTable FiniteGroupTable::cyclic(int m) {
  if (m < 1) throw ContractViolation("cyclic group order must be positive");
  FiniteGroupTable g;
  g.order = m;
  g.mul.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  g.inv.resize(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    g.inv[static_cast<std::size_t>(a)] = (m - a) % m;
    for (int b = 0; b < m; ++b)
      g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % m;
  }
  if (m > 1) g.word_images = {1};
  return g;
}

FiniteGroupTable FiniteGroupTable::from_permutations(
    const std::vector<std::vector<int>>& gens, std::size_t max_order) {
  if (gens.empty()) return trivial();
  const std::size_t n = gens.front().size();
  for (const auto& p : gens) {
    if (p.size() != n) throw ValidationError("permutations of different degree");
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      if (sorted[i] != static_cast<int>(i))
        throw ValidationError("not a permutation");
  }
  using Perm = std::vector<int>;
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  auto compose = [&](const Perm& a, const Perm& b) {
    // a then b, so products read left to right like words
    Perm c(n);
    for (std::size_t i = 0; i < n; ++i)
      c[i] = b[static_cast<std::size_t>(a[i])];
    return c;
  };
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : gens) {
      Perm c = compose(elems[k], g);
      if (!index.count(c)) {
        if (elems.size() >= max_order)
          throw GroupTooLargeOrInfinite("permutation group exceeds " +
                                        std::to_string(max_order) + " elements");
        index.emplace(c, static_cast<int>(elems.size()));
        elems.push_back(std::move(c));
      }
    }
  }
  const std::size_t ord = elems.size();
  std::vector<std::vector<int>> mul(ord, std::vector<int>(ord));
  for (std::size_t a = 0; a < ord; ++a)
    for (std::size_t b = 0; b < ord; ++b)
      mul[a][b] = index.at(compose(elems[a], elems[b]));
  std::vector<int> images;
  for (const auto& g : gens) images.push_back(index.at(g));
  return from_table(std::move(mul), std::move(images));
}

// ---------------------------------------------------------------------------
// Coset enumeration

namespace {

class CosetTable {
 public:
  CosetTable(int ngens, std::size_t max_cosets)
      : cols_(2 * ngens), max_(max_cosets) {
    new_coset();
  }

  int cols() const { return cols_; }
  static int inv_col(int c) { return c ^ 1; }
  static int col(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
  }

  std::vector<std::vector<int>> table;
  std::vector<int> parent;

  bool live(int c) const { return parent[static_cast<std::size_t>(c)] == c; }

  int& at(int c, int x) {
    return table[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
  }

  int define(int c, int x) {
    const int d = new_coset();
    at(c, x) = d;
    at(d, inv_col(x)) = c;
    return d;
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && at(f, w[static_cast<std::size_t>(i)]) >= 0) {
        f = at(f, w[static_cast<std::size_t>(i)]);
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, inv_col(w[static_cast<std::size_t>(j)])) >= 0) {
        b = at(b, inv_col(w[static_cast<std::size_t>(j)]));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[static_cast<std::size_t>(i)]) = b;
        at(b, inv_col(w[static_cast<std::size_t>(i)])) = f;
        return;
      }
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  int rep(int c) {
    int r = c;
    while (parent[static_cast<std::size_t>(r)] != r)
      r = parent[static_cast<std::size_t>(r)];
    while (parent[static_cast<std::size_t>(c)] != r) {
      const int next = parent[static_cast<std::size_t>(c)];
      parent[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

 private:
  int cols_;
  std::size_t max_;
  std::vector<int> queue_;

  int new_coset() {
    if (table.size() >= max_)
      throw GroupTooLargeOrInfinite(
          "coset enumeration exceeded " + std::to_string(max_) +
          " cosets; the group is too large or infinite");
    table.emplace_back(static_cast<std::size_t>(cols_), -1);
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(table.size()) - 1;
  }

  void merge(int k, int l) {
    const int a = rep(k), b = rep(l);
    if (a == b) return;
    const int lo = std::min(a, b), hi = std::max(a, b);
    parent[static_cast<std::size_t>(hi)] = lo;
    queue_.push_back(hi);
  }

  void coincidence(int a, int b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const int g = queue_[qi];
      for (int x = 0; x < cols_; ++x) {
        const int d = at(g, x);
        if (d < 0) continue;
        at(d, inv_col(x)) = -1;
        const int mu = rep(g), nu = rep(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x));
        } else if (at(nu, inv_col(x)) >= 0) {
          merge(mu, at(nu, inv_col(x)));
        } else {
          at(mu, x) = nu;
          at(nu, inv_col(x)) = mu;
        }
      }
    }
  }
};

}  // namespace

FiniteGroupTable todd_coxeter(const GroupPresentation& p,
                              std::size_t max_cosets) {
  const int ngens = static_cast<int>(p.generators.size());
  if (ngens == 0) {
    FiniteGroupTable g = FiniteGroupTable::trivial();
    g.word_images.clear();
    return g;
  }
  std::vector<std::vector<int>> rels;
  for (const auto& r : p.relators) {
    Word c = cyclic_reduce(r);
    if (c.empty()) continue;
    std::vector<int> cols;
    for (int l : c) cols.push_back(CosetTable::col(l));
    rels.push_back(std::move(cols));
  }

  CosetTable ct(ngens, max_cosets);
  for (int c = 0; c < static_cast<int>(ct.table.size()); ++c) {
    for (const auto& r : rels) {
      if (!ct.live(c)) break;
      ct.scan_and_fill(c, r);
    }
    if (!ct.live(c)) continue;
    for (int x = 0; x < ct.cols(); ++x)
      if (ct.at(c, x) < 0) ct.define(c, x);
  }

  // compact live cosets in order
  std::vector<int> renum(ct.table.size(), -1);
  int order = 0;
  for (std::size_t c = 0; c < ct.table.size(); ++c)
    if (ct.live(static_cast<int>(c))) renum[c] = order++;
  if (static_cast<std::size_t>(order) > kMaxTableOrder)
    throw GroupTooLargeOrInfinite("group of order " + std::to_string(order) +
                                  " exceeds the multiplication-table limit " +
                                  std::to_string(kMaxTableOrder));
  std::vector<std::vector<int>> tab(static_cast<std::size_t>(order),
                                    std::vector<int>(static_cast<std::size_t>(ct.cols())));
  for (std::size_t c = 0; c < ct.table.size(); ++c) {
    if (renum[c] < 0) continue;
    for (int x = 0; x < ct.cols(); ++x) {
      const int d = ct.at(static_cast<int>(c), x);
      if (d < 0) throw InternalConsistencyError("incomplete coset table");
      tab[static_cast<std::size_t>(renum[c])][static_cast<std::size_t>(x)] =
          renum[static_cast<std::size_t>(ct.rep(d))];
    }
  }

  // right-multiplication permutations P_j (c -> c . g_j) by BFS from coset 0
  const auto n = static_cast<std::size_t>(order);
  std::vector<std::vector<int>> perm(n);
  perm[0].resize(n);
  std::iota(perm[0].begin(), perm[0].end(), 0);
  std::deque<int> queue{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int x = 0; x < ct.cols(); ++x) {
      const int d = tab[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
      if (seen[static_cast<std::size_t>(d)]) continue;
      seen[static_cast<std::size_t>(d)] = 1;
      auto& pd = perm[static_cast<std::size_t>(d)];
      pd.resize(n);
      const auto& pc = perm[static_cast<std::size_t>(c)];
      for (std::size_t k = 0; k < n; ++k)
        pd[k] = tab[static_cast<std::size_t>(pc[k])][static_cast<std::size_t>(x)];
      queue.push_back(d);
    }
  }
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mul[i][j] = perm[j][i];

  FiniteGroupTable g;
  g.order = order;
  g.mul = std::move(mul);
  g.inv.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.mul[a][b] == 0) {
        g.inv[a] = static_cast<int>(b);
        break;
      }
  for (int k = 0; k < ngens; ++k)
    g.word_images.push_back(tab[0][static_cast<std::size_t>(2 * k)]);
  return g;
}

// ---------------------------------------------------------------------------
// Abelianization

std::string AbelianInvariants::str() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("C" + t.get_str());
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out += (i ? " x " : "") + parts[i];
  return out;
}

std::vector<Integer> Abelianization::image(const Word& w) const {
  std::vector<Integer> out(invariants.rank());
  for (int l : w) {
    const auto& img = generator_images.at(static_cast<std::size_t>(std::abs(l) - 1));
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] += l > 0 ? img[k] : Integer(-img[k]);
  }
  for (std::size_t k = 0; k < invariants.torsion.size(); ++k) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), out[k].get_mpz_t(),
               invariants.torsion[k].get_mpz_t());
    out[k] = r;
  }
  return out;
}

Abelianization abelianize(const GroupPresentation& p) {
  const std::size_t g = p.generators.size();
  std::vector<Word> rels;
  for (const auto& r : p.relators)
    if (!r.empty()) rels.push_back(r);
  IntMatrix a(rels.size(), g);
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (int l : rels[i])
      a(i, static_cast<std::size_t>(std::abs(l) - 1)) += l > 0 ? 1 : -1;
  const SNFResult s = smith_normal_form(a);

  // rowspace(A) = rowspace(D V); x -> x V^-1 sends it onto rowspace(D)
  Abelianization out;
  std::vector<std::size_t> keep_torsion, keep_free;
  for (std::size_t k = 0; k < g; ++k) {
    const Integer d = k < std::min(a.rows(), a.cols()) ? s.D(k, k) : Integer(0);
    if (d == 0)
      keep_free.push_back(k);
    else if (d != 1)
      keep_torsion.push_back(k);
  }
  for (std::size_t k : keep_torsion) out.invariants.torsion.push_back(s.D(k, k));
  out.invariants.free_rank = static_cast<int>(keep_free.size());
  std::vector<std::size_t> order = keep_torsion;
  order.insert(order.end(), keep_free.begin(), keep_free.end());
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<Integer> img;
    for (std::size_t k : order) img.push_back(s.V_inv(i, k));
    for (std::size_t k = 0; k < keep_torsion.size(); ++k) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), img[k].get_mpz_t(),
                 out.invariants.torsion[k].get_mpz_t());
      img[k] = r;
    }
    out.generator_images.push_back(std::move(img));
  }
  return out;
}

AbelianInvariants abelian_invariants(const GroupPresentation& p) {
  return abelianize(p).invariants;
}

// ---------------------------------------------------------------------------

namespace models {

SimplicialSet presentation_complex(const GroupPresentation& p) {
  SimplicialSetBuilder b;
  b.add_vertex("v");
  const Simplex v = nondegenerate(0, 0);
  const Simplex sv = degenerate(v, 0);
  const int ng = static_cast<int>(p.generators.size());
  // edge of generator g is 2g, its inverse edge 2g+1
  for (int g = 0; g < ng; ++g) {
    b.add(1, p.generators[static_cast<std::size_t>(g)], {v, v});
    b.add(1, p.generators[static_cast<std::size_t>(g)] + "inv", {v, v});
  }
  auto edge_of = [&](int letter) {
    const int g = std::abs(letter) - 1;
    return nondegenerate(1, letter > 0 ? 2 * g : 2 * g + 1);
  };
  for (int g = 0; g < ng; ++g)
    b.add(2, "T_" + p.generators[static_cast<std::size_t>(g)],
          {edge_of(g + 1), sv, edge_of(-(g + 1))});

  int aux = 0;
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    const Word w = free_reduce(p.relators[r]);
    const std::string tag = "R" + std::to_string(r);
    if (w.empty()) continue;
    if (w.size() == 1) {
      // x = 1: degenerate triangle with ∂2 = x, ∂0 = s0 v, ∂1 = s0 v
      b.add(2, tag, {sv, sv, edge_of(w[0])});
      continue;
    }
    if (w.size() == 2) {
      // x y = 1: ∂2 ∂0 = ∂1 with ∂1 degenerate
      b.add(2, tag, {edge_of(w[1]), sv, edge_of(w[0])});
      continue;
    }
    // x1 ... xL = 1 as a fan: c1 = x1 x2, c_k = c_{k-1} x_{k+1},
    // closing with c_{L-3} x_{L-1} = x_L^-1
    Simplex acc = edge_of(w[0]);
    for (std::size_t k = 1; k + 2 < w.size(); ++k) {
      const int e = b.add(1, "aux" + std::to_string(aux++), {v, v});
      const Simplex c = nondegenerate(1, e);
      b.add(2, tag + "_" + std::to_string(k), {edge_of(w[k]), c, acc});
      acc = c;
    }
    b.add(2, tag, {edge_of(w[w.size() - 2]), edge_of(-w.back()), acc});
  }
  return std::move(b).build();
}

}  // namespace models

}  // namespace ucover
