#include "ucover/morse.hpp"

#include <algorithm>
#include <set>

#include "ucover/errors.hpp"

namespace ucover {

Incidence support_incidence(const ChainComplex& c) {
  LinearMap d = c.d();
  return [d](const Cell& x) {
    std::vector<Cell> out;
    for (const auto& [cell, v] : d(x)) out.push_back(cell);
    return out;
  };
}

Incidence simplicial_incidence(SetPtr x) {
  return [x](const Cell& c) {
    std::vector<Cell> out;
    const int n = c.degree;
    if (n == 0) return out;
    const int g = static_cast<int>(c.key.at(0));
    for (int i = 0; i <= n; ++i) {
      const Simplex& f = x->generator_face(n, g, i);
      if (f.degenerate()) continue;
      Cell fc = make_cell(n - 1, {f.generator});
      if (std::find(out.begin(), out.end(), fc) == out.end()) out.push_back(fc);
    }
    return out;
  };
}

std::vector<std::string> validate_dvf(const ChainComplex& c,
                                      const DiscreteVectorField& v) {
  std::vector<std::string> out;
  std::map<Cell, int> uses;
  for (const auto& [s, t] : v.vectors) {
    if (!c.contains(s) || !c.contains(t)) {
      out.push_back("vector in degrees " + std::to_string(s.degree) + ", " +
                    std::to_string(t.degree) + " uses a cell outside the complex");
      continue;
    }
    const std::string pair = "(" + c.describe(s) + ", " + c.describe(t) + ")";
    if (t.degree != s.degree + 1)
      out.push_back("vector " + pair + " does not raise the degree by one");
    const Chain dt = c.d()(t);
    auto it = dt.find(s);
    const Integer coeff = it == dt.end() ? Integer(0) : it->second;
    if (!is_unit(coeff))
      out.push_back("vector " + pair + ": source has coefficient " +
                    coeff.get_str() + " in the boundary, not a regular face");
    ++uses[s];
    ++uses[t];
  }
  for (const auto& [cell, n] : uses)
    if (n > 1)
      out.push_back("cell " + c.describe(cell) + " appears " +
                    std::to_string(n) + " times");
  return out;
}

AdmissibilityCertificate check_admissible(const ChainComplex& c,
                                          const DiscreteVectorField& v,
                                          const Incidence& incidence) {
  const Incidence inc = incidence ? incidence : support_incidence(c);
  const std::size_t nv = v.vectors.size();
  std::map<Cell, std::size_t> source_index;
  for (std::size_t i = 0; i < nv; ++i) source_index.emplace(v.vectors[i].first, i);
  std::vector<std::vector<std::size_t>> arcs(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const auto& [s, t] = v.vectors[i];
    for (const Cell& f : inc(t)) {
      if (f == s) continue;
      auto it = source_index.find(f);
      if (it != source_index.end()) arcs[i].push_back(it->second);
    }
  }

  AdmissibilityCertificate cert;
  std::vector<int> state(nv, 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> longest(nv, 0);
  std::vector<std::size_t> parent(nv, nv);
  for (std::size_t root = 0; root < nv && cert.admissible; ++root) {
    if (state[root]) continue;
    // iterative DFS: (node, next arc position)
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty() && cert.admissible) {
      auto& [u, pos] = stack.back();
      if (pos < arcs[u].size()) {
        const std::size_t w = arcs[u][pos++];
        if (state[w] == 1) {
          cert.admissible = false;
          std::vector<Cell> cyc{v.vectors[w].first};
          for (std::size_t k = stack.size(); k-- > 0;) {
            if (stack[k].first == w) break;
            cyc.push_back(v.vectors[stack[k].first].first);
          }
          std::reverse(cyc.begin() + 1, cyc.end());
          cert.cycle = std::move(cyc);
        } else if (state[w] == 0) {
          state[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        int best = 0;
        for (std::size_t w : arcs[u]) best = std::max(best, longest[w] + 1);
        longest[u] = best;
        state[u] = 2;
        stack.pop_back();
      }
    }
  }
  if (cert.admissible)
    for (std::size_t i = 0; i < nv; ++i)
      cert.lambda.emplace(v.vectors[i].first, longest[i]);
  return cert;
}

namespace {

struct MorseData {
  LinearMap d;
  std::map<Cell, std::pair<Cell, Integer>> source;  // x -> (y, ε)
  std::set<Cell> targets;
  std::map<Cell, Chain> cache;

  bool critical(const Cell& c) const {
    return !source.count(c) && !targets.count(c);
  }

  Chain h(const Cell& x) {
    auto it = source.find(x);
    if (it == source.end()) return {};
    auto hit = cache.find(x);
    if (hit != cache.end()) return hit->second;
    const auto& [y, eps] = it->second;
    Chain rest = d(y);
    add_term(rest, x, -eps);
    Chain out = single(y, eps);
    for (const auto& [cell, v] : rest) {
      if (!source.count(cell)) continue;
      add_chain(out, h(cell), -eps * v);
    }
    cache.emplace(x, out);
    return out;
  }

  Chain h(const Chain& c) {
    Chain out;
    for (const auto& [cell, v] : c) add_chain(out, h(cell), v);
    return out;
  }
};

}  // namespace

Reduction morse_reduction(const ChainComplex& c, const DiscreteVectorField& v) {
  auto problems = validate_dvf(c, v);
  if (!problems.empty())
    throw ValidationError("invalid discrete vector field: " + problems.front());
  const auto cert = check_admissible(c, v);
  if (!cert.admissible) {
    std::string cyc;
    for (const auto& cell : cert.cycle) cyc += " " + c.describe(cell);
    throw ValidationError("vector field is not admissible; V-path cycle through" + cyc);
  }
  if (v.vectors.empty()) return trivial_reduction(c);

  auto data = std::make_shared<MorseData>();
  data->d = c.d();
  for (const auto& [s, t] : v.vectors) {
    const Integer eps = c.d()(t).at(s);
    data->source.emplace(s, std::make_pair(t, eps));
    data->targets.insert(t);
  }
  // the memo in MorseData is not locked; the wrappers below serialize
  // through LinearMap's own cache
  LinearMap h(1, [data](const Cell& x) { return data->h(x); }, true);
  LinearMap d = c.d();
  LinearMap g(0, [data, d, h](const Cell& x) {
    Chain out = single(x);
    add_chain(out, h(d(x)), -1);
    return out;
  }, true);
  LinearMap f(0, [data, d, h](const Cell& x) {
    Chain all = single(x);
    add_chain(all, d(h(x)), -1);
    Chain out;
    for (const auto& [cell, coeff] : all)
      if (data->critical(cell)) out.emplace(cell, coeff);
    return out;
  }, true);

  std::vector<std::vector<Cell>> crit(static_cast<std::size_t>(c.top_degree() + 1));
  for (int n = 0; n <= c.top_degree(); ++n)
    for (const auto& cell : c.basis(n))
      if (data->critical(cell)) crit[static_cast<std::size_t>(n)].push_back(cell);
  LinearMap dd(-1, [f, d, g](const Cell& x) { return f(d(g(x))); }, true);
  const ChainComplex ref = c;
  ChainComplex bottom = ChainComplex::finite(
      "Crit(" + c.name() + ")", std::move(crit), dd,
      [ref](const Cell& x) { return ref.describe(x); });

  Reduction r{c, bottom, f, g, h};
  problems = check_reduction(r);
  if (!problems.empty())
    throw InternalConsistencyError("Morse reduction fails its axioms: " +
                                   problems.front());
  return r;
}

Equivalence morse_equivalence(const ChainComplex& c,
                              const DiscreteVectorField& v) {
  return Equivalence{trivial_reduction(c), morse_reduction(c, v)};
}

namespace {

class FieldBuilder {
 public:
  FieldBuilder(const ChainComplex& c, Incidence inc) : c_(c), inc_(std::move(inc)) {}

  const std::vector<Cell>& faces(const Cell& y) {
    auto it = faces_.find(y);
    if (it != faces_.end()) return it->second;
    return faces_.emplace(y, inc_(y)).first->second;
  }

  // Would adding (x, y) close a V-path cycle?
  bool creates_cycle(const Cell& x, const Cell& y) {
    std::set<Cell> seen;
    std::vector<Cell> stack;
    for (const Cell& f : faces(y))
      if (f != x && source_.count(f)) stack.push_back(f);
    while (!stack.empty()) {
      const Cell s = stack.back();
      stack.pop_back();
      if (!seen.insert(s).second) continue;
      const Cell& t = source_.at(s);
      for (const Cell& f : faces(t)) {
        if (f == x) return true;
        if (f != s && source_.count(f)) stack.push_back(f);
      }
    }
    return false;
  }

  void add(const Cell& x, const Cell& y) {
    source_.emplace(x, y);
    used_.insert(x);
    used_.insert(y);
    field.vectors.emplace_back(x, y);
  }

  bool used(const Cell& c) const { return used_.count(c) > 0; }

  DiscreteVectorField field;

 private:
  const ChainComplex& c_;
  Incidence inc_;
  std::map<Cell, std::vector<Cell>> faces_;
  std::map<Cell, Cell> source_;
  std::set<Cell> used_;
};

}  // namespace

DiscreteVectorField greedy_collapse_field(const ChainComplex& c,
                                          const Incidence& incidence,
                                          std::mt19937_64* rng) {
  const Incidence inc = incidence ? incidence : support_incidence(c);
  FieldBuilder fb(c, inc);
  const int top = c.top_degree();

  std::vector<Cell> cells;
  for (int n = top; n >= 0; --n)
    for (const auto& cell : c.basis(n)) cells.push_back(cell);
  if (rng) std::shuffle(cells.begin(), cells.end(), *rng);

  std::map<Cell, std::vector<Cell>> cofaces;
  for (const auto& y : cells)
    for (const auto& x : fb.faces(y)) cofaces[x].push_back(y);

  auto regular = [&](const Cell& x, const Cell& y) {
    const Chain dy = c.d()(y);
    auto it = dy.find(x);
    return it != dy.end() && is_unit(it->second);
  };

  // free-face collapses
  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& x : cells) {
      if (fb.used(x)) continue;
      const Cell* only = nullptr;
      int alive = 0;
      for (const auto& y : cofaces[x])
        if (!fb.used(y)) {
          ++alive;
          only = &y;
        }
      if (alive != 1 || !regular(x, *only)) continue;
      if (fb.creates_cycle(x, *only)) continue;
      fb.add(x, *only);
      progress = true;
    }
  }
  // greedy acyclic matching on what is left
  for (const auto& y : cells) {
    if (fb.used(y) || y.degree == 0) continue;
    std::vector<Cell> fs = fb.faces(y);
    if (rng) std::shuffle(fs.begin(), fs.end(), *rng);
    for (const auto& x : fs) {
      if (fb.used(x) || !regular(x, y)) continue;
      if (fb.creates_cycle(x, y)) continue;
      fb.add(x, y);
      break;
    }
  }
  return fb.field;
}

DiscreteVectorField induced_cover_dvf(const TwistingOperator& tau,
                                      const CoverSet& cover,
                                      const DiscreteVectorField& v) {
  const auto& x = tau.base();
  const auto& g = tau.group();
  DiscreteVectorField out;
  for (int h = 0; h < g.order; ++h) {
    for (const auto& [s, t] : v.vectors) {
      const int n = s.degree;
      const int sx = static_cast<int>(s.key.at(0));
      const int ty = static_cast<int>(t.key.at(0));
      const Simplex& last = x.generator_face(n + 1, ty, n + 1);
      const bool is_last = !last.degenerate() && last.generator == sx;
      const int ht = is_last ? g.multiply(h, tau.of_generator(n + 1, ty)) : h;
      out.vectors.emplace_back(make_cell(n, {cover.index(n, h, sx)}),
                               make_cell(n + 1, {cover.index(n + 1, ht, ty)}));
    }
  }
  return out;
}

std::size_t critical_count(const ChainComplex& c, const DiscreteVectorField& v,
                           int degree) {
  std::set<Cell> used;
  for (const auto& [s, t] : v.vectors) {
    used.insert(s);
    used.insert(t);
  }
  std::size_t n = 0;
  for (const auto& cell : c.basis(degree))
    if (!used.count(cell)) ++n;
  return n;
}

DvfCoverHomology cover_homology_via_dvf(SetPtr x, const DiscreteVectorField& v,
                                        std::size_t max_cosets) {
  const MaximalTree t = maximal_tree(*x);
  const GroupPresentation p = pi1_presentation(*x, t);
  auto group = std::make_shared<const FiniteGroupTable>(todd_coxeter(p, max_cosets));
  const TwistingOperator tau = build_tau(x, t, p, group);
  const CoverSet cov = cover(tau);
  auto set = std::make_shared<const SimplicialSet>(cov.set);
  const ChainComplex cc = chain_of(set, "C(cover)");
  const DiscreteVectorField lifted = induced_cover_dvf(tau, cov, v);
  const Reduction r = morse_reduction(cc, lifted);
  DvfCoverHomology out;
  out.homology = homology_all(r.bottom, cc.top_degree());
  for (int n = 0; n <= cc.top_degree(); ++n)
    out.critical_cells.push_back(r.bottom.basis(n).size());
  return out;
}

}  // namespace ucover
