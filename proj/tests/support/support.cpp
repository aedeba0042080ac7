#include "support.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ucover/errors.hpp"
#include "ucover/io.hpp"

#ifndef UCOVER_TEST_DATA
#error "UCOVER_TEST_DATA must point at tests/data"
#endif

namespace testsupport {

using namespace ucover;

std::string data_path(const std::string& name) {
  return std::string(UCOVER_TEST_DATA) + "/" + name + ".json";
}

SetPtr fixture(const std::string& name) {
  static std::map<std::string, SetPtr> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto x = std::make_shared<const SimplicialSet>(io::read_simplicial_set(data_path(name)));
  cache.emplace(name, x);
  return x;
}

const std::vector<std::string>& finite_corpus() {
  static const std::vector<std::string> names = {"rp2", "rp3", "lens3", "lens4",
                                                 "sym3", "s5xrp3"};
  return names;
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Integer abs_of(const Integer& v) { return v < 0 ? Integer(-v) : v; }

IntMatrix sub(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

}  // namespace

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                        int lo, int hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng,
                                                  std::size_t n, int steps) {
  IntMatrix u = IntMatrix::identity(n), ui = IntMatrix::identity(n);
  if (n == 0) return {u, ui};
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    if (i == j || uniform(rng, 0, 5) == 0) {
      for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
      for (std::size_t r = 0; r < n; ++r) ui(r, i) = -ui(r, i);
      continue;
    }
    int k = uniform(rng, -2, 2);
    if (k == 0) k = 1;
    // row_i += k row_j on the left factor, col_j -= k col_i on the inverse
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
    for (std::size_t r = 0; r < n; ++r) ui(r, j) -= k * ui(r, i);
  }
  return {u, ui};
}

std::vector<Integer> naive_invariants(IntMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Integer> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs_of(a(i, j)) < abs_of(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return out;
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(pi, j));
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pj));
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Integer q = a(i, t) / a(t, t);
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Integer q = a(t, j) / a(t, t);
        for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide what is left, else fold the offending row in
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a(t, j) += a(bad, j);
    }
    out.push_back(abs_of(a(t, t)));
  }
  return out;
}

bool is_diagonal_chain(const IntMatrix& d) {
  Integer prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j) {
        if (d(i, j) != 0) return false;
        continue;
      }
      const Integer& v = d(i, j);
      if (v < 0) return false;
      if (v == 0) {
        zero_seen = true;
        continue;
      }
      if (zero_seen || v % prev != 0) return false;
      prev = v;
    }
  return true;
}

// -- matrix-backed complexes ------------------------------------------------

LinearMap matrix_map(int degree, std::int64_t src_tag, std::int64_t dst_tag,
                     std::vector<IntMatrix> m) {
  auto mats = std::make_shared<const std::vector<IntMatrix>>(std::move(m));
  return LinearMap(degree, [=](const Cell& c) {
    Chain out;
    if (c.key.size() != 2 || c.key[0] != src_tag || c.degree < 0) return out;
    const auto n = static_cast<std::size_t>(c.degree);
    if (n >= mats->size() || c.degree + degree < 0) return out;
    const IntMatrix& a = (*mats)[n];
    const auto i = static_cast<std::size_t>(c.key[1]);
    if (i >= a.cols()) return out;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a(r, i) != 0)
        out.emplace(make_cell(c.degree + degree, {dst_tag, static_cast<std::int64_t>(r)}),
                    a(r, i));
    return out;
  });
}

IntMatrix map_matrix(const LinearMap& f, const MatComplex& src, const MatComplex& dst,
                     int n, int degree) {
  const std::size_t rows =
      n + degree >= 0 && static_cast<std::size_t>(n + degree) < dst.dims.size()
          ? dst.dims[static_cast<std::size_t>(n + degree)]
          : 0;
  IntMatrix m(rows, src.dims.at(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (const auto& [cell, v] : f(make_cell(n, {src.tag, static_cast<std::int64_t>(i)})))
      m(static_cast<std::size_t>(cell.key.at(1)), i) = v;
  return m;
}

MatComplex make_complex(std::vector<std::size_t> dims, std::vector<IntMatrix> d) {
  static std::int64_t next_tag = 1000;
  MatComplex mc;
  mc.tag = next_tag++;
  mc.dims = std::move(dims);
  mc.d = std::move(d);
  std::vector<std::vector<Cell>> basis(mc.dims.size());
  for (std::size_t n = 0; n < mc.dims.size(); ++n)
    for (std::size_t i = 0; i < mc.dims[n]; ++i)
      basis[n].push_back(make_cell(static_cast<int>(n), {mc.tag, static_cast<std::int64_t>(i)}));
  const std::int64_t tag = mc.tag;
  mc.complex = ChainComplex::finite(
      "M" + std::to_string(tag), std::move(basis), matrix_map(-1, tag, tag, mc.d),
      [](const Cell& c) {
        return "c" + std::to_string(c.degree) + "_" + std::to_string(c.key.at(1));
      });
  return mc;
}

namespace {

std::vector<IntMatrix> zero_differentials(const std::vector<std::size_t>& dims) {
  std::vector<IntMatrix> d;
  for (std::size_t n = 0; n < dims.size(); ++n)
    d.emplace_back(n == 0 ? 0 : dims[n - 1], dims[n]);
  return d;
}

}  // namespace

MatComplex random_complex(std::mt19937_64& rng, int top_degree, std::size_t max_cells) {
  const auto levels = static_cast<std::size_t>(top_degree + 1);
  std::vector<std::size_t> dims(levels, 0);
  struct Pair {
    std::size_t n, upper, lower;
    int c;
  };
  std::vector<Pair> pairs;
  for (std::size_t n = 0; n < levels; ++n) {
    const int free = uniform(rng, 0, 2);
    for (int k = 0; k < free && dims[n] < max_cells; ++k) ++dims[n];
    if (n == 0) continue;
    const int np = uniform(rng, 0, 2);
    for (int k = 0; k < np; ++k) {
      if (dims[n] >= max_cells || dims[n - 1] >= max_cells) break;
      pairs.push_back({n, dims[n]++, dims[n - 1]++, uniform(rng, 1, 4)});
    }
  }
  std::vector<IntMatrix> d = zero_differentials(dims);
  for (const Pair& p : pairs) d[p.n](p.lower, p.upper) = p.c;
  std::vector<IntMatrix> u, ui;
  for (std::size_t n = 0; n < levels; ++n) {
    auto [a, b] = random_unimodular(rng, dims[n], 6);
    u.push_back(a);
    ui.push_back(b);
  }
  for (std::size_t n = 1; n < levels; ++n) d[n] = u[n - 1] * d[n] * ui[n];
  return make_complex(dims, d);
}

MatReduction random_extension(std::mt19937_64& rng, const MatComplex& bottom,
                              std::size_t max_pairs) {
  const std::size_t levels = bottom.dims.size();
  std::vector<std::size_t> dims = bottom.dims;
  std::vector<std::vector<int>> weight(levels);
  for (std::size_t n = 0; n < levels; ++n) weight[n].assign(dims[n], 0);
  struct Pair {
    std::size_t n, upper, lower;
  };
  std::vector<Pair> pairs;
  for (std::size_t n = 1; n < levels; ++n) {
    const int np = uniform(rng, 0, static_cast<int>(max_pairs));
    for (int k = 0; k < np; ++k) {
      const int w = static_cast<int>(pairs.size()) + 1;
      pairs.push_back({n, dims[n]++, dims[n - 1]++});
      weight[n].push_back(w);
      weight[n - 1].push_back(w);
    }
  }
  // canonical data, B cells first
  std::vector<IntMatrix> d = zero_differentials(dims), f, g, h;
  for (std::size_t n = 1; n < levels; ++n)
    for (std::size_t i = 0; i < bottom.dims[n - 1]; ++i)
      for (std::size_t j = 0; j < bottom.dims[n]; ++j) d[n](i, j) = bottom.d[n](i, j);
  for (const Pair& p : pairs) d[p.n](p.lower, p.upper) = 1;
  for (std::size_t n = 0; n < levels; ++n) {
    f.emplace_back(bottom.dims[n], dims[n]);
    g.emplace_back(dims[n], bottom.dims[n]);
    for (std::size_t i = 0; i < bottom.dims[n]; ++i) f[n](i, i) = g[n](i, i) = 1;
    h.emplace_back(n + 1 < levels ? dims[n + 1] : 0, dims[n]);
  }
  for (const Pair& p : pairs) h[p.n - 1](p.upper, p.lower) = 1;

  // unipotent ψ lowering the weight strictly
  std::vector<IntMatrix> psi, psi_inv;
  for (std::size_t n = 0; n < levels; ++n) {
    IntMatrix nil(dims[n], dims[n]);
    for (std::size_t i = 0; i < dims[n]; ++i)
      for (std::size_t j = 0; j < dims[n]; ++j)
        if (weight[n][i] < weight[n][j] && uniform(rng, 0, 2) == 0)
          nil(i, j) = uniform(rng, -2, 2);
    IntMatrix inv = IntMatrix::identity(dims[n]), power = IntMatrix::identity(dims[n]);
    for (int k = 1; !power.is_zero(); ++k) {
      power = power * nil;
      IntMatrix term = power;
      if (k % 2 == 1)
        for (std::size_t i = 0; i < dims[n]; ++i)
          for (std::size_t j = 0; j < dims[n]; ++j) term(i, j) = -term(i, j);
      for (std::size_t i = 0; i < dims[n]; ++i)
        for (std::size_t j = 0; j < dims[n]; ++j) inv(i, j) += term(i, j);
    }
    IntMatrix p = IntMatrix::identity(dims[n]);
    for (std::size_t i = 0; i < dims[n]; ++i)
      for (std::size_t j = 0; j < dims[n]; ++j) p(i, j) += nil(i, j);
    psi.push_back(p);
    psi_inv.push_back(inv);
  }
  std::vector<IntMatrix> delta = zero_differentials(dims);
  for (std::size_t n = 1; n < levels; ++n)
    delta[n] = sub(psi[n - 1] * d[n] * psi_inv[n], d[n]);

  // transport everything along a random change of basis of the top
  std::vector<IntMatrix> q, qi;
  for (std::size_t n = 0; n < levels; ++n) {
    auto [a, b] = random_unimodular(rng, dims[n], 8);
    q.push_back(a);
    qi.push_back(b);
  }
  for (std::size_t n = 0; n < levels; ++n) {
    if (n > 0) {
      d[n] = q[n - 1] * d[n] * qi[n];
      delta[n] = q[n - 1] * delta[n] * qi[n];
    }
    f[n] = f[n] * qi[n];
    g[n] = q[n] * g[n];
    if (n + 1 < levels) h[n] = q[n + 1] * h[n] * qi[n];
  }

  MatReduction r;
  r.bottom = bottom;
  r.top = make_complex(dims, d);
  r.f = f;
  r.g = g;
  r.h = h;
  r.reduction = Reduction{r.top.complex, bottom.complex,
                          matrix_map(0, r.top.tag, bottom.tag, f),
                          matrix_map(0, bottom.tag, r.top.tag, g),
                          matrix_map(1, r.top.tag, r.top.tag, h)};
  r.nilpotent_top_perturbation = matrix_map(-1, r.top.tag, r.top.tag, delta);
  return r;
}

LinearMap conjugation_perturbation(std::mt19937_64& rng, const MatComplex& c) {
  std::vector<IntMatrix> u, ui;
  for (std::size_t n = 0; n < c.dims.size(); ++n) {
    auto [a, b] = random_unimodular(rng, c.dims[n], 5);
    u.push_back(a);
    ui.push_back(b);
  }
  std::vector<IntMatrix> delta = zero_differentials(c.dims);
  for (std::size_t n = 1; n < c.dims.size(); ++n)
    delta[n] = sub(u[n - 1] * c.d[n] * ui[n], c.d[n]);
  return matrix_map(-1, c.tag, c.tag, delta);
}

// -- the semiline --------------------------------------------------------------

namespace {
constexpr std::int64_t kVertex = 77, kEdge = 78, kStar = 79;
Cell vertex(std::int64_t n) { return make_cell(0, {kVertex, n}); }
Cell edge(std::int64_t n) { return make_cell(1, {kEdge, n}); }
}  // namespace

Reduction semiline_reduction() {
  const LinearMap d(-1, [](const Cell& c) {
    Chain out;
    if (c.degree == 1) {
      add_term(out, vertex(c.key.at(1) + 1), 1);
      add_term(out, vertex(c.key.at(1)), -1);
    }
    return out;
  });
  ChainComplex top = ChainComplex::function_backed(
      "C(A)", d,
      [](const Cell& c) {
        if (c.key.size() != 2 || c.key[1] < 0) return false;
        return (c.degree == 0 && c.key[0] == kVertex) || (c.degree == 1 && c.key[0] == kEdge);
      },
      [](const Cell& c) {
        const auto n = std::to_string(c.key.at(1));
        return c.degree == 0 ? n : "[" + n + "," + std::to_string(c.key.at(1) + 1) + "]";
      });
  ChainComplex point = ChainComplex::finite("C(*)", {{make_cell(0, {kStar, 0})}},
                                            LinearMap::zero(-1));
  const LinearMap f(0, [](const Cell& c) {
    return c.degree == 0 ? single(make_cell(0, {kStar, 0})) : Chain{};
  });
  const LinearMap g(0, [](const Cell&) { return single(vertex(0)); });
  const LinearMap h(1, [](const Cell& c) {
    Chain out;
    if (c.degree == 0)
      for (std::int64_t i = 0; i < c.key.at(1); ++i) add_term(out, edge(i), 1);
    return out;
  });
  return Reduction{top, point, f, g, h};
}

std::vector<Cell> semiline_sample(int n) {
  std::vector<Cell> cells;
  for (int i = 0; i < n; ++i) {
    cells.push_back(vertex(i));
    cells.push_back(edge(i));
  }
  return cells;
}

// -- small simplicial sets -------------------------------------------------------

SimplicialSet random_simplicial_complex(std::mt19937_64& rng, int vertices, int facets,
                                        int max_dim) {
  std::set<std::vector<int>> simplices;
  for (int v = 0; v < vertices; ++v) simplices.insert({v});
  for (int k = 0; k < facets; ++k) {
    const int size = uniform(rng, 2, std::min(max_dim + 1, vertices));
    std::vector<int> all(static_cast<std::size_t>(vertices));
    for (int v = 0; v < vertices; ++v) all[static_cast<std::size_t>(v)] = v;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> facet(all.begin(), all.begin() + size);
    std::sort(facet.begin(), facet.end());
    // every nonempty subset
    for (unsigned mask = 1; mask < (1u << size); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < size; ++i)
        if (mask & (1u << i)) s.push_back(facet[static_cast<std::size_t>(i)]);
      simplices.insert(s);
    }
  }
  std::vector<std::vector<int>> ordered(simplices.begin(), simplices.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  SimplicialSetBuilder b;
  std::map<std::vector<int>, int> index;
  for (const auto& s : ordered) {
    const int dim = static_cast<int>(s.size()) - 1;
    std::string name = "s";
    for (int v : s) name += "_" + std::to_string(v);
    std::vector<Simplex> faces;
    if (dim > 0)
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        faces.push_back(nondegenerate(dim - 1, index.at(f)));
      }
    index[s] = b.add(dim, name, faces);
  }
  return std::move(b).build();
}

SimplicialSet two_triangle_sphere() {
  SimplicialSetBuilder b;
  const int v0 = b.add_vertex("v0"), v1 = b.add_vertex("v1"), v2 = b.add_vertex("v2");
  auto vx = [](int i) { return nondegenerate(0, i); };
  const int a = b.add(1, "a", {vx(v1), vx(v0)});
  const int bb = b.add(1, "b", {vx(v2), vx(v1)});
  const int c = b.add(1, "c", {vx(v2), vx(v0)});
  auto e = [](int i) { return nondegenerate(1, i); };
  b.add(2, "T1", {e(bb), e(c), e(a)});
  b.add(2, "T2", {e(bb), e(c), e(a)});
  return std::move(b).build();
}

SimplicialSet rp2_with_flap() {
  SimplicialSetBuilder b;
  const int v = b.add_vertex("v");
  const Simplex pv = nondegenerate(0, v);
  const int a = b.add(1, "a", {pv, pv});
  const int c = b.add(1, "c", {pv, pv});
  const Simplex s0v = degenerate(pv, 0);
  b.add(2, "t", {nondegenerate(1, a), s0v, nondegenerate(1, a)});
  b.add(2, "u", {nondegenerate(1, a), s0v, nondegenerate(1, c)});
  return std::move(b).build();
}

// -- perturbation route closed forms ------------------------------------------------------

namespace {

Cell kcell(int k) { return make_cell(0, {k}); }

// Σ (−1)^n c [(τ(σ)·k) ⊗ post(∂_n σ) − k ⊗ post(∂_n σ)] over the terms c·σ
Chain closed_form(const TwistingOperator& tau, int k, const Chain& simplices,
                  const std::function<Chain(const Chain&)>& post) {
  const SimplicialSet& x = tau.base();
  Chain out;
  for (const auto& [cell, coeff] : simplices) {
    const int n = cell.degree;
    if (n == 0) continue;
    const int s = static_cast<int>(cell.key.at(0));
    const Simplex& last = x.generator_face(n, s, n);
    if (last.degenerate()) continue;
    const Chain image = post(single(make_cell(n - 1, {last.generator})));
    const int moved = tau.group().multiply(tau.of_generator(n, s), k);
    const Integer sign = n % 2 == 0 ? coeff : Integer(-coeff);
    for (const auto& [y, c] : image) {
      add_term(out, tensor_cell(kcell(moved), y), sign * c);
      add_term(out, tensor_cell(kcell(k), y), -sign * c);
    }
  }
  return out;
}

void compare(std::vector<std::string>& out, const std::string& what, const Cell& cell,
             const Chain& got, const Chain& want, const ChainComplex& c) {
  if (got == want) return;
  out.push_back(what + " differs on " + c.describe(cell) + ": got " + c.describe(got) +
                ", closed form " + c.describe(want));
}

}  // namespace

std::vector<std::string> lemma_mismatches(const TwistingOperator& tau,
                                          const Equivalence& eq,
                                          const PerturbationResult& r) {
  std::vector<std::string> out;
  const auto identity = [](const Chain& c) { return c; };
  const ChainComplex& kx = r.rho1.bottom;
  for (int n = 0; n <= kx.top_degree(); ++n)
    for (const Cell& cell : kx.basis(n)) {
      auto [k, xc] = split_tensor(cell);
      const Chain want =
          closed_form(tau, static_cast<int>(k.key.at(0)), single(xc), identity);
      compare(out, "delta'", cell, r.delta1(cell), want, kx);
    }
  const ChainComplex& kd = r.rho2.top;
  const LinearMap& f1 = eq.left.f;
  const LinearMap& g1 = eq.left.g;
  const LinearMap& h2 = eq.right.h;
  const auto g = [&](const Chain& c) { return g1(c); };
  const auto hg = [&](const Chain& c) { return h2(g1(c)); };
  for (int n = 0; n <= kd.top_degree(); ++n)
    for (const Cell& cell : kd.basis(n)) {
      auto [k, y] = split_tensor(cell);
      const int kk = static_cast<int>(k.key.at(0));
      const Chain fy = f1(y);
      const Chain d2 = r.delta2(cell);
      compare(out, "delta''", cell, d2, closed_form(tau, kk, fy, g), kd);
      compare(out, "h3 delta''", cell, r.rho3.h(d2), closed_form(tau, kk, fy, hg), kd);
    }
  return out;
}

// -- Morse -------------------------------------------------------------------------

std::vector<std::string> lifted_field_problems(SetPtr x, const DiscreteVectorField& v) {
  std::vector<std::string> out;
  const ChainComplex cx = chain_of(x);
  const UniversalCover u = universal_cover(x);
  const CoverSet lift = cover(*u.tau);
  auto cover_set = std::make_shared<const SimplicialSet>(lift.set);
  const ChainComplex cc = chain_of(cover_set, "C(cover)");
  const DiscreteVectorField lifted = induced_cover_dvf(*u.tau, lift, v);
  const auto order = static_cast<std::size_t>(u.group->order);

  for (const auto& e : validate_dvf(cc, lifted)) out.push_back("lifted field: " + e);
  if (lifted.vectors.size() != order * v.vectors.size())
    out.push_back("lifted field has " + std::to_string(lifted.vectors.size()) +
                  " vectors, expected " + std::to_string(order * v.vectors.size()));
  const auto base = check_admissible(cx, v, simplicial_incidence(x));
  const auto up = check_admissible(cc, lifted, simplicial_incidence(cover_set));
  if (!base.admissible) out.push_back("base field not admissible");
  if (!up.admissible) out.push_back("lifted field not admissible");
  for (const auto& [cell, lambda] : up.lambda) {
    const auto count = static_cast<std::int64_t>(x->count(cell.degree));
    const Cell below = make_cell(cell.degree, {cell.key.at(0) % count});
    auto it = base.lambda.find(below);
    if (it == base.lambda.end() || it->second != lambda) {
      out.push_back("lambda mismatch at " + cc.describe(cell));
      break;
    }
  }
  for (int n = 0; n <= x->max_dim(); ++n)
    if (critical_count(cc, lifted, n) != order * critical_count(cx, v, n))
      out.push_back("critical count mismatch in degree " + std::to_string(n));
  return out;
}

// -- suites --------------------------------------------------------------------------

namespace {

void record(SuiteResult& s, const std::string& what, const std::vector<std::string>& errs) {
  ++s.checked;
  for (const auto& e : errs) s.failures.push_back(what + ": " + e);
}

std::shared_ptr<const FiniteGroupTable> random_group(std::mt19937_64& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::cyclic(2));
    case 1: return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::cyclic(3));
    case 2: return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::trivial());
    default:
      return std::make_shared<const FiniteGroupTable>(
          FiniteGroupTable::from_permutations({{1, 0, 2}, {1, 2, 0}}, 10));
  }
}

}  // namespace

SuiteResult reduction_axiom_suite(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  SuiteResult s;
  const std::vector<std::string> small = {"circle", "sphere2", "rp2", "rp3", "torus",
                                          "sym3", "lens3", "wedge"};
  for (std::size_t t = 0; t < trials; ++t) {
    const std::string tag = "trial " + std::to_string(t);
    try {
      switch (t % 7) {
        case 0: {
          const MatComplex c = random_complex(rng, 3, 4);
          record(s, tag + " trivial", check_reduction(trivial_reduction(c.complex)));
          break;
        }
        case 1: {
          const MatComplex b = random_complex(rng, 3, 3);
          const MatReduction r2 = random_extension(rng, b, 2);
          const MatReduction r1 = random_extension(rng, r2.top, 2);
          record(s, tag + " compose",
                 check_reduction(compose_reductions(r1.reduction, r2.reduction)));
          break;
        }
        case 2: {
          const MatReduction a = random_extension(rng, random_complex(rng, 2, 2), 1);
          const MatReduction b = random_extension(rng, random_complex(rng, 2, 2), 1);
          record(s, tag + " tensor",
                 check_reduction(tensor_reduction(a.reduction, b.reduction)));
          break;
        }
        case 3: {
          const MatComplex b = random_complex(rng, 3, 3);
          const MatReduction r = random_extension(rng, b, 2);
          const auto p = tpl(r.reduction, conjugation_perturbation(rng, b));
          std::vector<std::string> errs = check_reduction(p.reduction);
          for (auto& e : check_differential(p.reduction.top))
            errs.push_back("perturbed top: " + e);
          record(s, tag + " tpl", errs);
          break;
        }
        case 4: {
          const MatReduction r = random_extension(rng, random_complex(rng, 3, 3), 2);
          const auto p = bpl(r.reduction, r.nilpotent_top_perturbation,
                             default_max_iter({&r.top.complex}));
          std::vector<std::string> errs = check_reduction(p.reduction);
          for (auto& e : check_differential(p.reduction.bottom))
            errs.push_back("perturbed bottom: " + e);
          record(s, tag + " bpl", errs);
          break;
        }
        case 5: {
          const SetPtr x = fixture(small[static_cast<std::size_t>(
              uniform(rng, 0, static_cast<int>(small.size()) - 1))]);
          const auto h = random_group(rng);
          const ChainComplex ck = kh0_chain(*h);
          record(s, tag + " ez_kh0", check_reduction(ez_kh0(*h, x, ck, chain_of(x))));
          break;
        }
        default: {
          SetPtr x;
          if (uniform(rng, 0, 1) == 0)
            x = fixture(small[static_cast<std::size_t>(
                uniform(rng, 0, static_cast<int>(small.size()) - 1))]);
          else
            x = std::make_shared<const SimplicialSet>(
                random_simplicial_complex(rng, 6, 4, 3));
          const ChainComplex c = chain_of(x);
          const auto v = greedy_collapse_field(c, simplicial_incidence(x), &rng);
          record(s, tag + " morse", check_reduction(morse_reduction(c, v)));
          break;
        }
      }
    } catch (const std::exception& e) {
      s.failures.push_back(tag + ": exception " + e.what());
    }
  }
  const Reduction semi = semiline_reduction();
  const std::vector<Cell> point = {make_cell(0, {kStar, 0})};
  record(s, "semiline", check_reduction_on(semi, semiline_sample(40), point));
  return s;
}

SuiteResult morse_suite(std::uint64_t seed, std::size_t fields_per_complex) {
  std::mt19937_64 rng(seed);
  SuiteResult s;
  std::vector<std::pair<std::string, SetPtr>> spaces;
  for (const auto& n : finite_corpus()) spaces.emplace_back(n, fixture(n));
  for (const auto& n : {"torus", "wedge", "sphere2", "rp2xrp2"}) spaces.emplace_back(n, fixture(n));
  for (int k = 0; k < 6; ++k)
    spaces.emplace_back("random" + std::to_string(k),
                        std::make_shared<const SimplicialSet>(
                            random_simplicial_complex(rng, 7, 5, 3)));
  for (const auto& [name, x] : spaces) {
    const ChainComplex c = chain_of(x);
    const auto direct = homology_all(c);
    const bool finite =
        std::find(finite_corpus().begin(), finite_corpus().end(), name) != finite_corpus().end();
    for (std::size_t k = 0; k < fields_per_complex; ++k) {
      const std::string tag = name + " field " + std::to_string(k);
      try {
        const auto v = greedy_collapse_field(c, simplicial_incidence(x), &rng);
        std::vector<std::string> errs;
        const Reduction r = morse_reduction(c, v);
        const auto reduced_h = homology_all(r.bottom, c.top_degree());
        if (reduced_h != direct)
          errs.push_back("critical complex homology " + homology_string(reduced_h) +
                         " vs " + homology_string(direct));
        // only the cheapest field per space is lifted to the cover
        if (finite && k == 0)
          for (auto& e : lifted_field_problems(x, v)) errs.push_back(e);
        record(s, tag, errs);
      } catch (const std::exception& e) {
        s.failures.push_back(tag + ": exception " + e.what());
      }
    }
  }
  return s;
}

SuiteResult snf_suite(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  SuiteResult s;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto rows = static_cast<std::size_t>(uniform(rng, 1, 8));
    const auto cols = static_cast<std::size_t>(uniform(rng, 1, 9));
    IntMatrix a;
    if (t % 3 == 2) {  // low rank, so zero invariants show up
      const auto k = static_cast<std::size_t>(uniform(rng, 1, 3));
      a = random_matrix(rng, rows, k, -3, 3) * random_matrix(rng, k, cols, -3, 3);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (a(i, j) > 9 || a(i, j) < -9) a(i, j) = 0;
    } else {
      a = random_matrix(rng, rows, cols, -9, 9);
    }
    std::vector<std::string> errs;
    const SNFResult r = smith_normal_form(a);
    if (!(r.U * r.D * r.V == a)) errs.push_back("U D V != A");
    const Integer du = determinant(r.U), dv = determinant(r.V);
    if (du * du != 1 || dv * dv != 1) errs.push_back("transform not unimodular");
    if (!(r.U * r.U_inv == IntMatrix::identity(rows)) ||
        !(r.V * r.V_inv == IntMatrix::identity(cols)))
      errs.push_back("stored inverses are wrong");
    if (!is_diagonal_chain(r.D)) errs.push_back("D is not a divisibility chain");
    const auto want = naive_invariants(a);
    if (r.invariants() != want) errs.push_back("diagonal differs from the naive oracle");
    if (invariant_factors(a) != want) errs.push_back("invariant_factors differs from the naive oracle");
    if (!errs.empty()) errs.push_back("matrix " + a.str());
    record(s, "matrix " + std::to_string(t), errs);
  }
  return s;
}

std::string homology_string(const std::vector<HomologyGroup>& hs) {
  return format_homology(hs);
}

}  // namespace testsupport
