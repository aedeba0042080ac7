#include "ucover/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "ucover/errors.hpp"

namespace ucover {

// ---------------------------------------------------------------------------
// DegeneracyWord

DegeneracyWord::DegeneracyWord(std::vector<int> indices)
    : indices_(std::move(indices)) {
  if (!is_canonical(indices_)) {
    throw ContractViolation(
        "degeneracy word must be strictly decreasing and non-negative");
  }
}

bool DegeneracyWord::is_canonical(std::span<const int> indices) {
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0) return false;
    if (k > 0 && indices[k - 1] <= indices[k]) return false;
  }
  return true;
}

bool DegeneracyWord::contains(int j) const {
  return std::find(indices_.begin(), indices_.end(), j) != indices_.end();
}

DegeneracyWord DegeneracyWord::prepend(int j) const {
  // s_j s_{j_k} ... s_{j_1}: move s_j rightwards with s_i s_l = s_{l+1} s_i
  // (i <= l) until it meets a smaller index.
  std::vector<int> out;
  out.reserve(indices_.size() + 1);
  bool placed = false;
  for (int l : indices_) {
    if (l >= j) {
      out.push_back(l + 1);
    } else {
      if (!placed) {
        out.push_back(j);
        placed = true;
      }
      out.push_back(l);
    }
  }
  if (!placed) out.push_back(j);
  DegeneracyWord w;
  w.indices_ = std::move(out);
  return w;
}

Simplex nondegenerate(int dim, int generator) {
  return Simplex{DegeneracyWord{}, dim, generator};
}

Simplex degenerate(const Simplex& s, int j) {
  if (j < 0 || j > s.dim()) {
    throw ContractViolation("degeneracy index s_" + std::to_string(j) +
                            " out of range on a " + std::to_string(s.dim()) +
                            "-simplex");
  }
  return Simplex{s.degeneracies.prepend(j), s.generator_dim, s.generator};
}

Simplex degenerate(const Simplex& s, const DegeneracyWord& word) {
  Simplex out = s;
  const auto& w = word.indices();
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = degenerate(out, *it);
  return out;
}

// ---------------------------------------------------------------------------
// SimplicialSet

std::size_t SimplicialSet::count(int dim) const {
  if (dim < 0 || dim > max_dim()) return 0;
  return names_[static_cast<std::size_t>(dim)].size();
}

std::size_t SimplicialSet::total_count() const {
  std::size_t total = 0;
  for (const auto& v : names_) total += v.size();
  return total;
}

const std::string& SimplicialSet::name(int dim, int generator) const {
  return names_.at(static_cast<std::size_t>(dim))
      .at(static_cast<std::size_t>(generator));
}

std::optional<int> SimplicialSet::find(int dim, std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end() || it->second.first != dim) return std::nullopt;
  return it->second.second;
}

std::optional<std::pair<int, int>> SimplicialSet::find(
    std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Simplex& SimplicialSet::generator_face(int dim, int generator,
                                             int i) const {
  if (dim < 1 || dim > max_dim() || generator < 0 ||
      generator >= static_cast<int>(count(dim)) || i < 0 || i > dim) {
    throw ContractViolation("face index out of range");
  }
  return faces_[static_cast<std::size_t>(dim)]
               [static_cast<std::size_t>(generator)]
               [static_cast<std::size_t>(i)];
}

std::span<const Simplex> SimplicialSet::generator_faces(int dim,
                                                        int generator) const {
  if (dim < 1) return {};
  return faces_.at(static_cast<std::size_t>(dim))
      .at(static_cast<std::size_t>(generator));
}

Simplex SimplicialSet::face(const Simplex& s, int i) const {
  const int n = s.dim();
  if (n == 0 || i < 0 || i > n) {
    throw ContractViolation("face ∂_" + std::to_string(i) + " of a " +
                            std::to_string(n) + "-simplex");
  }
  const auto& w = s.degeneracies.indices();
  // Degeneracies that end up outside the face, outermost first.
  std::vector<int> outer;
  int idx = i;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    const int j = w[pos];
    if (idx < j) {
      outer.push_back(j - 1);
    } else if (idx == j || idx == j + 1) {
      Simplex rest{DegeneracyWord(std::vector<int>(w.begin() + pos + 1,
                                                   w.end())),
                   s.generator_dim, s.generator};
      for (auto it = outer.rbegin(); it != outer.rend(); ++it)
        rest = degenerate(rest, *it);
      return rest;
    } else {
      outer.push_back(j);
      --idx;
    }
  }
  Simplex out = generator_face(s.generator_dim, s.generator, idx);
  for (auto it = outer.rbegin(); it != outer.rend(); ++it)
    out = degenerate(out, *it);
  return out;
}

std::string SimplicialSet::describe(const Simplex& s) const {
  std::ostringstream os;
  for (int j : s.degeneracies.indices()) os << "s_" << j << ' ';
  os << name(s.generator_dim, s.generator);
  return os.str();
}

// ---------------------------------------------------------------------------
// Builder

int SimplicialSetBuilder::add(int dim, std::string name,
                              std::vector<Simplex> faces) {
  if (dim < 0) throw ValidationError("negative dimension for " + name);
  if (set_.index_.count(name)) {
    throw ValidationError("duplicate generator name " + name);
  }
  const std::size_t expected = dim == 0 ? 0 : static_cast<std::size_t>(dim + 1);
  if (faces.size() != expected) {
    throw ValidationError("generator " + name + " of dimension " +
                          std::to_string(dim) + " needs " +
                          std::to_string(expected) + " faces, got " +
                          std::to_string(faces.size()));
  }
  for (const auto& f : faces) {
    if (f.dim() != dim - 1) {
      throw ValidationError("face of " + name + " has dimension " +
                            std::to_string(f.dim()));
    }
    if (f.generator_dim < 0 || f.generator_dim >= dim ||
        f.generator < 0 ||
        f.generator >= static_cast<int>(set_.count(f.generator_dim))) {
      throw ValidationError("face of " + name +
                            " references an unknown generator");
    }
  }
  while (dim > set_.max_dim()) {
    set_.names_.emplace_back();
    set_.faces_.emplace_back();
  }
  auto& names = set_.names_[static_cast<std::size_t>(dim)];
  const int index = static_cast<int>(names.size());
  set_.index_.emplace(name, std::make_pair(dim, index));
  names.push_back(std::move(name));
  set_.faces_[static_cast<std::size_t>(dim)].push_back(std::move(faces));
  return index;
}

std::size_t SimplicialSetBuilder::count(int dim) const {
  return set_.count(dim);
}

SimplicialSet SimplicialSetBuilder::build() && { return std::move(set_); }

// ---------------------------------------------------------------------------
// Validation

std::vector<IdentityViolation> validate_simplicial(const SimplicialSet& x) {
  std::vector<IdentityViolation> out;
  for (int n = 2; n <= x.max_dim(); ++n) {
    for (int g = 0; g < static_cast<int>(x.count(n)); ++g) {
      const Simplex s = nondegenerate(n, g);
      for (int j = 1; j <= n; ++j) {
        const Simplex fj = x.face(s, j);
        for (int i = 0; i < j; ++i) {
          const Simplex lhs = x.face(fj, i);
          const Simplex rhs = x.face(x.face(s, i), j - 1);
          if (lhs != rhs) {
            out.push_back({n, g, i, j,
                           "∂_" + std::to_string(i) + "∂_" +
                               std::to_string(j) + " " + x.name(n, g) +
                               " = " + x.describe(lhs) + " but ∂_" +
                               std::to_string(j - 1) + "∂_" +
                               std::to_string(i) + " = " + x.describe(rhs)});
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cartesian product

namespace {

std::string word_prefix(const DegeneracyWord& w) {
  std::string out;
  for (int j : w.indices()) out += "s_" + std::to_string(j) + " ";
  return out;
}

std::vector<std::vector<int>> subsets(const std::vector<int>& pool,
                                      std::size_t k) {
  std::vector<std::vector<int>> out;
  if (k > pool.size()) return out;
  std::vector<int> pick(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t depth) {
    if (depth == k) {
      out.push_back(pick);
      return;
    }
    for (std::size_t p = start; p + (k - depth) <= pool.size(); ++p) {
      pick[depth] = pool[p];
      rec(p + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

DegeneracyWord word_from_set(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end(), std::greater<>());
  return DegeneracyWord(std::move(indices));
}

}  // namespace

std::optional<int> ProductSet::find(const Simplex& a, const Simplex& b) const {
  const int n = a.dim();
  if (n < 0 || n >= static_cast<int>(lookup_.size())) return std::nullopt;
  auto it = lookup_[static_cast<std::size_t>(n)].find({a, b});
  if (it == lookup_[static_cast<std::size_t>(n)].end()) return std::nullopt;
  return it->second;
}

ProductSet cartesian_product(const SimplicialSet& x, const SimplicialSet& y) {
  ProductSet out;
  if (x.max_dim() < 0 || y.max_dim() < 0) return out;
  const int top = x.max_dim() + y.max_dim();
  out.components.resize(static_cast<std::size_t>(top + 1));
  out.lookup_.resize(static_cast<std::size_t>(top + 1));

  // Enumerate nondegenerate pairs dimension by dimension.
  for (int n = 0; n <= top; ++n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (int p = 0; p <= std::min(n, x.max_dim()); ++p) {
      for (int q = 0; q <= std::min(n, y.max_dim()); ++q) {
        if (n > p + q) continue;
        for (int gx = 0; gx < static_cast<int>(x.count(p)); ++gx) {
          for (int gy = 0; gy < static_cast<int>(y.count(q)); ++gy) {
            for (const auto& a : subsets(all, static_cast<std::size_t>(n - p))) {
              std::vector<int> rest;
              std::set_difference(all.begin(), all.end(), a.begin(), a.end(),
                                  std::back_inserter(rest));
              for (const auto& b :
                   subsets(rest, static_cast<std::size_t>(n - q))) {
                Simplex sa{word_from_set(a), p, gx};
                Simplex sb{word_from_set(b), q, gy};
                auto& comps = out.components[static_cast<std::size_t>(n)];
                out.lookup_[static_cast<std::size_t>(n)].emplace(
                    std::make_pair(sa, sb), static_cast<int>(comps.size()));
                comps.emplace_back(std::move(sa), std::move(sb));
              }
            }
          }
        }
      }
    }
  }

  // Express a coordinate-wise pair as a degeneracy of a nondegenerate pair.
  auto normalize = [&](Simplex a, Simplex b) -> Simplex {
    std::vector<int> outer;
    for (;;) {
      int common = -1;
      for (int j : a.degeneracies.indices()) {
        if (b.degeneracies.contains(j)) {
          common = j;
          break;  // indices are decreasing: first hit is the largest
        }
      }
      if (common < 0) break;
      a = x.face(a, common);
      b = y.face(b, common);
      outer.push_back(common);
    }
    auto idx = out.find(a, b);
    if (!idx) {
      throw InternalConsistencyError("product face missing from enumeration");
    }
    Simplex s = nondegenerate(a.dim(), *idx);
    for (auto it = outer.rbegin(); it != outer.rend(); ++it)
      s = degenerate(s, *it);
    return s;
  };

  SimplicialSetBuilder builder;
  for (int n = 0; n <= top; ++n) {
    for (const auto& [a, b] : out.components[static_cast<std::size_t>(n)]) {
      std::vector<Simplex> faces;
      if (n > 0) {
        for (int i = 0; i <= n; ++i)
          faces.push_back(normalize(x.face(a, i), y.face(b, i)));
      }
      builder.add(n,
                  "(" + word_prefix(a.degeneracies) +
                      x.name(a.generator_dim, a.generator) + "," +
                      word_prefix(b.degeneracies) +
                      y.name(b.generator_dim, b.generator) + ")",
                  std::move(faces));
    }
  }
  out.set = std::move(builder).build();
  return out;
}

// ---------------------------------------------------------------------------
// Models

namespace models {

namespace {

Simplex collapsed_vertex(int dim) {
  // s_{dim-1} ... s_0 v
  Simplex s = nondegenerate(0, 0);
  for (int j = 0; j < dim; ++j) s = degenerate(s, j);
  return s;
}

}  // namespace

SimplicialSet point() {
  SimplicialSetBuilder b;
  b.add_vertex("*");
  return std::move(b).build();
}

SimplicialSet standard_simplex(int n) {
  if (n < 0) throw ContractViolation("negative simplex dimension");
  SimplicialSetBuilder b;
  // Faces are the nonempty subsets of {0..n}; enumerate by size.
  std::vector<std::map<std::vector<int>, int>> index(
      static_cast<std::size_t>(n + 1));
  std::vector<int> all(static_cast<std::size_t>(n + 1));
  std::iota(all.begin(), all.end(), 0);
  for (int d = 0; d <= n; ++d) {
    for (const auto& sub : subsets(all, static_cast<std::size_t>(d + 1))) {
      std::string name;
      for (int v : sub) name += std::to_string(v);
      std::vector<Simplex> faces;
      if (d > 0) {
        for (int i = 0; i <= d; ++i) {
          auto f = sub;
          f.erase(f.begin() + i);
          faces.push_back(nondegenerate(d - 1, index[d - 1].at(f)));
        }
      }
      index[static_cast<std::size_t>(d)][sub] =
          b.add(d, "[" + name + "]", std::move(faces));
    }
  }
  return std::move(b).build();
}


SimplicialSet sphere(int n) {
  if (n < 1) throw ContractViolation("sphere dimension must be positive");
  SimplicialSetBuilder b;
  b.add_vertex("v");
  b.add(n, "e", std::vector<Simplex>(static_cast<std::size_t>(n + 1),
                                     collapsed_vertex(n - 1)));
  return std::move(b).build();
}

SimplicialSet circle() { return sphere(1); }

SimplicialSet wedge_circle_sphere() {
  SimplicialSetBuilder b;
  b.add_vertex("v");
  b.add(1, "e", {nondegenerate(0, 0), nondegenerate(0, 0)});
  b.add(2, "t", std::vector<Simplex>(3, collapsed_vertex(1)));
  return std::move(b).build();
}

SimplicialSet torus() {
  SimplicialSetBuilder b;
  b.add_vertex("v");
  const Simplex v = nondegenerate(0, 0);
  const int a = b.add(1, "a", {v, v});
  const int bb = b.add(1, "b", {v, v});
  const int c = b.add(1, "c", {v, v});
  auto e = [](int g) { return nondegenerate(1, g); };
  b.add(2, "t1", {e(bb), e(c), e(a)});
  b.add(2, "t2", {e(a), e(c), e(bb)});
  return std::move(b).build();
}

namespace {

SimplicialSet cyclic_nerve(
    int m, int n,
    const std::function<std::string(const std::vector<int>&)>& namer) {
  if (m < 2) throw ContractViolation("cyclic group order must be at least 2");
  if (n < 0) throw ContractViolation("negative skeleton dimension");
  SimplicialSetBuilder b;
  std::vector<std::map<std::vector<int>, int>> index(
      static_cast<std::size_t>(n + 1));
  index[0][{}] = b.add_vertex(namer({}));
  auto lookup = [&](const std::vector<int>& word) {
    return nondegenerate(static_cast<int>(word.size()),
                         index[word.size()].at(word));
  };
  std::vector<int> word;
  for (int k = 1; k <= n; ++k) {
    // all words of length k over 1..m-1, lexicographic
    word.assign(static_cast<std::size_t>(k), 1);
    for (;;) {
      std::vector<Simplex> faces;
      faces.push_back(lookup(std::vector<int>(word.begin() + 1, word.end())));
      for (int i = 1; i < k; ++i) {
        const int merged = (word[static_cast<std::size_t>(i - 1)] +
                            word[static_cast<std::size_t>(i)]) % m;
        std::vector<int> f(word.begin(), word.begin() + i - 1);
        if (merged == 0) {
          f.insert(f.end(), word.begin() + i + 1, word.end());
          faces.push_back(degenerate(lookup(f), i - 1));
        } else {
          f.push_back(merged);
          f.insert(f.end(), word.begin() + i + 1, word.end());
          faces.push_back(lookup(f));
        }
      }
      faces.push_back(lookup(std::vector<int>(word.begin(), word.end() - 1)));
      index[static_cast<std::size_t>(k)][word] =
          b.add(k, namer(word), std::move(faces));
      int pos = k - 1;
      while (pos >= 0 && word[static_cast<std::size_t>(pos)] == m - 1) {
        word[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++word[static_cast<std::size_t>(pos)];
    }
  }
  return std::move(b).build();
}

}  // namespace

SimplicialSet cyclic_nerve_skeleton(int m, int n) {
  return cyclic_nerve(m, n, [](const std::vector<int>& w) {
    if (w.empty()) return std::string("*");
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += "|";
      s += std::to_string(w[i]);
    }
    return s + "]";
  });
}

SimplicialSet real_projective_space(int n) {
  return cyclic_nerve(2, n, [](const std::vector<int>& w) {
    switch (w.size()) {
      case 0: return std::string("v");
      case 1: return std::string("a");
      case 2: return std::string("t");
      default: return "c" + std::to_string(w.size());
    }
  });
}

}  // namespace models

}  // namespace ucover
