#include "ucover/homalg.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>

#include "ucover/errors.hpp"

namespace ucover {

namespace {

std::uint64_t fresh_id() {
  static std::atomic<std::uint64_t> next{1};
  return next++;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t salt) {
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL ^ (b + salt + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

// ---------------------------------------------------------------------------
// Cells and chains

Cell make_cell(int degree, std::initializer_list<std::int64_t> key) {
  return Cell{degree, std::vector<std::int64_t>(key)};
}

Cell tensor_cell(const Cell& a, const Cell& b) {
  Cell c;
  c.degree = a.degree + b.degree;
  c.key.reserve(2 + a.key.size() + b.key.size());
  c.key.push_back(a.degree);
  c.key.push_back(static_cast<std::int64_t>(a.key.size()));
  c.key.insert(c.key.end(), a.key.begin(), a.key.end());
  c.key.insert(c.key.end(), b.key.begin(), b.key.end());
  return c;
}

std::pair<Cell, Cell> split_tensor(const Cell& c) {
  if (c.key.size() < 2) throw ContractViolation("not a tensor cell");
  const int da = static_cast<int>(c.key[0]);
  const auto la = static_cast<std::size_t>(c.key[1]);
  if (c.key.size() < 2 + la) throw ContractViolation("not a tensor cell");
  Cell a{da, std::vector<std::int64_t>(c.key.begin() + 2,
                                       c.key.begin() + 2 + static_cast<long>(la))};
  Cell b{c.degree - da,
         std::vector<std::int64_t>(c.key.begin() + 2 + static_cast<long>(la),
                                   c.key.end())};
  return {std::move(a), std::move(b)};
}

void add_term(Chain& c, const Cell& cell, const Integer& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = c.emplace(cell, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) c.erase(it);
  }
}

void add_chain(Chain& c, const Chain& other, const Integer& scale) {
  if (scale == 0) return;
  for (const auto& [cell, v] : other) add_term(c, cell, v * scale);
}

Chain scaled(const Chain& c, const Integer& s) {
  Chain out;
  if (s == 0) return out;
  for (const auto& [cell, v] : c) out.emplace(cell, v * s);
  return out;
}

Chain difference(const Chain& a, const Chain& b) {
  Chain out = a;
  add_chain(out, b, -1);
  return out;
}

Chain single(const Cell& cell, const Integer& coeff) {
  Chain c;
  add_term(c, cell, coeff);
  return c;
}

std::string format_chain(const Chain& c,
                         const std::function<std::string(const Cell&)>& name) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [cell, v] : c) {
    if (v < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    const Integer a = ucover::abs(v);
    if (a != 1) os << a << '*';
    os << name(cell);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LinearMap

struct LinearMap::Impl {
  int degree = 0;
  Fn fn;
  bool memo = false;
  bool zero = false;
  bool identity = false;
  std::uint64_t id = fresh_id();
  std::mutex mu;
  std::map<Cell, Chain> cache;
};

LinearMap::LinearMap() : LinearMap(zero(0)) {}

LinearMap::LinearMap(int degree, Fn fn, bool memoize)
    : impl_(std::make_shared<Impl>()) {
  impl_->degree = degree;
  impl_->fn = std::move(fn);
  impl_->memo = memoize;
}

LinearMap LinearMap::zero(int degree) {
  LinearMap m(degree, [](const Cell&) { return Chain{}; });
  m.impl_->zero = true;
  return m;
}

LinearMap LinearMap::identity() {
  LinearMap m(0, [](const Cell& c) { return single(c); });
  m.impl_->identity = true;
  return m;
}

int LinearMap::degree() const { return impl_->degree; }
bool LinearMap::is_zero() const { return impl_->zero; }
bool LinearMap::is_identity() const { return impl_->identity; }
std::uint64_t LinearMap::id() const { return impl_->id; }

Chain LinearMap::operator()(const Cell& c) const {
  if (impl_->zero) return {};
  if (!impl_->memo) return impl_->fn(c);
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->cache.find(c);
    if (it != impl_->cache.end()) return it->second;
  }
  Chain v = impl_->fn(c);
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->cache.emplace(c, v);
  return v;
}

Chain LinearMap::operator()(const Chain& c) const {
  if (impl_->zero) return {};
  if (impl_->identity) return c;
  Chain out;
  for (const auto& [cell, v] : c) add_chain(out, (*this)(cell), v);
  return out;
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
  if (a.is_zero() || b.is_zero()) return LinearMap::zero(a.degree() + b.degree());
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  return LinearMap(a.degree() + b.degree(),
                   [a, b](const Cell& c) { return a(b(c)); });
}

LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() != b.degree())
    throw ContractViolation("adding maps of different degree");
  return LinearMap(a.degree(), [a, b](const Cell& c) {
    Chain out = a(c);
    add_chain(out, b(c));
    return out;
  });
}

LinearMap negate(const LinearMap& a) {
  if (a.is_zero()) return a;
  return LinearMap(a.degree(), [a](const Cell& c) { return scaled(a(c), -1); });
}

LinearMap operator-(const LinearMap& a, const LinearMap& b) {
  return a + negate(b);
}

LinearMap memoized(const LinearMap& a) {
  if (a.is_zero() || a.is_identity()) return a;
  return LinearMap(a.degree(), [a](const Cell& c) { return a(c); }, true);
}

// ---------------------------------------------------------------------------
// ChainComplex

namespace {

std::string default_name(const Cell& c) {
  std::string s = "<" + std::to_string(c.degree) + ":";
  for (std::size_t i = 0; i < c.key.size(); ++i)
    s += (i ? "," : "") + std::to_string(c.key[i]);
  return s + ">";
}

}  // namespace

ChainComplex ChainComplex::finite(std::string name,
                                  std::vector<std::vector<Cell>> basis,
                                  LinearMap d, Namer namer) {
  ChainComplex c;
  c.name_ = std::move(name);
  c.id_ = fresh_id();
  c.d_ = std::move(d);
  c.effective_ = true;
  for (std::size_t n = 0; n < basis.size(); ++n)
    for (const auto& cell : basis[n])
      if (cell.degree != static_cast<int>(n))
        throw ContractViolation("basis cell listed in the wrong degree");
  auto shared = std::make_shared<std::vector<std::vector<Cell>>>(std::move(basis));
  auto members = std::make_shared<std::set<Cell>>();
  for (const auto& v : *shared) members->insert(v.begin(), v.end());
  c.basis_ = shared;
  c.contains_ = [members](const Cell& x) { return members->count(x) > 0; };
  c.namer_ = namer ? std::move(namer) : Namer(default_name);
  return c;
}

ChainComplex ChainComplex::function_backed(
    std::string name, LinearMap d, std::function<bool(const Cell&)> contains,
    Namer namer) {
  ChainComplex c;
  c.name_ = std::move(name);
  c.id_ = fresh_id();
  c.d_ = std::move(d);
  c.effective_ = false;
  c.contains_ = std::move(contains);
  c.namer_ = namer ? std::move(namer) : Namer(default_name);
  return c;
}

int ChainComplex::top_degree() const {
  if (!effective_) return -1;
  int top = -1;
  for (std::size_t n = 0; n < basis_->size(); ++n)
    if (!(*basis_)[n].empty()) top = static_cast<int>(n);
  return top;
}

const std::vector<Cell>& ChainComplex::basis(int n) const {
  static const std::vector<Cell> empty;
  if (!effective_)
    throw NotEffective("complex " + name_ + " has no enumerable basis");
  if (n < 0 || n >= static_cast<int>(basis_->size())) return empty;
  return (*basis_)[static_cast<std::size_t>(n)];
}

bool ChainComplex::contains(const Cell& c) const { return contains_(c); }

std::string ChainComplex::describe(const Cell& c) const { return namer_(c); }

std::string ChainComplex::describe(const Chain& c) const {
  return format_chain(c, namer_);
}

ChainComplex ChainComplex::perturbed(const LinearMap& delta) const {
  if (delta.is_zero()) return *this;
  if (delta.degree() != -1)
    throw ContractViolation("a perturbation has degree -1");
  ChainComplex c = *this;
  c.name_ = name_ + "+δ";
  c.id_ = mix(id_, delta.id(), 0x7065727475ULL);
  c.d_ = memoized(d_ + delta);
  return c;
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
  LinearMap da = a.d(), db = b.d();
  LinearMap d(-1, [da, db](const Cell& c) {
    auto [x, y] = split_tensor(c);
    Chain out;
    for (const auto& [cx, v] : da(x)) add_term(out, tensor_cell(cx, y), v);
    const Integer sign = x.degree % 2 == 0 ? 1 : -1;
    for (const auto& [cy, v] : db(y)) add_term(out, tensor_cell(x, cy), v * sign);
    return out;
  }, true);
  auto na = a.namer_, nb = b.namer_;
  ChainComplex::Namer namer = [na, nb](const Cell& c) {
    auto [x, y] = split_tensor(c);
    return na(x) + "⊗" + nb(y);
  };
  ChainComplex out;
  const std::string name = a.name() + "⊗" + b.name();
  if (a.effective() && b.effective()) {
    const int top = std::max(-1, a.top_degree() + b.top_degree());
    std::vector<std::vector<Cell>> basis(static_cast<std::size_t>(top + 1));
    for (int n = 0; n <= top; ++n)
      for (int p = 0; p <= n; ++p)
        for (const auto& x : a.basis(p))
          for (const auto& y : b.basis(n - p))
            basis[static_cast<std::size_t>(n)].push_back(tensor_cell(x, y));
    out = ChainComplex::finite(name, std::move(basis), d, namer);
  } else {
    auto ca = a.contains_, cb = b.contains_;
    out = ChainComplex::function_backed(
        name, d,
        [ca, cb](const Cell& c) {
          if (c.key.size() < 2) return false;
          auto [x, y] = split_tensor(c);
          return ca(x) && cb(y);
        },
        namer);
  }
  out.id_ = mix(a.id(), b.id(), 0x74656e736f72ULL);
  return out;
}

LinearMap tensor_maps(const LinearMap& f, const LinearMap& g) {
  if (f.is_zero() || g.is_zero()) return LinearMap::zero(f.degree() + g.degree());
  if (f.is_identity() && g.is_identity()) return LinearMap::identity();
  const int gdeg = g.degree();
  return LinearMap(f.degree() + g.degree(), [f, g, gdeg](const Cell& c) {
    auto [x, y] = split_tensor(c);
    const Integer sign = (gdeg * x.degree) % 2 == 0 ? 1 : -1;
    Chain out;
    const Chain fx = f(x);
    if (fx.empty()) return out;
    const Chain gy = g(y);
    for (const auto& [a, va] : fx)
      for (const auto& [b, vb] : gy) add_term(out, tensor_cell(a, b), va * vb * sign);
    return out;
  });
}

ChainComplex chain_of(std::shared_ptr<const SimplicialSet> x, std::string name) {
  std::vector<std::vector<Cell>> basis(
      static_cast<std::size_t>(std::max(x->max_dim() + 1, 0)));
  for (int n = 0; n <= x->max_dim(); ++n)
    for (int g = 0; g < static_cast<int>(x->count(n)); ++g)
      basis[static_cast<std::size_t>(n)].push_back(make_cell(n, {g}));
  LinearMap d(-1, [x](const Cell& c) {
    Chain out;
    const int n = c.degree;
    if (n == 0) return out;
    const int g = static_cast<int>(c.key.at(0));
    for (int i = 0; i <= n; ++i) {
      const Simplex& f = x->generator_face(n, g, i);
      if (f.degenerate()) continue;
      add_term(out, make_cell(n - 1, {f.generator}), i % 2 == 0 ? 1 : -1);
    }
    return out;
  });
  return ChainComplex::finite(std::move(name), std::move(basis), d,
                              [x](const Cell& c) {
                                return x->name(c.degree,
                                               static_cast<int>(c.key.at(0)));
                              });
}

// ---------------------------------------------------------------------------
// Reductions

namespace {

struct Report {
  std::vector<std::string> lines;
  std::size_t limit = 25;
  void add(std::string s) {
    if (lines.size() < limit) lines.push_back(std::move(s));
  }
};

}  // namespace

std::vector<std::string> check_reduction_on(const Reduction& r,
                                            const std::vector<Cell>& top_cells,
                                            const std::vector<Cell>& bottom_cells) {
  Report rep;
  const auto& D = r.top;
  const auto& C = r.bottom;
  if (r.f.degree() != 0 || r.g.degree() != 0 || r.h.degree() != 1)
    rep.add("map degrees are not (0, 0, +1)");
  for (const auto& x : top_cells) {
    const std::string at = " at " + D.describe(x);
    const Chain dx = D.d()(x);
    if (!D.d()(dx).empty()) rep.add("d∘d ≠ 0 on top" + at);
    const Chain fx = r.f(x);
    if (C.d()(fx) != r.f(dx)) rep.add("f is not a chain map" + at);
    const Chain hx = r.h(x);
    Chain lhs = r.g(fx);
    add_chain(lhs, D.d()(hx));
    add_chain(lhs, r.h(dx));
    if (lhs != single(x))
      rep.add("gf + dh + hd ≠ id" + at + ": " + D.describe(lhs));
    if (!r.f(hx).empty()) rep.add("fh ≠ 0" + at);
    if (!r.h(hx).empty()) rep.add("hh ≠ 0" + at);
  }
  for (const auto& c : bottom_cells) {
    const std::string at = " at " + C.describe(c);
    const Chain dc = C.d()(c);
    if (!C.d()(dc).empty()) rep.add("d∘d ≠ 0 on bottom" + at);
    const Chain gc = r.g(c);
    if (D.d()(gc) != r.g(dc)) rep.add("g is not a chain map" + at);
    if (r.f(gc) != single(c)) rep.add("fg ≠ id" + at);
    if (!r.h(gc).empty()) rep.add("hg ≠ 0" + at);
  }
  return rep.lines;
}

std::vector<std::string> check_reduction(const Reduction& r, int max_degree) {
  std::vector<Cell> top, bottom;
  const int tmax = max_degree < 0 ? r.top.top_degree() : max_degree;
  const int bmax = max_degree < 0 ? r.bottom.top_degree() : max_degree;
  for (int n = 0; n <= tmax; ++n)
    for (const auto& c : r.top.basis(n)) top.push_back(c);
  for (int n = 0; n <= bmax; ++n)
    for (const auto& c : r.bottom.basis(n)) bottom.push_back(c);
  return check_reduction_on(r, top, bottom);
}

std::vector<std::string> check_differential(const ChainComplex& c,
                                            int max_degree) {
  Report rep;
  const int top = max_degree < 0 ? c.top_degree() : max_degree;
  for (int n = 0; n <= top; ++n)
    for (const auto& x : c.basis(n)) {
      const Chain dx = c.d()(x);
      for (const auto& [y, v] : dx)
        if (y.degree != n - 1 || !c.contains(y))
          rep.add("d" + c.describe(x) + " leaves the basis");
      if (!c.d()(dx).empty()) rep.add("d∘d ≠ 0 at " + c.describe(x));
    }
  return rep.lines;
}

Reduction trivial_reduction(const ChainComplex& c) {
  return Reduction{c, c, LinearMap::identity(), LinearMap::identity(),
                   LinearMap::zero(1)};
}

Reduction compose_reductions(const Reduction& r1, const Reduction& r2) {
  if (r1.bottom.id() != r2.top.id())
    throw ContractViolation("cannot compose: " + r1.bottom.name() +
                            " is not the top of the second reduction (" +
                            r2.top.name() + ")");
  return Reduction{r1.top, r2.bottom, compose(r2.f, r1.f),
                   compose(r1.g, r2.g),
                   r1.h + compose(r1.g, compose(r2.h, r1.f))};
}

Reduction tensor_reduction(const Reduction& r, const Reduction& rp) {
  return Reduction{
      tensor(r.top, rp.top), tensor(r.bottom, rp.bottom),
      tensor_maps(r.f, rp.f), tensor_maps(r.g, rp.g),
      tensor_maps(r.h, LinearMap::identity()) +
          tensor_maps(compose(r.g, r.f), rp.h)};
}

Reduction invert_isomorphism(const Reduction& r) {
  if (!r.h.is_zero())
    throw ContractViolation("only a reduction with h = 0 can be inverted");
  return Reduction{r.bottom, r.top, r.g, r.f, LinearMap::zero(1)};
}

PerturbedReduction tpl(const Reduction& r, const LinearMap& delta_bottom) {
  LinearMap delta_top = memoized(compose(r.g, compose(delta_bottom, r.f)));
  Reduction out{r.top.perturbed(delta_top), r.bottom.perturbed(delta_bottom),
                r.f, r.g, r.h};
  return {std::move(out), delta_top};
}

PerturbedReduction bpl(const Reduction& r, const LinearMap& delta,
                       std::size_t max_iter) {
  if (delta.is_zero()) return {r, LinearMap::zero(-1)};
  const LinearMap h = r.h;
  const ChainComplex top = r.top;
  LinearMap phi = LinearMap::identity();
  if (!h.is_zero()) {
    phi = LinearMap(0, [h, delta, max_iter, top](const Cell& x) {
      Chain term = single(x);
      Chain acc = term;
      for (std::size_t i = 1;; ++i) {
        term = scaled(h(delta(term)), -1);
        if (term.empty()) break;
        if (i > max_iter)
          throw NilpotencyFailure(
              "hδ is not nilpotent within " + std::to_string(max_iter) +
              " iterations at generator " + top.describe(x));
        add_chain(acc, term);
      }
      return acc;
    }, true);
  }
  const LinearMap psi =
      LinearMap::identity() - compose(delta, compose(phi, h));
  LinearMap delta_bottom =
      memoized(compose(r.f, compose(delta, compose(phi, r.g))));
  Reduction out{r.top.perturbed(delta), r.bottom.perturbed(delta_bottom),
                memoized(compose(r.f, psi)), memoized(compose(phi, r.g)),
                memoized(compose(phi, h))};
  return {std::move(out), delta_bottom};
}

std::size_t default_max_iter(const std::vector<const ChainComplex*>& cs) {
  std::size_t deg = 0, size = 0;
  for (const auto* c : cs) {
    if (!c->effective()) continue;
    const int top = c->top_degree();
    deg = std::max(deg, static_cast<std::size_t>(std::max(top, 0)));
    for (int n = 0; n <= top; ++n) size = std::max(size, c->basis(n).size());
  }
  return 1 + deg * size;
}

}  // namespace ucover
