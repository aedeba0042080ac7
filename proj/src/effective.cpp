#include "ucover/effective.hpp"

#include <map>
#include <sstream>

#include "ucover/errors.hpp"
#include "ucover/morse.hpp"

namespace ucover {

std::string HomologyGroup::str() const {
  std::vector<std::string> parts;
  if (betti == 1) parts.push_back("Z");
  if (betti > 1) parts.push_back("Z^" + std::to_string(betti));
  for (const auto& t : torsion) parts.push_back("C" + t.get_str());
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " x " : "") + parts[i];
  return out;
}

SparseMatrix boundary_matrix(const ChainComplex& c, int n) {
  const auto& cols = c.basis(n);
  const auto& rows = c.basis(n - 1);
  std::map<Cell, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);
  SparseMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [cell, v] : c.d()(cols[j])) {
      auto it = row_index.find(cell);
      if (it == row_index.end())
        throw InternalConsistencyError("boundary of " + c.describe(cols[j]) +
                                       " leaves the basis");
      m.add(it->second, j, v);
    }
  return m;
}

namespace {

std::vector<Integer> factors_of(const ChainComplex& c, int n) {
  if (n <= 0) return {};
  if (c.basis(n).empty() || c.basis(n - 1).empty()) return {};
  return invariant_factors(boundary_matrix(c, n));
}

HomologyGroup assemble(const ChainComplex& c, int n,
                       const std::vector<Integer>& fn,
                       const std::vector<Integer>& fn1) {
  HomologyGroup h;
  h.degree = n;
  h.betti = static_cast<int>(c.basis(n).size()) - static_cast<int>(fn.size()) -
            static_cast<int>(fn1.size());
  for (const auto& d : fn1)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

}  // namespace

HomologyGroup homology(const ChainComplex& c, int n) {
  if (!c.effective())
    throw NotEffective("homology needs a finite basis; " + c.name() +
                       " is only locally effective");
  return assemble(c, n, factors_of(c, n), factors_of(c, n + 1));
}

std::vector<HomologyGroup> homology_all(const ChainComplex& c, int max_degree) {
  if (!c.effective())
    throw NotEffective("homology needs a finite basis; " + c.name() +
                       " is only locally effective");
  const int top = max_degree < 0 ? c.top_degree() : max_degree;
  std::vector<std::vector<Integer>> f(static_cast<std::size_t>(top + 2));
  for (int n = 1; n <= top + 1; ++n) f[static_cast<std::size_t>(n)] = factors_of(c, n);
  std::vector<HomologyGroup> out;
  for (int n = 0; n <= top; ++n)
    out.push_back(assemble(c, n, f[static_cast<std::size_t>(n)],
                           f[static_cast<std::size_t>(n + 1)]));
  return out;
}

std::vector<HomologyGroup> reduced(std::vector<HomologyGroup> hs) {
  if (!hs.empty() && hs.front().betti > 0) hs.front().betti -= 1;
  return hs;
}

std::string format_homology(const std::vector<HomologyGroup>& hs) {
  std::string out = "[";
  for (std::size_t i = 0; i < hs.size(); ++i) out += (i ? ", " : "") + hs[i].str();
  return out + "]";
}

Equivalence identity_equivalence(const ChainComplex& cx) {
  return Equivalence{trivial_reduction(cx), trivial_reduction(cx)};
}

ChainComplex kh0_chain(const FiniteGroupTable& h) {
  return chain_of(std::make_shared<const SimplicialSet>(kh0(h)), "C(K(H,0))");
}

Reduction ez_kh0(const FiniteGroupTable& h, SetPtr x, const ChainComplex& ck,
                 const ChainComplex& cx) {
  auto product = std::make_shared<const ProductSet>(cartesian_product(kh0(h), *x));
  for (int n = 0; n <= product->set.max_dim(); ++n) {
    const auto& comps = product->components[static_cast<std::size_t>(n)];
    const int c = static_cast<int>(x->count(n));
    for (int idx = 0; idx < static_cast<int>(comps.size()); ++idx) {
      const auto& [a, b] = comps[static_cast<std::size_t>(idx)];
      if (b.degenerate() || a.generator != idx / c || b.generator != idx % c)
        throw InternalConsistencyError("unexpected K(H,0) × X enumeration");
    }
  }
  SetPtr pset(product, &product->set);
  ChainComplex top = chain_of(pset, "C(K(H,0)×X)");
  const LinearMap f(0, [x](const Cell& cell) {
    const int n = cell.degree;
    const auto c = static_cast<std::int64_t>(x->count(n));
    const std::int64_t idx = cell.key.at(0);
    return single(tensor_cell(make_cell(0, {idx / c}), make_cell(n, {idx % c})));
  });
  const LinearMap g(0, [x](const Cell& cell) {
    auto [k, s] = split_tensor(cell);
    if (k.degree != 0) return Chain{};
    const auto c = static_cast<std::int64_t>(x->count(s.degree));
    return single(make_cell(s.degree, {k.key.at(0) * c + s.key.at(0)}));
  });
  return Reduction{top, tensor(ck, cx), f, g, LinearMap::zero(1)};
}

LinearMap twist_perturbation(const TwistingOperator& tau) {
  auto t = std::make_shared<const TwistingOperator>(tau);
  return LinearMap(-1, [t](const Cell& cell) {
    Chain out;
    const int n = cell.degree;
    if (n == 0) return out;
    const auto& x = t->base();
    const auto c = static_cast<std::int64_t>(x.count(n));
    const std::int64_t idx = cell.key.at(0);
    const int k = static_cast<int>(idx / c);
    const int s = static_cast<int>(idx % c);
    const Simplex& last = x.generator_face(n, s, n);
    if (last.degenerate()) return out;
    const auto cl = static_cast<std::int64_t>(x.count(n - 1));
    const int moved = t->group().multiply(t->of_generator(n, s), k);
    const Integer sign = n % 2 == 0 ? 1 : -1;
    add_term(out, make_cell(n - 1, {moved * cl + last.generator}), sign);
    add_term(out, make_cell(n - 1, {k * cl + last.generator}), -sign);
    return out;
  }, true);
}

PerturbationResult effective_homology_universal_cover(
    const TwistingOperator& tau, const Equivalence& eq,
    std::optional<std::size_t> max_iter) {
  const auto& x = tau.base();
  const ChainComplex& cx = eq.left.bottom;
  for (int n = 0; n <= std::max(x.max_dim(), cx.top_degree()); ++n)
    if (cx.basis(n).size() != x.count(n))
      throw ContractViolation("the equivalence does not end at C(X)");
  if (eq.left.top.id() != eq.right.top.id())
    throw ContractViolation("the two reductions of the equivalence must share their top");

  PerturbationResult r;
  const ChainComplex ck = kh0_chain(tau.group());
  r.rho1 = ez_kh0(tau.group(), tau.base_ptr(), ck, cx);
  r.rho2 = tensor_reduction(trivial_reduction(ck), eq.left);
  r.rho3 = tensor_reduction(trivial_reduction(ck), eq.right);
  const std::size_t iter = max_iter.value_or(default_max_iter(
      {&r.rho1.top, &r.rho2.top, &r.rho3.top, &r.rho3.bottom}));

  r.delta = twist_perturbation(tau);
  auto b1 = bpl(r.rho1, r.delta, iter);
  r.rho1_hat = b1.reduction;
  r.delta1 = b1.induced;
  auto t2 = tpl(r.rho2, r.delta1);
  r.rho2_hat = t2.reduction;
  r.delta2 = t2.induced;
  try {
    auto b3 = bpl(r.rho3, r.delta2, iter);
    r.rho3_hat = b3.reduction;
    r.delta3 = b3.induced;
    r.equivalence = Equivalence{
        compose_reductions(r.rho2_hat, invert_isomorphism(r.rho1_hat)),
        r.rho3_hat};
    r.homology = homology_all(r.rho3_hat.bottom);
  } catch (const NilpotencyFailure& e) {
    throw CoverNotEffective(std::string("the last perturbation step fails: ") +
                            e.what());
  }
  return r;
}

PerturbationResult cover_homology_via_perturbation(
    SetPtr x, const CoverHomologyOptions& opts) {
  const MaximalTree t = maximal_tree(*x);
  const GroupPresentation p = pi1_presentation(*x, t);
  const Abelianization ab = abelianize(p);
  if (ab.invariants.free_rank > 0)
    throw CoverNotEffective(
        "the fundamental group surjects onto Z^" +
        std::to_string(ab.invariants.free_rank) +
        ", so K(H,0) is not of finite type and the cover has no effective "
        "homology by this route (try twisted-homology)");
  GroupPtr group;
  try {
    group = std::make_shared<const FiniteGroupTable>(todd_coxeter(p, opts.max_cosets));
  } catch (const GroupTooLargeOrInfinite& e) {
    throw CoverNotEffective(std::string("fundamental group not enumerable: ") +
                            e.what());
  }
  const TwistingOperator tau = build_tau(x, t, p, group);
  const ChainComplex cx = chain_of(x);
  Equivalence eq = identity_equivalence(cx);
  if (opts.equivalence == EquivalenceKind::morse)
    eq = morse_equivalence(cx, greedy_collapse_field(cx, simplicial_incidence(x)));
  return effective_homology_universal_cover(tau, eq, opts.max_iter);
}

std::vector<HomologyGroup> homology_of_cover_direct(SetPtr x,
                                                    std::size_t max_cosets) {
  const UniversalCover u = universal_cover(std::move(x), max_cosets);
  auto set = std::make_shared<const SimplicialSet>(u.cover.set);
  return homology_all(chain_of(set, "C(cover)"));
}

}  // namespace ucover
