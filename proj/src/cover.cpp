#include "ucover/cover.hpp"

#include <deque>

#include "ucover/errors.hpp"

namespace ucover {

TwistingOperator::TwistingOperator(SetPtr base, GroupPtr group,
                                   std::vector<int> edge_values)
    : base_(std::move(base)),
      group_(std::move(group)),
      edge_values_(std::move(edge_values)) {
  if (edge_values_.size() != base_->count(1))
    throw ContractViolation("one twisting value per edge expected");
  for (int v : edge_values_)
    if (v < 0 || v >= group_->order)
      throw ContractViolation("twisting value outside the group");
  memo_.resize(static_cast<std::size_t>(std::max(base_->max_dim() + 1, 1)));
  for (int n = 1; n <= base_->max_dim(); ++n) {
    auto& m = memo_[static_cast<std::size_t>(n)];
    m.resize(base_->count(n));
    for (int g = 0; g < static_cast<int>(m.size()); ++g)
      m[static_cast<std::size_t>(g)] =
          n == 1 ? edge_values_[static_cast<std::size_t>(g)]
                 : (*this)(base_->generator_face(n, g, 0));
  }
}

int TwistingOperator::of_generator(int dim, int generator) const {
  return memo_.at(static_cast<std::size_t>(dim))
      .at(static_cast<std::size_t>(generator));
}

int TwistingOperator::operator()(const Simplex& s) const {
  const int n = s.dim();
  if (n < 1) throw ContractViolation("τ is defined from dimension 1");
  if (!s.degenerate()) return of_generator(n, s.generator);
  if (n == 1) return group_->identity;  // s0 v
  return (*this)(base_->face(s, 0));
}

TwistingOperator build_tau(SetPtr x, const MaximalTree& t,
                           const GroupPresentation& p, GroupPtr chi) {
  if (chi->word_images.size() != p.generators.size())
    throw ValidationError("χ must give one image per presentation generator (" +
                          std::to_string(p.generators.size()) + ")");
  std::vector<int> values(x->count(1), chi->identity);
  for (std::size_t e = 0; e < values.size(); ++e) {
    if (t.in_tree.at(e)) continue;
    values[e] = chi->word_images.at(
        static_cast<std::size_t>(p.edge_generator.at(e)));
  }
  TwistingOperator tau(x, chi, std::move(values));
  for (int s = 0; s < static_cast<int>(x->count(2)); ++s) {
    const int t1 = tau(x->generator_face(2, s, 1));
    const int t2 = tau(x->generator_face(2, s, 2));
    const int t0 = tau(x->generator_face(2, s, 0));
    if (t1 != chi->multiply(t2, t0))
      throw TwistingViolation("τ(∂1 x) ≠ τ(∂2 x)·τ(∂0 x) on 2-simplex " +
                              x->name(2, s) + "; χ does not respect relators");
  }
  return tau;
}

TwistingOperator trivial_tau(SetPtr x, GroupPtr group) {
  std::vector<int> values(x->count(1), group->identity);
  return TwistingOperator(std::move(x), std::move(group), std::move(values));
}

std::vector<std::string> check_twisting(const TwistingOperator& tau) {
  std::vector<std::string> out;
  const auto& x = tau.base();
  const auto& g = tau.group();
  auto check_one = [&](const Simplex& b) {
    const int n = b.dim();
    if (n >= 2) {
      for (int i = 0; i < n - 1; ++i)
        if (tau(x.face(b, i)) != tau(b))
          out.push_back("τ(∂" + std::to_string(i) + " b) ≠ τ(b) at " +
                        x.describe(b));
      if (tau(x.face(b, n - 1)) != g.multiply(tau(x.face(b, n)), tau(b)))
        out.push_back("last-face identity fails at " + x.describe(b));
    }
    for (int i = 0; i <= n; ++i) {
      const Simplex sb = degenerate(b, i);
      const int want = i == n ? g.identity : tau(b);
      if (tau(sb) != want)
        out.push_back("degeneracy identity s" + std::to_string(i) +
                      " fails at " + x.describe(b));
    }
  };
  for (int v = 0; v < static_cast<int>(x.count(0)); ++v) {
    if (tau(degenerate(nondegenerate(0, v), 0)) != g.identity)
      out.push_back("τ(s0 v) ≠ 1 at " + x.name(0, v));
  }
  for (int n = 1; n <= x.max_dim(); ++n)
    for (int s = 0; s < static_cast<int>(x.count(n)); ++s) {
      const Simplex b = nondegenerate(n, s);
      check_one(b);
      for (int j = 0; j < n; ++j) check_one(degenerate(b, j));
    }
  return out;
}

void require_surjective(const FiniteGroupTable& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.order), 0);
  std::deque<int> queue{g.identity};
  seen[static_cast<std::size_t>(g.identity)] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int w : g.word_images) {
      const int b = g.multiply(a, w);
      if (!seen[static_cast<std::size_t>(b)]) {
        seen[static_cast<std::size_t>(b)] = 1;
        ++reached;
        queue.push_back(b);
      }
    }
  }
  if (reached != static_cast<std::size_t>(g.order))
    throw NotSurjective("χ reaches " + std::to_string(reached) + " of " +
                        std::to_string(g.order) +
                        " group elements; the cover would be disconnected");
}

namespace {

template <typename LastFace>
CoverSet build_pairs(const TwistingOperator& tau, LastFace last) {
  CoverSet out;
  out.base = tau.base_ptr();
  out.group = tau.group_ptr();
  const auto& x = tau.base();
  const int order = tau.group().order;
  SimplicialSetBuilder b;
  for (int n = 0; n <= x.max_dim(); ++n) {
    const int c = static_cast<int>(x.count(n));
    for (int h = 0; h < order; ++h)
      for (int s = 0; s < c; ++s) {
        std::vector<Simplex> faces;
        if (n > 0) {
          const int th = last(h, tau.of_generator(n, s));
          for (int i = 0; i <= n; ++i) {
            const Simplex& f = x.generator_face(n, s, i);
            const int hh = i == n ? th : h;
            faces.push_back(Simplex{
                f.degeneracies, f.generator_dim,
                hh * static_cast<int>(x.count(f.generator_dim)) + f.generator});
          }
        }
        b.add(n, "(" + std::to_string(h) + "," + x.name(n, s) + ")",
              std::move(faces));
      }
  }
  out.set = std::move(b).build();
  return out;
}

}  // namespace

CoverSet twisted_product(const TwistingOperator& tau) {
  const auto& g = tau.group();
  return build_pairs(tau, [&](int h, int t) { return g.multiply(t, h); });
}

CoverSet cover(const TwistingOperator& tau) {
  const auto& g = tau.group();
  return build_pairs(tau,
                     [&](int h, int t) { return g.multiply(h, g.inverse(t)); });
}

CoverSet cover(SetPtr x, const MaximalTree& t, const GroupPresentation& p,
               GroupPtr chi) {
  require_surjective(*chi);
  return cover(build_tau(std::move(x), t, p, std::move(chi)));
}

SimplicialSet kh0(const FiniteGroupTable& g) {
  SimplicialSetBuilder b;
  for (int h = 0; h < g.order; ++h) b.add_vertex(std::to_string(h));
  return std::move(b).build();
}

UniversalCover universal_cover(SetPtr x, std::size_t max_cosets) {
  UniversalCover u;
  u.base = x;
  u.tree = maximal_tree(*x);
  u.presentation = pi1_presentation(*x, u.tree);
  u.group = std::make_shared<const FiniteGroupTable>(
      todd_coxeter(u.presentation, max_cosets));
  u.tau = std::make_shared<const TwistingOperator>(
      build_tau(x, u.tree, u.presentation, u.group));
  u.cover = twisted_product(*u.tau);
  return u;
}

ProductSet product_cover(SetPtr x, SetPtr y, std::size_t max_cosets) {
  const UniversalCover ux = universal_cover(std::move(x), max_cosets);
  const UniversalCover uy = universal_cover(std::move(y), max_cosets);
  return cartesian_product(ux.cover.set, uy.cover.set);
}

}  // namespace ucover
