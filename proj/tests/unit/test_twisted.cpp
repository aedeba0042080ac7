#include <doctest.h>

#include <set>

#include "support.hpp"
#include "ucover/errors.hpp"
#include "ucover/twisted.hpp"

using namespace ucover;
using namespace testsupport;

namespace {

Ring one_var() { return Ring({"x"}, {0}); }

std::shared_ptr<const GroupAlgebra> algebra(std::vector<Integer> torsion, int free) {
  AbelianInvariants inv;
  inv.torsion = std::move(torsion);
  inv.free_rank = free;
  return std::make_shared<const GroupAlgebra>(group_algebra(inv));
}

}  // namespace

TEST_CASE("Groebner bases over the integers") {
  const Ring r = one_var();
  const GroebnerBasis gcd(r, {r.constant(2), r.constant(3)});
  CHECK(gcd.contains(r.constant(1)));
  CHECK(gcd.reduce(r.monomial(r.var(0), 5)).empty());

  const Poly xm1 = r.sub(r.monomial(r.var(0)), r.constant(1));
  const GroebnerBasis g(r, {xm1});
  CHECK(g.reduce(r.sub(r.monomial(r.var(0, 2)), r.constant(1))).empty());
  CHECK(g.reduce(r.monomial(r.var(0, 3))) == r.constant(1));
  CHECK_FALSE(g.contains(r.constant(2)));

  // (2x, 3x) generate x over Z[x]; 2 stays outside (2x)
  const GroebnerBasis h(r, {r.monomial(r.var(0), 2), r.monomial(r.var(0), 3)});
  CHECK(h.contains(r.monomial(r.var(0))));
  CHECK_FALSE(h.contains(r.constant(1)));
}

TEST_CASE("syzygies and lifts") {
  const Ring r = one_var();
  const Poly x = r.monomial(r.var(0));
  const Poly x2 = r.monomial(r.var(0, 2));
  // one row: columns (x, x²); kernel generated by (x, −1)
  const ColumnModule m(r, 1, {x, x2});
  const auto syz = m.syzygies();
  REQUIRE_FALSE(syz.empty());
  for (const Vec& s : syz) {
    Poly total;
    for (const Term& t : s) {
      const Poly col = t.pos == 0 ? x : x2;
      total = r.add(total, r.mul(Poly{Term{0, t.mono, t.coeff}}, col));
    }
    CHECK(total.empty());
  }
  const GroebnerBasis sg(r, syz);
  const Vec want = r.normalized({Term{0, r.var(0), 1}, Term{1, r.one(), -1}});
  CHECK(sg.contains(want));

  const auto lift = m.lift(x2);
  REQUIRE(lift.has_value());
  CHECK_FALSE(m.lift(r.constant(1)).has_value());
}

TEST_CASE("group algebras") {
  const auto z = algebra({}, 1);
  CHECK(z->ring_description() == "Multivariate Polynomial Ring in f1, f1inv over Integer Ring");
  CHECK(z->order() == 0);
  const auto triv = algebra({}, 0);
  CHECK(triv->ring.nvars() == 0);
  CHECK(triv->order() == 1);

  const auto c2 = algebra({2}, 0);
  const Ring& r = c2->ring;
  CHECK(c2->normal_form(r.monomial(r.var(1))) == r.monomial(r.var(0)));
  // the normal forms of all small monomials span a rank-2 lattice: {1, t1}
  std::set<std::string> forms;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Monomial m = r.one();
      m[0] = i;
      m[1] = j;
      forms.insert(r.format(c2->normal_form(r.monomial(m))));
    }
  CHECK(forms == std::set<std::string>{"1", "t1"});
  CHECK(c2->order() == 2);
}

TEST_CASE("twisted boundaries of the wedge") {
  const auto x = fixture("wedge");
  const AbelianTwisting t = abelian_twisting(x);
  const auto ga = std::make_shared<const GroupAlgebra>(group_algebra(t.abelianization.invariants));
  const Ring& r = ga->ring;
  const PolyMatrix m1 = twisted_boundary_matrix(*ga, t, 1);
  REQUIRE(m1.rows == 1);
  REQUIRE(m1.cols == 1);
  CHECK(m1.at(0, 0) == ga->normal_form(r.sub(r.constant(1), r.monomial(r.var(1)))));
  const PolyMatrix m2 = twisted_boundary_matrix(*ga, t, 2);
  CHECK(m2.is_zero());
}

TEST_CASE("consecutive twisted boundaries compose to zero") {
  for (const char* name : {"circle", "rp2", "rp3", "rp4", "lens3", "lens4", "torus", "wedge"}) {
    CAPTURE(name);
    const auto x = fixture(name);
    const AbelianTwisting t = abelian_twisting(x);
    const GroupAlgebra ga = group_algebra(t.abelianization.invariants);
    for (int n = 2; n <= x->max_dim(); ++n) {
      const PolyMatrix prod =
          multiply(ga.ring, twisted_boundary_matrix(ga, t, n - 1), twisted_boundary_matrix(ga, t, n));
      CHECK(ga.normal_form(prod).is_zero());
    }
  }
}

TEST_CASE("trivial group gives the integer boundary") {
  const auto x = fixture("sphere2");
  const AbelianTwisting t = abelian_twisting(x);
  const GroupAlgebra ga = group_algebra(t.abelianization.invariants);
  const ChainComplex c = chain_of(x);
  for (int n = 1; n <= x->max_dim(); ++n) {
    const PolyMatrix m = twisted_boundary_matrix(ga, t, n);
    const IntMatrix d = boundary_matrix(c, n).dense();
    REQUIRE(m.rows == d.rows());
    REQUIRE(m.cols == d.cols());
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j)
        CHECK(m.at(i, j) == ga.ring.constant(d(i, j)));
  }
}

TEST_CASE("the wedge listing") {
  const auto x = fixture("wedge");
  const auto h1 = twisted_homology(x, 1);
  CHECK(h1.presentation.ambient_rank == 0);
  CHECK(module_is_trivial(h1.presentation));
  const auto h2 = twisted_homology(x, 2);
  CHECK(h2.presentation.ambient_rank == 1);
  CHECK(h2.presentation.relation_strings() ==
        std::vector<std::vector<std::string>>{{"f1*f1inv - 1"}});
  CHECK_FALSE(module_is_trivial(h2.presentation));
  CHECK(h2.presentation.listing().find("f1*f1inv - 1") != std::string::npos);
}

TEST_CASE("intermediate matrices satisfy their defining equations") {
  for (const char* name : {"rp2", "rp3", "lens3", "torus", "wedge"}) {
    const auto x = fixture(name);
    for (int n = 1; n <= x->max_dim(); ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto th = twisted_homology(x, n);
      const GroupAlgebra& ga = *th.algebra;
      CHECK(ga.normal_form(multiply(ga.ring, th.m_n, th.n_mat)).is_zero());
      if (th.n_mat.cols > 0 && th.m_n1.cols > 0)
        CHECK(ga.normal_form(multiply(ga.ring, th.n_mat, th.r1)) == ga.normal_form(th.m_n1));
      if (th.n_mat.cols > 0 && th.r2.cols > 0)
        CHECK(ga.normal_form(multiply(ga.ring, th.n_mat, th.r2)).is_zero());
    }
  }
}

TEST_CASE("the torus has a contractible universal cover") {
  const auto x = fixture("torus");
  for (int n : {1, 2}) {
    CAPTURE(n);
    const auto h = twisted_homology(x, n);
    CHECK(module_is_trivial(h.presentation));
    TwistedOptions raw;
    raw.raw = true;
    CHECK(module_is_trivial(twisted_homology(x, n, raw).presentation));
  }
}

TEST_CASE("triviality test") {
  const auto z = algebra({}, 1);
  const Ring& r = z->ring;
  ModulePresentation p;
  p.algebra = z;
  CHECK(module_is_trivial(p));
  p.ambient_rank = 1;
  p.relations = {{r.constant(1)}};
  CHECK(module_is_trivial(p));
  Monomial both = r.one();
  both[0] = both[1] = 1;
  p.relations = {{r.sub(r.monomial(both), r.constant(1))}};
  CHECK_FALSE(module_is_trivial(p));
  p.relations.clear();
  CHECK_FALSE(module_is_trivial(p));
}

TEST_CASE("integer specialization matches the explicit cover") {
  for (const char* name : {"rp2", "rp3", "rp4", "lens3", "lens4"}) {
    const auto x = fixture(name);
    const auto direct = homology_of_cover_direct(x);
    for (bool raw : {false, true}) {
      TwistedOptions opts;
      opts.raw = raw;
      for (int n = 0; n <= x->max_dim(); ++n) {
        CAPTURE(name);
        CAPTURE(n);
        CAPTURE(raw);
        HomologyGroup h = integer_specialization(twisted_homology(x, n, opts).presentation);
        h.degree = n;
        CHECK(h == direct[static_cast<std::size_t>(n)]);
      }
    }
  }
}

TEST_CASE("non-abelian fundamental groups are refused") {
  CHECK_THROWS_AS(twisted_homology(fixture("sym3"), 1), Unsupported);
  CHECK_THROWS_AS(twisted_homology(fixture("s5xrp3"), 2), Unsupported);
}

TEST_CASE("simplification keeps integer specializations") {
  const auto x = fixture("rp3");
  TwistedOptions raw;
  raw.raw = true;
  for (int n = 1; n <= 3; ++n) {
    const auto p = twisted_homology(x, n, raw).presentation;
    CHECK(integer_specialization(simplify(p)) == integer_specialization(p));
  }
}
