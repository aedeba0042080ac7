// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "ucover/errors.hpp"
#include "ucover/twisted.hpp"

using namespace ucover;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void headline(Outcome& o) {
  const auto x = fixture("s5xrp3");
  const auto p = pi1_presentation(*x, maximal_tree(*x));
  const auto g = todd_coxeter(p);
  o.require(g.order == 12, "group order " + std::to_string(g.order));
  const UniversalCover u = universal_cover(x);
  const auto total = u.cover.set.total_count();
  o.require(total == 4176, "cover size " + std::to_string(total));
  const std::string cover_h = homology_string(reduced(homology_of_cover_direct(x)));
  o.require(cover_h == "[0, 0, Z^11, Z, 0, Z^11]", "cover homology " + cover_h);
  const std::string base_h = homology_string(reduced(homology_all(chain_of(x))));
  o.require(base_h == "[0, C2 x C2, Z x C2, Z x C2 x C2, C2, Z]", "base homology " + base_h);
  o.detail << " order " << g.order << ", " << total << " simplices, cover " << cover_h
           << ", base " << base_h;
}

void perturbation_vs_direct(Outcome& o) {
  std::size_t degrees = 0;
  for (const auto& name : finite_corpus()) {
    const auto x = fixture(name);
    const auto direct = homology_of_cover_direct(x);
    const auto via = cover_homology_via_perturbation(x).homology;
    o.require(via == direct, name + ": " + homology_string(via) + " vs " + homology_string(direct));
    degrees += direct.size();
  }
  o.detail << " " << finite_corpus().size() << " complexes, " << degrees << " degrees";
}

void wedge_failure_mode(Outcome& o) {
  const auto x = fixture("wedge");
  bool refused = false;
  try {
    cover_homology_via_perturbation(x);
  } catch (const CoverNotEffective&) {
    refused = true;
  }
  o.require(refused, "the perturbation route did not raise CoverNotEffective");
  const auto h1 = twisted_homology(x, 1).presentation;
  o.require(h1.ambient_rank == 0, "H1 ambient rank " + std::to_string(h1.ambient_rank));
  const auto h2 = twisted_homology(x, 2).presentation;
  o.require(h2.algebra->ring_description() ==
                "Multivariate Polynomial Ring in f1, f1inv over Integer Ring",
            "ring " + h2.algebra->ring_description());
  const auto rel = h2.relation_strings();
  o.require(h2.ambient_rank == 1 && rel == std::vector<std::vector<std::string>>{{"f1*f1inv - 1"}},
            "H2 presentation " + h2.listing());
  o.detail << " CoverNotEffective; H1 rank 0; H2 rank 1 with relation "
           << (rel.empty() || rel[0].empty() ? "?" : rel[0][0]);
}

void report_suite(Outcome& o, const SuiteResult& s, std::size_t at_least) {
  o.require(s.checked >= at_least, "only " + std::to_string(s.checked) + " checked");
  o.require(s.failures.empty(), std::to_string(s.failures.size()) + " failures, first: " +
                                    (s.failures.empty() ? "" : s.failures.front()));
  o.detail << " " << s.checked << " checked, " << s.failures.size() << " failures";
}

void lemmas(Outcome& o) {
  std::size_t runs = 0;
  for (const auto& name : finite_corpus()) {
    const auto x = fixture(name);
    const UniversalCover u = universal_cover(x);
    const ChainComplex cx = chain_of(x);
    for (const Equivalence& eq :
         {identity_equivalence(cx),
          morse_equivalence(cx, greedy_collapse_field(cx, simplicial_incidence(x)))}) {
      const auto r = effective_homology_universal_cover(*u.tau, eq);
      const auto bad = lemma_mismatches(*u.tau, eq, r);
      o.require(bad.empty(), name + ": " + (bad.empty() ? "" : bad.front()));
      ++runs;
    }
  }
  o.detail << " " << runs << " runs (identity and Morse equivalences)";
}

void twisted_cross_oracle(Outcome& o) {
  std::size_t compared = 0;
  for (const char* name : {"rp2", "rp3", "rp4", "lens3", "lens4"}) {
    const auto x = fixture(name);
    const auto direct = homology_of_cover_direct(x);
    for (int n = 0; n <= x->max_dim(); ++n) {
      HomologyGroup h = integer_specialization(twisted_homology(x, n).presentation);
      h.degree = n;
      o.require(h == direct[static_cast<std::size_t>(n)],
                std::string(name) + " degree " + std::to_string(n) + ": " + h.str());
      ++compared;
    }
  }
  const auto torus = fixture("torus");
  for (int n : {1, 2})
    o.require(module_is_trivial(twisted_homology(torus, n).presentation),
              "torus H" + std::to_string(n) + " not trivial");
  o.detail << " " << compared << " degrees matched; torus H1, H2 trivial";
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<void(Outcome&)> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"headline example (Sym(3) complex x RP3)", headline, 300},
      {"perturbation route vs explicit cover", perturbation_vs_direct, 120},
      {"S1 v S2 failure mode and twisted listing", wedge_failure_mode, 0},
      {"reduction axioms on 1000 random reductions",
       [](Outcome& o) { report_suite(o, reduction_axiom_suite(1, 1000), 1000); }, 0},
      {"closed forms of delta', delta'', h3 delta''", lemmas, 0},
      {"Morse suite", [](Outcome& o) { report_suite(o, morse_suite(2, 4), 1); }, 0},
      {"twisted homology cross-oracle", twisted_cross_oracle, 0},
      {"Smith normal form oracle (500 matrices)",
       [](Outcome& o) { report_suite(o, snf_suite(3, 500), 500); }, 0},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t0);
    if (c.limit_seconds > 0)
      o.require(s <= c.limit_seconds, "took longer than " + std::to_string(c.limit_seconds) + " s");
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.label << ":" << o.detail.str() << " ("
              << std::fixed;
    std::cout.precision(2);
    std::cout << s << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
