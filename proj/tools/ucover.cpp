#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "ucover/errors.hpp"
#include "ucover/io.hpp"
#include "ucover/twisted.hpp"

using namespace ucover;
using io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string input;
  std::size_t max_cosets = kDefaultMaxCosets;
};

SetPtr load(const std::string& path) {
  return std::make_shared<const SimplicialSet>(io::read_simplicial_set(path));
}

void emit(const Json& j, const std::string& out = {}) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw ValidationError("cannot write " + out);
  f << j.dump(2) << "\n";
}

std::vector<HomologyGroup> truncate(std::vector<HomologyGroup> hs, int max_degree) {
  if (max_degree >= 0 && static_cast<int>(hs.size()) > max_degree + 1)
    hs.resize(static_cast<std::size_t>(max_degree + 1));
  for (std::size_t i = 0; i < hs.size(); ++i) hs[i].degree = static_cast<int>(i);
  return hs;
}

Json homology_block(const std::vector<HomologyGroup>& hs) {
  return Json{{"homology", io::to_json(hs)},
              {"reduced", io::to_json(reduced(hs))},
              {"text", format_homology(hs)},
              {"reduced_text", format_homology(reduced(hs))}};
}

Json counts(const SimplicialSet& x) {
  Json c = Json::array();
  for (int d = 0; d <= x.max_dim(); ++d) c.push_back(x.count(d));
  return c;
}

Json cover_document(const CoverSet& c, bool summary_only) {
  Json doc = summary_only ? Json::object() : io::to_json(c.set);
  Json info{{"group_order", c.group->order},
            {"base_counts", counts(*c.base)},
            {"counts", counts(c.set)},
            {"nondegenerate_simplices", c.set.total_count()}};
  if (!summary_only) info["generators"] = io::cover_sidecar(c)["generators"];
  doc["cover"] = std::move(info);
  return doc;
}

void write_sidecar(const CoverSet& c, const std::string& path) {
  if (!path.empty()) emit(io::cover_sidecar(c), path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal covers, effective homology and twisted homology of simplicial sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("ucover ") + kVersion + " (schema " +
                                        io::kSchemaVersion + ")");

  Common c;
  auto add_input = [&](CLI::App* s) {
    s->add_option("input", c.input, "simplicial set JSON")->required()->check(CLI::ExistingFile);
  };

  auto* validate = app.add_subcommand("validate", "check the simplicial identities");
  add_input(validate);

  bool presentation_only = false, with_table = false;
  auto* pi1 = app.add_subcommand("pi1", "fundamental group: presentation and order");
  add_input(pi1);
  pi1->add_option("--max-cosets", c.max_cosets, "coset enumeration limit");
  pi1->add_flag("--presentation-only", presentation_only, "skip coset enumeration");
  pi1->add_flag("--table", with_table, "print the multiplication table");

  std::string chi_path, out_path, sidecar_path;
  std::size_t order_limit = kMaxTableOrder;
  bool summary = false;
  auto* cov = app.add_subcommand("cover", "regular cover from a surjection of π1");
  add_input(cov);
  cov->add_option("--chi", chi_path, "surjection JSON (table or permutations); default: universal")
      ->check(CLI::ExistingFile);
  cov->add_option("--group-order-limit", order_limit, "largest group accepted");
  cov->add_option("--max-cosets", c.max_cosets, "coset enumeration limit");

  auto* ucov = app.add_subcommand("universal-cover", "universal cover as a twisted product");
  add_input(ucov);
  ucov->add_option("--max-cosets", c.max_cosets, "coset enumeration limit");
  for (auto* s : {cov, ucov}) {
    s->add_option("-o,--output", out_path, "write the cover here instead of stdout");
    s->add_option("--sidecar", sidecar_path, "also write the generator map here");
    s->add_flag("--summary", summary, "only print counts");
  }

  int max_degree = -1;
  auto* hom = app.add_subcommand("homology", "integral homology by Smith normal form");
  add_input(hom);
  hom->add_option("--max-degree", max_degree, "highest degree reported");

  std::string via = "direct", equivalence = "identity";
  std::optional<std::size_t> max_iter;
  auto* chom = app.add_subcommand("cover-homology", "homology of the universal cover");
  add_input(chom);
  chom->add_option("--via", via, "direct, perturbation, dvf or both")
      ->check(CLI::IsMember({"direct", "perturbation", "dvf", "both"}));
  chom->add_option("--equivalence", equivalence, "equivalence of the base for the perturbation route")
      ->check(CLI::IsMember({"identity", "morse"}));
  chom->add_option("--max-degree", max_degree, "highest degree reported");
  chom->add_option("--max-cosets", c.max_cosets, "coset enumeration limit");
  chom->add_option("--max-iter", max_iter, "perturbation series cap");

  std::string field_path;
  bool auto_field = false, lift = false, emit_field = false;
  std::optional<std::uint64_t> seed;
  auto* morse = app.add_subcommand("morse", "discrete vector field reduction");
  add_input(morse);
  auto* fopt = morse->add_option("--field", field_path, "vector field JSON")->check(CLI::ExistingFile);
  auto* aopt = morse->add_flag("--auto", auto_field, "greedy collapse field");
  fopt->excludes(aopt);
  morse->add_option("--seed", seed, "shuffle the greedy search");
  morse->add_flag("--cover", lift, "lift the field to the universal cover");
  morse->add_flag("--emit-field", emit_field, "include the field in the output");
  morse->add_option("--max-cosets", c.max_cosets, "coset enumeration limit");

  int degree = 0;
  bool raw = false, assume_abelian = false, listing = false;
  auto* tw = app.add_subcommand("twisted-homology", "H_n of the universal cover as a Z[G]-module");
  add_input(tw);
  tw->add_option("--degree", degree, "degree n")->required();
  tw->add_flag("--raw", raw, "unsimplified presentation with the ideal relations");
  tw->add_flag("--assume-abelian", assume_abelian, "do not certify that π1 is abelian");
  tw->add_flag("--listing", listing, "print the module as text");
  tw->add_option("--max-cosets", c.max_cosets, "coset enumeration limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  try {
    if (*validate) {
      const SetPtr x = load(c.input);
      int euler = 0;
      for (int d = 0; d <= x->max_dim(); ++d)
        euler += (d % 2 ? -1 : 1) * static_cast<int>(x->count(d));
      emit(Json{{"valid", true},
                {"counts", counts(*x)},
                {"nondegenerate_simplices", x->total_count()},
                {"euler_characteristic", euler}});
    } else if (*pi1) {
      const SetPtr x = load(c.input);
      const MaximalTree t = maximal_tree(*x);
      const GroupPresentation p = pi1_presentation(*x, t);
      Json out{{"presentation", io::to_json(p)},
               {"simplified", io::to_json(simplify_presentation(p))},
               {"abelianization", abelian_invariants(p).str()}};
      if (!presentation_only) {
        const FiniteGroupTable g = todd_coxeter(p, c.max_cosets);
        out["order"] = g.order;
        out["group"] = io::to_json(g, with_table);
      }
      emit(out);
    } else if (*cov || *ucov) {
      const SetPtr x = load(c.input);
      CoverSet result;
      if (*cov && !chi_path.empty()) {
        const MaximalTree t = maximal_tree(*x);
        const GroupPresentation p = pi1_presentation(*x, t);
        auto chi = std::make_shared<const FiniteGroupTable>(
            io::parse_chi(io::parse_json(io::read_file(chi_path)), p));
        if (static_cast<std::size_t>(chi->order) > order_limit)
          throw GroupTooLargeOrInfinite("χ has order " + std::to_string(chi->order) +
                                        ", above the limit " + std::to_string(order_limit));
        result = cover(x, t, p, chi);
      } else if (*cov) {
        const MaximalTree t = maximal_tree(*x);
        const GroupPresentation p = pi1_presentation(*x, t);
        auto g = std::make_shared<const FiniteGroupTable>(todd_coxeter(p, c.max_cosets));
        if (static_cast<std::size_t>(g->order) > order_limit)
          throw GroupTooLargeOrInfinite("π1 has order " + std::to_string(g->order) +
                                        ", above the limit " + std::to_string(order_limit));
        result = cover(x, t, p, g);
      } else {
        result = universal_cover(x, c.max_cosets).cover;
      }
      emit(cover_document(result, summary), out_path);
      write_sidecar(result, sidecar_path);
    } else if (*hom) {
      const SetPtr x = load(c.input);
      emit(homology_block(truncate(homology_all(chain_of(x)), max_degree)));
    } else if (*chom) {
      const SetPtr x = load(c.input);
      Json out = Json::object();
      std::optional<std::vector<HomologyGroup>> direct, perturbed;
      if (via == "direct" || via == "both") {
        direct = truncate(homology_of_cover_direct(x, c.max_cosets), max_degree);
        out["direct"] = homology_block(*direct);
      }
      if (via == "perturbation" || via == "both") {
        CoverHomologyOptions o;
        o.max_cosets = c.max_cosets;
        o.max_iter = max_iter;
        o.equivalence = equivalence == "morse" ? EquivalenceKind::morse : EquivalenceKind::identity;
        perturbed = truncate(cover_homology_via_perturbation(x, o).homology, max_degree);
        out["perturbation"] = homology_block(*perturbed);
      }
      if (via == "dvf") {
        const ChainComplex cx = chain_of(x);
        const auto v = greedy_collapse_field(cx, simplicial_incidence(x));
        const auto r = cover_homology_via_dvf(x, v, c.max_cosets);
        out["dvf"] = homology_block(truncate(r.homology, max_degree));
        out["dvf"]["critical_cells"] = r.critical_cells;
      }
      if (via == "both") {
        out["agree"] = *direct == *perturbed;
        emit(out);
        if (*direct != *perturbed)
          throw OracleMismatch("direct " + format_homology(*direct) + " vs perturbation " +
                               format_homology(*perturbed));
        return 0;
      }
      emit(out);
    } else if (*morse) {
      const SetPtr x = load(c.input);
      const ChainComplex cx = chain_of(x);
      DiscreteVectorField v;
      if (!field_path.empty()) {
        v = io::parse_field(io::parse_json(io::read_file(field_path)), *x);
      } else if (auto_field) {
        std::mt19937_64 rng(seed.value_or(0));
        v = greedy_collapse_field(cx, simplicial_incidence(x), seed ? &rng : nullptr);
      } else {
        throw ValidationError("morse needs --field or --auto");
      }
      const auto problems = validate_dvf(cx, v);
      if (!problems.empty()) throw ValidationError("invalid vector field: " + problems.front());
      const auto cert = check_admissible(cx, v, simplicial_incidence(x));
      if (!cert.admissible) {
        std::string cyc;
        for (const auto& cell : cert.cycle) cyc += " " + cx.describe(cell);
        throw ValidationError("vector field is not admissible; V-path cycle through" + cyc);
      }
      const Reduction r = morse_reduction(cx, v);
      Json crit = Json::array();
      for (int d = 0; d <= cx.top_degree(); ++d) crit.push_back(critical_count(cx, v, d));
      int lambda = 0;
      for (const auto& [cell, l] : cert.lambda) lambda = std::max(lambda, l);
      Json out{{"vectors", v.vectors.size()},
               {"critical_cells", std::move(crit)},
               {"longest_path", lambda},
               {"critical_homology", homology_block(homology_all(r.bottom, cx.top_degree()))}};
      if (emit_field) out["field"] = io::to_json(v, *x);
      if (lift) {
        const auto ch = cover_homology_via_dvf(x, v, c.max_cosets);
        out["cover"] = Json{{"critical_cells", ch.critical_cells},
                            {"homology", homology_block(ch.homology)}};
      }
      emit(out);
    } else if (*tw) {
      const SetPtr x = load(c.input);
      TwistedOptions o;
      o.raw = raw;
      o.assume_abelian = assume_abelian;
      o.max_cosets = c.max_cosets;
      const TwistedHomology th = twisted_homology(x, degree, o);
      if (listing) {
        std::cout << th.presentation.listing() << "\n";
      } else {
        Json out = io::to_json(th.presentation);
        out["degree"] = degree;
        emit(out);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::internal);
  }
  return 0;
}
