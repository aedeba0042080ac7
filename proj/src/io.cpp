#include "ucover/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ucover/errors.hpp"

namespace ucover::io {

namespace {

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a string");
  return j.get<std::string>();
}

Simplex parse_face(const Json& d, const std::map<std::string, std::pair<int, int>>& dims,
                   int face_dim,
                   const std::string& where) {
  if (!d.is_object()) throw ValidationError(where + ": a face must be an object");
  std::vector<int> word;
  if (d.contains("degeneracies")) {
    const Json& w = d.at("degeneracies");
    if (!w.is_array()) throw ValidationError(where + ": degeneracies must be a list");
    for (const auto& e : w) word.push_back(as_int(e, where));
  }
  if (!DegeneracyWord::is_canonical(word))
    throw ValidationError(where + ": degeneracy word is not strictly decreasing");
  const std::string name = as_string(member(d, "generator", where), where);
  auto it = dims.find(name);
  if (it == dims.end()) throw ValidationError(where + ": unknown generator " + name);
  const auto [gdim, index] = it->second;
  if (gdim + static_cast<int>(word.size()) != face_dim)
    throw ValidationError(where + ": face " + name + " with " +
                          std::to_string(word.size()) + " degeneracies has dimension " +
                          std::to_string(gdim + static_cast<int>(word.size())) +
                          ", expected " + std::to_string(face_dim));
  // innermost index first: s_j on a k-simplex needs 0 ≤ j ≤ k
  for (std::size_t i = 0; i < word.size(); ++i) {
    const int j = word[word.size() - 1 - i];
    if (j < 0 || j > gdim + static_cast<int>(i))
      throw ValidationError(where + ": degeneracy index " + std::to_string(j) +
                            " out of range");
  }
  return Simplex{DegeneracyWord(word), gdim, index};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string what = e.what();
    const auto colon = what.find("]: ");
    if (colon != std::string::npos) what = what.substr(colon + 3);
    throw ParseError("JSON syntax error at " + location(text, e.byte ? e.byte - 1 : 0) +
                     ": " + what);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SimplicialSet parse_simplicial_set(const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("top level must be an object");
  const Json& dims_j = member(j, "dimensions", "simplicial set");
  if (!dims_j.is_object()) throw ValidationError("\"dimensions\" must be an object");
  const Json empty = Json::object();
  const Json& faces_j = j.contains("faces") ? j.at("faces") : empty;
  if (!faces_j.is_object()) throw ValidationError("\"faces\" must be an object");

  std::map<int, std::vector<std::string>> levels;
  std::map<std::string, std::pair<int, int>> dims;  // name -> (dim, index)
  for (const auto& [key, names] : dims_j.items()) {
    int d = -1;
    try {
      std::size_t used = 0;
      d = std::stoi(key, &used);
      if (used != key.size()) d = -1;
    } catch (const std::exception&) {
    }
    if (d < 0) throw ValidationError("dimension key \"" + key + "\" is not a nonnegative integer");
    if (!names.is_array()) throw ValidationError("dimension " + key + ": expected a list of names");
    for (const auto& n : names) {
      const std::string name = as_string(n, "dimension " + key);
      const int index = static_cast<int>(levels[d].size());
      if (!dims.emplace(name, std::make_pair(d, index)).second)
        throw ValidationError("duplicate generator name " + name);
      levels[d].push_back(name);
    }
  }
  for (const auto& [name, f] : faces_j.items())
    if (!dims.count(name)) throw ValidationError("faces given for unknown generator " + name);

  SimplicialSetBuilder b;
  for (const auto& [d, names] : levels) {
    for (const auto& name : names) {
      std::vector<Simplex> faces;
      const std::string where = "generator " + name;
      if (d > 0) {
        if (!faces_j.contains(name)) throw ValidationError(where + ": missing faces");
        const Json& fl = faces_j.at(name);
        if (!fl.is_array() || fl.size() != static_cast<std::size_t>(d + 1))
          throw ValidationError(where + ": needs a list of " + std::to_string(d + 1) +
                                " faces");
        for (std::size_t i = 0; i < fl.size(); ++i)
          faces.push_back(parse_face(fl[i], dims, d - 1,
                                     where + ", face " + std::to_string(i)));
      } else if (faces_j.contains(name) && !faces_j.at(name).empty()) {
        throw ValidationError(where + ": a vertex has no faces");
      }
      b.add(d, name, std::move(faces));
    }
  }
  SimplicialSet x = std::move(b).build();
  const auto problems = validate_simplicial(x);
  if (!problems.empty())
    throw ValidationError("simplicial identities fail: " + problems.front().message +
                          (problems.size() > 1
                               ? " (and " + std::to_string(problems.size() - 1) + " more)"
                               : ""));
  return x;
}

SimplicialSet read_simplicial_set(const std::filesystem::path& path) {
  try {
    return parse_simplicial_set(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

Json to_json(const SimplicialSet& x) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  Json dims = Json::object();
  Json faces = Json::object();
  for (int d = 0; d <= x.max_dim(); ++d) {
    Json names = Json::array();
    for (int g = 0; g < static_cast<int>(x.count(d)); ++g) {
      names.push_back(x.name(d, g));
      if (d == 0) continue;
      Json fl = Json::array();
      for (const auto& f : x.generator_faces(d, g))
        fl.push_back(Json{{"degeneracies", f.degeneracies.indices()},
                          {"generator", x.name(f.generator_dim, f.generator)}});
      faces[x.name(d, g)] = std::move(fl);
    }
    dims[std::to_string(d)] = std::move(names);
  }
  out["dimensions"] = std::move(dims);
  out["faces"] = std::move(faces);
  return out;
}

Json cover_sidecar(const CoverSet& c) {
  Json gens = Json::array();
  for (int d = 0; d <= c.set.max_dim(); ++d)
    for (int i = 0; i < static_cast<int>(c.set.count(d)); ++i) {
      const auto [h, s] = c.component(d, i);
      gens.push_back(Json{{"name", c.set.name(d, i)},
                          {"dimension", d},
                          {"group_element", h},
                          {"base", c.base->name(d, s)}});
    }
  return Json{{"schema_version", kSchemaVersion},
              {"group_order", c.group->order},
              {"generators", std::move(gens)}};
}

Json to_json(const HomologyGroup& h) {
  Json t = Json::array();
  for (const auto& z : h.torsion) {
    if (z.fits_slong_p())
      t.push_back(z.get_si());
    else
      t.push_back(z.get_str());
  }
  return Json{{"degree", h.degree}, {"betti", h.betti}, {"torsion", std::move(t)},
              {"text", h.str()}};
}

Json to_json(const std::vector<HomologyGroup>& hs) {
  Json out = Json::array();
  for (const auto& h : hs) out.push_back(to_json(h));
  return out;
}

Json to_json(const GroupPresentation& p) {
  Json rels = Json::array();
  for (const auto& r : p.relators)
    if (!r.empty()) rels.push_back(p.format_word(r));
  return Json{{"generators", p.generators}, {"relators", std::move(rels)}, {"text", p.str()}};
}

Json to_json(const FiniteGroupTable& g, bool with_table) {
  Json out{{"order", g.order}, {"generator_images", g.word_images}};
  if (with_table) out["table"] = g.mul;
  return out;
}

Json to_json(const ModulePresentation& p) {
  return Json{{"ring", p.algebra->ring_description()},
              {"variables", p.algebra->ring.names()},
              {"ambient_rank", p.ambient_rank},
              {"relations", p.relation_strings()},
              {"trivial", module_is_trivial(p)}};
}

FiniteGroupTable parse_chi(const Json& j, const GroupPresentation& p) {
  const std::size_t ng = p.generators.size();
  // images in presentation-generator order from a list or a name-keyed object
  auto per_generator = [&](const Json& v, const char* what) {
    std::vector<Json> out(ng);
    if (v.is_array()) {
      if (v.size() != ng)
        throw ValidationError(std::string(what) + ": expected " + std::to_string(ng) +
                              " entries, one per generator of " + p.str());
      for (std::size_t i = 0; i < ng; ++i) out[i] = v[i];
    } else if (v.is_object()) {
      for (std::size_t i = 0; i < ng; ++i) {
        if (!v.contains(p.generators[i]))
          throw ValidationError(std::string(what) + ": no entry for generator " +
                                p.generators[i]);
        out[i] = v.at(p.generators[i]);
      }
    } else {
      throw ValidationError(std::string(what) + " must be a list or an object");
    }
    return out;
  };

  FiniteGroupTable g;
  if (j.contains("permutations")) {
    std::vector<std::vector<int>> perms;
    for (const auto& v : per_generator(j.at("permutations"), "permutations")) {
      if (!v.is_array()) throw ValidationError("a permutation must be a list of integers");
      std::vector<int> perm;
      for (const auto& e : v) perm.push_back(as_int(e, "permutation"));
      perms.push_back(std::move(perm));
    }
    if (perms.empty()) throw ValidationError("no generators to map");
    g = FiniteGroupTable::from_permutations(perms, kMaxTableOrder);
  } else if (j.contains("table")) {
    const Json& t = j.at("table");
    if (!t.is_array()) throw ValidationError("table must be a list of rows");
    std::vector<std::vector<int>> mul;
    for (const auto& row : t) {
      if (!row.is_array()) throw ValidationError("table rows must be lists");
      std::vector<int> r;
      for (const auto& e : row) r.push_back(as_int(e, "table entry"));
      mul.push_back(std::move(r));
    }
    std::vector<int> images;
    for (const auto& v : per_generator(member(j, "images", "chi"), "images"))
      images.push_back(as_int(v, "image"));
    g = FiniteGroupTable::from_table(std::move(mul), std::move(images));
  } else {
    throw ValidationError("chi needs \"permutations\" or \"table\" and \"images\"");
  }
  const auto problems = g.check(p.relators);
  if (!problems.empty())
    throw TwistingViolation("χ does not respect the presentation: " + problems.front());
  return g;
}

DiscreteVectorField parse_field(const Json& j, const SimplicialSet& x) {
  const Json& vs = member(j, "vectors", "field");
  if (!vs.is_array()) throw ValidationError("\"vectors\" must be a list");
  DiscreteVectorField out;
  auto cell = [&](const Json& n) {
    const std::string name = as_string(n, "vector");
    const auto f = x.find(name);
    if (!f) throw ValidationError("vector names unknown generator " + name);
    return make_cell(f->first, {f->second});
  };
  for (const auto& v : vs) {
    if (v.is_array() && v.size() == 2) {
      out.vectors.emplace_back(cell(v[0]), cell(v[1]));
    } else if (v.is_object()) {
      out.vectors.emplace_back(cell(member(v, "source", "vector")),
                               cell(member(v, "target", "vector")));
    } else {
      throw ValidationError("a vector is [source, target] or {\"source\", \"target\"}");
    }
  }
  return out;
}

Json to_json(const DiscreteVectorField& v, const SimplicialSet& x) {
  Json vs = Json::array();
  for (const auto& [s, t] : v.vectors)
    vs.push_back(Json::array({x.name(s.degree, static_cast<int>(s.key.at(0))),
                              x.name(t.degree, static_cast<int>(t.key.at(0)))}));
  return Json{{"vectors", std::move(vs)}};
}

}  // namespace ucover::io
