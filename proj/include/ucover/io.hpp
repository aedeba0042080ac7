#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucover/cover.hpp"
#include "ucover/effective.hpp"
#include "ucover/morse.hpp"
#include "ucover/simplicial.hpp"
#include "ucover/twisted.hpp"

namespace ucover::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// {"dimensions": {"0": [names…], …},
///  "faces": {name: [{"degeneracies": [j_k,…,j_1], "generator": name}, …]}}
/// Syntax errors raise ParseError with line and column; structural ones
/// raise ValidationError naming the offending generator.
SimplicialSet parse_simplicial_set(const std::string& text);
SimplicialSet read_simplicial_set(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);

Json to_json(const SimplicialSet& x);
/// Name ↦ (group element, base generator) for a cover's generators.
Json cover_sidecar(const CoverSet& c);

Json to_json(const HomologyGroup& h);
Json to_json(const std::vector<HomologyGroup>& hs);
Json to_json(const GroupPresentation& p);
Json to_json(const FiniteGroupTable& g, bool with_table);
Json to_json(const ModulePresentation& p);

/// A surjection from π₁ given as {"table": [[…]], "images": […]} or
/// {"permutations": […]}, one image per presentation generator (a list in
/// generator order or an object keyed by generator name).
FiniteGroupTable parse_chi(const Json& j, const GroupPresentation& p);

/// {"vectors": [[source, target], …]} with generator names; the cells
/// are those of chain_of(x).
DiscreteVectorField parse_field(const Json& j, const SimplicialSet& x);
Json to_json(const DiscreteVectorField& v, const SimplicialSet& x);

}  // namespace ucover::io
