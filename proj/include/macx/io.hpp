#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "macx/census.hpp"
#include "macx/combinatorics.hpp"
#include "macx/koszul.hpp"
#include "macx/massey.hpp"
#include "macx/simplicial.hpp"

namespace macx {

using Json = nlohmann::json;

std::string version();

/// Hex digest of the canonical form.
std::string fingerprint(const SimplicialComplex& k);

Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes text, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);
/// Two-space indented, trailing newline.
std::string dump(const Json& j);

// Complex: {"m": m, "facets": [[1-based]...]}.
SimplicialComplex complex_from_json(const Json& j);
Json complex_to_json(const SimplicialComplex& k);

// Graph: {"n": n, "edges": [[a, b]...]}.
Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);

// Building set: {"ground": n, "sets": [[...]...]}, singletons implied.
BuildingSet building_set_from_json(const Json& j);
Json building_set_to_json(const BuildingSet& b);

/// Complex format plus {"labels": {"1": [subset], ...}}.
Json nerve_to_json(const Nerve& n);

/// 1-based vertex list of a mask.
Json mask_to_json(Mask s);
Mask mask_from_json(const Json& j, int bound);

/// Cochains separated by newlines or ';'. Blank lines and '#' comments are
/// skipped.
std::vector<Cochain> parse_cochain_list(const std::string& text, std::shared_ptr<const SimplicialComplex> k,
                                        const Coefficients& field);

/// "nontrivial", "contains zero", "undefined" or "unresolved".
std::string verdict_label(const MasseyVerdict& v);
Json verdict_to_json(const MasseyVerdict& v);

Json betti_to_json(const BettiTable& t);

Json census_entry_to_json(const CensusEntry& e, CensusKind kind);
Json census_to_json(const CensusResult& c);

/// {"derived_by": "triple-massey oracle", "vertex_count": 6, "graphs": [...]}
/// with each graph as a canonical 1-based edge list.
Json catalog_to_json(const ObstructionCatalog& c);
/// Checks the provenance header and re-canonicalizes every edge list.
ObstructionCatalog catalog_from_json(const Json& j);

}  // namespace macx
