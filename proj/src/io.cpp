#include "macx/io.hpp"

#include <fstream>
#include <sstream>

#include "macx/canonical.hpp"
#include "macx/errors.hpp"

#ifndef MACX_VERSION
#define MACX_VERSION "0.0.0"
#endif

namespace macx {

std::string version() { return MACX_VERSION; }

std::string fingerprint(const SimplicialComplex& k) { return canonical_form(k).fingerprint(); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

namespace {

bool flat(const Json& j, int depth) {
  if (!j.is_structured()) return true;
  if (!j.is_array() || depth == 0) return false;
  for (const auto& x : j)
    if (!flat(x, depth - 1)) return false;
  return true;
}

// Like dump(2), but arrays of scalars (or of short scalar arrays) stay on
// one line.
void write(std::ostream& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  if (flat(j, 2)) {
    out << j.dump();
    return;
  }
  const bool obj = j.is_object();
  out << (obj ? '{' : '[');
  if (j.empty()) {
    out << (obj ? '}' : ']');
    return;
  }
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out << (first ? "\n" : ",\n") << pad << "  ";
    first = false;
    if (obj) out << Json(it.key()).dump() << ": ";
    write(out, *it, indent + 2);
  }
  out << '\n' << pad << (obj ? '}' : ']');
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream out;
  write(out, j, 0);
  out << '\n';
  return out.str();
}

// ------------------------------------------------------------------ shapes

namespace {

template <class T>
T field_as(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string(what) + ": bad \"" + key + "\"");
  }
}

std::vector<std::vector<int>> int_lists(const Json& j, const char* key, const char* what) {
  return field_as<std::vector<std::vector<int>>>(j, key, what);
}

Mask to_mask(const std::vector<int>& xs, int bound, const char* what) {
  Mask s = 0;
  for (int x : xs) {
    if (x < 1 || x > bound) throw InputError(std::string(what) + ": vertex " + std::to_string(x) + " out of range");
    s |= bit(x - 1);
  }
  return s;
}

}  // namespace

Json mask_to_json(Mask s) {
  Json out = Json::array();
  for (int x : elements(s)) out.push_back(x + 1);
  return out;
}

Mask mask_from_json(const Json& j, int bound) {
  std::vector<int> xs;
  try {
    xs = j.get<std::vector<int>>();
  } catch (const Json::exception&) {
    throw InputError("expected a list of vertices");
  }
  return to_mask(xs, bound, "subset");
}

SimplicialComplex complex_from_json(const Json& j) {
  const int m = field_as<int>(j, "m", "complex");
  if (m < 0 || m > 64) throw InputError("complex: m must be in 0..64");
  std::vector<Mask> faces;
  for (const auto& f : int_lists(j, "facets", "complex")) faces.push_back(to_mask(f, m, "complex"));
  return SimplicialComplex(m, faces);
}

Json complex_to_json(const SimplicialComplex& k) {
  Json facets = Json::array();
  std::vector<Mask> sorted = k.facets();
  std::sort(sorted.begin(), sorted.end(), card_lex_less);
  for (Mask f : sorted) facets.push_back(mask_to_json(f));
  return Json{{"m", k.vertex_count()}, {"facets", facets}};
}

Graph graph_from_json(const Json& j) {
  const int n = field_as<int>(j, "n", "graph");
  if (n < 1 || n > 64) throw InputError("graph: n must be in 1..64");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : int_lists(j, "edges", "graph")) {
    if (e.size() != 2 || e[0] == e[1]) throw InputError("graph: every edge needs two distinct ends");
    to_mask(e, n, "graph");
    edges.emplace_back(e[0] - 1, e[1] - 1);
  }
  return Graph(n, edges);
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a + 1, b + 1});
  return Json{{"n", g.vertex_count()}, {"edges", edges}};
}

BuildingSet building_set_from_json(const Json& j) {
  const int ground = field_as<int>(j, "ground", "building set");
  if (ground < 1 || ground > 20) throw InputError("building set: ground must be in 1..20");
  std::vector<Mask> seeds;
  for (const auto& s : int_lists(j, "sets", "building set")) {
    if (s.empty()) throw InputError("building set: empty member");
    seeds.push_back(to_mask(s, ground, "building set"));
  }
  const BuildingSet b = building_set_closure(ground, seeds);
  std::vector<Mask> given = seeds;
  for (int v = 0; v < ground; ++v) given.push_back(bit(v));
  for (Mask s : b.sets())
    if (std::find(given.begin(), given.end(), s) == given.end())
      throw InputError("building set: not closed under unions of intersecting members (missing " +
                       mask_to_json(s).dump() + ")");
  return b;
}

Json building_set_to_json(const BuildingSet& b) {
  Json sets = Json::array();
  for (Mask s : b.sets())
    if (popcount(s) > 1) sets.push_back(mask_to_json(s));
  return Json{{"ground", b.ground()}, {"sets", sets}};
}

Json nerve_to_json(const Nerve& n) {
  Json out = complex_to_json(n.complex);
  Json labels = Json::object();
  for (std::size_t v = 0; v < n.labels.size(); ++v) labels[std::to_string(v + 1)] = mask_to_json(n.labels[v]);
  out["labels"] = labels;
  return out;
}

std::vector<Cochain> parse_cochain_list(const std::string& text, std::shared_ptr<const SimplicialComplex> k,
                                        const Coefficients& field) {
  std::vector<Cochain> out;
  std::string item;
  auto flush = [&] {
    const auto hash = item.find('#');
    if (hash != std::string::npos) item.erase(hash);
    if (item.find_first_not_of(" \t\r") != std::string::npos) out.push_back(parse_cochain(item, k, field));
    item.clear();
  };
  for (char ch : text) {
    if (ch == '\n' || ch == ';') {
      flush();
    } else {
      item += ch;
    }
  }
  flush();
  return out;
}

// ----------------------------------------------------------------- verdicts

std::string verdict_label(const MasseyVerdict& v) {
  if (!v.defined) return v.partial ? "unresolved" : "undefined";
  if (!v.contains_zero) return "unresolved";
  return *v.contains_zero ? "contains zero" : "nontrivial";
}

namespace {

Json position_json(Position p) { return Json::array({p.first, p.second}); }

}  // namespace

Json verdict_to_json(const MasseyVerdict& v) {
  Json out;
  out["order"] = v.order;
  out["verdict"] = verdict_label(v);
  out["defined"] = v.defined;
  out["contains_zero"] = v.contains_zero ? Json(*v.contains_zero) : Json(nullptr);
  out["representative"] = v.representative ? Json(v.representative->to_string()) : Json(nullptr);
  if (v.representative && !(v.contains_zero && *v.contains_zero)) {
    const auto mono = monomial_representative(*v.representative);
    out["monomial_representative"] = mono ? Json(mono->to_string()) : Json(nullptr);
  }
  out["resolution"] = v.resolution;
  out["partial"] = v.partial;
  out["undefined_stage"] = v.undefined_stage ? position_json(*v.undefined_stage) : Json(nullptr);
  if (v.certificate) {
    Json comps = Json::array();
    for (const auto& c : v.certificate->components)
      comps.push_back({{"position", position_json(c.position)},
                       {"multidegree", mask_to_json(c.multidegree)},
                       {"u_count", c.u_count},
                       {"cocycle_dim", c.cocycle_dim},
                       {"coboundary_dim", c.coboundary_dim}});
    out["certificate"] = {{"granted", true}, {"components", comps}};
  } else {
    out["certificate"] = {{"granted", false}};
  }
  if (v.system) {
    Json entries = Json::array();
    for (const auto& [p, c] : v.system->entries)
      entries.push_back({{"position", position_json(p)}, {"cochain", c.to_string()}});
    out["system"] = entries;
  }
  if (v.order == 3 && v.defined) {
    Json ind = Json::array();
    for (const auto& c : v.indeterminacy) ind.push_back(c.to_string());
    out["indeterminacy"] = ind;
  }
  if (v.f2_contains_zero) {
    out["f2_contains_zero"] = *v.f2_contains_zero;
    out["f2_class_count"] = v.f2_class_count ? Json(*v.f2_class_count) : Json(nullptr);
  }
  return out;
}

Json betti_to_json(const BettiTable& t) {
  Json out;
  out["coefficients"] = t.coefficients.name();
  out["m"] = t.m;
  out["strip_only"] = t.strip_only;
  out["fingerprint"] = t.fingerprint;
  Json big = Json::array();
  for (const auto& [ij, b] : t.bigraded) big.push_back({{"i", ij.first}, {"j", ij.second}, {"beta", b}});
  out["bigraded"] = big;
  if (!t.strip_only) out["totals"] = t.totals();
  if (!t.multigraded.empty()) {
    Json multi = Json::array();
    for (const auto& [key, b] : t.multigraded)
      multi.push_back({{"i", key.first}, {"subset", mask_to_json(key.second)}, {"beta", b}});
    out["multigraded"] = multi;
  }
  if (!t.torsion.empty()) {
    Json tor = Json::array();
    for (const auto& [ij, factors] : t.torsion) {
      Json fs = Json::array();
      for (const auto& f : factors) fs.push_back(f.get_str());
      tor.push_back({{"i", ij.first}, {"j", ij.second}, {"factors", fs}});
    }
    out["torsion"] = tor;
  }
  return out;
}

// ------------------------------------------------------------------- census

Json census_entry_to_json(const CensusEntry& e, CensusKind kind) {
  Json out = kind == CensusKind::graphs ? graph_to_json(one_skeleton(e.complex)) : complex_to_json(e.complex);
  out["fingerprint"] = e.fingerprint;
  if (e.flag) out["flag"] = *e.flag;
  if (e.obstruction) out["obstruction"] = *e.obstruction;
  if (e.obstruction_witness) out["obstruction_witness"] = mask_to_json(*e.obstruction_witness);
  if (e.triple_massey) out["triple_massey"] = *e.triple_massey;
  return out;
}

Json census_to_json(const CensusResult& c) {
  Json objects = Json::array();
  for (const auto& e : c.entries) objects.push_back(census_entry_to_json(e, c.kind));
  return Json{{"kind", c.kind == CensusKind::graphs ? "graphs" : "spheres"},
              {"vertex_count", c.vertex_count},
              {"count", c.entries.size()},
              {"objects", objects}};
}

Json catalog_to_json(const ObstructionCatalog& c) {
  Json graphs = Json::array();
  for (std::uint16_t code : c.codes) {
    Json edges = Json::array();
    for (auto [a, b] : graph_from_six_vertex_code(code).edges()) edges.push_back({a + 1, b + 1});
    graphs.push_back(edges);
  }
  return Json{{"derived_by", "triple-massey oracle"}, {"vertex_count", 6}, {"graphs", graphs}};
}

ObstructionCatalog catalog_from_json(const Json& j) {
  if (field_as<std::string>(j, "derived_by", "catalog") != "triple-massey oracle")
    throw InputError("catalog: unknown provenance");
  if (field_as<int>(j, "vertex_count", "catalog") != 6) throw InputError("catalog: vertex_count must be 6");
  if (!j.contains("graphs") || !j.at("graphs").is_array()) throw InputError("catalog: missing \"graphs\"");
  ObstructionCatalog out;
  for (const auto& g : j.at("graphs")) {
    std::vector<std::pair<int, int>> edges;
    try {
      for (const auto& e : g.get<std::vector<std::vector<int>>>()) {
        if (e.size() != 2 || e[0] == e[1]) throw InputError("catalog: bad edge");
        to_mask(e, 6, "catalog");
        edges.emplace_back(e[0] - 1, e[1] - 1);
      }
    } catch (const Json::exception&) {
      throw InputError("catalog: graphs must be edge lists");
    }
    out.codes.push_back(six_vertex_code(Graph(6, edges)));
  }
  std::sort(out.codes.begin(), out.codes.end());
  out.codes.erase(std::unique(out.codes.begin(), out.codes.end()), out.codes.end());
  return out;
}

}  // namespace macx
