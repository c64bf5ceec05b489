// Command-line front end.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "macx/canonical.hpp"
#include "macx/census.hpp"
#include "macx/combinatorics.hpp"
#include "macx/errors.hpp"
#include "macx/io.hpp"
#include "macx/koszul.hpp"
#include "macx/massey.hpp"
#include "macx/parallel.hpp"

using namespace macx;

namespace {

struct Common {
  int threads = 0;
  std::string coeff = "rational";
  std::string out;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
  } else {
    write_text_file(c.out, text);
  }
}

Json header(const std::string& command) { return Json{{"tool", "macx"}, {"version", version()}, {"command", command}}; }

std::shared_ptr<const SimplicialComplex> load_complex(const std::string& path) {
  return std::make_shared<const SimplicialComplex>(complex_from_json(read_json_file(path)));
}

// ------------------------------------------------------------------ nerve

struct PolytopeChoice {
  std::string graph_file, building_set_file;
  int pcube = 0, permutohedron = 0, associahedron = 0, cyclohedron = 0, stellahedron = 0;
};

void add_polytope_options(CLI::App* cmd, PolytopeChoice& p) {
  auto* g = cmd->add_option("--graph", p.graph_file, "graph JSON; graphical building set");
  auto* b = cmd->add_option("--building-set", p.building_set_file, "building set JSON");
  auto* pc = cmd->add_option("--pcube", p.pcube, "the 2-truncated cube P^n")->check(CLI::Range(2, 12));
  auto* pe = cmd->add_option("--permutohedron", p.permutohedron, "permutohedron of dimension n")->check(CLI::Range(1, 8));
  auto* as = cmd->add_option("--associahedron", p.associahedron, "associahedron of dimension n")->check(CLI::Range(1, 15));
  auto* cy = cmd->add_option("--cyclohedron", p.cyclohedron, "cyclohedron of dimension n")->check(CLI::Range(2, 10));
  auto* st = cmd->add_option("--stellahedron", p.stellahedron, "stellahedron of dimension n")->check(CLI::Range(1, 10));
  std::vector<CLI::Option*> all{g, b, pc, pe, as, cy, st};
  for (auto* x : all)
    for (auto* y : all)
      if (x != y) x->excludes(y);
}

// The building set and the base it is truncated from.
struct Source {
  BuildingSet target;
  BuildingSet base;
  std::string name;
};

Source source_of(const PolytopeChoice& p) {
  auto graphical = [](const Graph& g, std::string name) {
    return Source{graphical_building_set(g), simplex_building_set(g.vertex_count()), std::move(name)};
  };
  if (!p.graph_file.empty()) return graphical(graph_from_json(read_json_file(p.graph_file)), "graph");
  if (!p.building_set_file.empty()) {
    BuildingSet b = building_set_from_json(read_json_file(p.building_set_file));
    if (!b.connected()) throw InputError("building set is not connected");
    BuildingSet base = simplex_building_set(b.ground());
    return Source{b, base, "building-set"};
  }
  if (p.pcube) return Source{pn_building_set(p.pcube), cube_building_set(p.pcube + 1), "pcube"};
  if (p.permutohedron) return graphical(complete_graph(p.permutohedron + 1), "permutohedron");
  if (p.associahedron) return graphical(path_graph(p.associahedron + 1), "associahedron");
  if (p.cyclohedron) return graphical(cycle_graph(p.cyclohedron + 1), "cyclohedron");
  if (p.stellahedron) return graphical(star_graph(p.stellahedron + 1), "stellahedron");
  throw InputError("choose one of --graph, --building-set, --pcube, --permutohedron, --associahedron, "
                   "--cyclohedron, --stellahedron");
}

Nerve build_nerve(const Source& s, const std::string& via, bool check_both) {
  if (!s.target.connected()) throw InputError("building set is not connected");
  Nerve nested = nerve_of_nestohedron(s.target);
  if (!check_both && via == "nested-sets") return nested;
  Nerve truncated = nerve_via_truncations(s.base, s.target);
  if (check_both &&
      (truncated.labels != nested.labels || !(canonical_form(truncated.complex) == canonical_form(nested.complex))))
    throw ConsistencyError("nested-set and truncation nerves differ");
  return via == "truncations" ? truncated : nested;
}

// ------------------------------------------------------------------ massey

std::vector<Cochain> classes_from(const std::vector<std::string>& texts, const std::string& file,
                                  const std::shared_ptr<const SimplicialComplex>& k, const Coefficients& f) {
  std::vector<Cochain> out;
  if (!file.empty()) out = parse_cochain_list(read_text_file(file), k, f);
  for (const auto& t : texts) out.push_back(parse_cochain(t, k, f));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Moment-angle complexes, Koszul cohomology and Massey products"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "worker threads (default: MACX_THREADS or hardware)")
      ->check(CLI::PositiveNumber);
  app.add_option("--coeff", common.coeff, "rational | f2 | fp:<p> | int");
  app.add_option("-o,--out", common.out, "output file (default stdout)");

  // nerve
  auto* nerve = app.add_subcommand("nerve", "nerve of a nestohedron");
  PolytopeChoice nerve_p;
  std::string via = "nested-sets";
  bool check_both = false;
  add_polytope_options(nerve, nerve_p);
  nerve->add_option("--via", via, "construction path")->check(CLI::IsMember({"nested-sets", "truncations"}));
  nerve->add_flag("--check-both", check_both, "build both ways and compare");

  // betti
  auto* betti = app.add_subcommand("betti", "bigraded Betti numbers via Hochster's formula");
  std::string betti_complex, format = "tsv";
  bool strip = false, duality = false, multigraded = false;
  int cap = 24;
  betti->add_option("complex", betti_complex, "complex JSON")->required();
  betti->add_flag("--strip", strip, "only beta^{-i,2(i+1)}");
  betti->add_flag("--check-duality", duality, "Poincare duality report");
  betti->add_flag("--multigraded", multigraded, "include per-subset numbers (JSON)");
  betti->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
  betti->add_option("--cap", cap, "largest m for the full table")->check(CLI::PositiveNumber);

  // cohomology
  auto* coh = app.add_subcommand("cohomology", "reduced cohomology of one induced subcomplex");
  std::string coh_complex, coh_subset;
  coh->add_option("complex", coh_complex, "complex JSON")->required();
  coh->add_option("--subset", coh_subset, "1-based vertices, comma separated (default: all)");

  // massey
  auto* massey = app.add_subcommand("massey", "Massey products of Koszul cocycles");
  std::string massey_complex, classes_file;
  std::vector<std::string> class_texts;
  int order = 0, canonical_pcube = 0;
  bool pe3 = false;
  massey->add_option("complex", massey_complex, "complex JSON");
  massey->add_option("--classes", classes_file, "file of cochains, one per line");
  massey->add_option("--class", class_texts, "cochain text (repeatable)");
  massey->add_option("--order", order, "number of classes")->check(CLI::Range(2, 64));
  massey->add_option("--canonical-pcube", canonical_pcube, "classes v_i u_{n+i} on P^n")->check(CLI::Range(2, 8));
  massey->add_flag("--pe3-example", pe3, "the four classes on the 3-permutohedron");
  MasseyOptions massey_options;
  massey->add_option("--retries", massey_options.random_retries, "random defining-system retries");
  massey->add_option("--seed", massey_options.seed);

  // obstructions
  auto* obs = app.add_subcommand("obstructions", "six-vertex obstruction detector");
  std::string obs_complex, catalog_file, reading = "one-skeleton";
  bool obs_verify = false;
  obs->add_option("complex", obs_complex, "complex JSON")->required();
  obs->add_option("--catalog", catalog_file, "catalog JSON (default: derive)");
  obs->add_option("--reading", reading)->check(CLI::IsMember({"one-skeleton", "strict"}));
  obs->add_flag("--verify", obs_verify, "also run the direct triple-product search");

  // census
  auto* census = app.add_subcommand("census", "isomorphism classes of 2-spheres or graphs");
  int spheres = 0, graphs = 0;
  bool derive = false, scan = false;
  std::string emit_dir, census_catalog;
  auto* so = census->add_option("--spheres", spheres, "2-spheres on v vertices")->check(CLI::Range(4, 8));
  auto* go = census->add_option("--graphs", graphs, "graphs on v vertices")->check(CLI::Range(1, 6));
  auto* dflag = census->add_flag("--derive-obstructions", derive, "derive the six-vertex catalog");
  so->excludes(go)->excludes(dflag);
  go->excludes(dflag);
  census->add_flag("--scan-massey", scan, "annotate spheres with the obstruction scan");
  census->add_option("--catalog", census_catalog, "catalog JSON for --scan-massey");
  census->add_option("--emit-dir", emit_dir, "write one file per object");

  // certify-2tc
  auto* cert = app.add_subcommand("certify-2tc", "2-truncated cube certificate");
  PolytopeChoice cert_p;
  add_polytope_options(cert, cert_p);

  // stats
  auto* stats = app.add_subcommand("stats", "special subgraphs of a graph");
  std::string stats_graph;
  int chain = 0;
  stats->add_option("--graph", stats_graph, "graph JSON");
  stats->add_option("--chain", chain, "path on n vertices")->check(CLI::Range(1, 30));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Coefficients field = Coefficients::parse(common.coeff);
  const int threads = thread_count(common.threads);

  if (*nerve) {
    const Source s = source_of(nerve_p);
    const Nerve n = build_nerve(s, via, check_both);
    Json out = header("nerve");
    out.update(nerve_to_json(n));
    out["fingerprint"] = fingerprint(n.complex);
    out["polytope"] = s.name;
    out["via"] = via;
    out["input"] = building_set_to_json(s.target);
    emit(common, dump(out));
    return 0;
  }

  if (*betti) {
    const auto k = load_complex(betti_complex);
    HochsterOptions o;
    o.strip_only = strip;
    o.multigraded = multigraded;
    o.cap = cap;
    o.threads = threads;
    BettiTable t = hochster_betti_table(*k, field, o);
    std::optional<PoincareReport> report;
    if (duality) report = poincare_duality_check(*k, field, o);
    if (format == "json") {
      Json out = header("betti");
      out.update(betti_to_json(t));
      if (report) {
        out["duality"] = {{"symmetric", report->symmetric},
                          {"dimension", report->dimension},
                          {"totals", report->totals},
                          {"first_violation", report->first_violation ? Json(*report->first_violation) : Json()}};
      }
      emit(common, dump(out));
    } else {
      std::ostringstream s;
      s << "# macx " << version() << "\n";
      s << t.to_tsv();
      if (report) {
        s << "# duality dimension " << report->dimension << " " << (report->symmetric ? "symmetric" : "NOT symmetric");
        if (report->first_violation) s << " first violation at degree " << *report->first_violation;
        s << "\n";
      }
      emit(common, s.str());
    }
    return 0;
  }

  if (*coh) {
    const auto k = load_complex(coh_complex);
    Mask j = low_bits(k->vertex_count());
    if (!coh_subset.empty()) {
      std::vector<int> xs;
      std::stringstream ss(coh_subset);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          xs.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw InputError("bad vertex '" + tok + "' in --subset");
        }
      }
      j = mask_from_json(Json(xs), k->vertex_count());
    }
    const auto sub = induced_subcomplex(*k, j);
    const HomologySummary h = reduced_cohomology(sub.complex, field);
    Json out = header("cohomology");
    out["fingerprint"] = fingerprint(*k);
    out["coefficients"] = field.name();
    out["subset"] = mask_to_json(j);
    Json degrees = Json::array();
    const int size = popcount(j);
    for (std::size_t d = 0; d < h.rank.size(); ++d) {
      const int deg = static_cast<int>(d) - 1;
      Json row{{"degree", deg}, {"rank", h.rank[d]}, {"bigraded_i", size - deg - 1}};
      if (d < h.torsion.size() && !h.torsion[d].empty()) {
        Json fs = Json::array();
        for (const auto& f : h.torsion[d]) fs.push_back(f.get_str());
        row["torsion"] = fs;
      }
      degrees.push_back(row);
    }
    out["reduced_cohomology"] = degrees;
    emit(common, dump(out));
    return 0;
  }

  if (*massey) {
    std::vector<Cochain> classes;
    std::string fp;
    if (canonical_pcube) {
      classes = canonical_P_classes(canonical_pcube, field);
      fp = fingerprint(*classes[0].complex());
    } else if (pe3) {
      const auto ex = solve_pe3_labeling();
      if (!ex) throw ConsistencyError("no labeling of the 3-permutohedron fits the example");
      for (const auto& c : ex->classes) classes.push_back(change_field(c, field));
      fp = fingerprint(*ex->complex);
    } else {
      if (massey_complex.empty()) throw InputError("massey needs a complex file (or --canonical-pcube / --pe3-example)");
      const auto k = load_complex(massey_complex);
      classes = classes_from(class_texts, classes_file, k, field);
      fp = fingerprint(*k);
    }
    if (order && order != static_cast<int>(classes.size()))
      throw InputError("--order " + std::to_string(order) + " but " + std::to_string(classes.size()) + " classes given");
    const MasseyVerdict v = higher_massey(classes, massey_options);
    Json out = header("massey");
    out["fingerprint"] = fp;
    out["coefficients"] = field.name();
    Json inputs = Json::array();
    for (const auto& c : classes) inputs.push_back(c.to_string());
    out["classes"] = inputs;
    out.update(verdict_to_json(v));
    emit(common, dump(out));
    return 0;
  }

  if (*obs) {
    const auto k = load_complex(obs_complex);
    const ObstructionCatalog catalog =
        catalog_file.empty() ? derive_obstruction_catalog(threads) : catalog_from_json(read_json_file(catalog_file));
    const auto mode = reading == "strict" ? ObstructionReading::strict : ObstructionReading::one_skeleton;
    const ObstructionWitness w = detect_obstruction(*k, catalog, mode);
    Json out = header("obstructions");
    out["fingerprint"] = fingerprint(*k);
    out["reading"] = reading;
    out["found"] = w.found;
    if (w.found) {
      out["witness"] = mask_to_json(w.vertices);
      out["induced"] = complex_to_json(induced_subcomplex(*k, w.vertices).complex);
    }
    if (obs_verify) {
      const auto t = find_nontrivial_triple(*k, Coefficients::rationals(), threads);
      out["triple_massey"] = t.has_value();
      if (t) {
        Json pairs = Json::array();
        for (auto [a, b] : t->pairs) pairs.push_back({a + 1, b + 1});
        out["triple_pairs"] = pairs;
      }
      if (t.has_value() != w.found) {
        emit(common, dump(out));
        throw ConsistencyError("detector and triple-product search disagree");
      }
    }
    emit(common, dump(out));
    return 0;
  }

  if (*census) {
    if (derive) {
      const ObstructionCatalog c = derive_obstruction_catalog(threads);
      Json out = catalog_to_json(c);
      out["version"] = version();
      out["count"] = c.codes.size();
      emit(common, dump(out));
      return 0;
    }
    if (!spheres && !graphs) throw InputError("census needs --spheres, --graphs or --derive-obstructions");
    if (scan && !spheres) throw InputError("--scan-massey applies to --spheres");
    CensusResult r = spheres ? enumerate_2spheres(spheres, threads) : enumerate_graphs(graphs, threads);
    if (scan) {
      const ObstructionCatalog c = census_catalog.empty() ? derive_obstruction_catalog(threads)
                                                          : catalog_from_json(read_json_file(census_catalog));
      r = scan_spheres_for_massey(r, c, threads);
    }
    Json out = header("census");
    out.update(census_to_json(r));
    if (scan) {
      int positives = 0;
      for (const auto& e : r.entries) positives += e.triple_massey.value_or(false);
      out["massey_positive"] = positives;
    }
    if (!emit_dir.empty()) {
      for (std::size_t i = 0; i < r.entries.size(); ++i) {
        Json one = header("census");
        one.update(census_entry_to_json(r.entries[i], r.kind));
        std::ostringstream name;
        name << (spheres ? "sphere" : "graph") << "_" << r.vertex_count << "_" << (i + 1) << ".json";
        write_text_file(std::filesystem::path(emit_dir) / name.str(), dump(one));
      }
    }
    emit(common, dump(out));
    return 0;
  }

  if (*cert) {
    const Source s = source_of(cert_p);
    const TwoTruncatedCertificate c = two_truncated_cube_certificate(s.target);
    Json out = header("certify-2tc");
    out["input"] = building_set_to_json(s.target);
    out["fingerprint"] = fingerprint(nerve_of_nestohedron(s.target).complex);
    out["success"] = c.success;
    if (c.success) {
      if (!validate_certificate(s.target, c)) throw ConsistencyError("certificate failed to replay");
      Json base = Json::array();
      for (Mask b : c.base) base.push_back(mask_to_json(b));
      Json steps = Json::array();
      for (const auto& st : c.steps)
        steps.push_back({{"added", mask_to_json(st.added)},
                         {"left", mask_to_json(st.left)},
                         {"right", mask_to_json(st.right)}});
      out["base"] = base;
      out["steps"] = steps;
      out["validated"] = true;
    } else {
      Json wit = Json::array();
      for (Mask w : c.witness) wit.push_back(mask_to_json(w));
      out["witness"] = wit;
    }
    emit(common, dump(out));
    return 0;
  }

  if (*stats) {
    if (stats_graph.empty() == (chain == 0)) throw InputError("stats needs exactly one of --graph, --chain");
    const Graph g = chain ? path_graph(chain) : graph_from_json(read_json_file(stats_graph));
    const SpecialSubgraphStats st = special_subgraph_stats(g);
    Json out = header("stats");
    out["graph"] = graph_to_json(g);
    out["i_max"] = st.i_max;
    out["s"] = st.s;
    Json specials = Json::array();
    for (Mask m : st.specials) specials.push_back(mask_to_json(m));
    out["specials"] = specials;
    emit(common, dump(out));
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n"
              << "hint: raise --cap, use --strip, or restrict to a smaller complex\n";
    return 3;
  } catch (const ConsistencyError& e) {
    std::cerr << "cross-validation failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
