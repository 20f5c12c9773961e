// Command-line front end. Every subcommand prints one JSON document on
// stdout (or a text rendering with --format text). Exit status: 0 on
// success, 1 when a verification reports a failure, 2 on bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "cgt/baumslag_solitar.hpp"
#include "cgt/completion.hpp"
#include "cgt/ends.hpp"
#include "cgt/families.hpp"
#include "cgt/groups.hpp"
#include "cgt/subgroups.hpp"
#include "cgt/suite.hpp"
#include "cgt/thompson.hpp"

using nlohmann::json;
using namespace cgt;

namespace {

struct Common {
  std::string format = "json";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [k, sub] : v.items()) flatten(sub, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array() && !v.empty() && !std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); })) {
    for (size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else if (v.is_array()) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    out.emplace_back(path, s);
  } else {
    out.emplace_back(path, scalar_text(v));
  }
}

std::string render_text(const json& doc) {
  std::ostringstream out;
  if (doc.contains("records") && doc.contains("summary")) {
    size_t width = 2;
    for (const auto& r : doc["records"]) width = std::max(width, r["id"].get<std::string>().size());
    out << "suite " << doc["suite"].get<std::string>() << "  seed " << doc["seed"].dump() << "\n";
    for (const auto& r : doc["records"]) {
      out << std::left << std::setw(8) << r["outcome"].get<std::string>() << std::setw(static_cast<int>(width) + 2)
          << r["id"].get<std::string>();
      if (r.contains("witness")) out << r["witness"].get<std::string>();
      out << "\n";
    }
    const auto& s = doc["summary"];
    out << "total " << s["total"] << ", pass " << s["pass"] << ", fail " << s["fail"] << ", unknown " << s["unknown"]
        << "\n";
    return out.str();
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  size_t width = 0;
  for (const auto& [k, _] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  return out.str();
}

int emit(const Common& c, const json& doc, bool ok = true) {
  if (c.format == "text") {
    std::cout << render_text(doc);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

std::vector<size_t> parse_radii(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(static_cast<size_t>(v));
    } catch (const std::logic_error&) {
      throw ContractError("bad radius '" + item + "'");
    }
  }
  if (out.empty()) throw ContractError("empty radius list");
  return out;
}

// Subgroup argument: `G`, `1`, `A<m>` (Thompson), or a comma-separated generator list.
SubgroupHandle subgroup_arg(const ContextPtr& ctx, const std::string& text) {
  const auto nodes = parse_nodes(ctx, text);
  if (nodes.size() != 1) throw ContractError("expected one subgroup, got '" + text + "'");
  return nodes[0];
}

std::string tri_text(Tri t) { return std::string(to_string(t)); }

json group_json(const GroupContext& ctx) {
  json j{{"name", ctx.name()}, {"oracle", std::string(to_string(ctx.oracle()))}};
  const auto& p = ctx.presentation();
  if (p.is_finite()) {
    j["generators"] = p.alphabet.names();
    json rels = json::array();
    for (const Word& r : p.relators) rels.push_back(ctx.format(r));
    j["relators"] = rels;
    const auto ab = abelianization(p);
    j["abelianization"] = {{"free_rank", ab.free_rank}, {"torsion", ab.torsion}};
  } else {
    j["schema"] = "thompson";
  }
  if (auto o = ctx.order()) {
    j["order"] = *o;
  } else {
    j["order"] = nullptr;
  }
  return j;
}

json comm_json(const GroupContext& ctx, const CommensurabilityResult& c) {
  (void)ctx;
  json j{{"result", tri_text(c.result)}, {"certificate", c.certificate}};
  j["indices"] = {{"in_h", c.index_in_h ? json(*c.index_in_h) : json(nullptr)},
                  {"in_k", c.index_in_k ? json(*c.index_in_k) : json(nullptr)}};
  return j;
}

const std::map<std::string, std::string> kFamilyAliases{{"normal-order3", "normal3"}, {"all", "all"}};

FamilyTruncation resolve_family(const std::string& group, const std::string& family, const std::string& nodes) {
  if (!nodes.empty()) {
    if (group.empty()) throw ContractError("--nodes needs --group");
    auto ctx = load_group(group);
    return FamilyTruncation(ctx, parse_nodes(ctx, nodes));
  }
  if (family.empty()) throw ContractError("give --family or --nodes");
  const auto names = family_fixture_names();
  if (std::find(names.begin(), names.end(), family) != names.end()) return family_fixture(family);
  if (!group.empty()) {
    auto it = kFamilyAliases.find(family);
    const std::string suffix = it == kFamilyAliases.end() ? family : it->second;
    const std::string full = group + "-" + suffix;
    if (std::find(names.begin(), names.end(), full) != names.end()) return family_fixture(full);
  }
  throw ContractError("unknown family '" + family + "'");
}

json family_json(const FamilyTruncation& fam) {
  json nodes = json::array();
  const SubgroupHandle whole = SubgroupHandle::whole(fam.context());
  for (size_t i = 0; i < fam.size(); ++i) {
    const auto idx = index_bounded(fam.node(i), whole, 1 << 16);
    nodes.push_back({{"id", i},
                     {"description", fam.node(i).describe()},
                     {"index", idx.index ? json(*idx.index) : json(nullptr)}});
  }
  return {{"group", fam.group().name()}, {"nodes", nodes}};
}

FiniteModule module_arg(const GroupContext& ctx, const std::string& file, const std::string& kind, uint32_t p,
                        size_t dim) {
  FiniteModule m;
  if (!file.empty()) {
    m = parse_module(read_file(file));
  } else if (kind == "trivial") {
    m = trivial_module(ctx.generator_count(), dim, p);
  } else if (kind == "regular") {
    if (!ctx.regular_table()) throw ContractError("regular module needs a finite group");
    m = permutation_module(*ctx.regular_table(), p);
  } else {
    throw ContractError("unknown module kind '" + kind + "'");
  }
  m.validate(ctx);
  return m;
}

json matrix_json(const MatrixFp& m) {
  json rows = json::array();
  for (size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computational group theory toolkit: commensurators, completions, ends"};
  app.require_subcommand(1);
  // `-h` stays free for the --h subgroup option; subcommands inherit this.
  app.set_help_flag("--help", "Print this help message and exit");
  // --format may appear after the subcommand.
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::function<int()> action;

  // ---- group --------------------------------------------------------------
  auto* group = app.add_subcommand("group", "Presentations, coset enumeration, word problem");
  group->require_subcommand(1);
  std::string g_name = "sym3";
  std::string g_word, g_subgroup, g_file;
  size_t g_limit = 10000;
  auto add_group_opt = [&](CLI::App* c) {
    c->add_option("--group", g_name, "Preset name or presentation file")->capture_default_str();
  };
  auto* g_info = group->add_subcommand("info", "Generators, relators, order and abelianization");
  add_group_opt(g_info);
  g_info->callback([&] { action = [&] { return emit(common, group_json(*load_group(g_name))); }; });
  auto* g_enum = group->add_subcommand("enumerate", "Todd-Coxeter coset enumeration");
  add_group_opt(g_enum);
  g_enum->add_option("--subgroup", g_subgroup, "Comma-separated subgroup generators");
  g_enum->add_option("--limit", g_limit, "Live coset limit")->capture_default_str();
  g_enum->callback([&] {
    action = [&] {
      auto ctx = load_group(g_name);
      const auto gens = parse_word_list(g_subgroup, ctx->alphabet());
      const auto e = todd_coxeter(*ctx, gens, g_limit);
      json j{{"group", ctx->name()}, {"subgroup", g_subgroup}, {"limit", g_limit}};
      if (const auto* t = std::get_if<CosetTable>(&e)) {
        j["status"] = "complete";
        j["cosets"] = t->coset_count();
        json reps = json::array();
        for (const Word& r : t->representatives()) reps.push_back(r.empty() ? "1" : ctx->format(r));
        j["representatives"] = reps;
      } else {
        const auto& inc = std::get<Incomplete>(e);
        j["status"] = "incomplete";
        j["live_cosets"] = inc.live_cosets;
        j["defined_cosets"] = inc.defined_cosets;
      }
      return emit(common, j);
    };
  });
  auto* g_trivial = group->add_subcommand("trivial", "Decide whether a word is the identity");
  add_group_opt(g_trivial);
  g_trivial->add_option("--word", g_word, "Word")->required();
  g_trivial->callback([&] {
    action = [&] {
      auto ctx = load_group(g_name);
      const Word w = ctx->parse(g_word);
      json j{{"group", ctx->name()}, {"word", g_word}, {"trivial", tri_text(ctx->is_trivial(w))}};
      if (auto nf = ctx->normal_form(w)) j["normal_form"] = nf->empty() ? "1" : ctx->format(*nf);
      return emit(common, j);
    };
  });
  auto* g_parse = group->add_subcommand("parse", "Parse a presentation file and print its canonical form");
  g_parse->add_option("file", g_file, "Presentation file")->required();
  g_parse->callback([&] {
    action = [&] {
      const auto pf = parse_presentation(read_file(g_file));
      return emit(common, {{"canonical", serialize_presentation(pf)},
                           {"generators", pf.presentation.generator_count},
                           {"relators", pf.presentation.relators.size()}});
    };
  });
  auto* g_list = group->add_subcommand("presets", "List built-in groups");
  g_list->callback([&] { action = [&] { return emit(common, {{"presets", preset_names()}}); }; });

  // ---- subgroup -----------------------------------------------------------
  auto* sub = app.add_subcommand("subgroup", "Commensurability, near normality, Neumann translates");
  sub->require_subcommand(1);
  std::string s_group = "bs(2,3)", s_h = "x", s_k, s_g, s_gens, s_reps = "1";
  uint64_t s_bound = 64;
  size_t s_radius = 4;
  std::string s_side = "right";
  auto sub_common = [&](CLI::App* c) {
    c->add_option("--group", s_group, "Preset name or presentation file")->capture_default_str();
    c->add_option("--h", s_h, "Subgroup H: generators, G, 1 or A<m>")->capture_default_str();
  };
  auto* s_comm = sub->add_subcommand("commensurable", "Is H commensurable with K?");
  sub_common(s_comm);
  s_comm->add_option("--k", s_k, "Subgroup K")->required();
  s_comm->add_option("--bound", s_bound, "Index bound")->capture_default_str();
  s_comm->callback([&] {
    action = [&] {
      auto ctx = load_group(s_group);
      const auto r = is_commensurable(subgroup_arg(ctx, s_h), subgroup_arg(ctx, s_k), s_bound);
      json j = comm_json(*ctx, r);
      j["inputs"] = {{"group", ctx->name()}, {"h", s_h}, {"k", s_k}, {"bound", s_bound}};
      return emit(common, j);
    };
  });
  auto* s_cmr = sub->add_subcommand("commensurator", "Is g in the commensurator of H?");
  sub_common(s_cmr);
  s_cmr->add_option("--g", s_g, "Element")->required();
  s_cmr->add_option("--bound", s_bound, "Index bound")->capture_default_str();
  s_cmr->callback([&] {
    action = [&] {
      auto ctx = load_group(s_group);
      const auto r = in_commensurator(subgroup_arg(ctx, s_h), ctx->parse(s_g), s_bound);
      json j = comm_json(*ctx, r);
      j["inputs"] = {{"group", ctx->name()}, {"h", s_h}, {"g", s_g}, {"bound", s_bound}};
      return emit(common, j);
    };
  });
  auto* s_nn = sub->add_subcommand("near-normal", "Is H commensurated by the listed generators?");
  sub_common(s_nn);
  s_nn->add_option("--gens", s_gens, "Comma-separated generating set (default: the presentation's)");
  s_nn->add_option("--bound", s_bound, "Index bound")->capture_default_str();
  s_nn->callback([&] {
    action = [&] {
      auto ctx = load_group(s_group);
      std::vector<Word> gens = parse_word_list(s_gens, ctx->alphabet());
      if (gens.empty()) {
        for (uint32_t i = 0; i < search_generator_count(*ctx); ++i) gens.push_back(Word{pos(i)});
      }
      const auto r = near_normal_on(subgroup_arg(ctx, s_h), gens, s_bound);
      json checks = json::array();
      for (const auto& [g, c] : r.checks) {
        json cj = comm_json(*ctx, c);
        cj["g"] = ctx->format(g);
        checks.push_back(cj);
      }
      return emit(common, {{"result", tri_text(r.result)}, {"checks", checks}});
    };
  });
  auto* s_index = sub->add_subcommand("index", "Index of H in K, within a bound");
  sub_common(s_index);
  s_index->add_option("--k", s_k, "Ambient subgroup (default G)");
  s_index->add_option("--bound", s_bound, "Index bound")->capture_default_str();
  s_index->callback([&] {
    action = [&] {
      auto ctx = load_group(s_group);
      const auto k = s_k.empty() ? SubgroupHandle::whole(ctx) : subgroup_arg(ctx, s_k);
      const auto r = index_bounded(subgroup_arg(ctx, s_h), k, s_bound);
      return emit(common, {{"index", r.index ? json(*r.index) : json(nullptr)},
                           {"infinite", r.infinite},
                           {"exceeds_bound", !r.index && !r.infinite}});
    };
  });
  auto* s_neu = sub->add_subcommand("neumann", "Search g with X g X^-1 disjoint from L");
  s_neu->add_option("--group", s_group, "Preset name or presentation file")->capture_default_str();
  s_neu->add_option("--l", s_h, "Base subgroup L")->capture_default_str();
  s_neu->add_option("--reps", s_reps, "Comma-separated coset representatives of X")->capture_default_str();
  s_neu->add_option("--radius", s_radius, "Search radius")->capture_default_str();
  s_neu->callback([&] {
    action = [&] {
      auto ctx = load_group(s_group);
      std::vector<Word> reps;
      std::stringstream s(s_reps);
      std::string item;
      while (std::getline(s, item, ',')) reps.push_back(item == "1" ? Word{} : ctx->parse(item));
      const CosetSet x(subgroup_arg(ctx, s_h), CosetSide::Right, reps);
      const auto r = neumann_translate(x, s_radius);
      json j{{"found", r.g.has_value()}, {"words_checked", r.words_checked}, {"undecided", r.undecided}};
      j["g"] = r.g ? json(r.g->empty() ? "1" : ctx->format(*r.g)) : json(nullptr);
      return emit(common, j);
    };
  });

  // ---- family -------------------------------------------------------------
  auto* fam = app.add_subcommand("family", "Family truncations, H0 and H1");
  fam->require_subcommand(1);
  std::string f_group, f_family, f_nodes, f_module, f_kind = "regular";
  uint32_t f_p = 2;
  size_t f_dim = 1;
  auto fam_common = [&](CLI::App* c) {
    c->add_option("--group", f_group, "Preset name or presentation file");
    c->add_option("--family", f_family, "Named fixture");
    c->add_option("--nodes", f_nodes, "Nodes: ';'-separated subgroups");
  };
  auto mod_common = [&](CLI::App* c) {
    c->add_option("--module", f_module, "Module file (field/dim header, one matrix per generator)");
    c->add_option("--kind", f_kind, "Built-in module when no file is given")
        ->check(CLI::IsMember({"trivial", "regular"}))
        ->capture_default_str();
    c->add_option("--field", f_p, "Prime field order for built-in modules")->capture_default_str();
    c->add_option("--dim", f_dim, "Dimension of the trivial module")->capture_default_str();
  };
  auto* f_list = fam->add_subcommand("list", "List named fixtures");
  f_list->callback([&] { action = [&] { return emit(common, {{"fixtures", family_fixture_names()}}); }; });
  auto* f_check = fam->add_subcommand("check", "Admissibility and stability of a truncation");
  fam_common(f_check);
  f_check->callback([&] {
    action = [&] {
      const auto t = resolve_family(f_group, f_family, f_nodes);
      const auto adm = check_admissible(t);
      const auto st = check_stable(t);
      json j = family_json(t);
      j["admissible"] = {{"conjugation_closed", adm.conjugation_closed},
                         {"downward_directed", adm.downward_directed},
                         {"violations", adm.violations}};
      json failing = st.failing ? json{{"k", st.failing->first}, {"h", st.failing->second}} : json(nullptr);
      j["stable"] = {{"stable", st.stable}, {"witnesses", st.witnesses}, {"failing", failing}};
      return emit(common, j);
    };
  });
  auto* f_h0 = fam->add_subcommand("h0", "S-fixed vectors of a module");
  fam_common(f_h0);
  mod_common(f_h0);
  f_h0->callback([&] {
    action = [&] {
      const auto t = resolve_family(f_group, f_family, f_nodes);
      const auto m = module_arg(t.group(), f_module, f_kind, f_p, f_dim);
      const auto r = h0_S(m, t);
      return emit(common, {{"dimension", r.basis.rows()},
                           {"basis", matrix_json(r.basis)},
                           {"minimal_nodes", r.minimal_nodes},
                           {"union_consistent", r.union_consistent},
                           {"invariant", r.invariant}},
                  r.invariant && r.union_consistent);
    };
  });
  auto* f_h1 = fam->add_subcommand("h1", "Derivations modulo inner derivations");
  f_h1->add_option("--group", f_group, "Preset name or presentation file")->required();
  mod_common(f_h1);
  f_h1->callback([&] {
    action = [&] {
      auto ctx = load_group(f_group);
      const auto m = module_arg(*ctx, f_module, f_kind, f_p, f_dim);
      const auto d = h1_derivations(*ctx, m);
      return emit(common, {{"der", d.dim_der}, {"inner", d.dim_inner}, {"h1", d.dim_h1},
                           {"basis", matrix_json(d.basis)}});
    };
  });

  // ---- completion ---------------------------------------------------------
  auto* comp = app.add_subcommand("completion", "Completion of a truncation");
  comp->require_subcommand(1);
  size_t c_ceiling = 100000;
  auto comp_common = [&](CLI::App* c) {
    fam_common(c);
    c->add_option("--ceiling", c_ceiling, "Maximum number of elements enumerated")->capture_default_str();
  };
  auto* c_build = comp->add_subcommand("build", "Enumerate compatible assignments");
  comp_common(c_build);
  c_build->callback([&] {
    action = [&] {
      const TruncatedCompletion tc(resolve_family(f_group, f_family, f_nodes));
      const auto elems = tc.enumerate(c_ceiling);
      json list = json::array();
      for (const auto& e : elems) list.push_back(tc.describe(e));
      json j = family_json(tc.family());
      j["element_count"] = elems.size();
      j["elements"] = list;
      return emit(common, j);
    };
  });
  auto* c_laws = comp->add_subcommand("laws", "Verify the group laws exhaustively");
  comp_common(c_laws);
  c_laws->callback([&] {
    action = [&] {
      const TruncatedCompletion tc(resolve_family(f_group, f_family, f_nodes));
      const auto* reg = tc.family().group().regular_table();
      const auto r = verify_laws(tc, reg ? reg->representatives() : std::vector<Word>{});
      json laws = json::object();
      for (const auto& [law, n] : r.counts) {
        const bool failed = std::any_of(r.failures.begin(), r.failures.end(), [&](const LawFailure& f) { return f.law == law; });
        laws[law] = failed ? "fail" : "pass";
      }
      json witnesses = json::array();
      for (const auto& f : r.failures) witnesses.push_back({{"law", f.law}, {"witness", f.witness}});
      return emit(common, {{"element_count", r.element_count}, {"checks", r.checks}, {"stable", r.stable},
                           {"laws", laws}, {"witnesses", witnesses}},
                  r.failures.empty());
    };
  });
  auto* c_scan = comp->add_subcommand("scan", "Find elements without two-sided inverses");
  comp_common(c_scan);
  c_scan->callback([&] {
    action = [&] {
      const TruncatedCompletion tc(resolve_family(f_group, f_family, f_nodes));
      const auto r = invertibility_scan(tc);
      json bad = json::array();
      for (const auto& e : r.non_invertible) bad.push_back(tc.describe(e));
      return emit(common, {{"total", r.total}, {"invertible", r.invertible}, {"non_invertible", bad}});
    };
  });
  auto* c_prof = comp->add_subcommand("profinite", "Compare with the inverse limit of finite quotients");
  comp_common(c_prof);
  c_prof->callback([&] {
    action = [&] {
      const auto r = profinite_compare(TruncatedCompletion(resolve_family(f_group, f_family, f_nodes)));
      return emit(common, {{"all_normal", r.all_normal}, {"completion_size", r.completion_size},
                           {"limit_size", r.limit_size}, {"bijective", r.bijective},
                           {"homomorphism", r.homomorphism}, {"isomorphic", r.isomorphic()}});
    };
  });

  // ---- ends ---------------------------------------------------------------
  auto* ends = app.add_subcommand("ends", "Coset graph balls and end counts");
  ends->require_subcommand(1);
  std::string e_group = "bs(2,3)", e_l = "x^2", e_gens, e_radii = "2,4,6,8", e_side;
  size_t e_radius = 3;
  bool e_dot = false;
  auto ends_common = [&](CLI::App* c) {
    c->add_option("--group", e_group, "Preset name or presentation file")->capture_default_str();
    c->add_option("--l", e_l, "Subgroup L")->capture_default_str();
    c->add_option("--gens", e_gens, "Comma-separated generating set X (default: the presentation's)");
  };
  auto gens_of = [&](const ContextPtr& ctx) {
    std::vector<Word> x = parse_word_list(e_gens, ctx->alphabet());
    if (x.empty()) {
      for (uint32_t i = 0; i < search_generator_count(*ctx); ++i) x.push_back(Word{pos(i)});
    }
    return x;
  };
  auto* e_est = ends->add_subcommand("estimate", "Components outside growing balls");
  ends_common(e_est);
  e_est->add_option("--radii", e_radii, "Increasing radius schedule")->capture_default_str();
  e_est->callback([&] {
    action = [&] {
      auto ctx = load_group(e_group);
      const auto r = ends_estimate(subgroup_arg(ctx, e_l), gens_of(ctx), parse_radii(e_radii));
      return emit(common, {{"radii", r.radii}, {"counts", r.counts}, {"stabilized", r.stabilized},
                           {"estimate", r.estimate}});
    };
  });
  auto* e_graph = ends->add_subcommand("graph", "Ball of the coset graph");
  ends_common(e_graph);
  e_graph->add_option("--radius", e_radius, "Ball radius")->capture_default_str();
  e_graph->add_flag("--dot", e_dot, "Emit Graphviz text instead of JSON");
  e_graph->add_option("--side", e_side, "Highlight a vertex set: far-side (BS groups)");
  e_graph->callback([&] {
    action = [&] {
      auto ctx = load_group(e_group);
      const auto ball = coset_graph_ball(subgroup_arg(ctx, e_l), gens_of(ctx), e_radius);
      std::vector<bool> highlight;
      if (e_side == "far-side") {
        const auto params = ctx->bs_params();
        highlight = vertex_set(ball, [&](const Word& g) { return bs::on_far_side(g, params); });
      } else if (!e_side.empty()) {
        throw ContractError("unknown side '" + e_side + "'");
      }
      if (e_dot) {
        std::cout << to_dot(ball, e_radius, *ctx, highlight);
        return 0;
      }
      json vertices = json::array();
      for (size_t v = 0; v < ball.vertices.size(); ++v) {
        json vj{{"id", v}, {"rep", ball.vertices[v].empty() ? "1" : ctx->format(ball.vertices[v])},
                {"depth", ball.depth[v]}};
        if (!highlight.empty()) vj["highlight"] = static_cast<bool>(highlight[v]);
        vertices.push_back(vj);
      }
      json edges = json::array();
      for (const auto& e : ball.edges) {
        edges.push_back({{"a", e.a}, {"b", e.b}, {"label", ctx->format(ball.generators[e.label])}, {"level", e.level}});
      }
      return emit(common, {{"radius", e_radius}, {"vertices", vertices}, {"edges", edges},
                           {"elements", ball.elements.size()}});
    };
  });
  auto* e_bd = ends->add_subcommand("boundary", "Boundary of the far side of the Bass-Serre edge");
  ends_common(e_bd);
  e_bd->add_option("--radii", e_radii, "Increasing radius schedule")->capture_default_str();
  e_bd->callback([&] {
    action = [&] {
      auto ctx = load_group(e_group);
      if (ctx->oracle() != OracleKind::Britton) throw ContractError("boundary check needs a BS group");
      const auto radii = parse_radii(e_radii);
      const auto ball = coset_graph_ball(subgroup_arg(ctx, e_l), gens_of(ctx), radii.back());
      const auto params = ctx->bs_params();
      const auto r = boundary_check([&](const Word& g) { return bs::on_far_side(g, params); }, ball, radii);
      return emit(common, {{"radii", r.radii}, {"boundary_counts", r.boundary_counts}, {"y_counts", r.y_counts},
                           {"saturated", r.saturated}, {"contained_in_y", r.contained_in_y}},
                  r.saturated && r.contained_in_y);
    };
  });

  // ---- thompson -----------------------------------------------------------
  auto* th = app.add_subcommand("thompson", "Thompson's group F");
  th->require_subcommand(1);
  std::string t_suite = "lemma", t_word;
  uint32_t t_n = 20, t_m_bound = 20;
  uint64_t seed = 1;
  auto* t_verify = th->add_subcommand("verify", "Run the verification grids");
  t_verify->add_option("--suite", t_suite, "Grid")->check(CLI::IsMember({"lemma"}))->capture_default_str();
  t_verify->add_option("--seed", seed, "Seed for sampled checks")->capture_default_str();
  t_verify->callback([&] {
    action = [&] {
      SuiteConfig cfg;
      cfg.seed = seed;
      const auto r = run_suite("thompson", cfg);
      return emit(common, r.to_json(), r.ok());
    };
  });
  auto* t_nf = th->add_subcommand("normal-form", "Normal form of a word in x0, x1, ...");
  t_nf->add_option("--word", t_word, "Word")->required();
  t_nf->callback([&] {
    action = [&] {
      const auto nf = thompson::f_normal_form(parse_word(t_word));
      return emit(common, {{"word", t_word}, {"normal_form", nf.is_identity() ? "1" : nf.to_string()},
                           {"positive", nf.positive}, {"negative", nf.negative},
                           {"in_A", tri_text(thompson::a_membership(parse_word(t_word), 64))}});
    };
  });
  auto* t_shift = th->add_subcommand("shift", "Shift property g^-1 x_n g = x_{n+j}");
  t_shift->add_option("--g", t_word, "Element g")->required();
  t_shift->add_option("--n", t_n, "Largest n checked")->capture_default_str();
  t_shift->callback([&] {
    action = [&] {
      const auto r = thompson::verify_shift(parse_word(t_word), t_n);
      return emit(common, {{"g", t_word}, {"j", r.j},
                           {"threshold", r.threshold ? json(*r.threshold) : json(nullptr)},
                           {"holds", r.holds}},
                  r.all_pass());
    };
  });
  auto* t_int = th->add_subcommand("intersection", "Least m with A_m inside every conjugate A^g");
  t_int->add_option("--g", t_word, "Comma-separated elements of even exponent sum")->required();
  t_int->add_option("--m-bound", t_m_bound, "Largest m tried")->capture_default_str();
  t_int->callback([&] {
    action = [&] {
      const auto r = thompson::am_in_conjugate_intersection(parse_word_list(t_word), t_m_bound);
      json certs = json::array();
      for (const auto& c : r.certificates) {
        certs.push_back({{"g", c.g.empty() ? "1" : format_word(c.g)}, {"exponent_sum", c.exponent_sum},
                         {"shift_threshold", c.shift_threshold}, {"generator_from", c.generator_from},
                         {"least_m", c.least_m}});
      }
      return emit(common, {{"m", r.m ? json(*r.m) : json(nullptr)}, {"certificates", certs}}, r.m.has_value());
    };
  });

  // ---- bs -----------------------------------------------------------------
  auto* bsc = app.add_subcommand("bs", "Baumslag-Solitar groups");
  bsc->require_subcommand(1);
  std::string b_suite = "family", b_word, b_conj = "y,y^-1";
  int64_t b_bound = 12, b_m = 2, b_n = 3;
  auto bs_params = [&](CLI::App* c) {
    c->add_option("--m", b_m, "Relation y^-1 x^m y = x^n")->capture_default_str();
    c->add_option("--n", b_n, "Relation y^-1 x^m y = x^n")->capture_default_str();
  };
  const Alphabet xy({"x", "y"});
  auto* b_verify = bsc->add_subcommand("verify", "Family axioms on a truncation");
  b_verify->add_option("--suite", b_suite, "Check")->check(CLI::IsMember({"family"}))->capture_default_str();
  b_verify->add_option("--bound", b_bound, "Largest power of x")->capture_default_str();
  b_verify->add_option("--conjugators", b_conj, "Comma-separated conjugators")->capture_default_str();
  bs_params(b_verify);
  b_verify->callback([&] {
    action = [&] {
      const auto r = bs::family_axiom_check(parse_word_list(b_conj, xy), b_bound, {b_m, b_n});
      return emit(common, {{"members", r.members.size()}, {"closure_checks", r.closure_checks},
                           {"directed_checks", r.directed_checks}, {"conjugation_closed", r.conjugation_closed},
                           {"downward_directed", r.downward_directed}, {"failures", r.failures},
                           {"certificates", r.certificates}, {"pass", r.pass()}},
                  r.pass());
    };
  });
  auto* b_reduce = bsc->add_subcommand("reduce", "Britton normal form");
  b_reduce->add_option("--word", b_word, "Word in x, y")->required();
  bs_params(b_reduce);
  b_reduce->callback([&] {
    action = [&] {
      const auto f = bs::britton_reduce(parse_word(b_word, xy), {b_m, b_n});
      return emit(common, {{"word", b_word}, {"form", f.to_string()}, {"stable_length", f.stable_length()},
                           {"trivial", f.is_identity()}});
    };
  });
  auto* b_pc = bsc->add_subcommand("power-conjugate", "Least a with g^-1 x^a g = x^b");
  b_pc->add_option("--g", b_word, "Element g")->required();
  b_pc->add_option("--bound", b_bound, "Largest a tried")->capture_default_str();
  bs_params(b_pc);
  b_pc->callback([&] {
    action = [&] {
      const auto r = bs::power_conjugate(parse_word(b_word, xy), b_bound, {b_m, b_n});
      return emit(common, {{"g", b_word}, {"a", r ? json(r->first) : json(nullptr)},
                           {"b", r ? json(r->second) : json(nullptr)}});
    };
  });

  // ---- suite --------------------------------------------------------------
  auto* suite = app.add_subcommand("suite", "Run a verification suite");
  std::string suite_name = "all";
  SuiteConfig cfg;
  std::string radii_text = "2,4,6,8";
  suite->add_option("name", suite_name, "Suite: words, groups, subgroups, families, completion, ends, thompson, bs, all")
      ->capture_default_str();
  suite->add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  suite->add_flag("--timing", cfg.timing, "Include per-suite wall time (breaks byte-identical output)");
  suite->add_option("--radii", radii_text, "Radius schedule for end counts")->capture_default_str();
  suite->add_option("--index-bound", cfg.index_bound, "Index bound for commensurability")->capture_default_str();
  suite->add_option("--samples", cfg.random_samples, "Random samples per sampled check")->capture_default_str();
  suite->callback([&] {
    action = [&] {
      cfg.radii = parse_radii(radii_text);
      const auto r = run_suite(suite_name, cfg);
      return emit(common, r.to_json(), r.ok());
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
