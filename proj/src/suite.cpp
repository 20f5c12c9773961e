#include "cgt/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "cgt/baumslag_solitar.hpp"
#include "cgt/completion.hpp"
#include "cgt/ends.hpp"
#include "cgt/families.hpp"
#include "cgt/groups.hpp"
#include "cgt/subgroups.hpp"
#include "cgt/thompson.hpp"

namespace cgt {

using nlohmann::json;

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

size_t RunReport::count(Outcome o) const {
  return static_cast<size_t>(std::count_if(records.begin(), records.end(),
                                           [&](const CheckRecord& r) { return r.outcome == o; }));
}

json RunReport::to_json() const {
  json out;
  out["suite"] = suite;
  out["seed"] = seed;
  out["summary"] = {{"total", records.size()},
                    {"pass", count(Outcome::Pass)},
                    {"fail", count(Outcome::Fail)},
                    {"unknown", count(Outcome::Unknown)}};
  json recs = json::array();
  for (const auto& r : records) {
    json j{{"id", r.id}, {"ref", r.ref}, {"inputs", r.inputs}, {"outcome", to_string(r.outcome)}};
    if (!r.witness.empty()) j["witness"] = r.witness;
    recs.push_back(std::move(j));
  }
  out["records"] = std::move(recs);
  if (!timing_ms.empty()) {
    json t = json::object();
    for (const auto& [k, v] : timing_ms) t[k] = v;
    out["timing_ms"] = std::move(t);
  }
  return out;
}

namespace {

class Recorder {
 public:
  Recorder(RunReport& report, std::string prefix) : report_(report), prefix_(std::move(prefix)) {}

  void check(const std::string& id, const std::string& ref, json inputs, bool ok, std::string witness = {}) {
    if (!ok && witness.empty()) witness = "check failed";
    add(id, ref, std::move(inputs), ok ? Outcome::Pass : Outcome::Fail, ok ? std::string() : std::move(witness));
  }
  void tri(const std::string& id, const std::string& ref, json inputs, Tri t, Tri expected, std::string detail = {}) {
    if (t == Tri::Unknown && expected != Tri::Unknown) {
      add(id, ref, std::move(inputs), Outcome::Unknown, "undecided within bounds" + (detail.empty() ? "" : ": " + detail));
      return;
    }
    check(id, ref, std::move(inputs), t == expected,
          "got " + std::string(to_string(t)) + (detail.empty() ? "" : ": " + detail));
  }
  // Runs a check body, turning exceptions into failures.
  void guarded(const std::string& id, const std::string& ref, json inputs, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(id, ref, std::move(inputs), false, std::string("exception: ") + e.what());
    }
  }
  void add(const std::string& id, const std::string& ref, json inputs, Outcome o, std::string witness) {
    // Ids are single tokens: word arguments keep their text with '_' for spaces.
    std::string full = prefix_ + "." + id;
    std::replace(full.begin(), full.end(), ' ', '_');
    report_.records.push_back({std::move(full), ref, std::move(inputs), o, std::move(witness)});
  }

 private:
  RunReport& report_;
  std::string prefix_;
};

Word random_word(std::mt19937_64& rng, uint32_t gens, size_t max_len) {
  std::vector<Letter> raw;
  const size_t len = rng() % (max_len + 1);
  for (size_t i = 0; i < len; ++i) {
    raw.push_back({static_cast<uint32_t>(rng() % gens), static_cast<int8_t>(rng() % 2 ? 1 : -1)});
  }
  return Word(raw);
}

std::string join(const std::vector<std::string>& parts, const char* sep = "; ") {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

// ---------------------------------------------------------------------------

void suite_words(Recorder& rec, const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  size_t bad_reduce = 0, bad_inverse = 0, bad_parse = 0;
  std::string witness;
  for (size_t i = 0; i < cfg.random_samples; ++i) {
    const Word w = random_word(rng, 3, 14);
    for (size_t k = 0; k + 1 < w.length(); ++k) {
      if (w[k].cancels(w[k + 1])) {
        ++bad_reduce;
        witness = format_word(w);
      }
    }
    if (!(w * w.inverse()).empty()) ++bad_inverse;
    if (parse_word(format_word(w)) != w) {
      ++bad_parse;
      witness = format_word(w);
    }
  }
  const json in{{"samples", cfg.random_samples}, {"generators", 3}, {"max_length", 14}};
  rec.check("reduce.random", "free-reduction", in, bad_reduce == 0, witness);
  rec.check("inverse.random", "free-group-inverse", in, bad_inverse == 0);
  rec.check("parse.roundtrip", "word-syntax", in, bad_parse == 0, witness);

  for (uint32_t k : {1u, 2u, 3u}) {
    for (size_t n = 1; n <= 5; ++n) {
      size_t expected = 2 * k;
      for (size_t i = 1; i < n; ++i) expected *= 2 * k - 1;
      const size_t got = words_of_length(k, n).size();
      rec.check("count.k" + std::to_string(k) + ".n" + std::to_string(n), "reduced-word-count",
                {{"generators", k}, {"length", n}}, got == expected,
                "got " + std::to_string(got) + ", expected " + std::to_string(expected));
    }
  }
  std::vector<Word> order;
  for_each_word(2, 4, [&](const Word& w) {
    order.push_back(w);
    return true;
  });
  rec.check("shortlex.enumeration", "shortlex-order", {{"generators", 2}, {"max_length", 4}},
            std::is_sorted(order.begin(), order.end()) &&
                std::adjacent_find(order.begin(), order.end()) == order.end());
  rec.guarded("parse.rejects", "word-syntax", {{"text", "a b^"}}, [&] {
    bool threw = false;
    try {
      parse_word("a b^", Alphabet({"a", "b"}));
    } catch (const ParseError&) {
      threw = true;
    }
    rec.check("parse.rejects", "word-syntax", {{"text", "a b^"}}, threw, "malformed word accepted");
  });
}

void suite_groups(Recorder& rec, const SuiteConfig&) {
  const std::pair<const char*, size_t> orders[] = {{"sym3", 6}, {"klein4", 4}, {"cyclic(4)", 4}, {"cyclic(6)", 6}};
  for (const auto& [name, order] : orders) {
    rec.guarded(std::string("todd_coxeter.order.") + name, "coset-enumeration", {{"group", name}}, [&] {
      auto ctx = make_preset(name);
      const auto got = ctx->order();
      rec.check(std::string("todd_coxeter.order.") + name, "coset-enumeration", {{"group", name}},
                got == std::optional<size_t>(order), "order " + (got ? std::to_string(*got) : std::string("?")));
    });
  }
  rec.guarded("todd_coxeter.incomplete.bs", "coset-enumeration", {{"group", "bs(2,3)"}}, [&] {
    auto bs = make_preset("bs(2,3)");
    const auto e = todd_coxeter(*bs, {bs->parse("x")}, 10000);
    rec.check("todd_coxeter.incomplete.bs", "coset-enumeration",
              {{"group", "bs(2,3)"}, {"subgroup", "x"}, {"limit", 10000}},
              std::holds_alternative<Incomplete>(e), "enumeration closed");
  });
  struct Ab {
    const char* name;
    uint32_t rank;
    std::vector<int64_t> torsion;
  };
  for (const auto& a : {Ab{"sym3", 0, {2}}, Ab{"klein4", 0, {2, 2}}, Ab{"bs(2,3)", 1, {}}, Ab{"zn(3)", 3, {}},
                        Ab{"free(2)", 2, {}}, Ab{"cyclic(6)", 0, {6}}}) {
    const auto inv = abelianization(make_preset(a.name)->presentation());
    rec.check(std::string("abelianization.") + a.name, "smith-reduction", {{"group", a.name}},
              inv.free_rank == a.rank && inv.torsion == a.torsion,
              "rank " + std::to_string(inv.free_rank) + ", " + std::to_string(inv.torsion.size()) + " torsion factors");
  }
  for (const char* text : {"gens: a b\nrels: a^2 b^2 (a b)^3", "gens: a b\nrels:",
                           "gens: x y\nrels: (y^-1 x^2 y x^-3)\noracle: britton(2,3)", "schema: thompson"}) {
    const auto first = parse_presentation(text);
    const auto canon = serialize_presentation(first);
    const auto second = parse_presentation(canon);
    rec.check("presentation.roundtrip." + std::to_string(std::hash<std::string>{}(text) % 100000), "presentation-format",
              {{"text", text}}, second.presentation == first.presentation && serialize_presentation(second) == canon);
  }
  bool rejected = false;
  try {
    parse_presentation("rels: a^2\ngens: a");
  } catch (const ParseError&) {
    rejected = true;
  }
  rec.check("presentation.rels_before_gens", "presentation-format", {{"text", "rels: a^2\\ngens: a"}}, rejected);
  auto bs = make_preset("bs(2,3)");
  const auto pl = bs->power_log(bs->parse("y^-1 x^4 y"), bs->parse("x^3"));
  rec.check("power_log.bs", "britton-power", {{"w", "y^-1 x^4 y"}, {"c", "x^3"}},
            pl.found == Tri::True && pl.exponent == 2, "exponent " + std::to_string(pl.exponent));
}

void suite_subgroups(Recorder& rec, const SuiteConfig& cfg) {
  const uint64_t bound = cfg.index_bound;
  auto bs = make_preset("bs(2,3)");
  const auto x = SubgroupHandle::cyclic(bs, bs->parse("x"));
  for (const auto& [g, ih, ik] : {std::tuple{"y", 3, 2}, std::tuple{"y^-1", 2, 3}, std::tuple{"y^2", 9, 4}}) {
    const json in{{"group", "bs(2,3)"}, {"H", "<x>"}, {"g", g}, {"bound", bound}};
    rec.guarded(std::string("commensurator.bs.") + g, "commensurator", in, [&] {
      const auto c = in_commensurator(x, bs->parse(g), bound);
      rec.check(std::string("commensurator.bs.") + g, "commensurator", in,
                c.result == Tri::True && c.index_in_h == std::optional<uint64_t>(ih) &&
                    c.index_in_k == std::optional<uint64_t>(ik),
                c.certificate);
    });
  }
  rec.tri("near_normal.bs", "near-normal", {{"group", "bs(2,3)"}, {"H", "<x>"}, {"gens", "x,y"}},
          near_normal_on(x, {bs->parse("x"), bs->parse("y")}, bound).result, Tri::True);

  auto z2 = make_preset("zn(2)");
  const auto u = SubgroupHandle::cyclic(z2, z2->parse("u"));
  const auto v = SubgroupHandle::cyclic(z2, z2->parse("v"));
  const auto cuv = is_commensurable(u, v, bound);
  rec.tri("commensurable.z2.u_v", "commensurable", {{"group", "zn(2)"}, {"H", "<u>"}, {"K", "<v>"}}, cuv.result,
          Tri::False, cuv.certificate);
  auto f2 = make_preset("free(2)");
  rec.tri("near_normal.free2", "near-normal", {{"group", "free(2)"}, {"H", "<a>"}},
          near_normal_on(SubgroupHandle::cyclic(f2, f2->parse("a")), {f2->parse("a"), f2->parse("b")}, bound).result,
          Tri::False);
  auto f = make_preset("thompson-f");
  const auto ca = is_commensurable(SubgroupHandle::thompson_a(f, 1), SubgroupHandle::thompson_a(f, 2), bound);
  rec.tri("commensurable.thompson.a1_a2", "commensurable", {{"group", "thompson-f"}, {"H", "A_1"}, {"K", "A_2"}},
          ca.result, Tri::False, ca.certificate);

  // Neumann translation: found and independently re-verified.
  auto neumann = [&](const std::string& id, const ContextPtr& ctx, const SubgroupHandle& base,
                     const std::vector<std::string>& reps, bool expect_found) {
    const json in{{"group", ctx->name()}, {"base", base.describe()}, {"reps", reps}, {"radius", 4}};
    rec.guarded("neumann." + id, "neumann-translate", in, [&] {
      std::vector<Word> words;
      for (const auto& r : reps) words.push_back(ctx->parse(r));
      const CosetSet set(base, CosetSide::Right, words);
      const auto r = neumann_translate(set, 4);
      if (!expect_found) {
        rec.check("neumann." + id, "neumann-translate", in, !r.g.has_value() && !r.undecided,
                  r.g ? "found " + ctx->format(*r.g) : "undecided");
        return;
      }
      bool verified = false;
      if (r.g) {
        verified = true;
        for (const Word& ti : set.representatives()) {
          for (const Word& tj : set.representatives()) {
            verified = verified && base.contains(ti * *r.g * tj.inverse()) == Tri::False;
          }
        }
      }
      rec.check("neumann." + id, "neumann-translate", in, verified,
                r.g ? "translate " + ctx->format(*r.g) + " not disjoint" : "no translate found");
    });
  };
  neumann("z2", z2, u, {"1", "v"}, true);
  neumann("bs", bs, x, {"1", "y"}, true);
  auto s3 = make_preset("sym3");
  neumann("sym3_whole", s3, SubgroupHandle::whole(s3), {"1"}, false);

  // Seeded: intersections of random sym3 subgroups.
  std::mt19937_64 rng(cfg.seed);
  size_t bad = 0;
  std::string witness;
  for (size_t t = 0; t < 40; ++t) {
    const Word a = random_word(rng, 2, 5), b = random_word(rng, 2, 5);
    const auto h = SubgroupHandle::generated(s3, {a});
    const auto k = SubgroupHandle::generated(s3, {b});
    const auto hk = intersect(h, k);
    bool ok = hk.contained_in(h) == Tri::True && hk.contained_in(k) == Tri::True;
    const auto ih = index_bounded(hk, SubgroupHandle::whole(s3), 100).index;
    const auto ia = index_bounded(h, SubgroupHandle::whole(s3), 100).index;
    const auto ib = index_bounded(k, SubgroupHandle::whole(s3), 100).index;
    ok = ok && ih && ia && ib && *ih <= *ia * *ib && *ih % *ia == 0 && *ih % *ib == 0;
    if (!ok) {
      ++bad;
      witness = s3->format(a) + " / " + s3->format(b);
    }
  }
  rec.check("intersect.sym3.random", "fiber-product", {{"samples", 40}, {"seed", cfg.seed}}, bad == 0, witness);
}

void suite_families(Recorder& rec, const SuiteConfig&) {
  struct Expect {
    const char* fixture;
    bool admissible;
    bool stable;
  };
  for (const auto& e : {Expect{"sym3-all", true, true}, Expect{"sym3-normal3", true, true},
                        Expect{"sym3-involutions", false, false}, Expect{"sym3-involutions-trivial", true, true},
                        Expect{"cyclic4-half", true, true}, Expect{"klein4-all", true, true}}) {
    const auto fam = family_fixture(e.fixture);
    const auto adm = check_admissible(fam);
    rec.check(std::string("admissible.") + e.fixture, "admissible-family", {{"fixture", e.fixture}},
              adm.admissible() == e.admissible, join(adm.violations));
    const auto st = check_stable(fam);
    rec.check(std::string("stable.") + e.fixture, "stable-family", {{"fixture", e.fixture}}, st.stable == e.stable,
              st.failing ? "failing pair " + std::to_string(st.failing->first) + " <= " +
                               std::to_string(st.failing->second)
                         : "unexpectedly stable");
    bool invariant = true;
    for (uint32_t p : {2u, 3u}) {
      const auto m = permutation_module(*fam.group().regular_table(), p);
      const auto h0 = h0_S(m, fam);
      invariant = invariant && h0.invariant && h0.union_consistent;
    }
    rec.check(std::string("h0.invariant.") + e.fixture, "h0-submodule", {{"fixture", e.fixture}, {"module", "regular"}},
              invariant);
  }
  {
    const auto fam = family_fixture("sym3-normal3");
    const auto m = permutation_module(*fam.group().regular_table(), 2);
    const auto h0 = h0_S(m, fam);
    rec.check("h0.sym3_normal3.regular", "h0-union", {{"fixture", "sym3-normal3"}, {"field", 2}},
              h0.basis.rows() == 2, "dimension " + std::to_string(h0.basis.rows()));
    const auto sub = restrict_module(m, h0.basis);
    const auto g = h0_G_mod_S(sub, fam);
    rec.check("h0_g_mod_s.sym3_normal3", "h0-quotient", {{"fixture", "sym3-normal3"}, {"field", 2}}, g.rows() == 1,
              "dimension " + std::to_string(g.rows()));
    bool rejected = false;
    try {
      h0_G_mod_S(m, fam);
    } catch (const ContractError&) {
      rejected = true;
    }
    rec.check("h0_g_mod_s.rejects_outside", "h0-quotient", {{"fixture", "sym3-normal3"}}, rejected);
  }
  struct H1 {
    const char* id;
    const char* group;
    bool regular;
    size_t expected;
  };
  for (const auto& c : {H1{"z.trivial", "zn(1)", false, 1}, H1{"c2.trivial", "cyclic(2)", false, 1},
                        H1{"c2.regular", "cyclic(2)", true, 0}}) {
    auto ctx = make_preset(c.group);
    const auto m = c.regular ? permutation_module(*ctx->regular_table(), 2) : trivial_module(ctx->generator_count(), 1, 2);
    const auto d = h1_derivations(*ctx, m);
    bool verified = true;
    for (size_t k = 0; k < d.basis.rows(); ++k) {
      for (const Word& r : ctx->presentation().relators) {
        const auto v = evaluate_derivation(m, d.basis.row(k), r);
        verified = verified && std::all_of(v.begin(), v.end(), [](uint32_t e) { return e == 0; });
      }
    }
    rec.check(std::string("h1.") + c.id, "derivations", {{"group", c.group}, {"module", c.regular ? "regular" : "trivial"}, {"field", 2}},
              verified && d.dim_h1 == c.expected,
              "dim Der " + std::to_string(d.dim_der) + ", dim Ider " + std::to_string(d.dim_inner));
  }
  for (const char* g : {"sym3", "klein4", "cyclic(6)", "bs(2,3)", "zn(2)", "free(2)"}) {
    auto ctx = make_preset(g);
    const auto ab = abelianization(ctx->presentation());
    bool ok = true;
    std::string witness;
    for (uint32_t p : {2u, 3u, 5u}) {
      size_t expected = ab.free_rank;
      for (int64_t d : ab.torsion) expected += d % p == 0;
      const size_t got = h1_derivations(*ctx, trivial_module(ctx->generator_count(), 1, p)).dim_h1;
      if (got != expected) {
        ok = false;
        witness = "p=" + std::to_string(p) + ": " + std::to_string(got) + " vs " + std::to_string(expected);
      }
    }
    rec.check(std::string("h1.abelianization.") + g, "derivations", {{"group", g}, {"fields", {2, 3, 5}}}, ok, witness);
  }
}

void suite_completion(Recorder& rec, const SuiteConfig&) {
  for (const char* name : {"sym3-normal3", "sym3-all", "cyclic4-half", "klein4-all", "klein4-half",
                           "sym3-involutions-trivial", "whole"}) {
    rec.guarded(std::string("laws.") + name, "completion-laws", {{"fixture", name}}, [&] {
      const TruncatedCompletion tc(family_fixture(name));
      const auto report = verify_laws(tc, tc.family().group().regular_table()->representatives());
      json counts = json::object();
      for (const auto& [law, n] : report.counts) counts[law] = n;
      std::string witness;
      if (!report.failures.empty()) witness = report.failures[0].law + ": " + report.failures[0].witness;
      rec.check(std::string("laws.") + name, "completion-laws",
                {{"fixture", name}, {"elements", report.element_count}, {"checks", counts}},
                report.failures.empty() && report.stable, witness.empty() ? "truncation not stable" : witness);
    });
  }
  for (const char* name : {"sym3-normal3", "cyclic4-half", "klein4-all", "klein4-half", "whole"}) {
    rec.guarded(std::string("profinite.") + name, "inverse-limit", {{"fixture", name}}, [&] {
      const auto r = profinite_compare(TruncatedCompletion(family_fixture(name)));
      rec.check(std::string("profinite.") + name, "inverse-limit",
                {{"fixture", name}, {"completion", r.completion_size}, {"limit", r.limit_size}}, r.isomorphic(),
                "bijective " + std::to_string(r.bijective) + ", homomorphism " + std::to_string(r.homomorphism));
    });
  }
  const std::pair<const char*, size_t> sizes[] = {{"sym3-normal3", 2}, {"sym3-all", 6}, {"whole", 1}};
  for (const auto& [name, n] : sizes) {
    const auto got = TruncatedCompletion(family_fixture(name)).enumerate().size();
    rec.check(std::string("size.") + name, "compatible-functions", {{"fixture", name}}, got == n,
              std::to_string(got) + " elements");
  }
  for (const char* name : {"sym3-all", "sym3-normal3", "sym3-involutions"}) {
    const auto scan = invertibility_scan(TruncatedCompletion(family_fixture(name)));
    const bool stable = check_stable(family_fixture(name)).stable;
    // Stable fixtures must be groups; other scans are reports only.
    rec.add(std::string("scan.") + name, "invertibility-scan",
            {{"fixture", name}, {"total", scan.total}, {"invertible", scan.invertible}, {"stable", stable}},
            !stable ? Outcome::Pass : (scan.non_invertible.empty() ? Outcome::Pass : Outcome::Fail),
            scan.non_invertible.empty() ? "" : std::to_string(scan.non_invertible.size()) + " non-invertible elements");
  }
}

void suite_ends(Recorder& rec, const SuiteConfig& cfg) {
  std::vector<size_t> line_radii;
  for (size_t r = 1; r <= 20; ++r) line_radii.push_back(r);
  json radii = cfg.radii;
  auto z = make_preset("zn(1)");
  const auto line = ends_estimate(SubgroupHandle::trivial(z), {z->parse("t")}, line_radii);
  bool constant = true;
  for (size_t i = 2; i < line.counts.size(); ++i) constant = constant && line.counts[i] == 2;
  rec.check("estimate.z.trivial", "ends-of-pair", {{"group", "zn(1)"}, {"L", "1"}, {"radii", "1..20"}},
            constant && line.estimate == 2, "counts not constantly 2 from radius 3");

  auto z2 = make_preset("zn(2)");
  const std::vector<Word> uv{z2->parse("u"), z2->parse("v")};
  const auto grid = ends_estimate(SubgroupHandle::trivial(z2), uv, cfg.radii);
  rec.check("estimate.z2.trivial", "ends-of-pair", {{"group", "zn(2)"}, {"L", "1"}, {"radii", radii}},
            grid.estimate == 1, "estimate " + std::to_string(grid.estimate));
  const auto u = SubgroupHandle::cyclic(z2, z2->parse("u"));
  const auto strip = ends_estimate(u, uv, cfg.radii);
  rec.check("estimate.z2.u", "ends-of-pair", {{"group", "zn(2)"}, {"L", "<u>"}, {"radii", radii}},
            strip.estimate == 2, "estimate " + std::to_string(strip.estimate));

  auto bs = make_preset("bs(2,3)");
  const auto l = SubgroupHandle::cyclic(bs, bs->parse("x^2"));
  const auto ball = coset_graph_ball(l, {bs->parse("x"), bs->parse("y")}, cfg.radii.back());
  const auto tree = ends_from_ball(ball, cfg.radii);
  rec.check("estimate.bs.x2", "ends-of-pair", {{"group", "bs(2,3)"}, {"L", "<x^2>"}, {"radii", radii}, {"counts", tree.counts}},
            tree.estimate >= 2, "estimate " + std::to_string(tree.estimate));
  const auto c3 = boundary_check([](const Word& g) { return bs::on_far_side(g); }, ball, cfg.radii);
  size_t settled = 1;
  while (settled < c3.boundary_counts.size() && c3.boundary_counts[settled] != c3.boundary_counts[settled - 1]) ++settled;
  bool bounded = settled < c3.boundary_counts.size();
  for (size_t i = settled; i < c3.boundary_counts.size(); ++i) bounded = bounded && c3.boundary_counts[i] <= c3.boundary_counts[i - 1];
  rec.check("boundary.bs.far_side", "boundary-in-Y",
            {{"group", "bs(2,3)"}, {"L", "<x^2>"}, {"radii", radii}, {"boundary_counts", c3.boundary_counts}},
            bounded && c3.contained_in_y && c3.saturated, "boundary counts not settled or edge outside Y");

  const auto ball2 = coset_graph_ball(u, uv, cfg.radii.back());
  const auto half = boundary_check([](const Word& g) { return exponent_sum(g, 1) > 0; }, ball2, cfg.radii);
  bool ones = std::all_of(half.boundary_counts.begin(), half.boundary_counts.end(), [](size_t c) { return c == 1; });
  rec.check("boundary.z2.half_line", "boundary-in-Y", {{"group", "zn(2)"}, {"L", "<u>"}, {"B", "v-exponent > 0"}},
            ones && half.contained_in_y);

  auto s3 = make_preset("sym3");
  const auto h = SubgroupHandle::generated(s3, {s3->parse("a")});
  rec.tri("double_coset.sym3.coset", "double-coset-union", {{"group", "sym3"}, {"H", "<a>"}, {"B", "bH"}},
          double_coset_membership(CosetSet(h, CosetSide::Left, {s3->parse("b")}), h, 4), Tri::False);
  rec.tri("double_coset.sym3.full", "double-coset-union", {{"group", "sym3"}, {"H", "<a>"}, {"B", "HbH"}},
          double_coset_membership(*double_coset(h, s3->parse("b"), 6), h, 4), Tri::True);
}

void suite_thompson(Recorder& rec, const SuiteConfig& cfg) {
  size_t fails = 0;
  std::string witness;
  for (uint32_t n = 1; n <= 10; ++n) {
    for (uint32_t m = 0; m < n; ++m) {
      if (!thompson::verify_conjugation_identity(m, n)) {
        ++fails;
        witness = "m=" + std::to_string(m) + ", n=" + std::to_string(n);
      }
    }
  }
  rec.check("grid.conjugation", "identity-grid", {{"range", "0 <= m < n <= 10"}}, fails == 0, witness);
  fails = 0;
  for (uint32_t i = 0; i <= 12; ++i) {
    for (uint32_t j = i + 1; j <= 12; ++j) {
      const Word a = thompson::a_generator(i), b = thompson::a_generator(j);
      if (!thompson::equal(a * b, b * a)) {
        ++fails;
        witness = "a" + std::to_string(i) + ", a" + std::to_string(j);
      }
    }
  }
  rec.check("grid.commutation", "identity-grid", {{"range", "a_i, a_j with i < j <= 12"}}, fails == 0, witness);
  for (const char* g : {"x0^2", "x0^-2", "x0 x1", "x1 x0^-1", "x0^2 x1^-2"}) {
    const Word w = parse_word(g);
    const auto s = thompson::verify_shift(w, 20);
    rec.check(std::string("grid.shift.") + g, "shift-property", {{"g", g}, {"n_max", 20}}, s.all_pass(),
              "identity fails at n = 20");
    const auto r = thompson::am_in_conjugate_intersection({w}, 20);
    rec.check(std::string("grid.intersection.") + g, "conjugate-intersection", {{"g", g}, {"m_bound", 20}},
              r.m.has_value(), "no m within bound");
  }
  std::mt19937_64 rng(cfg.seed);
  size_t bad = 0;
  for (size_t t = 0; t < cfg.random_samples; ++t) {
    const Word w = random_word(rng, 4, 10);
    const auto nf = thompson::f_normal_form(w);
    if (thompson::f_normal_form(nf.to_word()) != nf || !thompson::is_trivial(w * nf.to_word().inverse())) {
      ++bad;
      witness = format_word(w);
    }
  }
  rec.check("normal_form.idempotent", "normal-form", {{"samples", cfg.random_samples}, {"seed", cfg.seed}}, bad == 0,
            witness);
}

void suite_bs(Recorder& rec, const SuiteConfig& cfg) {
  const auto form = bs::britton_reduce(parse_word("y^-1 x^2 y", Alphabet({"x", "y"})));
  rec.check("britton.relation", "britton-form", {{"w", "y^-1 x^2 y"}}, form.as_x_power() == std::optional<int64_t>(3),
            "not reduced to x^3");
  for (const auto& [g, a, b] : {std::tuple{"y", 2, 3}, std::tuple{"y^-1", 3, 2}, std::tuple{"y^2", 4, 9}}) {
    const auto pc = bs::power_conjugate(parse_word(g, Alphabet({"x", "y"})), 64);
    rec.check(std::string("power_conjugate.") + g, "power-conjugate", {{"g", g}},
              pc == std::optional<std::pair<int64_t, int64_t>>({a, b}),
              pc ? "(" + std::to_string(pc->first) + ", " + std::to_string(pc->second) + ")" : "none");
  }
  auto bsx = make_preset("bs(2,3)");
  const auto x = SubgroupHandle::cyclic(bsx, bsx->parse("x"));
  rec.tri("near_normal.x", "near-normal", {{"H", "<x>"}, {"gens", "x,y"}},
          near_normal_on(x, {bsx->parse("x"), bsx->parse("y")}, cfg.index_bound).result, Tri::True);
  const auto fam = bs::family_axiom_check({bsx->parse("y"), bsx->parse("y^-1")}, 12);
  rec.check("family_axioms", "family-axioms", {{"conjugators", "y,y^-1"}, {"bound", 12}}, fam.pass(),
            join(fam.failures));
  const auto e = todd_coxeter(*bsx, {bsx->parse("x")}, 10000);
  rec.check("todd_coxeter.x", "coset-enumeration", {{"subgroup", "x"}, {"limit", 10000}},
            std::holds_alternative<Incomplete>(e), "enumeration closed");
  std::mt19937_64 rng(cfg.seed);
  size_t bad = 0;
  std::string witness;
  for (size_t t = 0; t < cfg.random_samples; ++t) {
    const Word w = random_word(rng, 2, 10);
    const Word back = bs::britton_reduce(w).to_word();
    if (!bs::is_trivial(w * back.inverse()) || bs::britton_reduce(back).to_word() != back) {
      ++bad;
      witness = bsx->format(w);
    }
  }
  rec.check("britton.idempotent", "britton-form", {{"samples", cfg.random_samples}, {"seed", cfg.seed}}, bad == 0,
            witness);
}

using SuiteFn = void (*)(Recorder&, const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"words", suite_words},   {"groups", suite_groups},         {"subgroups", suite_subgroups},
      {"families", suite_families}, {"completion", suite_completion}, {"ends", suite_ends},
      {"thompson", suite_thompson}, {"bs", suite_bs}};
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  out.push_back("all");
  return out;
}

RunReport run_suite(std::string_view name, const SuiteConfig& config) {
  RunReport report;
  report.suite = std::string(name);
  report.seed = config.seed;
  bool matched = false;
  for (const auto& [suite, fn] : registry()) {
    if (name != "all" && name != suite) continue;
    matched = true;
    Recorder rec(report, suite);
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(rec, config);
    } catch (const std::exception& e) {
      rec.check("aborted", "suite-runner", json::object(), false, e.what());
    }
    if (config.timing) {
      const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
      report.timing_ms.emplace_back(suite, dt.count());
    }
  }
  if (!matched) throw ContractError("unknown suite: " + std::string(name));
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  return report;
}

}  // namespace cgt
