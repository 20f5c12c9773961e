#include <doctest.h>

#include "cgt/completion.hpp"
#include "oracles.hpp"

using namespace cgt;

namespace {

std::vector<Word> elements_of(const GroupContext& ctx) { return ctx.regular_table()->representatives(); }

}  // namespace

TEST_CASE("element counts of fixture completions") {
  const std::pair<const char*, size_t> expected[] = {
      {"sym3-normal3", 2}, {"sym3-all", 6}, {"cyclic4-half", 2}, {"klein4-all", 4},
      {"klein4-half", 2},  {"whole", 1},    {"sym3-involutions-trivial", 6}};
  for (const auto& [name, count] : expected) {
    const TruncatedCompletion tc(family_fixture(name));
    CHECK_MESSAGE(tc.enumerate().size() == count, name);
  }
  CHECK_THROWS_AS(TruncatedCompletion(family_fixture("sym3-all")).enumerate(3), ContractError);
}

TEST_CASE("group laws on every fixture") {
  for (const auto& name : family_fixture_names()) {
    const TruncatedCompletion tc(family_fixture(name));
    const auto report = verify_laws(tc, elements_of(tc.family().group()));
    CHECK_MESSAGE(report.failures.empty(), name);
    if (name != "sym3-involutions") CHECK_MESSAGE(report.stable, name);
    for (const auto& f : report.failures) MESSAGE(f.law << ": " << f.witness);
  }
}

TEST_CASE("embed is injective with a trivial node") {
  for (const char* name : {"sym3-all", "klein4-all", "sym3-involutions-trivial"}) {
    const TruncatedCompletion tc(family_fixture(name));
    std::set<CompletionElement> images;
    const auto elements = elements_of(tc.family().group());
    for (const Word& g : elements) images.insert(tc.embed(g));
    CHECK(images.size() == elements.size());
    CHECK(tc.embed(Word{}) == tc.identity());
  }
}

TEST_CASE("invert_stable on the order-2 quotient of sym3") {
  const TruncatedCompletion tc(family_fixture("sym3-normal3"));
  const auto elements = tc.enumerate();
  REQUIRE(elements.size() == 2);
  for (const auto& f : elements) {
    CHECK(tc.invert_stable(f) == f);  // order-2 group
    CHECK(tc.multiply(f, f) == tc.identity());
  }
  CHECK(tc.invert_stable(tc.identity()) == tc.identity());
}

TEST_CASE("missing node and invertibility scan on a non-directed truncation") {
  const TruncatedCompletion tc(family_fixture("sym3-involutions"));
  const auto elements = tc.enumerate();
  bool missing = false;
  for (const auto& f : elements) {
    try {
      tc.invert_stable(f);
    } catch (const MissingNode&) {
      missing = true;
    }
  }
  CHECK(missing);
  const auto scan = invertibility_scan(tc);
  CHECK(scan.total == elements.size());
  CHECK(scan.invertible + scan.non_invertible.size() == scan.total);
}

TEST_CASE("invertibility scan on stable fixtures") {
  for (const char* name : {"sym3-all", "sym3-normal3", "cyclic4-half", "klein4-all"}) {
    const auto scan = invertibility_scan(TruncatedCompletion(family_fixture(name)));
    CHECK(scan.non_invertible.empty());
    CHECK(scan.invertible == scan.total);
  }
}

TEST_CASE("profinite comparison") {
  for (const char* name : {"sym3-normal3", "cyclic4-half", "klein4-all", "klein4-half", "whole"}) {
    const auto r = profinite_compare(TruncatedCompletion(family_fixture(name)));
    CHECK_MESSAGE(r.isomorphic(), name);
    CHECK(r.completion_size == r.limit_size);
  }
  CHECK(profinite_compare(TruncatedCompletion(family_fixture("klein4-half"))).completion_size == 2);
  CHECK_FALSE(profinite_compare(TruncatedCompletion(family_fixture("sym3-all"))).all_normal);
}

TEST_CASE("module action of the completion") {
  auto fam = family_fixture("sym3-normal3");
  const TruncatedCompletion tc(fam);
  const auto& ctx = tc.family().group();
  const auto module = permutation_module(*ctx.regular_table(), 2);
  const auto h0 = h0_S(module, tc.family());
  const auto elements = tc.enumerate();
  std::vector<Word> ball;
  for_each_word(2, 4, [&](const Word& w) {
    ball.push_back(w);
    return true;
  });
  for (uint32_t code = 0; code < (1u << h0.basis.rows()); ++code) {
    std::vector<uint32_t> coeffs(h0.basis.rows());
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = (code >> i) & 1;
    const auto m = vec_mul(coeffs, h0.basis);
    CHECK(tc.act(m, tc.identity(), module) == m);
    for (const Word& g : elements_of(ctx)) CHECK(tc.act(m, tc.embed(g), module) == vec_mul(m, module.matrix_of(g)));
    for (const auto& f : elements) {
      const auto image = tc.act(m, f, module);
      // Independent of the fixing node and of the representative.
      for (size_t h : tc.fixing_nodes(m, module)) {
        for (const Word& w : ball) {
          if (tc.table(h).coset_of(w) == f.cosets[h]) CHECK(vec_mul(m, module.matrix_of(w)) == image);
        }
      }
      for (const auto& f2 : elements) {
        CHECK(tc.act(tc.act(m, f, module), f2, module) == tc.act(m, tc.multiply(f, f2), module));
      }
    }
  }
  std::vector<uint32_t> e0(6, 0);
  e0[0] = 1;
  CHECK_THROWS_AS(tc.act(e0, tc.identity(), module), ContractError);
}

TEST_CASE("nodes without coset tables are rejected") {
  auto z2 = make_preset("zn(2)");
  CHECK_THROWS_AS(TruncatedCompletion(FamilyTruncation(z2, parse_nodes(z2, "u; G"))), ContractError);
}
