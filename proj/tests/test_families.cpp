#include <doctest.h>

#include <cmath>

#include "cgt/families.hpp"
#include "oracles.hpp"

using namespace cgt;

namespace {

oracle::Mat to_mat(const MatrixFp& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j);
  }
  return out;
}

size_t log_p(size_t count, uint32_t p) {
  size_t k = 0;
  while (count > 1) {
    REQUIRE(count % p == 0);
    count /= p;
    ++k;
  }
  return k;
}

// Cross-check of dimensions against exhaustive enumeration.
void check_h1(const GroupContext& ctx, const FiniteModule& m) {
  const auto space = h1_derivations(ctx, m);
  std::vector<oracle::Mat> gens;
  for (const auto& a : m.matrices) gens.push_back(to_mat(a));
  const auto counted = oracle::count_cocycles(gens, ctx.presentation().relators, m.p);
  CHECK(space.dim_der == log_p(counted.derivations, m.p));
  CHECK(space.dim_inner == log_p(counted.inner, m.p));
  for (size_t k = 0; k < space.basis.rows(); ++k) {
    for (const Word& r : ctx.presentation().relators) {
      const auto v = evaluate_derivation(m, space.basis.row(k), r);
      CHECK(std::all_of(v.begin(), v.end(), [](uint32_t e) { return e == 0; }));
    }
  }
}

std::set<oracle::Perm> perm_subgroup(const oracle::PermGroup& g, const SubgroupHandle& h) {
  return g.subgroup(h.generators());
}

}  // namespace

TEST_CASE("admissibility of sym3 truncations") {
  CHECK(check_admissible(family_fixture("sym3-all")).admissible());
  CHECK(check_admissible(family_fixture("sym3-normal3")).admissible());
  CHECK(check_admissible(family_fixture("klein4-all")).admissible());
  const auto inv = check_admissible(family_fixture("sym3-involutions"));
  CHECK(inv.conjugation_closed);
  CHECK_FALSE(inv.downward_directed);
  CHECK(check_admissible(family_fixture("sym3-involutions-trivial")).admissible());
  // Dropping one conjugate breaks conjugation closure.
  auto s3 = make_preset("sym3");
  CHECK_FALSE(check_admissible(FamilyTruncation(s3, parse_nodes(s3, "1; a; G"))).conjugation_closed);
}

TEST_CASE("order and normality relations match permutation brute force") {
  for (const char* name : {"sym3-all", "klein4-all"}) {
    const auto fam = family_fixture(name);
    const auto perms = std::string(name).starts_with("sym3") ? oracle::sym3() : oracle::klein4();
    for (size_t i = 0; i < fam.size(); ++i) {
      const auto hi = perm_subgroup(perms, fam.node(i));
      for (size_t j = 0; j < fam.size(); ++j) {
        const auto hj = perm_subgroup(perms, fam.node(j));
        const bool sub = std::includes(hj.begin(), hj.end(), hi.begin(), hi.end());
        CHECK((fam.le(i, j) == Tri::True) == sub);
        bool normal = sub;
        for (const auto& x : hj) {
          for (const auto& l : hi) {
            normal = normal && hi.count(oracle::compose(oracle::compose(oracle::inverse(x), l), x)) == 1;
          }
        }
        CHECK((fam.normal_in(i, j) == Tri::True) == normal);
      }
    }
  }
}

TEST_CASE("stability") {
  for (const char* name : {"sym3-all", "sym3-normal3", "sym3-involutions-trivial", "cyclic4-half", "klein4-all"}) {
    const auto r = check_stable(family_fixture(name));
    CHECK_MESSAGE(r.stable, name);
  }
  const auto fam = family_fixture("sym3-involutions-trivial");
  for (const auto& [k, h, l] : check_stable(fam).witnesses) {
    if (k != h && fam.node(h).kind() == SubgroupKind::Whole) CHECK(fam.node(l).generators().empty());
  }
  // <a> ≤ G with no node below <a> normal in G.
  auto s3 = make_preset("sym3");
  const auto bad = check_stable(FamilyTruncation(s3, parse_nodes(s3, "a; b; a b a; G")));
  CHECK_FALSE(bad.stable);
  REQUIRE(bad.failing.has_value());
}

TEST_CASE("grow_truncation closes under conjugation and intersection") {
  auto s3 = make_preset("sym3");
  const auto fam = grow_truncation(s3, parse_nodes(s3, "a; G"), 4);
  CHECK(fam.size() == 5);  // three involution subgroups, trivial, G
  CHECK(check_admissible(fam).admissible());
}

TEST_CASE("h0_S on the regular module of sym3") {
  auto s3 = make_preset("sym3");
  const auto regular = permutation_module(*s3->regular_table(), 2);
  regular.validate(*s3);
  const auto fam = family_fixture("sym3-normal3");
  const auto h0 = h0_S(regular, fam);
  // Brute force: vectors of F_2^6 fixed by the order-3 element.
  size_t fixed = 0;
  const MatrixFp c = regular.matrix_of(s3->parse("a b"));
  for (uint32_t code = 0; code < 64; ++code) {
    std::vector<uint32_t> v(6);
    for (size_t i = 0; i < 6; ++i) v[i] = (code >> i) & 1;
    if (vec_mul(v, c) == v) ++fixed;
  }
  CHECK((size_t(1) << h0.basis.rows()) == fixed);
  CHECK(h0.basis.rows() == 2);
  CHECK(h0.invariant);
  CHECK(h0.union_consistent);
  CHECK_THROWS_AS(h0_G_mod_S(regular, fam), ContractError);

  const auto sub = restrict_module(regular, h0.basis);
  sub.validate(*s3);
  CHECK(h0_S(sub, fam).basis.rows() == 2);
  CHECK(h0_G_mod_S(sub, fam).rows() == 1);

  const auto all = family_fixture("sym3-all");
  CHECK(h0_S(regular, all).basis.rows() == 6);
  CHECK(h0_G_mod_S(regular, all).rows() == 1);
  // Monotone: the larger truncation has the larger fixed union.
  for (size_t k = 0; k < h0.basis.rows(); ++k) CHECK(in_span(h0_S(regular, all).basis, h0.basis.row(k)));

  const auto trivial = trivial_module(2, 3, 2);
  CHECK(h0_S(trivial, fam).basis.rows() == 3);
  CHECK(h0_G_mod_S(trivial, fam).rows() == 3);
}

TEST_CASE("h0 invariance on every fixture and permutation module") {
  for (const auto& name : family_fixture_names()) {
    const auto fam = family_fixture(name);
    const auto& ctx = fam.group();
    for (uint32_t p : {2u, 3u}) {
      std::vector<FiniteModule> modules{permutation_module(*ctx.regular_table(), p),
                                        trivial_module(ctx.generator_count(), 2, p)};
      for (size_t i = 0; i < fam.size(); ++i) {
        if (fam.node(i).table()) modules.push_back(permutation_module(*fam.node(i).table(), p));
      }
      for (const auto& m : modules) {
        const auto h0 = h0_S(m, fam);
        CHECK(h0.invariant);
        CHECK(h0.union_consistent);
        const MatrixFp g = fixed_space(m, {Word{pos(0)}, Word{pos(ctx.generator_count() - 1)}});
        for (size_t k = 0; k < g.rows(); ++k) CHECK(in_span(h0.basis, g.row(k)));
      }
    }
  }
}

TEST_CASE("h1 by derivations") {
  auto z = make_preset("zn(1)");
  const auto dz = h1_derivations(*z, trivial_module(1, 1, 2));
  CHECK(dz.dim_der == 1);
  CHECK(dz.dim_inner == 0);
  CHECK(dz.dim_h1 == 1);

  auto c2 = make_preset("cyclic(2)");
  const auto t = h1_derivations(*c2, trivial_module(1, 1, 2));
  CHECK(t.dim_h1 == 1);
  check_h1(*c2, trivial_module(1, 1, 2));
  const auto reg = permutation_module(*c2->regular_table(), 2);
  CHECK(h1_derivations(*c2, reg).dim_h1 == 0);
  check_h1(*c2, reg);

  for (const char* preset : {"sym3", "klein4", "cyclic(4)", "cyclic(6)"}) {
    auto ctx = make_preset(preset);
    for (uint32_t p : {2u, 3u}) {
      const auto m = permutation_module(*ctx->regular_table(), p);
      if (m.dim * ctx->generator_count() <= 12 || p == 2) check_h1(*ctx, m);
      check_h1(*ctx, trivial_module(ctx->generator_count(), 1, p));
    }
  }
}

TEST_CASE("h1 of the trivial module matches the abelianization") {
  for (const char* preset : {"sym3", "klein4", "cyclic(4)", "cyclic(6)", "zn(2)", "bs(2,3)", "free(2)", "zn(1)"}) {
    auto ctx = make_preset(preset);
    const auto ab = abelianization(ctx->presentation());
    for (uint32_t p : {2u, 3u, 5u}) {
      size_t expected = ab.free_rank;
      for (int64_t d : ab.torsion) expected += d % p == 0 ? 1 : 0;
      CHECK(h1_derivations(*ctx, trivial_module(ctx->generator_count(), 1, p)).dim_h1 == expected);
    }
  }
}

TEST_CASE("module text format") {
  const char* text = "field 3\ndim 2\n0 1\n1 0\n\n1 0\n0 -1\n";
  const auto m = parse_module(text);
  CHECK(m.p == 3);
  CHECK(m.matrices.size() == 2);
  CHECK(m.matrices[1].at(1, 1) == 2);
  CHECK(parse_module(serialize_module(m)).matrices == m.matrices);
  CHECK_THROWS_AS(parse_module("field 4\ndim 1\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_module("dim 2\n1 0\n"), ParseError);
  try {
    parse_module("dim 2\n1 x\n0 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  auto k4 = make_preset("klein4");
  CHECK_THROWS_AS(parse_module("dim 1\n1\n\n1\n\n1\n").validate(*k4), ContractError);
  CHECK_THROWS_AS(parse_module("field 2\ndim 1\n0\n\n1\n").validate(*k4), ContractError);
}
