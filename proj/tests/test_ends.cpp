#include <doctest.h>

#include "cgt/ends.hpp"
#include "oracles.hpp"

using namespace cgt;

namespace {

size_t non_loop_edges(const CosetGraphBall& ball, size_t r) {
  size_t n = 0;
  for (const auto& e : ball.edges) n += e.level <= r && e.a != e.b;
  return n;
}

// Every edge is realized by a ball element of one endpoint and a generator.
void check_well_formed(const CosetGraphBall& ball, const SubgroupHandle& l) {
  for (size_t i = 0; i < ball.vertices.size(); ++i) {
    for (size_t j = i + 1; j < ball.vertices.size(); ++j) {
      CHECK(l.contains(ball.vertices[i].inverse() * ball.vertices[j]) == Tri::False);
    }
  }
  for (const auto& e : ball.edges) {
    bool realized = false;
    for (size_t k = 0; k < ball.elements.size() && !realized; ++k) {
      const size_t v = ball.element_vertex[k];
      if (v != e.a && v != e.b) continue;
      const size_t other = v == e.a ? e.b : e.a;
      for (const Word& x : ball.generators) {
        for (const Word& s : {x, x.inverse()}) {
          realized = realized || l.contains(ball.vertices[other].inverse() * ball.elements[k] * s) == Tri::True;
        }
      }
    }
    CHECK(realized);
  }
}

}  // namespace

TEST_CASE("coset graph balls of small fixtures") {
  auto z = make_preset("zn(1)");
  const auto path = coset_graph_ball(SubgroupHandle::trivial(z), {z->parse("t")}, 3);
  CHECK(path.vertex_count(3) == 7);
  CHECK(non_loop_edges(path, 3) == 6);
  check_well_formed(path, SubgroupHandle::trivial(z));

  auto z2 = make_preset("zn(2)");
  const auto u = SubgroupHandle::cyclic(z2, z2->parse("u"));
  const auto line = coset_graph_ball(u, {z2->parse("u"), z2->parse("v")}, 2);
  CHECK(line.vertex_count(2) == 5);
  CHECK(non_loop_edges(line, 2) == 4);
  check_well_formed(line, u);
  for (const Word& v : line.vertices) CHECK(exponent_sum(v, 0) == 0);
}

TEST_CASE("BS(2,3) coset ball against Britton brute force") {
  auto bs = make_preset("bs(2,3)");
  for (int m : {1, 2}) {
    const auto l = SubgroupHandle::cyclic(bs, Word::power(0, m));
    for (size_t r : {1, 2, 3}) {
      const auto ball = coset_graph_ball(l, {bs->parse("x"), bs->parse("y")}, r);
      std::vector<Word> reps;
      for_each_word(2, r, [&](const Word& g) {
        for (const Word& h : reps) {
          for (int64_t k = -30; k <= 30; ++k) {
            if (oracle::bs_naive_trivial(h.inverse() * g * Word::power(0, -m * k), 2, 3)) return true;
          }
        }
        reps.push_back(g);
        return true;
      });
      CHECK(ball.vertex_count(r) == reps.size());
      check_well_formed(ball, l);
    }
  }
}

TEST_CASE("ends estimates") {
  auto z = make_preset("zn(1)");
  std::vector<size_t> radii;
  for (size_t r = 1; r <= 20; ++r) radii.push_back(r);
  const auto line = ends_estimate(SubgroupHandle::trivial(z), {z->parse("t")}, radii);
  for (size_t i = 2; i < line.counts.size(); ++i) CHECK(line.counts[i] == 2);
  CHECK(line.stabilized);
  CHECK(line.estimate == 2);

  auto z2 = make_preset("zn(2)");
  const std::vector<Word> uv{z2->parse("u"), z2->parse("v")};
  const auto grid = ends_estimate(SubgroupHandle::trivial(z2), uv, {2, 4, 6, 8});
  CHECK(grid.estimate == 1);
  CHECK(grid.stabilized);
  const auto strip = ends_estimate(SubgroupHandle::cyclic(z2, z2->parse("u")), uv, {2, 4, 6, 8});
  CHECK(strip.estimate == 2);
  CHECK(strip.stabilized);

  auto bs = make_preset("bs(2,3)");
  const auto tree = ends_estimate(SubgroupHandle::cyclic(bs, bs->parse("x^2")), {bs->parse("x"), bs->parse("y")},
                                  {2, 4, 6, 8});
  CHECK(tree.estimate >= 2);
  CHECK_THROWS_AS(ends_estimate(SubgroupHandle::trivial(z), {z->parse("t")}, {3, 2}), ContractError);
}

TEST_CASE("boundary edges and the Y set") {
  auto z = make_preset("zn(1)");
  const auto path = coset_graph_ball(SubgroupHandle::trivial(z), {z->parse("t")}, 4);
  std::vector<bool> single(path.vertices.size(), false);
  single[0] = true;
  CHECK(boundary_edges(single, path, 4).size() == 2);
  CHECK(boundary_edges(std::vector<bool>(path.vertices.size(), true), path, 4).empty());

  auto z2 = make_preset("zn(2)");
  const auto u = SubgroupHandle::cyclic(z2, z2->parse("u"));
  const auto ball = coset_graph_ball(u, {z2->parse("u"), z2->parse("v")}, 6);
  auto half = [](const Word& g) { return exponent_sum(g, 1) > 0; };
  const auto b = vertex_set(ball, half);
  std::vector<bool> complement;
  for (bool x : b) complement.push_back(!x);
  for (size_t r = 1; r <= 6; ++r) {
    const auto e = boundary_edges(b, ball, r);
    REQUIRE(e.size() == 1);
    CHECK(ball.depth[e[0].a] + ball.depth[e[0].b] == 1);
    CHECK(boundary_edges(complement, ball, r).size() == 1);
  }
  const auto c3 = boundary_check(half, ball, {2, 4, 6});
  CHECK(c3.saturated);
  CHECK(c3.contained_in_y);
  CHECK(c3.boundary_counts == std::vector<size_t>{1, 1, 1});
  CHECK(c3.y_counts == std::vector<size_t>{2, 2, 2});

  const auto all = boundary_check([](const Word&) { return true; }, ball, {6});
  CHECK(all.boundary_counts == std::vector<size_t>{0});
  CHECK(all.y_counts == std::vector<size_t>{0});

  // Set-level identity (B + Bg)h = Bh + Bgh on the element ball.
  for (size_t i = 0; i < 12; ++i) {
    for (size_t j = 0; j < 12; ++j) {
      const Word& g = ball.elements[i];
      const Word& h = ball.elements[j];
      for (const Word& zw : ball.elements) {
        const bool lhs = half(zw * h.inverse()) != half(zw * h.inverse() * g.inverse());
        const bool rhs = half(zw * h.inverse()) != half(zw * (g * h).inverse());
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("boundary of the Bass-Serre far side lies in Y for BS(2,3)") {
  auto bs = make_preset("bs(2,3)");
  const auto l = SubgroupHandle::cyclic(bs, bs->parse("x^2"));
  const auto ball = coset_graph_ball(l, {bs->parse("x"), bs->parse("y")}, 8);
  auto side = [](const Word& g) { return bs::on_far_side(g); };
  const auto r = boundary_check(side, ball, {2, 4, 6, 8});
  CHECK(r.saturated);
  CHECK(r.contained_in_y);
  // Bounded: non-increasing once two consecutive counts agree.
  size_t settled = 1;
  while (settled < r.boundary_counts.size() && r.boundary_counts[settled] != r.boundary_counts[settled - 1]) ++settled;
  REQUIRE(settled < r.boundary_counts.size());
  for (size_t i = settled; i < r.boundary_counts.size(); ++i) CHECK(r.boundary_counts[i] <= r.boundary_counts[i - 1]);
  CHECK(r.boundary_counts.back() > 0);
}

TEST_CASE("double coset membership in sym3") {
  auto s3 = make_preset("sym3");
  const auto h = SubgroupHandle::generated(s3, {s3->parse("a")});
  CHECK(double_coset_membership(CosetSet(h, CosetSide::Left, {Word{}}), h, 4) == Tri::True);
  CHECK(double_coset_membership(CosetSet(h, CosetSide::Left, {s3->parse("b")}), h, 4) == Tri::False);
  const auto hbh = double_coset(h, s3->parse("b"), 6);
  REQUIRE(hbh.has_value());
  CHECK(hbh->size() == 2);
  CHECK(double_coset_membership(*hbh, h, 4) == Tri::True);
}

TEST_CASE("dot output") {
  auto z = make_preset("zn(1)");
  const auto path = coset_graph_ball(SubgroupHandle::trivial(z), {z->parse("t")}, 2);
  const auto dot = to_dot(path, 2, *z);
  CHECK(dot.starts_with("graph coset_ball {"));
  CHECK(dot.find("v0 -- v1") != std::string::npos);
}
