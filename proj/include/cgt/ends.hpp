#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cgt/subgroups.hpp"

namespace cgt {

// Ball in the coset graph of left cosets gL, edges (gL, gxL), x in X.
// Built from the ball of group elements of X-length ≤ radius; an edge is
// present at radius r when some element g with |g|, |gx| ≤ r realizes it.
struct CosetGraphBall {
  struct Edge {
    size_t a = 0, b = 0;  // a ≤ b
    size_t label = 0;     // index into X of the first realization
    size_t level = 0;     // least radius realizing the edge
  };

  size_t radius = 0;
  std::vector<Word> generators;       // X
  std::vector<Word> vertices;         // first element found in each coset
  std::vector<size_t> depth;          // least element length in the coset
  std::vector<Edge> edges;            // distinct vertex pairs, loops included
  std::vector<Word> elements;         // element ball in BFS order
  std::vector<size_t> element_depth;
  std::vector<size_t> element_vertex;

  size_t vertex_count(size_t r) const;
  size_t edge_count(size_t r) const;
};

// Throws ContractError when coset or element equality is undecided.
CosetGraphBall coset_graph_ball(const SubgroupHandle& l, const std::vector<Word>& x, size_t radius);

struct EndsReport {
  std::vector<size_t> radii;
  // counts[i]: components of ball(radii[i]) minus ball(radii[i-1]) (radius
  // 0 before the first entry) containing a vertex at depth radii[i].
  std::vector<size_t> counts;
  bool stabilized = false;
  size_t estimate = 0;
};

// Radii must be strictly increasing and positive.
EndsReport ends_estimate(const SubgroupHandle& l, const std::vector<Word>& x, const std::vector<size_t>& radii);
EndsReport ends_from_ball(const CosetGraphBall& ball, const std::vector<size_t>& radii);

// Vertex predicate from an element predicate, evaluated on representatives.
std::vector<bool> vertex_set(const CosetGraphBall& ball, const std::function<bool(const Word&)>& pred);

// Non-loop edges of level ≤ r with exactly one endpoint in b.
std::vector<CosetGraphBall::Edge> boundary_edges(const std::vector<bool>& b, const CosetGraphBall& ball, size_t r);

struct BoundaryReport {
  std::vector<size_t> radii;
  std::vector<size_t> boundary_counts;
  std::vector<size_t> y_counts;   // vertices of Y within each radius
  bool saturated = true;          // pred constant on the ball elements of each coset
  bool contained_in_y = true;
};

// B is given as an L-saturated element predicate. Y is the L-saturation of
// the elements g with pred(g) != pred(gx) or pred(g) != pred(gx^-1).
BoundaryReport boundary_check(const std::function<bool(const Word&)>& pred, const CosetGraphBall& ball,
                          const std::vector<size_t>& radii);

// Whether the union of left cosets B is invariant under left
// multiplication by H: each representative is tested against every word of
// length ≤ ball_radius in the generators of H.
Tri double_coset_membership(const CosetSet& b, const SubgroupHandle& h, size_t ball_radius);

// Graphviz text of the ball at radius r; vertices in `highlight` are filled.
std::string to_dot(const CosetGraphBall& ball, size_t r, const GroupContext& ctx,
                   const std::vector<bool>& highlight = {});

}  // namespace cgt
