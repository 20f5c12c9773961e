#include "cgt/ends.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace cgt {

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

size_t CosetGraphBall::vertex_count(size_t r) const {
  size_t n = 0;
  for (size_t d : depth) n += d <= r;
  return n;
}

size_t CosetGraphBall::edge_count(size_t r) const {
  size_t n = 0;
  for (const auto& e : edges) n += e.level <= r;
  return n;
}

CosetGraphBall coset_graph_ball(const SubgroupHandle& l, const std::vector<Word>& x, size_t radius) {
  const GroupContext& ctx = l.group();
  CosetGraphBall ball;
  ball.radius = radius;
  ball.generators = x;

  std::unordered_map<Word, size_t, WordHash> element_index;  // normal form -> element
  std::map<std::vector<int64_t>, size_t> vertex_by_key;
  std::map<std::pair<size_t, size_t>, size_t> edge_index;

  auto vertex_of = [&](const Word& g, size_t d) -> size_t {
    if (auto key = l.left_coset_key(g)) {
      auto [it, fresh] = vertex_by_key.emplace(*key, ball.vertices.size());
      if (!fresh) return it->second;
    } else {
      for (size_t v = 0; v < ball.vertices.size(); ++v) {
        const Tri same = l.contains(ball.vertices[v].inverse() * g);
        if (same == Tri::Unknown) throw ContractError("coset equality undecided for " + ctx.format(g));
        if (same == Tri::True) return v;
      }
    }
    ball.vertices.push_back(g);
    ball.depth.push_back(d);
    return ball.vertices.size() - 1;
  };
  auto add_element = [&](const Word& g, size_t d) -> std::pair<size_t, bool> {
    const auto nf = ctx.normal_form(g);
    if (!nf) throw ContractError("no normal form for " + ctx.format(g));
    auto [it, fresh] = element_index.emplace(*nf, ball.elements.size());
    if (!fresh) return {it->second, false};
    ball.elements.push_back(g);
    ball.element_depth.push_back(d);
    ball.element_vertex.push_back(vertex_of(g, d));
    return {it->second, true};
  };

  add_element(Word{}, 0);
  for (size_t i = 0; i < ball.elements.size(); ++i) {
    const Word g = ball.elements[i];
    const size_t d = ball.element_depth[i];
    for (size_t k = 0; k < x.size(); ++k) {
      for (const Word& step : {x[k], x[k].inverse()}) {
        const Word h = g * step;
        size_t j;
        if (d < radius) {
          j = add_element(h, d + 1).first;
        } else {
          const auto nf = ctx.normal_form(h);
          auto it = nf ? element_index.find(*nf) : element_index.end();
          if (it == element_index.end()) continue;
          j = it->second;
        }
        size_t a = ball.element_vertex[i], b = ball.element_vertex[j];
        if (a > b) std::swap(a, b);
        const size_t level = std::max(d, ball.element_depth[j]);
        auto [it, fresh] = edge_index.emplace(std::make_pair(a, b), ball.edges.size());
        if (fresh) {
          ball.edges.push_back({a, b, k, level});
        } else if (level < ball.edges[it->second].level) {
          ball.edges[it->second].level = level;
          ball.edges[it->second].label = k;
        }
      }
    }
  }
  return ball;
}

EndsReport ends_from_ball(const CosetGraphBall& ball, const std::vector<size_t>& radii) {
  EndsReport r;
  r.radii = radii;
  size_t inner = 0;
  for (size_t outer : radii) {
    if (outer <= inner) throw ContractError("radii must be strictly increasing");
    if (outer > ball.radius) throw ContractError("radius beyond the ball");
    UnionFind uf(ball.vertices.size());
    auto in_annulus = [&](size_t v) { return ball.depth[v] > inner && ball.depth[v] <= outer; };
    for (const auto& e : ball.edges) {
      if (e.level <= outer && in_annulus(e.a) && in_annulus(e.b)) uf.unite(e.a, e.b);
    }
    std::vector<bool> touches(ball.vertices.size(), false);
    for (size_t v = 0; v < ball.vertices.size(); ++v) {
      if (in_annulus(v) && ball.depth[v] == outer) touches[uf.find(v)] = true;
    }
    r.counts.push_back(static_cast<size_t>(std::count(touches.begin(), touches.end(), true)));
    inner = outer;
  }
  if (!r.counts.empty()) r.estimate = r.counts.back();
  r.stabilized = r.counts.size() >= 2 && r.counts[r.counts.size() - 1] == r.counts[r.counts.size() - 2];
  return r;
}

EndsReport ends_estimate(const SubgroupHandle& l, const std::vector<Word>& x, const std::vector<size_t>& radii) {
  if (radii.empty()) throw ContractError("empty radius schedule");
  return ends_from_ball(coset_graph_ball(l, x, radii.back()), radii);
}

std::vector<bool> vertex_set(const CosetGraphBall& ball, const std::function<bool(const Word&)>& pred) {
  std::vector<bool> out;
  for (const Word& v : ball.vertices) out.push_back(pred(v));
  return out;
}

std::vector<CosetGraphBall::Edge> boundary_edges(const std::vector<bool>& b, const CosetGraphBall& ball, size_t r) {
  std::vector<CosetGraphBall::Edge> out;
  for (const auto& e : ball.edges) {
    if (e.level <= r && e.a != e.b && b[e.a] != b[e.b]) out.push_back(e);
  }
  return out;
}

BoundaryReport boundary_check(const std::function<bool(const Word&)>& pred, const CosetGraphBall& ball,
                          const std::vector<size_t>& radii) {
  BoundaryReport r;
  r.radii = radii;
  const size_t n = ball.elements.size();
  std::vector<bool> in_b(n);
  for (size_t i = 0; i < n; ++i) in_b[i] = pred(ball.elements[i]);
  const std::vector<bool> vb = vertex_set(ball, pred);
  for (size_t i = 0; i < n; ++i) r.saturated = r.saturated && in_b[i] == vb[ball.element_vertex[i]];

  // Y0: g in B + Bx^-1 or B + Bx, i.e. membership changes along gx or gx^-1.
  std::vector<bool> in_y0(n, false);
  for (size_t i = 0; i < n; ++i) {
    for (const Word& x : ball.generators) {
      for (const Word& s : {x, x.inverse()}) {
        if (pred(ball.elements[i] * s) != in_b[i]) in_y0[i] = true;
      }
    }
  }
  for (size_t radius : radii) {
    std::vector<bool> y(ball.vertices.size(), false);
    for (size_t i = 0; i < n; ++i) {
      if (ball.element_depth[i] <= radius && in_y0[i]) y[ball.element_vertex[i]] = true;
    }
    size_t y_count = 0;
    for (size_t v = 0; v < y.size(); ++v) y_count += y[v] && ball.depth[v] <= radius;
    const auto boundary = boundary_edges(vb, ball, radius);
    for (const auto& e : boundary) r.contained_in_y = r.contained_in_y && y[e.a] && y[e.b];
    r.boundary_counts.push_back(boundary.size());
    r.y_counts.push_back(y_count);
  }
  return r;
}

Tri double_coset_membership(const CosetSet& b, const SubgroupHandle& h, size_t ball_radius) {
  if (b.side() != CosetSide::Left) throw ContractError("double coset test expects left cosets");
  if (!h.finitely_listed()) throw ContractError("H needs a finite generating set");
  const uint32_t gens = static_cast<uint32_t>(h.generators().size());
  Tri result = Tri::True;
  for (const Word& t : b.representatives()) {
    for_each_word(gens, ball_radius, [&](const Word& w) {
      Word element;
      for (Letter l : w) element *= l.sign > 0 ? h.generators()[l.gen] : h.generators()[l.gen].inverse();
      const Tri in = b.contains(element * t);
      if (in == Tri::False) {
        result = Tri::False;
        return false;
      }
      if (in == Tri::Unknown) result = Tri::Unknown;
      return true;
    });
    if (result == Tri::False) break;
  }
  return result;
}

std::string to_dot(const CosetGraphBall& ball, size_t r, const GroupContext& ctx, const std::vector<bool>& highlight) {
  std::ostringstream out;
  out << "graph coset_ball {\n  node [shape=ellipse];\n";
  for (size_t v = 0; v < ball.vertices.size(); ++v) {
    if (ball.depth[v] > r) continue;
    const std::string name = ball.vertices[v].empty() ? std::string("1") : ctx.format(ball.vertices[v]);
    out << "  v" << v << " [label=\"" << name << "L\"";
    if (!highlight.empty() && highlight[v]) out << ", style=filled, fillcolor=lightblue";
    out << "];\n";
  }
  for (const auto& e : ball.edges) {
    if (e.level > r) continue;
    out << "  v" << e.a << " -- v" << e.b << " [label=\"" << ctx.format(ball.generators[e.label]) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace cgt
