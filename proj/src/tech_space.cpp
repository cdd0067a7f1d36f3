#include "atlas/tech_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "parallel.hpp"

namespace atlas {
namespace {

using nlohmann::json;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string_view to_string(EdgeReason reason) {
  return reason == EdgeReason::SpanningTree ? "spanning-tree" : "top-k";
}

EdgeReason edge_reason_from_string(std::string_view text) {
  if (text == "spanning-tree") return EdgeReason::SpanningTree;
  if (text == "top-k") return EdgeReason::TopK;
  throw std::invalid_argument("unknown edge reason '" + std::string(text) + "'");
}

std::vector<TechEdge> backbone_filter(const ProximityMatrix& matrix, std::size_t k) {
  if (k == 0) throw std::invalid_argument("backbone k must be at least 1");
  const std::size_t n = matrix.size();
  const auto& fields = matrix.fields();

  struct Candidate {
    std::size_t i;
    std::size_t j;  // i < j, so (i, j) order is lexicographic by field code
    double phi;
  };
  std::vector<Candidate> candidates;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (double phi = matrix.phi(i, j); phi > 0.0) candidates.push_back({i, j, phi});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.phi != b.phi) return a.phi > b.phi;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });

  std::map<std::pair<std::size_t, std::size_t>, EdgeReason> chosen;
  DisjointSets forest(n);
  for (const auto& c : candidates) {
    if (forest.unite(c.i, c.j)) chosen.emplace(std::pair{c.i, c.j}, EdgeReason::SpanningTree);
  }

  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::pair<double, std::size_t>> neighbours;
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      if (double phi = matrix.phi(u, v); phi > 0.0) neighbours.emplace_back(phi, u);
    }
    const std::size_t take = std::min(k, neighbours.size());
    std::partial_sort(neighbours.begin(), neighbours.begin() + static_cast<std::ptrdiff_t>(take),
                      neighbours.end(), [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    for (std::size_t r = 0; r < take; ++r) {
      const std::size_t u = neighbours[r].second;
      chosen.emplace(std::pair{std::min(u, v), std::max(u, v)}, EdgeReason::TopK);
    }
  }

  std::vector<TechEdge> edges;
  edges.reserve(chosen.size());
  for (const auto& [pair, reason] : chosen) {
    edges.push_back({fields[pair.first], fields[pair.second], matrix.phi(pair.first, pair.second),
                     reason});
  }
  return edges;
}

TechSpaceGraph build_graph(const CorpusIndex& index, const ProximityMatrix& matrix,
                           std::size_t k) {
  TechSpaceGraph graph;
  graph.level = matrix.level();
  graph.backbone_k = k;
  for (const auto& field : matrix.fields()) {
    graph.nodes.push_back({field, index.members(matrix.level(), field).size()});
  }
  graph.edges = backbone_filter(matrix, k);
  return graph;
}

// Placement: nodes are grouped into connected components of the retained
// graph (ordered by their smallest code) and each component is seeded inside
// its own cell of a ceil(sqrt(C))-column grid over the unit square, at
// 10%-90% of the cell, with draws from mt19937_64(seed) in node order.
// Forces: repulsion kappa^2/d between all pairs, attraction phi*d^2/kappa
// along edges, kappa = sqrt(1/n). Each step is capped by a temperature that
// falls linearly from 0.1 to 0.1/iterations.
LayoutCoordinates compute_layout(const TechSpaceGraph& graph, std::uint64_t seed, int iterations) {
  if (iterations < 1) throw std::invalid_argument("layout iterations must be at least 1");
  LayoutCoordinates layout;
  layout.seed = seed;
  layout.iterations = iterations;
  const std::size_t n = graph.nodes.size();
  if (n == 0) return layout;
  if (n == 1) {
    layout.positions.emplace(graph.nodes[0].code, Point{0.5, 0.5});
    return layout;
  }

  std::map<std::string_view, std::size_t> slot;
  for (std::size_t v = 0; v < n; ++v) slot.emplace(graph.nodes[v].code, v);
  struct Spring {
    std::size_t a;
    std::size_t b;
    double phi;
  };
  std::vector<Spring> springs;
  DisjointSets components(n);
  for (const auto& edge : graph.edges) {
    const std::size_t a = slot.at(edge.a);
    const std::size_t b = slot.at(edge.b);
    springs.push_back({a, b, edge.phi});
    components.unite(a, b);
  }

  // Component roots are their smallest member, so ranking roots by first
  // appearance orders components by smallest code.
  std::map<std::size_t, std::size_t> component_rank;
  for (std::size_t v = 0; v < n; ++v) component_rank.emplace(components.find(v), component_rank.size());
  const std::size_t count = component_rank.size();
  const auto columns = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const std::size_t rows = (count + columns - 1) / columns;
  const double cell_w = 1.0 / static_cast<double>(columns);
  const double cell_h = 1.0 / static_cast<double>(rows);

  std::mt19937_64 rng(seed);
  std::vector<Point> pos(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = component_rank.at(components.find(v));
    const double u1 = unit_draw(rng);
    const double u2 = unit_draw(rng);
    pos[v].x = (static_cast<double>(c % columns) + 0.1 + 0.8 * u1) * cell_w;
    pos[v].y = (static_cast<double>(c / columns) + 0.1 + 0.8 * u2) * cell_h;
  }

  const double kappa = std::sqrt(1.0 / static_cast<double>(n));
  const double kappa2 = kappa * kappa;
  constexpr double kStartTemperature = 0.1;
  std::vector<Point> disp(n);

  for (int it = 0; it < iterations; ++it) {
    const double temperature =
        kStartTemperature * (1.0 - static_cast<double>(it) / static_cast<double>(iterations));

    detail::parallel_for(n, [&](std::size_t v) {
      Point d{0.0, 0.0};
      for (std::size_t u = 0; u < n; ++u) {
        if (u == v) continue;
        double dx = pos[v].x - pos[u].x;
        double dy = pos[v].y - pos[u].y;
        double dist = std::hypot(dx, dy);
        if (dist < 1e-12) {
          // Coincident nodes: separate along a direction fixed by their order.
          dx = v < u ? -1e-9 : 1e-9;
          dy = 1e-9;
          dist = std::hypot(dx, dy);
        }
        const double force = kappa2 / dist;
        d.x += dx / dist * force;
        d.y += dy / dist * force;
      }
      disp[v] = d;
    }, 32);

    for (const auto& spring : springs) {
      const double dx = pos[spring.a].x - pos[spring.b].x;
      const double dy = pos[spring.a].y - pos[spring.b].y;
      const double dist = std::hypot(dx, dy);
      if (dist < 1e-12) continue;
      const double force = spring.phi * dist * dist / kappa;
      disp[spring.a].x -= dx / dist * force;
      disp[spring.a].y -= dy / dist * force;
      disp[spring.b].x += dx / dist * force;
      disp[spring.b].y += dy / dist * force;
    }

    for (std::size_t v = 0; v < n; ++v) {
      const double length = std::hypot(disp[v].x, disp[v].y);
      if (length < 1e-300) continue;
      const double step = std::min(length, temperature);
      pos[v].x += disp[v].x / length * step;
      pos[v].y += disp[v].y / length * step;
    }
  }

  auto [min_x, max_x] = std::minmax_element(pos.begin(), pos.end(),
                                            [](const Point& a, const Point& b) { return a.x < b.x; });
  auto [min_y, max_y] = std::minmax_element(pos.begin(), pos.end(),
                                            [](const Point& a, const Point& b) { return a.y < b.y; });
  const double x0 = min_x->x;
  const double xr = max_x->x - x0;
  const double y0 = min_y->y;
  const double yr = max_y->y - y0;
  for (std::size_t v = 0; v < n; ++v) {
    const Point p{xr > 0.0 ? (pos[v].x - x0) / xr : 0.5, yr > 0.0 ? (pos[v].y - y0) / yr : 0.5};
    layout.positions.emplace(graph.nodes[v].code, p);
  }
  return layout;
}

std::string export_map(const TechSpaceGraph& graph, const LayoutCoordinates& layout) {
  json nodes = json::array();
  for (const auto& node : graph.nodes) {
    const Point& p = layout.positions.at(node.code);
    nodes.push_back({node.code, node.patent_count, p.x, p.y});
  }
  json edges = json::array();
  for (const auto& edge : graph.edges) {
    edges.push_back({edge.a, edge.b, edge.phi, to_string(edge.reason)});
  }
  json doc = {{"level", to_int(graph.level)},
              {"backbone_k", graph.backbone_k},
              {"seed", layout.seed},
              {"iterations", layout.iterations},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
  return doc.dump();
}

void parse_map(std::string_view text, TechSpaceGraph& graph, LayoutCoordinates& layout) {
  const json doc = json::parse(text);
  graph = {};
  layout = {};
  graph.level = level_from_int(doc.at("level").get<int>());
  graph.backbone_k = doc.at("backbone_k").get<std::size_t>();
  layout.seed = doc.at("seed").get<std::uint64_t>();
  layout.iterations = doc.at("iterations").get<int>();
  for (const auto& row : doc.at("nodes")) {
    graph.nodes.push_back({row.at(0).get<std::string>(), row.at(1).get<std::size_t>()});
    layout.positions.emplace(row.at(0).get<std::string>(),
                             Point{row.at(2).get<double>(), row.at(3).get<double>()});
  }
  for (const auto& row : doc.at("edges")) {
    graph.edges.push_back({row.at(0).get<std::string>(), row.at(1).get<std::string>(),
                           row.at(2).get<double>(),
                           edge_reason_from_string(row.at(3).get<std::string>())});
  }
}

}  // namespace atlas
