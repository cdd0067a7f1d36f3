#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/proximity.hpp"

namespace atlas {

enum class EdgeReason { SpanningTree, TopK };

std::string_view to_string(EdgeReason reason);
EdgeReason edge_reason_from_string(std::string_view text);

struct TechEdge {
  std::string a;  // a < b
  std::string b;
  double phi = 0.0;
  EdgeReason reason = EdgeReason::SpanningTree;

  friend bool operator==(const TechEdge&, const TechEdge&) = default;
};

struct TechNode {
  std::string code;
  std::size_t patent_count = 0;

  friend bool operator==(const TechNode&, const TechNode&) = default;
};

/// Technology-space network at one level. Nodes are sorted by code and edges
/// by (a, b).
struct TechSpaceGraph {
  Level level = Level::Class;
  std::size_t backbone_k = 0;
  std::vector<TechNode> nodes;
  std::vector<TechEdge> edges;

  friend bool operator==(const TechSpaceGraph&, const TechSpaceGraph&) = default;
};

/// Legible edge set for the map: a maximum-weight spanning forest over the
/// phi > 0 graph united with every node's k strongest neighbours. Kruskal
/// visits edges by descending phi, then (a, b) lexicographically; top-k
/// neighbours tie-break on the neighbour's code. An edge selected by both rules
/// is reported as a spanning-tree edge.
std::vector<TechEdge> backbone_filter(const ProximityMatrix& matrix, std::size_t k);

TechSpaceGraph build_graph(const CorpusIndex& index, const ProximityMatrix& matrix,
                           std::size_t k = 3);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct LayoutCoordinates {
  std::uint64_t seed = 0;
  int iterations = 0;
  std::map<std::string, Point, std::less<>> positions;

  friend bool operator==(const LayoutCoordinates&, const LayoutCoordinates&) = default;
};

// Force-directed (Fruchterman-Reingold) layout; see tech_space.cpp for the
// exact placement, force and cooling rules. Output is min-max normalized to
// the unit square; a degenerate axis is centred at 0.5.
LayoutCoordinates compute_layout(const TechSpaceGraph& graph, std::uint64_t seed, int iterations);

// Map file: the graph and its layout as one JSON document with rows
// nodes [code, patent_count, x, y] and edges [a, b, phi, reason].
std::string export_map(const TechSpaceGraph& graph, const LayoutCoordinates& layout);
void parse_map(std::string_view text, TechSpaceGraph& graph, LayoutCoordinates& layout);

}  // namespace atlas
