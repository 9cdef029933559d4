#pragma once

// Signed white graphs of closed three-braid diagrams.
//
// The closure is drawn around a braid axis with strand 1 innermost. With the
// unbounded region shaded black the white regions are the disc around the
// axis (the root) and the pieces of the band between strands 2 and 3 cut out
// by sigma2 crossings. A sigma2^e crossing joins two band pieces with sign -e,
// a sigma1^e crossing joins the root to a band piece with sign +e.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbraid/braid.hpp"
#include "tbraid/cycle_params.hpp"
#include "tbraid/integer_matrix.hpp"

namespace tbraid {

class DegenerateDiagram : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphEdge {
  int u = 0;
  int v = 0;
  int sign = 1;
  bool operator==(const GraphEdge&) const = default;
};

/// Planar signed multigraph with a rotation system. Edge e contributes dart
/// 2e at its u end and dart 2e+1 at its v end; rotation[x] lists the darts at
/// vertex x in counter-clockwise order.
struct CheckerboardGraph {
  std::vector<std::string> names;
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> rotation;
  int root = 0;

  std::size_t vertex_count() const { return names.size(); }
  std::size_t edge_count() const { return edges.size(); }
  int dart_vertex(int dart) const {
    const auto& e = edges[static_cast<std::size_t>(dart / 2)];
    return dart % 2 == 0 ? e.u : e.v;
  }
  int dart_target(int dart) const {
    const auto& e = edges[static_cast<std::size_t>(dart / 2)];
    return dart % 2 == 0 ? e.v : e.u;
  }
  int dart_sign(int dart) const { return edges[static_cast<std::size_t>(dart / 2)].sign; }
  int index_of(const std::string& name) const;
};

/// Throws std::logic_error if the rotation system does not list every dart
/// exactly once at its own vertex.
void check_rotation_system(const CheckerboardGraph& g);

/// Faces of the embedding traced from the rotation system.
std::size_t face_count(const CheckerboardGraph& g);
std::size_t component_count(const CheckerboardGraph& g);

/// V - E + F = 2 on every connected component.
bool satisfies_euler(const CheckerboardGraph& g);

/// White graph of the closure of w. h powers are expanded first; the word is
/// freely reduced. Throws DegenerateDiagram for a word without crossings.
CheckerboardGraph closure_white_graph(const BraidWord& w);

/// The single-cycle graph with vertices x1..x_{m-1}, y0..y_{c_n} and root z.
CheckerboardGraph cycle_graph_from_params(const DecoratedCycleGraph& params);

struct DecoratedReading {
  DecoratedCycleGraph params;
  /// vertex index -> generator name in the cycle labelling (x_i, y_j, z)
  std::vector<std::string> labels;
};

/// Recognises the single-cycle shape. Throws ShapeMismatch otherwise.
DecoratedReading read_decorated(const CheckerboardGraph& g);
DecoratedCycleGraph to_decorated(const CheckerboardGraph& g);

/// Same graph, vertices renamed.
CheckerboardGraph relabelled(const CheckerboardGraph& g, const std::vector<std::string>& names);

/// True when the graphs agree up to a bijection of vertices preserving
/// names, root, edge signs and the cyclic rotation at every vertex.
bool same_labelled_graph(const CheckerboardGraph& g, const CheckerboardGraph& h);

struct GoeritzMatrix {
  std::vector<std::string> labels;  // non-root vertices, in vertex order
  std::vector<std::vector<long long>> entries;

  BigInt determinant() const;
  bool is_symmetric() const;
};

GoeritzMatrix goeritz_matrix(const CheckerboardGraph& g);

/// Graphviz export; edge attribute `sign`, vertex attribute `root`.
std::string to_dot(const CheckerboardGraph& g);

/// Type (1) braids with d = 0 close to alternating diagrams.
bool is_alternating_closure(const BaldwinClass& c);

}  // namespace tbraid
