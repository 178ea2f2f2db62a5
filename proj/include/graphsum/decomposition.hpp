#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "graphsum/graph.hpp"

namespace graphsum {

/// Exact non-negative multiple of 1/2, stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_halves(std::int64_t halves) { return HalfInteger(halves); }
  static constexpr HalfInteger whole(std::int64_t n) { return HalfInteger(2 * n); }

  constexpr std::int64_t halves() const noexcept { return halves_; }
  constexpr std::int64_t numerator() const noexcept { return halves_ % 2 == 0 ? halves_ / 2 : halves_; }
  constexpr std::int64_t denominator() const noexcept { return halves_ % 2 == 0 ? 1 : 2; }
  constexpr double to_double() const noexcept { return static_cast<double>(halves_) / 2.0; }

  /// "3/2", or "2" for whole values.
  std::string to_string() const;

  constexpr HalfInteger& operator+=(HalfInteger o) noexcept {
    halves_ += o.halves_;
    return *this;
  }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) noexcept { return a += b; }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

 private:
  constexpr explicit HalfInteger(std::int64_t halves) : halves_(halves) {}
  std::int64_t halves_ = 0;
};

/// Bridges of the undirected shadow, as ascending edge positions. Loops and
/// edges with a parallel partner are never bridges.
std::vector<std::size_t> cutting_edges(const DirectedMultigraph& g);

/// Vertex classes connected after deleting all cutting edges; each class sorted,
/// classes ordered by least vertex.
std::vector<std::vector<std::size_t>> two_edge_components(const DirectedMultigraph& g);

struct ForestEdge {
  std::size_t a = 0;         ///< node index
  std::size_t b = 0;         ///< node index
  std::size_t cut_edge = 0;  ///< edge position in G
};

/// Forest of two-edge connected components.
struct Forest {
  std::vector<std::vector<std::size_t>> nodes;  ///< vertex sets of G
  std::vector<ForestEdge> edges;
  std::vector<std::vector<std::size_t>> trees;  ///< node indices per tree, ascending
  std::vector<std::size_t> node_of_vertex;
  std::vector<std::size_t> tree_of_node;

  std::vector<std::size_t> degrees() const;
};

Forest forest_of(const DirectedMultigraph& g);

enum class LeafKind { trivial_leaf, tree_leaf, internal };

const char* to_string(LeafKind kind);

/// One entry per forest node.
std::vector<LeafKind> classify_leaves(const Forest& f);

/// r(G): a trivial leaf counts 1, a leaf of a non-trivial tree counts 1/2.
HalfInteger exponent(const DirectedMultigraph& g);
HalfInteger exponent(const Forest& f);

/// The leaf of `tree` used as input leaf: the one containing the least vertex.
std::size_t input_leaf(const Forest& f, std::size_t tree);

}  // namespace graphsum
