#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphsum/graph.hpp"

namespace graphsum {

/// A set partition of {1,...,k}. Blocks are kept in canonical order: sorted by
/// least element, elements ascending within each block.
class Partition {
 public:
  Partition() = default;

  /// Validates and canonicalizes. Throws InputError on duplicates, gaps or
  /// empty blocks.
  explicit Partition(std::vector<std::vector<int>> blocks);

  /// The minimal partition 0_k with k singleton blocks.
  static Partition singletons(int k);

  int k() const noexcept { return k_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }

  /// 0-based block index holding element `element` (1-based).
  std::size_t block_of(int element) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  int k_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Accepts the brace form `{1,2,4}{3}{5,6}` or a JSON array of integer arrays.
Partition parse_partition(std::string_view text);

/// ker j: positions p, q share a block iff indices[p] == indices[q].
Partition kernel_of(std::span<const int> indices);

/// True iff every block of `pi` is a union of blocks of `sigma` (pi >= sigma).
bool dominates(const Partition& pi, const Partition& sigma);

/// The graph G_pi. Requires k = 2m. Vertex j (0-based) stands for block j and
/// is named "i<j+1>"; edge l is named "e<l>" and runs from the block holding
/// position 2l to the block holding position 2l-1.
DirectedMultigraph graph_of_partition(const Partition& pi);

}  // namespace graphsum
