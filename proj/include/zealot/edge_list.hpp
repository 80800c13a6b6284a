#pragma once

// Plain-text network description:
//
//   #zealots correct=<id,...> incorrect=<id,...>
//   u v
//   u v
//   ...
//
// Node ids are nonnegative integers. Every id that is not listed in the
// zealot header is a free voter. Blank lines and other lines starting with
// '#' are ignored.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

namespace zealot {

using NodeId = std::uint64_t;

struct EdgeList {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> correct_zealots;
  std::vector<NodeId> incorrect_zealots;

  friend bool operator==(const EdgeList&, const EdgeList&) = default;
};

EdgeList parse_edge_list(std::istream& in);
EdgeList read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const EdgeList& list);

/// Cycle over `node_count` nodes 0..node_count-1 with the given zealots.
EdgeList ring_edge_list(NodeId node_count, std::vector<NodeId> correct,
                        std::vector<NodeId> incorrect);

}  // namespace zealot
