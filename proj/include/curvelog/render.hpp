#pragma once
// Graphviz rendering of a resolution tree: one box per infinitely near
// point, labeled with its strict-transform multiplicity, reduced-total-
// transform multiplicity, free/satellite kind, whether the point is
// essential, and its conjugacy degree.  Output is deterministic: nodes and
// edges appear in node-id order.

#include <ostream>

#include "curvelog/resolution.hpp"

namespace curvelog {

inline void write_dot(std::ostream& os, const ResolutionTree& tree) {
  os << "digraph resolution {\n";
  os << "  node [shape=box];\n";
  for (const auto& n : tree.nodes) {
    os << "  n" << n.id << " [label=\"m=" << n.m << ", rtt=" << n.rtt << ", "
       << (n.satellite ? "sat" : "free") << ", " << (n.essential ? "ess" : "-")
       << ", deg=" << n.conj << "\"];\n";
  }
  for (const auto& n : tree.nodes) {
    if (n.parent >= 0) os << "  n" << n.parent << " -> n" << n.id << ";\n";
  }
  os << "}\n";
}

}  // namespace curvelog
