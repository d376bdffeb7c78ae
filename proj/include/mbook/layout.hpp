#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mbook/graph.hpp"

namespace mbook {

// Cyclic order of the vertices 1..n around a circle, read counter-clockwise.
class CyclicLayout {
 public:
  CyclicLayout() = default;
  explicit CyclicLayout(std::vector<Vertex> order);

  static CyclicLayout identity(int n);

  int size() const { return static_cast<int>(order_.size()); }
  std::span<const Vertex> order() const { return order_; }
  Vertex at(int position) const { return order_[position]; }
  bool contains(Vertex v) const {
    return v >= 1 && v < static_cast<int>(position_.size());
  }
  int position(Vertex v) const { return position_[v]; }

  CyclicLayout rotated(int shift) const;
  CyclicLayout reflected() const;

  // Lexicographically least sequence over all rotations and reflections.
  // Starts with vertex 1; used for deduplication only.
  CyclicLayout canonical() const;

  bool operator==(const CyclicLayout& other) const {
    return order_ == other.order_;
  }

 private:
  std::vector<Vertex> order_;
  std::vector<int> position_;  // indexed by vertex, [0] unused
};

// True iff the four endpoints are distinct and alternate around the circle.
// Throws malformed_input if an endpoint is not in the layout.
bool edges_conflict(const CyclicLayout& layout, Edge e1, Edge e2);

// Same test on raw positions; a, b are the positions of one chord and c, d
// of the other, all four distinct.
inline bool chords_cross(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  return (a < c && c < b) != (a < d && d < b);
}

}  // namespace mbook
