#include "mbook/layout.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mbook/error.hpp"

namespace mbook {

CyclicLayout::CyclicLayout(std::vector<Vertex> order) : order_(std::move(order)) {
  const int n = size();
  position_.assign(n + 1, -1);
  for (int p = 0; p < n; ++p) {
    const Vertex v = order_[p];
    if (v < 1 || v > n) {
      throw Error(ErrorCode::malformed_input,
                  "layout entry " + std::to_string(v) + " outside 1.." +
                      std::to_string(n));
    }
    if (position_[v] != -1) {
      throw Error(ErrorCode::malformed_input,
                  "vertex " + std::to_string(v) + " appears twice in layout");
    }
    position_[v] = p;
  }
}

CyclicLayout CyclicLayout::identity(int n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 1);
  return CyclicLayout(std::move(order));
}

CyclicLayout CyclicLayout::rotated(int shift) const {
  const int n = size();
  if (n == 0) return *this;
  shift = ((shift % n) + n) % n;
  std::vector<Vertex> out(order_.begin() + shift, order_.end());
  out.insert(out.end(), order_.begin(), order_.begin() + shift);
  return CyclicLayout(std::move(out));
}

CyclicLayout CyclicLayout::reflected() const {
  return CyclicLayout(std::vector<Vertex>(order_.rbegin(), order_.rend()));
}

CyclicLayout CyclicLayout::canonical() const {
  const int n = size();
  if (n <= 2) return rotated(n == 0 ? 0 : position(1));
  // The least sequence starts with vertex 1; pick the direction whose
  // second entry is smaller.
  const int p = position(1);
  std::vector<Vertex> out;
  out.reserve(n);
  const Vertex next = order_[(p + 1) % n];
  const Vertex prev = order_[(p + n - 1) % n];
  const int step = next < prev ? 1 : n - 1;
  for (int i = 0, q = p; i < n; ++i, q = (q + step) % n) out.push_back(order_[q]);
  return CyclicLayout(std::move(out));
}

bool edges_conflict(const CyclicLayout& layout, Edge e1, Edge e2) {
  for (Vertex v : {e1.u, e1.v, e2.u, e2.v}) {
    if (!layout.contains(v)) {
      throw Error(ErrorCode::malformed_input,
                  "vertex " + std::to_string(v) + " is not in the layout");
    }
  }
  if (e1.shares_vertex(e2)) return false;
  return chords_cross(layout.position(e1.u), layout.position(e1.v),
                      layout.position(e2.u), layout.position(e2.v));
}

}  // namespace mbook
