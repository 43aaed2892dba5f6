#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace msgpass {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false if x and y were already connected.
  bool unite(std::size_t x, std::size_t y) {
    const std::size_t rx = find(x);
    const std::size_t ry = find(y);
    if (rx == ry) return false;
    parent_[rx] = ry;
    --components_;
    return true;
  }

  bool connected(std::size_t x, std::size_t y) { return find(x) == find(y); }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

}  // namespace msgpass
