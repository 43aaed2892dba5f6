#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace msgpass {

enum class PayloadKind {
  UInt,
  Element,
  Edge,
  ElementList,
  EdgeList,
  BitVector,
  Composite,
};

const char* to_string(PayloadKind kind);

// Smallest b such that 2^b >= x. ceil_log2(0) = ceil_log2(1) = 0.
std::uint64_t ceil_log2(std::uint64_t x);

// An immutable message payload. Every payload declares the ranges of its
// contents, and its bit length is a pure function of the kind and those
// declared ranges:
//
//   UInt(v, max)              ceil(log2(max+1)) bits, at least 1
//   Element(id, universe)     ceil(log2 universe) bits, id in [0, universe)
//   Edge(u, v, n)             2*ceil(log2 n) bits, endpoints in [1, n]
//   ElementList(cap)          ceil(log2(cap+1)) prefix + per-item Element cost
//   EdgeList(cap)             ceil(log2(cap+1)) prefix + per-item Edge cost
//   BitVector(L)              L bits
//   Composite                 sum of the parts
//
// Construction throws RangeError when a value falls outside its declared
// range, so a recorded transcript can always be re-costed.
class Payload {
 public:
  static Payload uint_of(std::uint64_t value, std::uint64_t max);
  static Payload element(std::uint64_t id, std::uint64_t universe);
  static Payload edge(std::uint32_t u, std::uint32_t v, std::uint32_t n);
  static Payload element_list(std::vector<std::uint64_t> ids, std::uint64_t universe,
                              std::uint64_t cap);
  static Payload edge_list(std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                           std::uint32_t n, std::uint64_t cap);
  static Payload bit_vector(std::vector<std::uint8_t> bits);
  static Payload composite(std::vector<Payload> parts);

  PayloadKind kind() const;
  std::uint64_t bit_length() const;

  // accessors; calling one that does not match kind() throws UsageError
  std::uint64_t value() const;                                            // UInt
  std::uint64_t max() const;                                              // UInt
  std::uint64_t id() const;                                               // Element
  std::uint64_t universe() const;                                         // Element, ElementList
  const std::vector<std::uint64_t>& ids() const;                          // ElementList
  std::pair<std::uint32_t, std::uint32_t> edge_uv() const;                // Edge
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const;  // EdgeList
  std::uint32_t vertex_count() const;                                     // Edge, EdgeList
  const std::vector<std::uint8_t>& bits() const;                          // BitVector
  const std::vector<Payload>& parts() const;                              // Composite

 private:
  struct Data;
  explicit Payload(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

std::uint64_t bit_length(const Payload& p);

}  // namespace msgpass
