#include "msgpass/payload.hpp"

#include <algorithm>
#include <numeric>

#include "msgpass/errors.hpp"

namespace msgpass {

const char* to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::UInt: return "uint";
    case PayloadKind::Element: return "element";
    case PayloadKind::Edge: return "edge";
    case PayloadKind::ElementList: return "element_list";
    case PayloadKind::EdgeList: return "edge_list";
    case PayloadKind::BitVector: return "bitvector";
    case PayloadKind::Composite: return "composite";
  }
  return "?";
}

std::uint64_t ceil_log2(std::uint64_t x) {
  std::uint64_t bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < x) ++bits;
  return bits;
}

namespace {
std::uint64_t count_bits(std::uint64_t max) {
  // bits needed for a value in [0, max]; at least 1
  if (max == UINT64_MAX) return 64;
  return std::max<std::uint64_t>(1, ceil_log2(max + 1));
}
}  // namespace

struct Payload::Data {
  PayloadKind kind;
  std::uint64_t bit_length = 0;

  std::uint64_t value = 0;     // UInt
  std::uint64_t max = 0;       // UInt
  std::uint64_t universe = 0;  // Element / ElementList
  std::uint32_t n = 0;         // Edge / EdgeList
  std::uint64_t cap = 0;       // lists

  std::vector<std::uint64_t> ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint8_t> bits;
  std::vector<Payload> parts;
};

Payload Payload::uint_of(std::uint64_t value, std::uint64_t max) {
  if (value > max) throw RangeError("uint payload value exceeds declared max");
  auto d = std::make_shared<Data>();
  d->kind = PayloadKind::UInt;
  d->value = value;
  d->max = max;
  d->bit_length = count_bits(max);
  return Payload(std::move(d));
}

Payload Payload::element(std::uint64_t id, std::uint64_t universe) {
  if (universe == 0 || id >= universe) throw RangeError("element id outside declared universe");
  auto d = std::make_shared<Data>();
  d->kind = PayloadKind::Element;
  d->ids = {id};
  d->universe = universe;
  d->bit_length = ceil_log2(universe);
  return Payload(std::move(d));
}

Payload Payload::edge(std::uint32_t u, std::uint32_t v, std::uint32_t n) {
  if (u < 1 || v < 1 || u > n || v > n || u == v) throw RangeError("edge endpoints out of range");
  auto d = std::make_shared<Data>();
  d->kind = PayloadKind::Edge;
  d->edges = {{u, v}};
  d->n = n;
  d->bit_length = 2 * ceil_log2(n);
  return Payload(std::move(d));
}

Payload Payload::element_list(std::vector<std::uint64_t> ids, std::uint64_t universe,
                              std::uint64_t cap) {
  if (ids.size() > cap) throw RangeError("element list longer than declared capacity");
  if (universe == 0 && !ids.empty()) throw RangeError("element list with empty universe");
  for (std::uint64_t id : ids) {
    if (id >= universe) throw RangeError("element list id outside declared universe");
  }
  auto d = std::make_shared<Data>();
  d->kind = PayloadKind::ElementList;
  d->universe = universe;
  d->cap = cap;
  d->bit_length = ceil_log2(cap + 1) + ids.size() * ceil_log2(universe);
  d->ids = std::move(ids);
  return Payload(std::move(d));
}

Payload Payload::edge_list(std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                           std::uint32_t n, std::uint64_t cap) {
  if (edges.size() > cap) throw RangeError("edge list longer than declared capacity");
  for (const auto& [u, v] : edges) {
    if (u < 1 || v < 1 || u > n || v > n || u == v) throw RangeError("edge endpoints out of range");
  }
  auto d = std::make_shared<Data>();
  d->kind = PayloadKind::EdgeList;
  d->n = n;
  d->cap = cap;
  d->bit_length = ceil_log2(cap + 1) + edges.size() * 2 * ceil_log2(n);
  d->edges = std::move(edges);
  return Payload(std::move(d));
}

Payload Payload::bit_vector(std::vector<std::uint8_t> bits) {
  for (std::uint8_t b : bits) {
    if (b > 1) throw RangeError("bit vector entries must be 0 or 1");
  }
  auto d = std::make_shared<Data>();
  d->kind = PayloadKind::BitVector;
  d->bit_length = bits.size();
  d->bits = std::move(bits);
  return Payload(std::move(d));
}

Payload Payload::composite(std::vector<Payload> parts) {
  auto d = std::make_shared<Data>();
  d->kind = PayloadKind::Composite;
  d->bit_length = 0;
  for (const Payload& p : parts) d->bit_length += p.bit_length();
  d->parts = std::move(parts);
  return Payload(std::move(d));
}

PayloadKind Payload::kind() const { return d_->kind; }
std::uint64_t Payload::bit_length() const { return d_->bit_length; }

namespace {
void expect(PayloadKind got, PayloadKind want) {
  if (got != want) {
    throw UsageError(std::string("payload accessor mismatch: have ") + to_string(got) +
                     ", want " + to_string(want));
  }
}
}  // namespace

std::uint64_t Payload::value() const {
  expect(d_->kind, PayloadKind::UInt);
  return d_->value;
}
std::uint64_t Payload::max() const {
  expect(d_->kind, PayloadKind::UInt);
  return d_->max;
}
std::uint64_t Payload::id() const {
  expect(d_->kind, PayloadKind::Element);
  return d_->ids[0];
}
std::uint64_t Payload::universe() const {
  if (d_->kind != PayloadKind::Element && d_->kind != PayloadKind::ElementList) {
    throw UsageError("payload accessor mismatch: universe()");
  }
  return d_->universe;
}
const std::vector<std::uint64_t>& Payload::ids() const {
  expect(d_->kind, PayloadKind::ElementList);
  return d_->ids;
}
std::pair<std::uint32_t, std::uint32_t> Payload::edge_uv() const {
  expect(d_->kind, PayloadKind::Edge);
  return d_->edges[0];
}
const std::vector<std::pair<std::uint32_t, std::uint32_t>>& Payload::edges() const {
  expect(d_->kind, PayloadKind::EdgeList);
  return d_->edges;
}
std::uint32_t Payload::vertex_count() const {
  if (d_->kind != PayloadKind::Edge && d_->kind != PayloadKind::EdgeList) {
    throw UsageError("payload accessor mismatch: vertex_count()");
  }
  return d_->n;
}
const std::vector<std::uint8_t>& Payload::bits() const {
  expect(d_->kind, PayloadKind::BitVector);
  return d_->bits;
}
const std::vector<Payload>& Payload::parts() const {
  expect(d_->kind, PayloadKind::Composite);
  return d_->parts;
}

std::uint64_t bit_length(const Payload& p) { return p.bit_length(); }

}  // namespace msgpass
