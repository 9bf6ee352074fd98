#pragma once

// The Boolean lattice B_n: vertices are n-bit masks, bit i standing for
// element i+1 of {1..n}.  Coordinate labels are 1-based at this API and
// converted to 0-based bit positions internally.

#include <bit>
#include <cstdint>
#include <vector>

namespace cubeperc {

using Mask = std::uint32_t;

inline constexpr int kMaxDimension = 30;

constexpr Mask full_mask(int n) noexcept { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
constexpr Mask coord_bit(int label) noexcept { return Mask{1} << (label - 1); }
constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

/// Throws InvalidInput unless 1 <= n <= kMaxDimension.
void check_dimension(int n);

class Vertex {
 public:
  /// Throws InvalidInput when bits outside the low n are set.
  Vertex(Mask bits, int n);

  static Vertex bottom(int n) { return Vertex(0, n); }
  static Vertex top(int n) { return Vertex(full_mask(n), n); }
  /// Vertex for the subset given as 1-based labels.
  static Vertex from_labels(const std::vector<int>& labels, int n);

  Mask bits() const noexcept { return bits_; }
  int dimension() const noexcept { return n_; }
  int level() const noexcept { return popcount(bits_); }
  bool contains(int label) const noexcept { return (bits_ & coord_bit(label)) != 0; }
  std::vector<int> labels() const;

  /// All n vertices at Hamming distance 1, ascending coordinate.
  std::vector<Vertex> neighbors() const;
  /// The n - level() neighbours one level up, ascending coordinate.
  std::vector<Vertex> upper_neighbors() const;
  Vertex complement() const noexcept { return Vertex(~bits_ & full_mask(n_), n_, Unchecked{}); }

  bool operator==(const Vertex&) const = default;

 private:
  struct Unchecked {};
  Vertex(Mask bits, int n, Unchecked) noexcept : bits_(bits), n_(n) {}

  Mask bits_;
  int n_;
};

/// A monotone path written as the order in which coordinates are added.
class PathPerm {
 public:
  /// Labels must be distinct and lie in {1..n}.
  PathPerm(std::vector<int> labels, int n);

  static PathPerm identity(int n);

  const std::vector<int>& labels() const noexcept { return labels_; }
  int dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return labels_.size(); }
  int operator[](std::size_t i) const { return labels_[i]; }
  /// Union of the labels as a mask.
  Mask support() const noexcept;

  bool operator==(const PathPerm&) const = default;

 private:
  std::vector<int> labels_;
  int n_;
};

/// The edge lower -> lower + {coord}.  For unoriented use the same id
/// names the edge in both directions.
struct EdgeId {
  Vertex lower;
  int coord;
  bool oriented = true;

  /// Throws InvalidInput when coord is already in lower.
  EdgeId(Vertex lower_, int coord_, bool oriented_ = true);

  Vertex upper() const { return Vertex(lower.bits() | coord_bit(coord), lower.dimension()); }
  /// Dense index lower * n + (coord - 1), used to address per-edge arrays
  /// and counter-based random draws.
  std::uint64_t index() const noexcept {
    return static_cast<std::uint64_t>(lower.bits()) * static_cast<std::uint64_t>(lower.dimension()) +
           static_cast<std::uint64_t>(coord - 1);
  }

  bool operator==(const EdgeId& o) const noexcept {
    return lower == o.lower && coord == o.coord;
  }
};

constexpr std::uint64_t edge_index(Mask lower, int bit, int n) noexcept {
  return static_cast<std::uint64_t>(lower) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(bit);
}

/// Number of edges of B_n, n * 2^(n-1).
constexpr std::uint64_t edge_count(int n) noexcept {
  return static_cast<std::uint64_t>(n) << (n - 1);
}

/// Vertices visited by p starting at start; throws InvalidInput when a
/// label of p is already in start.
std::vector<Vertex> path_vertices(const PathPerm& p, const Vertex& start);

}  // namespace cubeperc
