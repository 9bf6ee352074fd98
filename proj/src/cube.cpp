#include "cubeperc/cube.hpp"

#include <string>

#include "cubeperc/errors.hpp"

namespace cubeperc {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw InvalidInput("dimension must be in [1, " + std::to_string(kMaxDimension) +
                       "], got " + std::to_string(n));
  }
}

Vertex::Vertex(Mask bits, int n) : bits_(bits), n_(n) {
  check_dimension(n);
  if ((bits & ~full_mask(n)) != 0) {
    throw InvalidInput("vertex mask has bits above dimension " + std::to_string(n));
  }
}

Vertex Vertex::from_labels(const std::vector<int>& labels, int n) {
  check_dimension(n);
  Mask m = 0;
  for (int l : labels) {
    if (l < 1 || l > n) throw InvalidInput("label " + std::to_string(l) + " outside {1..n}");
    m |= coord_bit(l);
  }
  return Vertex(m, n);
}

std::vector<int> Vertex::labels() const {
  std::vector<int> out;
  for (int j = 1; j <= n_; ++j) {
    if (contains(j)) out.push_back(j);
  }
  return out;
}

std::vector<Vertex> Vertex::neighbors() const {
  std::vector<Vertex> out;
  out.reserve(n_);
  for (int b = 0; b < n_; ++b) out.push_back(Vertex(bits_ ^ (Mask{1} << b), n_, Unchecked{}));
  return out;
}

std::vector<Vertex> Vertex::upper_neighbors() const {
  std::vector<Vertex> out;
  out.reserve(n_ - level());
  for (int b = 0; b < n_; ++b) {
    if (!(bits_ >> b & 1U)) out.push_back(Vertex(bits_ | (Mask{1} << b), n_, Unchecked{}));
  }
  return out;
}

PathPerm::PathPerm(std::vector<int> labels, int n) : labels_(std::move(labels)), n_(n) {
  check_dimension(n);
  Mask seen = 0;
  for (int l : labels_) {
    if (l < 1 || l > n) throw InvalidInput("path label " + std::to_string(l) + " outside {1..n}");
    if (seen & coord_bit(l)) throw InvalidInput("path label " + std::to_string(l) + " repeated");
    seen |= coord_bit(l);
  }
}

PathPerm PathPerm::identity(int n) {
  std::vector<int> l(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) l[i] = i + 1;
  return PathPerm(std::move(l), n);
}

Mask PathPerm::support() const noexcept {
  Mask m = 0;
  for (int l : labels_) m |= coord_bit(l);
  return m;
}

EdgeId::EdgeId(Vertex lower_, int coord_, bool oriented_)
    : lower(lower_), coord(coord_), oriented(oriented_) {
  if (coord < 1 || coord > lower.dimension() || lower.contains(coord)) {
    throw InvalidInput("edge coordinate " + std::to_string(coord) + " invalid for its lower vertex");
  }
}

std::vector<Vertex> path_vertices(const PathPerm& p, const Vertex& start) {
  if (p.dimension() != start.dimension()) throw InvalidInput("path and start differ in dimension");
  std::vector<Vertex> out;
  out.reserve(p.size() + 1);
  out.push_back(start);
  Mask cur = start.bits();
  for (int l : p.labels()) {
    if (cur & coord_bit(l)) {
      throw InvalidInput("invalid path: label " + std::to_string(l) + " already present");
    }
    cur |= coord_bit(l);
    out.emplace_back(cur, start.dimension());
  }
  return out;
}

}  // namespace cubeperc
