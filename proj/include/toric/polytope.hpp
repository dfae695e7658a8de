#pragma once

// Rational convex polytopes given by an ordered vertex list, plus the
// Hirzebruch trapezoid family. Geometric predicates are exact; the convexity
// and Delzant checks are only implemented for the planar case, which is all
// the downstream cone constructions need.

#include <toric/lattice.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace toric {

namespace detail {

// Twice the signed area of the triangle (a, b, c); positive iff the turn
// a -> b -> c is counterclockwise.
inline Rat cross2(const QVec& a, const QVec& b, const QVec& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

}  // namespace detail

class Polytope {
 public:
  Polytope(std::size_t dim, std::vector<QVec> vertices)
      : dim_(dim), vertices_(std::move(vertices)) {
    if (dim_ == 0) throw std::invalid_argument("Polytope: dimension must be positive");
    if (vertices_.size() < dim_ + 1)
      throw std::invalid_argument("Polytope: too few vertices");
    for (const QVec& v : vertices_)
      if (v.size() != dim_) throw std::invalid_argument("Polytope: vertex dimension mismatch");
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (std::size_t j = i + 1; j < vertices_.size(); ++j)
        if (vertices_[i] == vertices_[j])
          throw std::invalid_argument("Polytope: repeated vertex");
    if (dim_ == 2) validate_planar();
  }

  std::size_t dim() const { return dim_; }
  const std::vector<QVec>& vertices() const { return vertices_; }

 private:
  // Every vertex must lie strictly left of every directed boundary edge;
  // that is exactly "strictly convex position in counterclockwise order"
  // and rules out collinear triples as well.
  void validate_planar() const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const QVec& a = vertices_[i];
      const QVec& b = vertices_[(i + 1) % n];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == (i + 1) % n) continue;
        if (detail::cross2(a, b, vertices_[k]) <= 0)
          throw std::invalid_argument(
              "Polytope: vertices must be in strictly convex counterclockwise position");
      }
    }
  }

  std::size_t dim_;
  std::vector<QVec> vertices_;
};

struct EdgeDescriptor {
  std::pair<std::size_t, std::size_t> endpoints;  // vertex indices, tail then head
  Vec primitive_direction;
  Rat lattice_length;  // head - tail == lattice_length * primitive_direction
};

inline Rat lattice_length(const EdgeDescriptor& e) { return e.lattice_length; }

inline std::vector<EdgeDescriptor> edges(const Polytope& p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (p.dim() != 2)
    throw std::invalid_argument("edges: only 2-dimensional polytopes are supported");
  const auto& vs = p.vertices();
  const std::size_t n = vs.size();
  std::vector<EdgeDescriptor> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QVec& a = vs[i];
    const QVec& b = vs[(i + 1) % n];
    QVec diff = {b[0] - a[0], b[1] - a[1]};
    Vec dir = detail::primitive_direction(diff);
    // diff = length * dir on whichever coordinate is nonzero.
    std::size_t k = (dir[0] != 0) ? 0 : 1;
    Rat length = diff[k] / Rat(dir[k]);
    out.push_back({{i, (i + 1) % n}, std::move(dir), std::move(length)});
  }
  return out;
}

inline bool is_integral(const Polytope& p) {
  using boost::multiprecision::denominator;
  for (const QVec& v : p.vertices())
    for (const Rat& x : v)
      if (denominator(x) != 1) return false;
  return true;
}

struct VertexCheck {
  std::size_t vertex;
  bool simple_ok;      // exactly dim edges meet (automatic for polygons)
  bool unimodular_ok;  // primitive edge directions form a lattice basis
};

struct DelzantReport {
  bool delzant;
  std::vector<VertexCheck> vertices;
};

// Delzant condition at each vertex: the primitive directions of the
// incident edges span the whole lattice, i.e. their determinant is a unit.
inline DelzantReport is_delzant(const Polytope& p) {
  if (p.dim() != 2)
    throw std::invalid_argument("is_delzant: only 2-dimensional polytopes are supported");
  const auto& vs = p.vertices();
  const std::size_t n = vs.size();
  DelzantReport rep{true, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const QVec& v = vs[i];
    const QVec& prev = vs[(i + n - 1) % n];
    const QVec& next = vs[(i + 1) % n];
    Vec to_prev = detail::primitive_direction({prev[0] - v[0], prev[1] - v[1]});
    Vec to_next = detail::primitive_direction({next[0] - v[0], next[1] - v[1]});
    Int det = to_prev[0] * to_next[1] - to_prev[1] * to_next[0];
    bool uni = (det == 1 || det == -1);
    rep.vertices.push_back({i, true, uni});
    if (!uni) rep.delzant = false;
  }
  return rep;
}

// The trapezoid family behind the classification: parameters (b, c, m) with
// b, c >= 1 and m >= 0, where c is the top edge length and the width grows
// to c + m*b at the bottom. The conventional third parameter a = c + (m/2)b
// may be a half-integer; the vertex coordinates never are.
struct HirzebruchParams {
  Int b, c, m;

  HirzebruchParams(Int b_, Int c_, Int m_)
      : b(std::move(b_)), c(std::move(c_)), m(std::move(m_)) {
    if (b < 1 || c < 1 || m < 0)
      throw std::invalid_argument("HirzebruchParams: need b >= 1, c >= 1, m >= 0");
  }

  // Build from the (a, b, m) form; fails unless a - (m/2)b is a positive
  // integer, which is the integrality condition on the trapezoid.
  static HirzebruchParams from_abm(const Rat& a, const Int& b, const Int& m) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Rat c = a - Rat(m * b, 2);
    if (denominator(c) != 1)
      throw std::invalid_argument("HirzebruchParams: a - (m/2)b is not an integer");
    return HirzebruchParams(b, numerator(c), m);
  }

  Rat a() const { return Rat(c) + Rat(m * b, 2); }

  bool operator==(const HirzebruchParams& o) const = default;
};

inline Polytope hirzebruch_trapezoid(const HirzebruchParams& p) {
  QVec v0 = {0, 0};
  QVec v1 = {Rat(p.c + p.m * p.b), 0};
  QVec v2 = {Rat(p.c), Rat(p.b)};
  QVec v3 = {0, Rat(p.b)};
  return Polytope(2, {v0, v1, v2, v3});
}

}  // namespace toric
