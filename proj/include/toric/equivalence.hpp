#pragma once

// Lattice-linear equivalence of pointed cones: applying a unimodular matrix,
// searching for one matching two cones, and the closed-form answer for
// cones over Hirzebruch trapezoids.

#include <toric/cone.hpp>
#include <toric/lattice.hpp>
#include <toric/polytope.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace toric {

struct EquivalenceWitness {
  Mat transform;  // unimodular; rays map by sign * transform
  int sign;       // +1, or -1 when the match needed a global ray reversal
};

// Image cone under a unimodular change of lattice coordinates. Points (and
// rays) transform by t; halfspace normals transform by the inverse
// transpose so incidences are preserved verbatim.
inline Cone apply_unimodular(const Mat& t, const Cone& c) {
  if (t.rows() != c.dim() || t.cols() != c.dim())
    throw std::invalid_argument("apply_unimodular: shape mismatch");
  if (!is_unimodular(t)) throw std::domain_error("apply_unimodular: matrix is not unimodular");
  Mat nt = inverse_unimodular(t).transpose();
  std::vector<Vec> mapped;
  mapped.reserve(c.normals().size());
  for (const Vec& n : c.normals()) mapped.push_back(nt.apply(n));
  Cone image(c.dim(), std::move(mapped), /*keep_redundant=*/true);
  if (c.pointed()) {
    // A unimodular map preserves primitivity, so the transformed extreme
    // rays must be exactly the enumerated rays of the image. Cheap full
    // consistency check of the whole construction.
    std::vector<Vec> rays;
    for (const Vec& r : c.extreme_rays()) rays.push_back(t.apply(r));
    std::sort(rays.begin(), rays.end());
    if (rays != image.extreme_rays())
      throw std::logic_error("apply_unimodular: ray image mismatch");
  }
  return image;
}

// Does sign * transform carry c1 exactly onto c2 (ray set onto ray set,
// normal set onto normal set)?
inline bool witness_maps(const EquivalenceWitness& w, const Cone& c1, const Cone& c2) {
  if (!is_unimodular(w.transform)) return false;
  if (c1.dim() != c2.dim()) return false;
  const Int s = w.sign;
  std::vector<Vec> rays;
  for (const Vec& r : c1.extreme_rays()) {
    Vec m = w.transform.apply(r);
    for (Int& x : m) x *= s;
    rays.push_back(std::move(m));
  }
  std::sort(rays.begin(), rays.end());
  if (rays != c2.extreme_rays()) return false;
  Mat nt = inverse_unimodular(w.transform).transpose();
  std::vector<Vec> normals;
  for (const Vec& n : c1.normals()) {
    Vec m = nt.apply(n);
    for (Int& x : m) x *= s;
    normals.push_back(std::move(m));
  }
  std::sort(normals.begin(), normals.end());
  return normals == c2.normals();
}

// Deterministic search for a unimodular equivalence. Anchor a fixed
// spanning subset of c1's rays (the lexicographically first linearly
// independent one); try every ordered tuple of distinct rays of c2 as its
// image, in lexicographic index order, +1 before -1; accept the first
// candidate map that carries ray set to ray set and normal set to normal
// set. allow_sign also admits matches onto the reflected cone -c2. Since
// -identity has determinant (-1)^n, it is unimodular in every dimension,
// so a sign-flipped witness (t, -1) is the same map as (-t, +1) and the
// flag can only change the reported label, never whether a witness exists.
// It stays exposed so that fact is tested rather than assumed.
inline std::optional<EquivalenceWitness> find_equivalence(const Cone& c1, const Cone& c2,
                                                          bool allow_sign = true) {
  if (c1.dim() != c2.dim())
    throw std::invalid_argument("find_equivalence: dimension mismatch");
  if (!c1.full_dimensional() || !c2.full_dimensional())
    throw std::domain_error("find_equivalence: cones must be pointed and full-dimensional");
  const std::size_t n = c1.dim();
  const auto& r1 = c1.extreme_rays();
  const auto& r2 = c2.extreme_rays();
  if (r1.size() != r2.size() || c1.normals().size() != c2.normals().size())
    return std::nullopt;

  std::vector<Vec> anchor;
  for (const Vec& r : r1) {
    std::vector<Vec> probe = anchor;
    probe.push_back(r);
    if (rank(probe) > anchor.size()) anchor.push_back(r);
    if (anchor.size() == n) break;
  }
  if (anchor.size() != n)
    throw std::logic_error("find_equivalence: rays of a full-dimensional cone must span");

  // Hoisted inverse of the anchor columns; each tuple then costs one
  // integrality-checked product instead of a fresh elimination. Identical
  // to calling solve_unimodular_map(anchor, tuple) every time.
  detail::QMat s(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i][j] = anchor[j][i];
  auto sinv = detail::rat_inverse(s);
  if (!sinv) throw std::logic_error("find_equivalence: anchor not invertible");

  auto try_targets = [&](const std::vector<const Vec*>& targets) -> std::optional<Mat> {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Mat t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rat e = 0;
        for (std::size_t k = 0; k < n; ++k) e += Rat((*targets[k])[i]) * (*sinv)[k][j];
        if (denominator(e) != 1) return std::nullopt;
        t(i, j) = numerator(e);
      }
    if (!is_unimodular(t)) return std::nullopt;
    return t;
  };

  const std::size_t m = r2.size();
  std::vector<std::size_t> tuple(n);
  std::vector<bool> used(m, false);
  std::vector<Vec> flipped;
  if (allow_sign)
    for (const Vec& r : r2) flipped.push_back(negated(r));

  // Depth-first enumeration of ordered index tuples in lexicographic order.
  auto search = [&](auto&& self, std::size_t depth) -> std::optional<EquivalenceWitness> {
    if (depth == n) {
      for (int sign : {1, -1}) {
        if (sign < 0 && !allow_sign) break;
        std::vector<const Vec*> targets(n);
        for (std::size_t k = 0; k < n; ++k)
          targets[k] = sign > 0 ? &r2[tuple[k]] : &flipped[tuple[k]];
        auto t = try_targets(targets);
        if (!t) continue;
        EquivalenceWitness w{*t, sign};
        if (witness_maps(w, c1, c2)) return w;
      }
      return std::nullopt;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple[depth] = i;
      auto hit = self(self, depth + 1);
      used[i] = false;
      if (hit) return hit;
    }
    return std::nullopt;
  };
  return search(search, 0);
}

// Closed form for cones over Hirzebruch trapezoids: distinct parameter
// triples give inequivalent cones, except that for m = 0 the trapezoid is a
// c x b rectangle and swapping the axes exchanges (b, c).
inline bool classify_hirzebruch(const HirzebruchParams& p, const HirzebruchParams& q) {
  if (p == q) return true;
  return p.m == 0 && q.m == 0 && p.b == q.c && p.c == q.b;
}

}  // namespace toric
