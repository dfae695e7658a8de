#pragma once

// Rational polyhedral cones in H-representation, their extreme rays and
// face lattice, and the lattice conditions ("good cone", free circle
// action) that control when a cone is the moment cone of a contact toric
// manifold. Everything is enumerated exactly; inputs are desk-scale, so
// subset enumeration over the facet normals is the honest algorithm.

#include <toric/lattice.hpp>
#include <toric/polytope.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace toric {

namespace detail {

// Is target a nonnegative rational combination of the generators? By
// Caratheodory it suffices to scan linearly independent subsets, where the
// combination is unique and elimination decides membership exactly.
inline bool in_conic_hull(const std::vector<Vec>& gens, const Vec& target, std::size_t dim) {
  if (is_zero(target)) return true;
  if (gens.empty()) return false;
  const std::size_t n = gens.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Vec> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(gens[i]);
    if (sub.size() > dim || rank(sub) != sub.size()) continue;
    QMat a(dim, QVec(sub.size()));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < sub.size(); ++j) a[i][j] = sub[j][i];
    QVec b(dim);
    for (std::size_t i = 0; i < dim; ++i) b[i] = target[i];
    auto coeffs = solve_rational(a, b);
    if (!coeffs) continue;
    bool nonneg = std::all_of(coeffs->begin(), coeffs->end(),
                              [](const Rat& c) { return c >= 0; });
    if (nonneg) return true;
  }
  return false;
}

}  // namespace detail

// One face of a pointed cone, identified by the facets containing it and
// carrying the extreme rays spanning it.
struct Face {
  std::size_t dim;
  std::vector<std::size_t> facets;  // indices into normals()
  std::vector<std::size_t> rays;    // indices into extreme_rays()

  bool operator==(const Face&) const = default;
};

class Cone {
 public:
  // Halfspace description { x : <x, normal> >= 0 for all normals }. By
  // default redundant normals are dropped so the stored description is the
  // facet list; pass keep_redundant to preserve the input verbatim (the
  // diagnostic predicates below want to see exactly what they were given).
  Cone(std::size_t dim, std::vector<Vec> normals, bool keep_redundant = false)
      : dim_(dim), normals_(std::move(normals)) {
    if (dim_ == 0) throw std::invalid_argument("Cone: dimension must be positive");
    if (normals_.empty()) throw std::invalid_argument("Cone: no normals");
    for (const Vec& n : normals_) {
      if (n.size() != dim_) throw std::invalid_argument("Cone: normal dimension mismatch");
      if (is_zero(n)) throw std::invalid_argument("Cone: zero normal vector");
    }
    if (!keep_redundant) drop_redundant();
    std::sort(normals_.begin(), normals_.end());
    pointed_ = (rank(normals_) == dim_);
    if (pointed_) {
      enumerate_rays();
      full_dim_ = (rank(rays_) == dim_);
      if (full_dim_) enumerate_faces();
    }
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& normals() const { return normals_; }
  bool pointed() const { return pointed_; }
  bool full_dimensional() const { return pointed_ && full_dim_; }

  const std::vector<Vec>& extreme_rays() const {
    if (!pointed_) throw std::domain_error("Cone: extreme rays need a pointed cone");
    return rays_;
  }

  // All faces, including the whole cone and the apex, sorted by dimension.
  const std::vector<Face>& face_lattice() const {
    if (!full_dimensional())
      throw std::domain_error("Cone: face lattice needs a pointed full-dimensional cone");
    return faces_;
  }

  bool operator==(const Cone& o) const { return dim_ == o.dim_ && normals_ == o.normals_; }

 private:
  bool feasible(const Vec& v) const {
    for (const Vec& n : normals_)
      if (dot(v, n) < 0) return false;
    return true;
  }

  void drop_redundant() {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t j = 0; j < normals_.size(); ++j) {
        std::vector<Vec> others;
        for (std::size_t i = 0; i < normals_.size(); ++i)
          if (i != j) others.push_back(normals_[i]);
        if (others.empty()) break;
        if (detail::in_conic_hull(others, normals_[j], dim_)) {
          normals_.erase(normals_.begin() + static_cast<long>(j));
          changed = true;
          break;
        }
      }
    }
  }

  // Candidate extreme rays are the one-dimensional kernels of (dim-1)-subsets
  // of the normals; a candidate survives if one of its two orientations
  // satisfies every halfspace. Pointedness rules out both surviving.
  void enumerate_rays() {
    const std::size_t n = normals_.size();
    const std::size_t want = dim_ - 1;
    std::vector<std::size_t> idx(want);
    std::vector<Vec> found;

    auto visit = [&](const std::vector<std::size_t>& subset) {
      std::vector<Vec> rows;
      for (std::size_t i : subset) rows.push_back(normals_[i]);
      auto basis = detail::rat_nullspace(rows, dim_);
      if (basis.size() != 1) return;
      Vec w = detail::primitive_direction(basis[0]);
      bool fwd = feasible(w);
      Vec neg = negated(w);
      bool bwd = feasible(neg);
      if (fwd && bwd) throw std::logic_error("Cone: lineality direction in a pointed cone");
      if (fwd)
        found.push_back(std::move(w));
      else if (bwd)
        found.push_back(std::move(neg));
    };

    if (want == 0) {
      visit({});
    } else if (want <= n) {
      // plain lexicographic k-combinations of {0, ..., n-1}
      for (std::size_t i = 0; i < want; ++i) idx[i] = i;
      for (;;) {
        visit(idx);
        std::size_t i = want;
        while (i > 0 && idx[i - 1] == n - want + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < want; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    rays_ = std::move(found);
  }

  // Every face of a pointed cone is an intersection of facets, so scanning
  // all facet subsets and deduplicating by the set of incident rays yields
  // the full face lattice (whole cone from the empty subset, apex from any
  // subset whose normals span).
  void enumerate_faces() {
    const std::size_t n = normals_.size();
    std::map<std::vector<std::size_t>, Face> by_rays;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> sel;
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (std::size_t{1} << j)) sel.push_back(j);
      std::vector<std::size_t> face_rays;
      for (std::size_t i = 0; i < rays_.size(); ++i) {
        bool on = true;
        for (std::size_t j : sel)
          if (dot(rays_[i], normals_[j]) != 0) {
            on = false;
            break;
          }
        if (on) face_rays.push_back(i);
      }
      if (by_rays.count(face_rays)) continue;
      std::vector<std::size_t> incident;
      for (std::size_t j = 0; j < n; ++j) {
        bool contains = true;
        for (std::size_t i : face_rays)
          if (dot(rays_[i], normals_[j]) != 0) {
            contains = false;
            break;
          }
        if (contains) incident.push_back(j);
      }
      std::vector<Vec> spanning;
      for (std::size_t i : face_rays) spanning.push_back(rays_[i]);
      std::size_t fdim = spanning.empty() ? 0 : rank(spanning);
      by_rays.emplace(face_rays, Face{fdim, std::move(incident), face_rays});
    }
    faces_.clear();
    for (auto& [key, face] : by_rays) faces_.push_back(std::move(face));
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.facets < b.facets;
    });
  }

  std::size_t dim_;
  std::vector<Vec> normals_;
  bool pointed_ = false;
  bool full_dim_ = false;
  std::vector<Vec> rays_;
  std::vector<Face> faces_;
};

// Cone over a polytope placed at height one: facet normals (u, -lambda) for
// each edge halfplane <eta, u> >= lambda of the polytope, so the slice at
// height 1 is the polytope and the rays sit over its vertices.
inline Cone standard_cone(const Polytope& poly) {
  if (poly.dim() != 2)
    throw std::invalid_argument("standard_cone: only 2-dimensional polytopes are supported");
  if (!is_integral(poly))
    throw std::domain_error("standard_cone: polytope must have integral vertices");
  if (!is_delzant(poly).delzant)
    throw std::domain_error("standard_cone: polytope must be Delzant");
  using boost::multiprecision::numerator;
  const auto& vs = poly.vertices();
  const std::size_t n = vs.size();
  std::vector<Vec> normals;
  normals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QVec& a = vs[i];
    const QVec& b = vs[(i + 1) % n];
    // inward normal of the counterclockwise edge: rotate the edge vector left
    Vec u = primitive_part({-(numerator(b[1]) - numerator(a[1])),
                            numerator(b[0]) - numerator(a[0])})
                .first;
    Int lambda = u[0] * numerator(a[0]) + u[1] * numerator(a[1]);
    normals.push_back({u[0], u[1], -lambda});
  }
  return Cone(3, std::move(normals));
}

inline Cone hirzebruch_cone(const HirzebruchParams& p) {
  return standard_cone(hirzebruch_trapezoid(p));
}

struct GoodnessReport {
  bool primitive_ok;
  bool minimal_ok;
  bool faces_ok;
  std::optional<Face> failing_face;
  bool verdict;
};

// Lattice regularity of a pointed full-dimensional cone: primitive facet
// normals, an irredundant halfspace description, and at every proper face
// of codimension k the k incident normals spanning a direct rank-k summand
// of the dual lattice. The apex is only subject to the summand test when it
// is simplicial (exactly dim facets through it); where more facets meet,
// the slice there is not smooth anyway and the regularity content lives on
// the positive-dimensional faces.
inline GoodnessReport is_good(const Cone& c) {
  if (!c.full_dimensional())
    throw std::domain_error("is_good: cone must be pointed and full-dimensional");
  GoodnessReport rep{true, true, true, std::nullopt, false};
  const auto& normals = c.normals();

  for (const Vec& n : normals)
    if (primitive_part(n).second != 1) rep.primitive_ok = false;

  for (std::size_t j = 0; j < normals.size() && rep.minimal_ok; ++j) {
    std::vector<Vec> others;
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (i != j) others.push_back(normals[i]);
    if (!others.empty() && detail::in_conic_hull(others, normals[j], c.dim()))
      rep.minimal_ok = false;
  }

  for (const Face& f : c.face_lattice()) {
    const std::size_t codim = c.dim() - f.dim;
    if (codim == 0) continue;
    std::vector<Vec> active;
    for (std::size_t j : f.facets) active.push_back(normals[j]);
    bool ok;
    if (codim == c.dim()) {
      ok = f.facets.size() != c.dim() || is_primitive_summand(active, c.dim());
    } else {
      ok = f.facets.size() == codim && is_primitive_summand(active, codim);
    }
    if (!ok) {
      rep.faces_ok = false;
      if (!rep.failing_face) rep.failing_face = f;
    }
  }

  rep.verdict = rep.primitive_ok && rep.minimal_ok && rep.faces_ok;
  return rep;
}

// Does the lattice circle generated by `fiber` act freely on the level set
// over this cone? Criterion: along every face met by the moment image (all
// of them except the apex), the incident normals together with the fiber
// direction must span a direct summand one rank higher. The first orthant
// fails this at its rays; cones over Delzant polytopes pass.
inline bool circle_action_free(const Cone& c, const Vec& fiber) {
  if (!c.full_dimensional())
    throw std::domain_error("circle_action_free: cone must be pointed and full-dimensional");
  if (fiber.size() != c.dim())
    throw std::invalid_argument("circle_action_free: fiber dimension mismatch");
  if (is_zero(fiber) || primitive_part(fiber).second != 1)
    throw std::domain_error("circle_action_free: fiber must be a primitive lattice vector");
  for (const Face& f : c.face_lattice()) {
    const std::size_t codim = c.dim() - f.dim;
    if (codim == c.dim()) continue;
    std::vector<Vec> gens;
    for (std::size_t j : f.facets) gens.push_back(c.normals()[j]);
    gens.push_back(fiber);
    if (!is_primitive_summand(gens, codim + 1)) return false;
  }
  return true;
}

inline bool circle_action_free(const Cone& c) {
  Vec fiber(c.dim(), 0);
  fiber[c.dim() - 1] = 1;
  return circle_action_free(c, fiber);
}

}  // namespace toric
