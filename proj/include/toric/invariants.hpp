#pragma once

// Numerical invariants of the trapezoid family: how many distinct toric
// structures a fixed (a, b) supports, the parameter chain realizing them,
// the even-step relation identifying diffeomorphic members, and the Chern
// data of the associated sphere bundle distinguishing smooth types.

#include <toric/polytope.hpp>

#include <string>
#include <vector>

namespace toric {

// Number of integers k with 0 <= k < a/b, i.e. floor((a-1)/b) + 1. This is
// the count of non-conjugate maximal tori guaranteed for the contact
// structure attached to (a, b).
inline Int tori_lower_bound(const Int& a, const Int& b) {
  if (b < 1) throw std::domain_error("tori_lower_bound: b must be positive");
  if (a < b) throw std::domain_error("tori_lower_bound: requires a >= b");
  return floor_div(a - 1, b) + 1;
}

enum class ChainParity {
  strict,  // walk m = k, k-2, ...; error if any member is non-integral
  even     // round k down to even first, so every member is integral
};

struct ToriChain {
  Rat a;
  Int b;
  Int k;  // largest m actually used by the walk
  std::vector<HirzebruchParams> members;
  Int length_ell;  // floor(k/2) + 1 == members.size()
};

// The chain of trapezoids sharing (a, b): m runs over k, k-2, ..., ending
// at 0 or 1, where k is the largest integer with a/b > k/2. Members are
// pairwise non-equivalent as cones yet related in pairs by the even-step
// relation; the chain length realizes tori_lower_bound(a, b).
inline ToriChain hirzebruch_chain(const Int& a, const Int& b,
                                  ChainParity parity = ChainParity::strict) {
  if (b < 1 || a <= b)
    throw std::domain_error("hirzebruch_chain: requires integers a > b >= 1");
  Int k = floor_div(2 * a - 1, b);
  if (parity == ChainParity::even && k % 2 != 0) k -= 1;
  ToriChain chain{Rat(a), b, k, {}, floor_div(k, 2) + 1};
  for (Int m = k; m >= 0; m -= 2) {
    if ((m * b) % 2 != 0)
      throw std::domain_error("m = " + m.str() + " gives non-integral trapezoid");
    chain.members.push_back(HirzebruchParams::from_abm(Rat(a), b, m));
  }
  return chain;
}

// Two trapezoids with the same (a, b) and m of equal parity bound
// symplectomorphic surfaces, hence diffeomorphic contact manifolds.
inline bool chain_related(const HirzebruchParams& p, const HirzebruchParams& q) {
  return p.a() == q.a() && p.b == q.b && (p.m - q.m) % 2 == 0;
}

struct BundleInvariant {
  Int a, b;
  Int c1_l1, c1_l2;  // Chern numbers of the two line summands: 2a and -2b
  Int iso_class;     // a - b; equal values give isomorphic sphere bundles
};

// First Chern data of the rank-two splitting over the quotient surface for
// coprime a > b >= 1. Bundles (and hence the underlying smooth manifolds)
// with equal a - b are isomorphic.
inline BundleInvariant bundle_invariant(const Int& a, const Int& b) {
  if (b < 1 || a <= b || boost::multiprecision::gcd(a, b) != 1)
    throw std::domain_error("bundle_invariant: requires coprime integers a > b >= 1");
  return {a, b, 2 * a, -2 * b, a - b};
}

}  // namespace toric
