// Acceptance gate: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Exit status is the number of failures.

#include <toric/equivalence.hpp>
#include <toric/invariants.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#include "oracles.hpp"

using namespace toric;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& what) {
  std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL") << " - " << what
            << std::endl;
  if (!pass) ++failures;
}

std::vector<HirzebruchParams> parameter_grid(long bmax, long cmax, long mmax) {
  std::vector<HirzebruchParams> grid;
  for (long b = 1; b <= bmax; ++b)
    for (long c = 1; c <= cmax; ++c)
      for (long m = 0; m <= mmax; ++m) grid.emplace_back(b, c, m);
  return grid;
}

// 1. The equivalence search agrees with the closed-form classification on
//    the whole b,c <= 4, m <= 4 grid, in both sign modes, within a minute.
void criterion_1() {
  auto grid = parameter_grid(4, 4, 4);
  std::vector<Cone> cones;
  for (const auto& p : grid) cones.push_back(hirzebruch_cone(p));

  auto start = std::chrono::steady_clock::now();
  bool agree = true;
  for (std::size_t i = 0; i < grid.size() && agree; ++i)
    for (std::size_t j = i; j < grid.size() && agree; ++j) {
      bool expected = classify_hirzebruch(grid[i], grid[j]);
      bool with_sign = find_equivalence(cones[i], cones[j], true).has_value();
      bool without_sign = find_equivalence(cones[i], cones[j], false).has_value();
      if (with_sign != expected || without_sign != expected) agree = false;
    }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  report(1, agree && elapsed < 60000,
         "search matches closed form on all 3240 grid pairs, both sign modes (" +
             std::to_string(grid.size()) + " cones, " + std::to_string(elapsed) + " ms)");
}

// 2. For (a,b) = (5,2): the chain is m = 4,2,0; its members are pairwise
//    non-equivalent as cones yet pairwise related, and its length is
//    exactly the torus count bound.
void criterion_2() {
  bool ok = true;
  auto chain = hirzebruch_chain(5, 2);
  ok &= (chain.members.size() == 3);
  ok &= (chain.members == std::vector<HirzebruchParams>{
                              {2, 1, 4}, {2, 3, 2}, {2, 5, 0}});
  std::vector<Cone> cones;
  for (const auto& p : chain.members) cones.push_back(hirzebruch_cone(p));
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      ok &= !find_equivalence(cones[i], cones[j]).has_value();
      ok &= !find_equivalence(cones[j], cones[i]).has_value();
      ok &= chain_related(chain.members[i], chain.members[j]);
    }
  ok &= (chain.length_ell == 3);
  ok &= (tori_lower_bound(5, 2) == 3);
  report(2, ok, "(5,2) chain m=4,2,0: inequivalent, pairwise related, length 3 = bound");
}

// 3. Goodness and freeness verdicts across the corpus, plus the wedge
//    counterexample failing exactly at its apex.
void criterion_3() {
  bool ok = true;
  std::vector<Cone> corpus;
  for (const auto& p : parameter_grid(4, 4, 4)) corpus.push_back(hirzebruch_cone(p));
  corpus.push_back(standard_cone(
      Polytope(2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}})));
  corpus.push_back(
      standard_cone(Polytope(2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}})));
  for (const Cone& c : corpus) {
    ok &= is_good(c).verdict;
    ok &= circle_action_free(c, {0, 0, 1});
  }
  Cone wedge(2, {{0, 1}, {2, -1}});
  auto rep = is_good(wedge);
  ok &= !rep.verdict && !rep.faces_ok && rep.primitive_ok && rep.minimal_ok;
  ok &= rep.failing_face.has_value() && rep.failing_face->dim == 0 &&
        rep.failing_face->facets == std::vector<std::size_t>{0, 1};
  report(3, ok, "corpus cones good and free with vertical fiber; wedge fails at the apex");
}

// 4. One hundred random unimodular changes of coordinates: the search finds
//    a valid witness for each image cone, goodness verdicts transport, and
//    the Delzant property survives affine unimodular maps of the polygon.
void criterion_4() {
  bool ok = true;
  std::mt19937_64 rng(20260814);
  std::vector<HirzebruchParams> bases = {
      {1, 2, 0}, {2, 1, 4}, {2, 3, 2}, {3, 1, 1}, {1, 1, 3}};
  std::uniform_int_distribution<long> shift(-7, 7);
  for (int iter = 0; iter < 100; ++iter) {
    const auto& p = bases[iter % bases.size()];
    Cone c = hirzebruch_cone(p);
    Mat t = oracles::random_unimodular(rng, 3);
    Cone image = apply_unimodular(t, c);
    auto w = find_equivalence(c, image);
    ok &= w.has_value() && witness_maps(*w, c, image);
    ok &= (is_good(image).verdict == is_good(c).verdict);

    Polytope poly = hirzebruch_trapezoid(p);
    Mat t2 = oracles::random_unimodular(rng, 2);
    Int w0 = shift(rng), w1 = shift(rng);
    std::vector<QVec> mapped;
    for (const QVec& v : poly.vertices())
      mapped.push_back({Rat(t2(0, 0)) * v[0] + Rat(t2(0, 1)) * v[1] + Rat(w0),
                        Rat(t2(1, 0)) * v[0] + Rat(t2(1, 1)) * v[1] + Rat(w1)});
    if (determinant(t2) == -1) std::reverse(mapped.begin(), mapped.end());
    ok &= is_delzant(Polytope(2, std::move(mapped))).delzant;
  }
  report(4, ok, "100 random unimodular images: witnesses found, goodness and Delzant preserved");
}

// 5. One thousand random integer matrices: both normal forms verified
//    against their definitions by exact multiplication.
void criterion_5() {
  bool ok = true;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int iter = 0; iter < 1000 && ok; ++iter) {
    Mat m = oracles::random_matrix(rng, dim(rng), dim(rng));
    auto hr = hermite_normal_form(m);
    ok &= oracles::is_hermite_form(hr.h);
    ok &= (oracles::naive_mul(hr.u, m) == hr.h);
    Int du = oracles::laplace_det(hr.u);
    ok &= (du == 1 || du == -1);

    auto sr = smith_normal_form(m);
    ok &= oracles::is_smith_form(sr.d);
    ok &= (oracles::naive_mul(oracles::naive_mul(sr.u, m), sr.v) == sr.d);
    Int su = oracles::laplace_det(sr.u);
    Int sv = oracles::laplace_det(sr.v);
    ok &= (su == 1 || su == -1) && (sv == 1 || sv == -1);
  }
  report(5, ok, "1000 random matrices: Hermite and Smith forms verified by multiplication");
}

// 6. Bundle invariants across the five corpus pairs: Chern numbers are
//    (2a, -2b) and the isomorphism classes partition by a - b.
void criterion_6() {
  bool ok = true;
  std::vector<std::pair<long, long>> pairs = {{2, 1}, {3, 2}, {4, 3}, {5, 2}, {7, 4}};
  std::vector<BundleInvariant> invs;
  for (auto [a, b] : pairs) {
    auto inv = bundle_invariant(a, b);
    ok &= (inv.c1_l1 == 2 * Int(a)) && (inv.c1_l2 == -2 * Int(b)) &&
          (inv.iso_class == Int(a) - Int(b));
    invs.push_back(inv);
  }
  for (std::size_t i = 0; i < invs.size(); ++i)
    for (std::size_t j = i + 1; j < invs.size(); ++j) {
      bool same_class = invs[i].iso_class == invs[j].iso_class;
      bool same_diff = (invs[i].a - invs[i].b) == (invs[j].a - invs[j].b);
      ok &= (same_class == same_diff);
    }
  ok &= (invs[0].iso_class == invs[1].iso_class) && (invs[1].iso_class == invs[2].iso_class);
  ok &= (invs[3].iso_class == invs[4].iso_class);
  ok &= (invs[0].iso_class != invs[3].iso_class);
  report(6, ok, "bundle data: c1 = (2a, -2b); classes split exactly by a - b");
}

// 7. Edge bookkeeping on every corpus trapezoid: the bottom edge has
//    lattice length a + (m/2)b = c + m*b and the left edge has length b.
void criterion_7() {
  bool ok = true;
  for (const auto& p : parameter_grid(4, 4, 4)) {
    auto es = edges(hirzebruch_trapezoid(p));
    ok &= (es.size() == 4);
    ok &= (lattice_length(es[0]) == p.a() + Rat(p.m * p.b, 2));
    ok &= (lattice_length(es[0]) == Rat(p.c + p.m * p.b));
    ok &= (lattice_length(es[3]) == Rat(p.b));
    ok &= (es[0].primitive_direction == Vec{1, 0});
    ok &= (es[3].primitive_direction == Vec{0, -1});
  }
  report(7, ok, "trapezoid edges: bottom length a + (m/2)b, left length b, on the full grid");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (failures == 0)
    std::cout << "acceptance: all 7 criteria PASS" << std::endl;
  else
    std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
  return failures;
}
