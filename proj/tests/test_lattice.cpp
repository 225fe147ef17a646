#include <doctest.h>

#include <random>

#include "pcdeg/lattice.hpp"

using namespace pcdeg;

namespace {

/* --- independent oracles, used to judge hnf/solve_linear output --- */

BigInt det_by_cofactors(const IntMatrix& m) {
  size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  BigInt acc = 0;
  for (size_t c = 0; c < n; ++c) {
    if (m.at(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (size_t i = 1; i < n; ++i)
      for (size_t j = 0, jj = 0; j < n; ++j) {
        if (j == c) continue;
        minor.at(i - 1, jj++) = m.at(i, j);
      }
    BigInt term = m.at(0, c) * det_by_cofactors(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

/* Hermite form contract: h = u*a, u unimodular, nonzero rows echelon with
 * positive pivots and reduced entries above, zero rows last. */
void check_hnf_contract(const IntMatrix& a) {
  HnfResult r = hnf(a);
  REQUIRE(r.u.rows() == a.rows());
  REQUIRE(r.u.cols() == a.rows());
  CHECK(r.u * a == r.h);
  BigInt du = det_by_cofactors(r.u);
  CHECK((du == 1 || du == -1));

  size_t last_pivot_col = 0;
  bool seen_zero_row = false;
  bool first_pivot = true;
  for (size_t i = 0; i < r.h.rows(); ++i) {
    size_t c = 0;
    while (c < r.h.cols() && r.h.at(i, c) == 0) ++c;
    if (c == r.h.cols()) {
      seen_zero_row = true;
      continue;
    }
    CHECK(!seen_zero_row); /* zero rows come last */
    if (!first_pivot) CHECK(c > last_pivot_col);
    first_pivot = false;
    last_pivot_col = c;
    CHECK(r.h.at(i, c) > 0);
    for (size_t j = 0; j < i; ++j) {
      CHECK(r.h.at(j, c) >= 0);
      CHECK(r.h.at(j, c) < r.h.at(i, c));
    }
  }
}

IntMatrix random_matrix(std::mt19937& rng, size_t rows, size_t cols, int span) {
  std::uniform_int_distribution<int> dist(-span, span);
  IntMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.at(r, c) = dist(rng);
  return m;
}

bool is_zero_vector(const std::vector<BigInt>& v) {
  for (const BigInt& x : v)
    if (x != 0) return false;
  return true;
}

/* residual b - a*x for a stacked multi-column solution vector */
std::vector<BigInt> residual(const IntMatrix& a, const IntMatrix& b,
                             const std::vector<BigInt>& x) {
  std::vector<BigInt> out;
  size_t n = a.cols();
  for (size_t bc = 0; bc < b.cols(); ++bc)
    for (size_t r = 0; r < a.rows(); ++r) {
      BigInt acc = 0;
      for (size_t c = 0; c < n; ++c) acc += a.at(r, c) * x[bc * n + c];
      out.push_back(b.at(r, bc) - acc);
    }
  return out;
}

} // namespace

TEST_CASE("matrix basics") {
  IntMatrix a{{1, 2}, {3, 4}};
  CHECK(a.rows() == 2);
  CHECK(a.at(1, 0) == 3);
  CHECK(a.transpose().at(0, 1) == 3);
  CHECK(IntMatrix::identity(2) * a == a);
  CHECK_THROWS_AS(IntMatrix({{1}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(a * IntMatrix(3, 3), std::invalid_argument);

  IntMatrix i3 = IntMatrix::identity(3);
  CHECK(i3 * i3 == i3);
}

TEST_CASE("determinant matches cofactor expansion") {
  CHECK(IntMatrix{{5}}.determinant() == 5);
  CHECK(IntMatrix{{1, 2}, {3, 4}}.determinant() == -2);
  CHECK(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}.determinant() == 24);
  CHECK(IntMatrix{{1, 2}, {2, 4}}.determinant() == 0);
  CHECK_THROWS_AS(IntMatrix(2, 3).determinant(), std::invalid_argument);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    size_t n = 1 + trial % 5;
    IntMatrix m = random_matrix(rng, n, n, 9);
    CHECK(m.determinant() == det_by_cofactors(m));
  }
}

TEST_CASE("rank") {
  CHECK(IntMatrix{{1, 2}, {2, 4}}.rank() == 1);
  CHECK(IntMatrix{{1, 0}, {0, 1}}.rank() == 2);
  CHECK(IntMatrix(3, 2).rank() == 0);
  CHECK(IntMatrix{{2, 4, 6}}.rank() == 1);
}

TEST_CASE("hnf contract on fixed and random matrices") {
  check_hnf_contract(IntMatrix{{2, 4}, {6, 8}});
  check_hnf_contract(IntMatrix{{0, 0}, {0, 0}});
  check_hnf_contract(IntMatrix{{4}, {6}});
  check_hnf_contract(IntMatrix{{0, 5, 1}, {3, 0, 0}});
  check_hnf_contract(IntMatrix{{-3, 1}, {7, -2}, {4, 4}});

  std::mt19937 rng(20260814);
  for (int trial = 0; trial < 120; ++trial) {
    size_t rows = 1 + trial % 5;
    size_t cols = 1 + (trial / 5) % 5;
    check_hnf_contract(random_matrix(rng, rows, cols, 9));
  }
}

TEST_CASE("solve_linear pinned cases") {
  auto s1 = solve_linear(IntMatrix{{2}}, IntMatrix{{6}});
  REQUIRE(s1.has_value());
  CHECK(s1->particular == std::vector<BigInt>{3});
  CHECK(s1->basis.empty());

  CHECK(!solve_linear(IntMatrix{{2}}, IntMatrix{{3}}).has_value());

  auto s2 = solve_linear(IntMatrix{{1, 0}}, IntMatrix{{5}});
  REQUIRE(s2.has_value());
  CHECK(is_zero_vector(residual(IntMatrix{{1, 0}}, IntMatrix{{5}}, s2->particular)));
  CHECK(s2->particular[0] == 5);
  REQUIRE(s2->basis.size() == 1);
  /* kernel of (1 0) is the second axis, up to sign */
  CHECK(s2->basis[0][0] == 0);
  CHECK((s2->basis[0][1] == 1 || s2->basis[0][1] == -1));

  /* multi-column right side stacks column blocks */
  auto s3 = solve_linear(IntMatrix{{1, 0}, {0, 2}}, IntMatrix{{1, 2}, {4, 6}});
  REQUIRE(s3.has_value());
  CHECK(s3->particular == std::vector<BigInt>{1, 2, 2, 3});
  CHECK(s3->basis.empty());

  CHECK(!solve_linear(IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{1}, {1}}).has_value());
  CHECK(!solve_linear(IntMatrix{{2}, {4}}, IntMatrix{{2}, {5}}).has_value());
  CHECK_THROWS_AS(solve_linear(IntMatrix(2, 2), IntMatrix(3, 1)),
                  std::invalid_argument);
}

TEST_CASE("solve_linear on random solvable systems") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> xdist(-6, 6);
  for (int trial = 0; trial < 80; ++trial) {
    size_t rows = 1 + trial % 4;
    size_t cols = 1 + (trial / 4) % 4;
    size_t bcols = 1 + trial % 2;
    IntMatrix a = random_matrix(rng, rows, cols, 6);
    IntMatrix x0(cols, bcols);
    for (size_t r = 0; r < cols; ++r)
      for (size_t c = 0; c < bcols; ++c) x0.at(r, c) = xdist(rng);
    IntMatrix b = a * x0;

    auto sol = solve_linear(a, b);
    REQUIRE(sol.has_value());
    CHECK(is_zero_vector(residual(a, b, sol->particular)));
    for (const auto& v : sol->basis) {
      CHECK(is_zero_vector(residual(a, IntMatrix(rows, bcols), v)));
      CHECK(!is_zero_vector(v));
    }
    /* kernel dimension: one block of (cols - rank) per right-side column */
    CHECK(sol->basis.size() == bcols * (cols - a.rank()));

    /* the planted solution is reachable: x0 - particular lies in the span */
    std::vector<BigInt> gap(cols * bcols);
    for (size_t bc = 0; bc < bcols; ++bc)
      for (size_t r = 0; r < cols; ++r)
        gap[bc * cols + r] = x0.at(r, bc) - sol->particular[bc * cols + r];
    if (sol->basis.empty()) {
      CHECK(is_zero_vector(gap));
    } else {
      IntMatrix span(gap.size(), sol->basis.size());
      for (size_t bi = 0; bi < sol->basis.size(); ++bi)
        for (size_t r = 0; r < gap.size(); ++r) span.at(r, bi) = sol->basis[bi][r];
      IntMatrix target(gap.size(), 1);
      for (size_t r = 0; r < gap.size(); ++r) target.at(r, 0) = gap[r];
      CHECK(solve_linear(span, target).has_value());
    }
  }
}

TEST_CASE("coset congruence feasibility") {
  /* lattice 1 + 3Z: which members are even? 4, -2, ... */
  AffineLattice line{{1}, {{3}}};
  auto v = coset_congruence_feasible(line, IntMatrix{{1}}, {0}, 2);
  REQUIRE(v.has_value());
  CHECK((((*v)[0] - 1) % 3) == 0); /* member of the lattice */
  CHECK((*v)[0] % 2 == 0);

  /* no member of 2 + 4Z is divisible by 4 */
  AffineLattice shifted{{2}, {{4}}};
  CHECK(!coset_congruence_feasible(shifted, IntMatrix{{1}}, {0}, 4).has_value());

  /* free second coordinate reaches any residue */
  AffineLattice plane{{5, 0}, {{0, 1}}};
  auto w = coset_congruence_feasible(plane, IntMatrix{{0, 1}}, {2}, 24);
  REQUIRE(w.has_value());
  CHECK((*w)[0] == 5);
  CHECK(((*w)[1] - 2) % 24 == 0);

  /* fixed point lattice: feasible iff the particular already fits */
  AffineLattice point{{7}, {}};
  CHECK(coset_congruence_feasible(point, IntMatrix{{1}}, {1}, 3).has_value());
  CHECK(!coset_congruence_feasible(point, IntMatrix{{1}}, {0}, 3).has_value());

  CHECK_THROWS_AS(coset_congruence_feasible(point, IntMatrix{{1}}, {0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(coset_congruence_feasible(point, IntMatrix{{1, 2}}, {0}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(coset_congruence_feasible(point, IntMatrix{{1}}, {0, 1}, 2),
                  std::invalid_argument);
}

TEST_CASE("coset feasibility agrees with brute force") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> dist(-4, 4);
  std::uniform_int_distribution<int> qdist(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    size_t dim = 2 + trial % 2;
    size_t nb = 1 + trial % 2;
    AffineLattice lat;
    lat.particular.resize(dim);
    for (auto& p : lat.particular) p = dist(rng);
    lat.basis.resize(nb, std::vector<BigInt>(dim));
    for (auto& bvec : lat.basis)
      for (auto& e : bvec) e = dist(rng);

    size_t lrows = 1 + trial % 2;
    IntMatrix l = random_matrix(rng, lrows, dim, 4);
    std::vector<BigInt> c(lrows);
    for (auto& e : c) e = dist(rng);
    BigInt q = qdist(rng);

    /* brute force over a coefficient box: the congruence value is periodic in
     * each coefficient with period dividing q <= 6, so the box covers every
     * reachable residue pattern */
    bool brute = false;
    int bound = 6;
    std::vector<int> t(nb, -bound);
    for (;;) {
      std::vector<BigInt> v = lat.particular;
      for (size_t bi = 0; bi < nb; ++bi)
        for (size_t j = 0; j < dim; ++j) v[j] += BigInt(t[bi]) * lat.basis[bi][j];
      bool ok = true;
      for (size_t r = 0; r < lrows && ok; ++r) {
        BigInt acc = 0;
        for (size_t j = 0; j < dim; ++j) acc += l.at(r, j) * v[j];
        ok = ((acc - c[r]) % q == 0);
      }
      if (ok) {
        brute = true;
        break;
      }
      size_t bi = 0;
      while (bi < nb && t[bi] == bound) t[bi++] = -bound;
      if (bi == nb) break;
      ++t[bi];
    }

    auto got = coset_congruence_feasible(lat, l, c, q);
    if (brute) {
      REQUIRE(got.has_value());
      /* returned witness really is a lattice member satisfying the congruence */
      for (size_t r = 0; r < lrows; ++r) {
        BigInt acc = 0;
        for (size_t j = 0; j < dim; ++j) acc += l.at(r, j) * (*got)[j];
        CHECK((acc - c[r]) % q == 0);
      }
    } else {
      CHECK(!got.has_value());
    }
  }
}
