#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <optional>
#include <vector>

namespace pcdeg {

using BigInt = boost::multiprecision::cpp_int;

/* Dense row-major integer matrix with exact arbitrary-precision entries. */
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  BigInt& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const BigInt& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  IntMatrix transpose() const;
  size_t rank() const;
  BigInt determinant() const; /* Bareiss; square matrices only */

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

/* Row-style Hermite normal form: h = u * a with u unimodular, h in row
 * echelon form with positive pivots and entries above each pivot reduced
 * into [0, pivot). Zero rows of h come last. */
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
};
HnfResult hnf(const IntMatrix& a);

/* The integer solution set {x : a*x = b} of a linear system, when nonempty:
 * an affine sublattice particular + Z<basis>. Basis vectors are linearly
 * independent. */
struct AffineLattice {
  std::vector<BigInt> particular;
  std::vector<std::vector<BigInt>> basis;
  size_t dim() const { return particular.size(); }
};

/* Solve a * X = b exactly over the integers. b may have several columns; the
 * unknown X then has matching columns and the lattice lives on vec(X) with
 * columns stacked first-to-last. Returns nullopt when no integer solution
 * exists. */
std::optional<AffineLattice> solve_linear(const IntMatrix& a, const IntMatrix& b);

/* Given the solution lattice of a linear system, decide whether some member v
 * also satisfies l * v = c (mod q), q >= 1. Returns such a v, or nullopt.
 * Decided exactly by solving the extended integer system over the lattice
 * coordinates with q-slack columns. */
std::optional<std::vector<BigInt>> coset_congruence_feasible(
    const AffineLattice& solutions, const IntMatrix& l,
    const std::vector<BigInt>& c, const BigInt& q);

} // namespace pcdeg
