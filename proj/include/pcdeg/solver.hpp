#pragma once

#include <stdexcept>
#include <utility>

#include "pcdeg/complexes.hpp"
#include "pcdeg/lattice.hpp"

namespace pcdeg {

/* Integer blocks of a skeleton map X -> Y between ranks k and m, row-major
 * k x m each. The fourth block of the full 2k x 2m matrix is identically
 * zero and not stored; C entries are only meaningful mod 2. */
struct WitnessMatrix {
  int k = 0, m = 0;
  std::vector<Int> a, c, d;

  static WitnessMatrix zeros(int k, int m);

  Int& A(int i, int t) { return a[static_cast<size_t>(i) * m + t]; }
  Int& C(int i, int t) { return c[static_cast<size_t>(i) * m + t]; }
  Int& D(int i, int t) { return d[static_cast<size_t>(i) * m + t]; }
  Int A(int i, int t) const { return a[static_cast<size_t>(i) * m + t]; }
  Int C(int i, int t) const { return c[static_cast<size_t>(i) * m + t]; }
  Int D(int i, int t) const { return d[static_cast<size_t>(i) * m + t]; }

  friend bool operator==(const WitnessMatrix& x, const WitnessMatrix& y) {
    return x.k == y.k && x.m == y.m && x.a == y.a && x.c == y.c && x.d == y.d;
  }
};

struct SearchParams {
  std::optional<std::vector<Int>> moduli; /* UNSAT certificate moduli; default from table */
  std::optional<Int> box;                 /* A-entry box for the general search */
  int jobs = 1;                           /* parallel degree sweeps */
  Int max_modulus = 48;                   /* progression conjecture bound */
};

struct Certificate {
  enum class Kind { modulus, rank, rank1_exhaustive };
  Kind kind = Kind::modulus;
  Int modulus = 0; /* set for Kind::modulus */
};

struct Verdict {
  enum class Status { witness, no_solution_proven, no_solution_within_bounds };
  Status status = Status::witness;
  std::optional<WitnessMatrix> witness;      /* Status::witness */
  std::optional<Certificate> certificate;    /* Status::no_solution_proven */
  std::vector<Int> moduli_used;              /* echoed search parameters */
  Int box_used = 0;

  bool is_witness() const { return status == Status::witness; }
  bool is_proven() const { return status == Status::no_solution_proven; }
  bool is_within_bounds() const { return status == Status::no_solution_within_bounds; }
};

/* The degree-d mapping equations for a pair of complexes over one table,
 * with all coefficient data flattened for evaluation. Equation blocks:
 *   (1) m equations valued in g1 over the A and C columns,
 *   (2) m equations valued in g2 over the D columns,
 *   (3) m(m-1)/2 mod-2 congruences over A and C,
 *   (4) the bilinear core A^T D = d I_m.
 * Left sides carry the domain invariants; right sides are d times the
 * codomain invariants. */
class ConstraintSystem {
public:
  ConstraintSystem(const ComplexSpec& x, const ComplexSpec& y, Int d);

  const TablePtr& table() const { return table_; }
  int k() const { return k_; }
  int m() const { return m_; }
  Int degree() const { return d_; }

  size_t eq1_count() const { return static_cast<size_t>(m_); }
  size_t eq2_count() const { return static_cast<size_t>(m_); }
  size_t eq3_count() const { return static_cast<size_t>(m_) * (m_ - 1) / 2; }
  size_t eq4_count() const { return static_cast<size_t>(m_) * m_; }

  /* Equation (1), column t: a_col and c_col are the t-th columns of A and C
   * (length k). The left side is returned as canonical g1 coefficients. */
  std::vector<Int> eq1_lhs(const std::vector<Int>& a_col,
                           const std::vector<Int>& c_col) const;
  bool eq1_holds(const std::vector<Int>& a_col, const std::vector<Int>& c_col,
                 int t) const;

  /* Equation (2), column t: d_col is the t-th column of D. */
  bool eq2_holds(const std::vector<Int>& d_col, int t) const;

  /* Equation (3) for the pair s < t, on full row-major A and C blocks. */
  Int eq3_lhs_mod2(const std::vector<Int>& a, const std::vector<Int>& c, int s,
                   int t) const;
  bool eq3_holds(const std::vector<Int>& a, const std::vector<Int>& c, int s,
                 int t) const;

  /* Equation (4), exact: A^T D = d I_m. */
  bool eq4_holds(const std::vector<Int>& a, const std::vector<Int>& d) const;

  /* cached complex/table data (canonical coefficients) */
  const std::vector<std::vector<Int>>& p_low() const { return p_low_; }
  const std::vector<std::vector<Int>>& p_high() const { return p_high_; }
  const std::vector<std::vector<Int>>& q_low() const { return q_low_; }
  const std::vector<std::vector<Int>>& q_high() const { return q_high_; }
  const std::vector<Int>& hopf_low() const { return h_low_; }
  bool whitehead_zero() const { return wh_zero_; }
  uint8_t x_bit(int i, int j) const;
  uint8_t y_bit(int s, int t) const;

private:
  TablePtr table_;
  int k_ = 0, m_ = 0;
  Int d_ = 0;
  std::vector<std::vector<Int>> p_low_, p_high_, eta_p_, q_low_, q_high_;
  std::vector<Int> h_low_; /* hopf coefficient of p_low[i], 0 or 1 */
  std::vector<Int> wh_;    /* whitehead_eta coefficients */
  bool wh_zero_ = true;
  std::vector<uint8_t> x_bits_, y_bits_;
  std::vector<Int> g1_orders_, g2_orders_;
  std::vector<std::vector<Int>> rhs1_, rhs2_; /* canonical d * q_low[t], d * q_high[t] */
  std::vector<Int> rhs3_;                     /* (d * m^Y_st) mod 2, pair-major */

  friend class StagedSearch;
};

ConstraintSystem build_system(const ComplexSpec& x, const ComplexSpec& y, Int d);
bool verify_witness(const ConstraintSystem& sys, const WitnessMatrix& w);

/* Three-valued degree-d decision; see README for the staged procedure. */
Verdict check_degree(const ComplexSpec& x, const ComplexSpec& y, Int d,
                     const SearchParams& params = {});

struct DegreeVerdict {
  Int d = 0;
  Verdict verdict;
};

/* Union of residue classes mod `modulus`, validated only for |d| <= range. */
struct APUnion {
  Int modulus = 1;
  std::vector<Int> classes;
  Int range = 0;
};

struct DegreeReport {
  int n = 0;
  Int range = 0;
  bool exact = false; /* no verdict is within-bounds */
  std::vector<DegreeVerdict> verdicts; /* d = -range .. range in order */
  std::optional<APUnion> progressions;

  bool member(Int d) const;
  std::vector<Int> members() const;
};

DegreeReport degree_set(const ComplexSpec& x, const ComplexSpec& y, Int range,
                        const SearchParams& params = {});

/* Smallest modulus M <= max_modulus whose residue classes explain membership
 * across the report's whole range; nullopt when none fits. The result is a
 * conjecture validated only on the range. Requires an exact report. */
std::optional<APUnion> infer_progressions(const DegreeReport& report,
                                          Int max_modulus = 48);

class UndecidedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/* Degree-(+-1) existence; ranks differing forces false. Throws
 * UndecidedError if either sign is only excluded within bounds. */
std::pair<bool, std::optional<WitnessMatrix>> is_equivalent(
    const ComplexSpec& x, const ComplexSpec& y, const SearchParams& params = {});

struct HomotopyClass {
  uint64_t representative = 0; /* enumeration-least member */
  std::vector<uint64_t> members;
};

struct Classification {
  int n = 0;
  int rank = 0;
  uint64_t family_size = 0;
  std::vector<HomotopyClass> classes; /* sorted by representative */
};

Classification classify(TablePtr table, int rank, const SearchParams& params = {});

/* Block composition rule for chained witnesses (P: X->Y, then Q: Y->Z). */
WitnessMatrix compose_witness(const WitnessMatrix& p, const WitnessMatrix& q);

/* det A * det D, the determinant of the full block matrix; k = m only. */
BigInt det_star(const WitnessMatrix& w);

} // namespace pcdeg
