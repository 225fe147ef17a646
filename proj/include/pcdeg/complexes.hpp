#pragma once

#include <cstdint>

#include "pcdeg/tables.hpp"

namespace pcdeg {

/* Invariant data of one (n-2)-connected (2n-1)-dimensional complex with
 * torsion-free middle homology of the given rank: per wedge summand one
 * first-order invariant in g1 and one in g2, plus the strict upper
 * triangular bit matrix of pairwise second-order terms (row-major). */
struct ComplexSpec {
  TablePtr table;
  int rank = 0;
  std::vector<GroupElement> first_low;
  std::vector<GroupElement> first_high;
  std::vector<uint8_t> second;

  uint8_t second_bit(int i, int j) const; /* requires i < j */

  friend bool operator==(const ComplexSpec& a, const ComplexSpec& b);
  friend bool operator!=(const ComplexSpec& a, const ComplexSpec& b) {
    return !(a == b);
  }
};

bool same_table(const ComplexSpec& a, const ComplexSpec& b);

ComplexSpec make_complex(TablePtr table, int rank,
                         std::vector<GroupElement> first_low,
                         std::vector<GroupElement> first_high,
                         std::vector<uint8_t> second); /* validates */

/* All invariants zero: the k-fold connected sum of S^{n-1} x S^n. */
ComplexSpec product_sum(TablePtr table, int rank);

/* The rank-k twisted complex at n = 7: first_low[0] is the generator of
 * pi_{2n-2}(S^{n-1}) = Z/2, everything else zero. */
ComplexSpec z_complex(int rank);

/* Cofiber of the sum of the two attaching maps; invariants concatenate and
 * the cross-block second-order bits vanish. */
ComplexSpec homotopy_connected_sum(const ComplexSpec& x, const ComplexSpec& y);

/* Number of distinct invariant tuples: |g1|^k * |g2|^k * 2^(k(k-1)/2). */
uint64_t complex_family_size(const GroupTable& table, int rank);

/* Deterministic family enumeration. Index decomposes as an odometer with
 * first_low[0] the fastest digit (elements of a group ordered by mixed-radix
 * coefficients, factor 0 fastest), then first_low[1..], then first_high[0..],
 * then the second bits in row-major order. Index 0 is product_sum. */
class ComplexEnumerator {
public:
  ComplexEnumerator(TablePtr table, int rank);
  uint64_t size() const { return size_; }
  ComplexSpec at(uint64_t index) const;

private:
  TablePtr table_;
  int rank_;
  uint64_t size_;
};

std::vector<ComplexSpec> enumerate_complexes(TablePtr table, int rank);

ComplexSpec complex_from_json(const nlohmann::json& doc, TablePtr table);
nlohmann::json complex_to_json(const ComplexSpec& x);

} // namespace pcdeg
