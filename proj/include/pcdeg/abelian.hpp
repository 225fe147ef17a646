#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcdeg {

using Int = long long;

/* Canonical representative of value mod modulus: in [0, modulus) for
 * modulus > 0, the value itself for modulus == 0 (infinite cyclic factor). */
Int mod_reduce(Int value, Int modulus);

class AbGroup;
using GroupPtr = std::shared_ptr<const AbGroup>;

/* Finitely generated abelian group presented as a fixed direct sum
 * Z/q_0 + Z/q_1 + ..., with q_i = 0 standing for an infinite cyclic factor.
 * The presentation (factor order and count) is part of the identity; no
 * normalization to invariant factors is performed. Names are documentation
 * only and do not take part in equality. */
class AbGroup {
public:
  AbGroup() = default;
  explicit AbGroup(std::vector<Int> orders, std::vector<std::string> names = {});

  static GroupPtr make(std::vector<Int> orders, std::vector<std::string> names = {});
  static const GroupPtr& z2(); /* shared Z/2, codomain of Hopf coefficients */

  size_t factor_count() const { return orders_.size(); }
  Int order(size_t i) const { return orders_.at(i); }
  const std::vector<Int>& orders() const { return orders_; }
  std::string name(size_t i) const;
  const std::vector<std::string>& names() const { return names_; }

  bool is_trivial() const; /* every factor has order 1 (or no factors) */
  bool is_finite() const;  /* no order-0 factor */
  std::optional<Int> exponent() const; /* lcm of factor orders; nullopt if infinite */
  std::optional<Int> size() const;     /* product of factor orders; nullopt if infinite */

  friend bool operator==(const AbGroup& a, const AbGroup& b) {
    return a.orders_ == b.orders_;
  }
  friend bool operator!=(const AbGroup& a, const AbGroup& b) { return !(a == b); }

private:
  std::vector<Int> orders_;
  std::vector<std::string> names_;
};

/* Element of an AbGroup. Coefficients are kept canonical at all times. */
class GroupElement {
public:
  GroupElement(GroupPtr group, std::vector<Int> coeffs);

  static GroupElement zero(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int coeff(size_t i) const { return coeffs_.at(i); }

  bool is_zero() const;
  std::optional<Int> order() const; /* nullopt = infinite order */

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator*(Int scalar, const GroupElement& e);
  friend bool operator==(const GroupElement& a, const GroupElement& b);
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }

private:
  GroupPtr group_;
  std::vector<Int> coeffs_;
};

} // namespace pcdeg
