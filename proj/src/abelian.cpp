#include "pcdeg/abelian.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pcdeg {

Int mod_reduce(Int value, Int modulus) {
  if (modulus < 0) throw std::invalid_argument("modulus must be >= 0");
  if (modulus == 0) return value;
  Int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

AbGroup::AbGroup(std::vector<Int> orders, std::vector<std::string> names)
    : orders_(std::move(orders)), names_(std::move(names)) {
  for (Int q : orders_)
    if (q < 0) throw std::invalid_argument("factor order must be >= 0 (0 = infinite cyclic)");
  if (!names_.empty() && names_.size() != orders_.size())
    throw std::invalid_argument("generator name count does not match factor count");
}

GroupPtr AbGroup::make(std::vector<Int> orders, std::vector<std::string> names) {
  return std::make_shared<AbGroup>(std::move(orders), std::move(names));
}

const GroupPtr& AbGroup::z2() {
  static const GroupPtr g = make({2}, {"eta"});
  return g;
}

std::string AbGroup::name(size_t i) const {
  if (i >= orders_.size()) throw std::out_of_range("factor index out of range");
  if (i < names_.size() && !names_[i].empty()) return names_[i];
  return "g" + std::to_string(i);
}

bool AbGroup::is_trivial() const {
  for (Int q : orders_)
    if (q != 1) return false;
  return true;
}

bool AbGroup::is_finite() const {
  for (Int q : orders_)
    if (q == 0) return false;
  return true;
}

std::optional<Int> AbGroup::exponent() const {
  Int e = 1;
  for (Int q : orders_) {
    if (q == 0) return std::nullopt;
    e = std::lcm(e, q);
  }
  return e;
}

std::optional<Int> AbGroup::size() const {
  Int s = 1;
  for (Int q : orders_) {
    if (q == 0) return std::nullopt;
    if (s > (1LL << 62) / q) throw std::overflow_error("group size overflow");
    s *= q;
  }
  return s;
}

namespace {

std::string group_desc(const AbGroup& g) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < g.factor_count(); ++i)
    os << (i ? "," : "") << g.order(i);
  os << "]";
  return os.str();
}

void require_same_group(const GroupElement& a, const GroupElement& b,
                        const char* what) {
  if (!a.group() || !b.group() || *a.group() != *b.group()) {
    std::ostringstream os;
    os << "group mismatch in " << what << ": " << group_desc(*a.group())
       << " vs " << group_desc(*b.group());
    throw std::invalid_argument(os.str());
  }
}

} // namespace

GroupElement::GroupElement(GroupPtr group, std::vector<Int> coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
  if (!group_) throw std::invalid_argument("element needs a group");
  if (coeffs_.size() != group_->factor_count())
    throw std::invalid_argument("coefficient count does not match factor count");
  for (size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] = mod_reduce(coeffs_[i], group_->order(i));
}

GroupElement GroupElement::zero(GroupPtr group) {
  if (!group) throw std::invalid_argument("element needs a group");
  size_t n = group->factor_count();
  return GroupElement(std::move(group), std::vector<Int>(n, 0));
}

bool GroupElement::is_zero() const {
  for (Int c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<Int> GroupElement::order() const {
  Int ord = 1;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    Int q = group_->order(i);
    Int c = coeffs_[i];
    if (c == 0) continue;
    if (q == 0) return std::nullopt;
    ord = std::lcm(ord, q / std::gcd(c, q));
  }
  return ord;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b, "addition");
  std::vector<Int> out(a.coeffs_.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = mod_reduce(a.coeffs_[i] + b.coeffs_[i], a.group_->order(i));
  return GroupElement(a.group_, std::move(out));
}

GroupElement operator*(Int scalar, const GroupElement& e) {
  std::vector<Int> out(e.coeffs_.size());
  for (size_t i = 0; i < out.size(); ++i) {
    Int q = e.group_->order(i);
    if (q == 0) {
      __int128 v = static_cast<__int128>(scalar) * e.coeffs_[i];
      constexpr Int kMax = std::numeric_limits<Int>::max() / 2;
      if (v > kMax || v < -kMax)
        throw std::overflow_error("scalar multiple overflows an infinite factor");
      out[i] = static_cast<Int>(v);
    } else {
      out[i] = mod_reduce(mod_reduce(scalar, q) * e.coeffs_[i], q);
    }
  }
  return GroupElement(e.group_, std::move(out));
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  return *a.group_ == *b.group_ && a.coeffs_ == b.coeffs_;
}

} // namespace pcdeg
