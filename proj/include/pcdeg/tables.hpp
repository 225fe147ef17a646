#pragma once

#include <json.hpp>

#include "pcdeg/abelian.hpp"

namespace pcdeg {

/* Homomorphism between direct-sum groups, stored by generator images:
 * images[j] = canonical codomain coefficients of the image of domain
 * generator j. */
struct GroupHom {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<std::vector<Int>> images;

  GroupElement apply(const GroupElement& e) const;
  bool is_zero() const;
};

/* nullopt when well defined; otherwise a message naming the offending
 * generator (the image of a generator of order q must be killed by q). */
std::optional<std::string> hom_defect(const GroupHom& h);

GroupHom zero_hom(GroupPtr domain, GroupPtr codomain);
GroupHom make_hom(GroupPtr domain, GroupPtr codomain,
                  std::vector<std::vector<Int>> images); /* validates */

/* Coefficient data the degree equations consume for one dimension n:
 * the two value groups, eta postcomposition g2 -> g1, the Whitehead-eta
 * element of g1, and the Hopf coefficient map g1 -> Z/2. */
struct GroupTable {
  int n = 0;
  GroupPtr g1;
  GroupPtr g2;
  GroupHom eta_push;
  GroupElement whitehead_eta;
  GroupHom hopf_h;

  GroupTable();

  friend bool operator==(const GroupTable& a, const GroupTable& b);
  friend bool operator!=(const GroupTable& a, const GroupTable& b) { return !(a == b); }
};

using TablePtr = std::shared_ptr<const GroupTable>;

/* Throws std::invalid_argument describing the first violated table rule. */
void validate_table(const GroupTable& t);

GroupTable make_table(int n, GroupPtr g1, GroupPtr g2, GroupHom eta_push,
                      GroupElement whitehead_eta, GroupHom hopf_h);

/* Built-in tables for n in {4,5,6,7}. */
GroupTable builtin_table(int n);
TablePtr builtin_table_ptr(int n);

GroupTable load_table(const nlohmann::json& doc);
nlohmann::json table_to_json(const GroupTable& t);

/* Shift moduli of the three stored witness blocks: entries of A matter mod
 * `a`, of C mod `c`, of D mod `d` as far as the equations are concerned. */
struct Moduli {
  Int a = 1;
  Int c = 1;
  Int d = 1;
};
Moduli required_moduli(const GroupTable& t);

/* Exponent of the image subgroup of a hom (lcm of generator image orders). */
Int image_exponent(const GroupHom& h);

} // namespace pcdeg
