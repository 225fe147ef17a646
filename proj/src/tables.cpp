#include "pcdeg/tables.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pcdeg {

GroupElement GroupHom::apply(const GroupElement& e) const {
  if (!e.group() || *e.group() != *domain)
    throw std::invalid_argument("hom applied to an element of the wrong group");
  std::vector<Int> out(codomain->factor_count(), 0);
  for (size_t j = 0; j < images.size(); ++j) {
    Int c = e.coeff(j);
    if (c == 0) continue;
    for (size_t f = 0; f < out.size(); ++f) {
      Int q = codomain->order(f);
      if (q == 0) {
        __int128 v = static_cast<__int128>(out[f]) +
                     static_cast<__int128>(c) * images[j][f];
        out[f] = static_cast<Int>(v);
      } else {
        out[f] = mod_reduce(out[f] + mod_reduce(c, q) * images[j][f], q);
      }
    }
  }
  return GroupElement(codomain, std::move(out));
}

bool GroupHom::is_zero() const {
  for (const auto& im : images)
    for (Int v : im)
      if (v != 0) return false;
  return true;
}

std::optional<std::string> hom_defect(const GroupHom& h) {
  if (!h.domain || !h.codomain) return "hom is missing a group";
  if (h.images.size() != h.domain->factor_count())
    return "hom image count does not match domain factor count";
  for (size_t j = 0; j < h.images.size(); ++j) {
    if (h.images[j].size() != h.codomain->factor_count())
      return "hom image " + std::to_string(j) + " has the wrong coefficient count";
    Int q = h.domain->order(j);
    if (q == 0) continue; /* infinite cyclic generator: any image works */
    for (size_t f = 0; f < h.images[j].size(); ++f) {
      Int o = h.codomain->order(f);
      Int v = h.images[j][f];
      bool killed = (o == 0) ? (q * v == 0) : (mod_reduce(q * mod_reduce(v, o), o) == 0);
      if (!killed) {
        std::ostringstream os;
        os << "hom not well defined: generator " << j << " of order " << q
           << " maps to a coefficient not killed by " << q << " in factor " << f;
        return os.str();
      }
    }
  }
  return std::nullopt;
}

GroupHom zero_hom(GroupPtr domain, GroupPtr codomain) {
  std::vector<std::vector<Int>> images(
      domain->factor_count(), std::vector<Int>(codomain->factor_count(), 0));
  return GroupHom{std::move(domain), std::move(codomain), std::move(images)};
}

GroupHom make_hom(GroupPtr domain, GroupPtr codomain,
                  std::vector<std::vector<Int>> images) {
  GroupHom h{std::move(domain), std::move(codomain), std::move(images)};
  /* canonicalize coefficients */
  for (auto& im : h.images)
    for (size_t f = 0; f < im.size(); ++f)
      im[f] = mod_reduce(im[f], h.codomain->order(f));
  if (auto defect = hom_defect(h)) throw std::invalid_argument(*defect);
  return h;
}

GroupTable::GroupTable()
    : g1(AbGroup::make({})),
      g2(AbGroup::make({})),
      eta_push(zero_hom(g2, g1)),
      whitehead_eta(GroupElement::zero(g1)),
      hopf_h(zero_hom(g1, AbGroup::z2())) {}

bool operator==(const GroupTable& a, const GroupTable& b) {
  return a.n == b.n && *a.g1 == *b.g1 && *a.g2 == *b.g2 &&
         a.eta_push.images == b.eta_push.images &&
         a.whitehead_eta.coeffs() == b.whitehead_eta.coeffs() &&
         a.hopf_h.images == b.hopf_h.images;
}

void validate_table(const GroupTable& t) {
  if (t.n < 4) throw std::invalid_argument("table needs n >= 4");
  if (!t.g1 || !t.g2) throw std::invalid_argument("table is missing a group");
  if (*t.eta_push.domain != *t.g2 || *t.eta_push.codomain != *t.g1)
    throw std::invalid_argument("eta_push must map g2 to g1");
  if (*t.hopf_h.domain != *t.g1 || *t.hopf_h.codomain != *AbGroup::z2())
    throw std::invalid_argument("hopf_h must map g1 to Z/2");
  if (*t.whitehead_eta.group() != *t.g1)
    throw std::invalid_argument("whitehead_eta must live in g1");
  if (!(2 * t.whitehead_eta).is_zero())
    throw std::invalid_argument("whitehead_eta must be 2-torsion");
  if ((t.n == 7 || t.n % 4 == 0) && !t.whitehead_eta.is_zero())
    throw std::invalid_argument("whitehead_eta: n = 7 or 4 | n forces zero");
  if (auto defect = hom_defect(t.eta_push))
    throw std::invalid_argument("eta_push: " + *defect);
  if (auto defect = hom_defect(t.hopf_h))
    throw std::invalid_argument("hopf_h: " + *defect);
}

GroupTable make_table(int n, GroupPtr g1, GroupPtr g2, GroupHom eta_push,
                      GroupElement whitehead_eta, GroupHom hopf_h) {
  GroupTable t;
  t.n = n;
  t.g1 = std::move(g1);
  t.g2 = std::move(g2);
  t.eta_push = std::move(eta_push);
  t.whitehead_eta = std::move(whitehead_eta);
  t.hopf_h = std::move(hopf_h);
  validate_table(t);
  return t;
}

GroupTable builtin_table(int n) {
  switch (n) {
    case 4: {
      GroupPtr g1 = AbGroup::make({12}, {"w"});
      GroupPtr g2 = AbGroup::make({2}, {"eta^2"});
      return make_table(4, g1, g2, make_hom(g2, g1, {{6}}),
                        GroupElement::zero(g1),
                        make_hom(g1, AbGroup::z2(), {{1}}));
    }
    case 5: {
      GroupPtr g1 = AbGroup::make({2, 2}, {"eps1", "eps2"});
      GroupPtr g2 = AbGroup::make({24}, {"w"});
      return make_table(5, g1, g2, make_hom(g2, g1, {{0, 1}}),
                        GroupElement(g1, {0, 1}),
                        make_hom(g1, AbGroup::z2(), {{1}, {0}}));
    }
    case 6: {
      GroupPtr g1 = AbGroup::make({2}, {"nu_eta^2"});
      GroupPtr g2 = AbGroup::make({});
      return make_table(6, g1, g2, zero_hom(g2, g1), GroupElement(g1, {1}),
                        make_hom(g1, AbGroup::z2(), {{0}}));
    }
    case 7: {
      GroupPtr g1 = AbGroup::make({2}, {"nu^2"});
      GroupPtr g2 = AbGroup::make({});
      return make_table(7, g1, g2, zero_hom(g2, g1), GroupElement::zero(g1),
                        make_hom(g1, AbGroup::z2(), {{0}}));
    }
    default:
      throw std::invalid_argument("no built-in table for n = " + std::to_string(n) +
                                  " (supported: 4..7)");
  }
}

TablePtr builtin_table_ptr(int n) {
  return std::make_shared<const GroupTable>(builtin_table(n));
}

namespace {

std::vector<Int> parse_int_list(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw std::invalid_argument(key + " must be an array of integers");
  std::vector<Int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw std::invalid_argument(key + " must contain integers");
    out.push_back(e.get<Int>());
  }
  return out;
}

std::vector<std::vector<Int>> parse_int_rows(const nlohmann::json& v,
                                             const std::string& key) {
  if (!v.is_array()) throw std::invalid_argument(key + " must be an array of rows");
  std::vector<std::vector<Int>> out;
  for (const auto& row : v) out.push_back(parse_int_list(row, key + " row"));
  return out;
}

const nlohmann::json& need(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw std::invalid_argument(std::string("table document is missing \"") + key + "\"");
  return *it;
}

} // namespace

GroupTable load_table(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("table document must be a JSON object");
  const auto& jn = need(doc, "n");
  if (!jn.is_number_integer()) throw std::invalid_argument("n must be an integer");
  int n = jn.get<int>();

  std::vector<std::string> names1, names2;
  if (auto it = doc.find("generator_names"); it != doc.end()) {
    if (!it->is_object())
      throw std::invalid_argument("generator_names must be an object");
    if (auto g = it->find("g1"); g != it->end())
      for (const auto& s : *g) names1.push_back(s.get<std::string>());
    if (auto g = it->find("g2"); g != it->end())
      for (const auto& s : *g) names2.push_back(s.get<std::string>());
  }

  GroupPtr g1 = AbGroup::make(parse_int_list(need(doc, "g1_orders"), "g1_orders"),
                              std::move(names1));
  GroupPtr g2 = AbGroup::make(parse_int_list(need(doc, "g2_orders"), "g2_orders"),
                              std::move(names2));

  auto eta_rows = parse_int_rows(need(doc, "eta_push"), "eta_push");
  if (eta_rows.size() != g2->factor_count())
    throw std::invalid_argument("eta_push needs one row per g2 factor");
  auto hopf_rows = parse_int_rows(need(doc, "hopf_h"), "hopf_h");
  if (hopf_rows.size() != g1->factor_count())
    throw std::invalid_argument("hopf_h needs one row per g1 factor");

  auto wh = parse_int_list(need(doc, "whitehead_eta"), "whitehead_eta");
  if (wh.size() != g1->factor_count())
    throw std::invalid_argument("whitehead_eta needs one coefficient per g1 factor");

  return make_table(n, g1, g2, make_hom(g2, g1, std::move(eta_rows)),
                    GroupElement(g1, std::move(wh)),
                    make_hom(g1, AbGroup::z2(), std::move(hopf_rows)));
}

nlohmann::json table_to_json(const GroupTable& t) {
  nlohmann::json doc;
  doc["n"] = t.n;
  doc["g1_orders"] = t.g1->orders();
  doc["g2_orders"] = t.g2->orders();
  doc["eta_push"] = t.eta_push.images;
  doc["whitehead_eta"] = t.whitehead_eta.coeffs();
  doc["hopf_h"] = t.hopf_h.images;
  nlohmann::json names;
  std::vector<std::string> names1, names2;
  for (size_t i = 0; i < t.g1->factor_count(); ++i) names1.push_back(t.g1->name(i));
  for (size_t i = 0; i < t.g2->factor_count(); ++i) names2.push_back(t.g2->name(i));
  names["g1"] = names1;
  names["g2"] = names2;
  doc["generator_names"] = names;
  return doc;
}

Int image_exponent(const GroupHom& h) {
  Int e = 1;
  for (size_t j = 0; j < h.images.size(); ++j) {
    GroupElement im(h.codomain, h.images[j]);
    auto ord = im.order();
    if (!ord) throw std::invalid_argument("hom image has infinite exponent");
    e = std::lcm(e, *ord);
  }
  return e;
}

Moduli required_moduli(const GroupTable& t) {
  auto e1 = t.g1->exponent();
  auto e2 = t.g2->exponent();
  if (!e1 || !e2)
    throw std::invalid_argument("required_moduli needs finite coefficient groups");
  Moduli m;
  bool bracket_terms = !t.whitehead_eta.is_zero() || !t.hopf_h.is_zero();
  m.a = bracket_terms ? std::lcm(*e1, Int{4}) : *e1;
  m.c = std::lcm(Int{2}, image_exponent(t.eta_push));
  m.d = *e2;
  return m;
}

} // namespace pcdeg
