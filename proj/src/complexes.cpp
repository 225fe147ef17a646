#include "pcdeg/complexes.hpp"

#include <stdexcept>

namespace pcdeg {

namespace {

size_t bit_index(int rank, int i, int j) {
  /* row-major strict upper triangle: (0,1),(0,2),...,(0,k-1),(1,2),... */
  return static_cast<size_t>(i) * rank - static_cast<size_t>(i) * (i + 1) / 2 +
         (j - i - 1);
}

} // namespace

uint8_t ComplexSpec::second_bit(int i, int j) const {
  if (!(0 <= i && i < j && j < rank))
    throw std::out_of_range("second_bit needs 0 <= i < j < rank");
  return second[bit_index(rank, i, j)];
}

bool operator==(const ComplexSpec& a, const ComplexSpec& b) {
  return same_table(a, b) && a.rank == b.rank && a.first_low == b.first_low &&
         a.first_high == b.first_high && a.second == b.second;
}

bool same_table(const ComplexSpec& a, const ComplexSpec& b) {
  return a.table && b.table && *a.table == *b.table;
}

ComplexSpec make_complex(TablePtr table, int rank,
                         std::vector<GroupElement> first_low,
                         std::vector<GroupElement> first_high,
                         std::vector<uint8_t> second) {
  if (!table) throw std::invalid_argument("complex needs a table");
  if (rank < 1) throw std::invalid_argument("complex rank must be >= 1");
  size_t k = static_cast<size_t>(rank);
  if (first_low.size() != k || first_high.size() != k)
    throw std::invalid_argument("complex needs exactly rank first-order invariants per block");
  for (const auto& e : first_low)
    if (*e.group() != *table->g1)
      throw std::invalid_argument("first_low invariants must live in g1");
  for (const auto& e : first_high)
    if (*e.group() != *table->g2)
      throw std::invalid_argument("first_high invariants must live in g2");
  if (second.size() != k * (k - 1) / 2)
    throw std::invalid_argument("second needs rank*(rank-1)/2 bits");
  for (uint8_t b : second)
    if (b > 1) throw std::invalid_argument("second entries must be values 0 or 1");
  return ComplexSpec{std::move(table), rank, std::move(first_low),
                     std::move(first_high), std::move(second)};
}

ComplexSpec product_sum(TablePtr table, int rank) {
  if (!table) throw std::invalid_argument("complex needs a table");
  if (rank < 1) throw std::invalid_argument("complex rank must be >= 1");
  size_t k = static_cast<size_t>(rank);
  std::vector<GroupElement> lows(k, GroupElement::zero(table->g1));
  std::vector<GroupElement> highs(k, GroupElement::zero(table->g2));
  std::vector<uint8_t> bits(k * (k - 1) / 2, 0);
  return make_complex(std::move(table), rank, std::move(lows), std::move(highs),
                      std::move(bits));
}

ComplexSpec z_complex(int rank) {
  TablePtr t = builtin_table_ptr(7);
  ComplexSpec x = product_sum(t, rank);
  x.first_low[0] = GroupElement(t->g1, {1});
  return x;
}

ComplexSpec homotopy_connected_sum(const ComplexSpec& x, const ComplexSpec& y) {
  if (!same_table(x, y))
    throw std::invalid_argument("connected sum needs complexes over one table");
  int rank = x.rank + y.rank;
  std::vector<GroupElement> lows = x.first_low;
  lows.insert(lows.end(), y.first_low.begin(), y.first_low.end());
  std::vector<GroupElement> highs = x.first_high;
  highs.insert(highs.end(), y.first_high.begin(), y.first_high.end());
  std::vector<uint8_t> bits(static_cast<size_t>(rank) * (rank - 1) / 2, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      if (j < x.rank)
        bits[bit_index(rank, i, j)] = x.second_bit(i, j);
      else if (i >= x.rank)
        bits[bit_index(rank, i, j)] = y.second_bit(i - x.rank, j - x.rank);
    }
  return make_complex(x.table, rank, std::move(lows), std::move(highs),
                      std::move(bits));
}

uint64_t complex_family_size(const GroupTable& table, int rank) {
  if (rank < 1) throw std::invalid_argument("complex rank must be >= 1");
  auto s1 = table.g1->size();
  auto s2 = table.g2->size();
  if (!s1 || !s2)
    throw std::invalid_argument("enumeration needs finite coefficient groups");
  uint64_t total = 1;
  auto mul = [&total](uint64_t f) {
    if (f != 0 && total > UINT64_MAX / f) throw std::overflow_error("family size overflow");
    total *= f;
  };
  for (int i = 0; i < rank; ++i) mul(static_cast<uint64_t>(*s1));
  for (int i = 0; i < rank; ++i) mul(static_cast<uint64_t>(*s2));
  for (int i = 0; i < rank * (rank - 1) / 2; ++i) mul(2);
  return total;
}

namespace {

GroupElement element_from_index(const GroupPtr& g, uint64_t index) {
  std::vector<Int> coeffs(g->factor_count(), 0);
  for (size_t f = 0; f < coeffs.size(); ++f) {
    uint64_t q = static_cast<uint64_t>(g->order(f));
    coeffs[f] = static_cast<Int>(index % q);
    index /= q;
  }
  return GroupElement(g, std::move(coeffs));
}

} // namespace

ComplexEnumerator::ComplexEnumerator(TablePtr table, int rank)
    : table_(std::move(table)), rank_(rank) {
  if (!table_) throw std::invalid_argument("enumeration needs a table");
  size_ = complex_family_size(*table_, rank_);
}

ComplexSpec ComplexEnumerator::at(uint64_t index) const {
  if (index >= size_) throw std::out_of_range("complex index out of range");
  uint64_t s1 = static_cast<uint64_t>(*table_->g1->size());
  uint64_t s2 = static_cast<uint64_t>(*table_->g2->size());
  size_t k = static_cast<size_t>(rank_);

  std::vector<GroupElement> lows, highs;
  lows.reserve(k);
  highs.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    lows.push_back(element_from_index(table_->g1, index % s1));
    index /= s1;
  }
  for (size_t i = 0; i < k; ++i) {
    highs.push_back(element_from_index(table_->g2, index % s2));
    index /= s2;
  }
  std::vector<uint8_t> bits(k * (k - 1) / 2, 0);
  for (size_t b = 0; b < bits.size(); ++b) {
    bits[b] = static_cast<uint8_t>(index % 2);
    index /= 2;
  }
  return make_complex(table_, rank_, std::move(lows), std::move(highs),
                      std::move(bits));
}

std::vector<ComplexSpec> enumerate_complexes(TablePtr table, int rank) {
  ComplexEnumerator e(std::move(table), rank);
  std::vector<ComplexSpec> out;
  out.reserve(e.size());
  for (uint64_t i = 0; i < e.size(); ++i) out.push_back(e.at(i));
  return out;
}

ComplexSpec complex_from_json(const nlohmann::json& doc, TablePtr table) {
  if (!doc.is_object())
    throw std::invalid_argument("complex document must be a JSON object");
  if (!table) throw std::invalid_argument("complex needs a table");
  auto geti = [&doc](const char* key) {
    auto it = doc.find(key);
    if (it == doc.end())
      throw std::invalid_argument(std::string("complex document is missing \"") + key + "\"");
    return it;
  };
  auto jn = geti("n");
  if (!jn->is_number_integer() || jn->get<int>() != table->n)
    throw std::invalid_argument("complex document n does not match the table");
  auto jr = geti("rank");
  if (!jr->is_number_integer()) throw std::invalid_argument("rank must be an integer");
  int rank = jr->get<int>();
  if (rank < 1) throw std::invalid_argument("complex rank must be >= 1");
  size_t k = static_cast<size_t>(rank);

  auto parse_block = [&](const char* key, const GroupPtr& g) {
    auto jb = geti(key);
    if (!jb->is_array() || jb->size() != k)
      throw std::invalid_argument(std::string(key) + " needs exactly rank rows");
    std::vector<GroupElement> out;
    for (const auto& row : *jb) {
      if (!row.is_array() || row.size() != g->factor_count())
        throw std::invalid_argument(std::string(key) +
                                    " row has the wrong coefficient count");
      std::vector<Int> coeffs;
      for (const auto& v : row) {
        if (!v.is_number_integer())
          throw std::invalid_argument(std::string(key) + " must contain integers");
        coeffs.push_back(v.get<Int>());
      }
      out.emplace_back(g, std::move(coeffs)); /* canonicalizes */
    }
    return out;
  };
  auto lows = parse_block("first_low", table->g1);
  auto highs = parse_block("first_high", table->g2);

  auto js = geti("second");
  if (!js->is_array()) throw std::invalid_argument("second must be an array of rows");
  std::vector<uint8_t> bits;
  if (k > 1) {
    if (js->size() != k - 1)
      throw std::invalid_argument("second needs one row per summand above the diagonal");
    for (size_t i = 0; i + 1 < k; ++i) {
      const auto& row = (*js)[i];
      if (!row.is_array() || row.size() != k - 1 - i)
        throw std::invalid_argument("second row " + std::to_string(i) +
                                    " needs " + std::to_string(k - 1 - i) + " bits");
      for (const auto& v : row) {
        if (!v.is_number_integer() || (v.get<Int>() != 0 && v.get<Int>() != 1))
          throw std::invalid_argument("second entries must be values 0 or 1");
        bits.push_back(static_cast<uint8_t>(v.get<Int>()));
      }
    }
  } else if (!js->empty()) {
    throw std::invalid_argument("second must be empty at rank 1");
  }
  return make_complex(std::move(table), rank, std::move(lows), std::move(highs),
                      std::move(bits));
}

nlohmann::json complex_to_json(const ComplexSpec& x) {
  nlohmann::json doc;
  doc["n"] = x.table->n;
  doc["rank"] = x.rank;
  nlohmann::json lows = nlohmann::json::array();
  for (const auto& e : x.first_low) lows.push_back(e.coeffs());
  nlohmann::json highs = nlohmann::json::array();
  for (const auto& e : x.first_high) highs.push_back(e.coeffs());
  doc["first_low"] = lows;
  doc["first_high"] = highs;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i + 1 < x.rank; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = i + 1; j < x.rank; ++j) row.push_back(static_cast<int>(x.second_bit(i, j)));
    rows.push_back(row);
  }
  doc["second"] = rows;
  return doc;
}

} // namespace pcdeg
