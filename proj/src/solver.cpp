#include "pcdeg/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace pcdeg {

namespace {

constexpr Int kDivisorCap = 1'000'000'000'000LL; /* trial-division guard */
constexpr double kStage1Cap = 8e6;               /* residue assignments per modulus */
constexpr size_t kCandidateCap = 500'000;        /* diagonal candidate verifications */

Int to_int(const BigInt& v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw std::overflow_error("witness entry does not fit a machine integer");
  return static_cast<Int>(v);
}

Int checked_ll(__int128 v, const char* what) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw std::overflow_error(what);
  return static_cast<Int>(v);
}

/* parity of a(a-1)/2, valid for all integers: odd iff a = 2,3 (mod 4) */
Int binom2_parity(Int a) {
  Int r = mod_reduce(a, 4);
  return (r == 2 || r == 3) ? 1 : 0;
}

Int parity(Int a) { return mod_reduce(a, 2); }

bool divides(Int a, Int q) { return a > 0 && q % a == 0; }

/* positive divisors of n >= 1, ascending */
std::vector<Int> positive_divisors(Int n) {
  std::vector<Int> small, large;
  for (Int t = 1; t <= n / t; ++t) {
    if (n % t != 0) continue;
    small.push_back(t);
    if (t != n / t) large.push_back(n / t);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

} // namespace

WitnessMatrix WitnessMatrix::zeros(int k, int m) {
  WitnessMatrix w;
  w.k = k;
  w.m = m;
  size_t len = static_cast<size_t>(k) * m;
  w.a.assign(len, 0);
  w.c.assign(len, 0);
  w.d.assign(len, 0);
  return w;
}

ConstraintSystem::ConstraintSystem(const ComplexSpec& x, const ComplexSpec& y, Int d)
    : table_(x.table), k_(x.rank), m_(y.rank), d_(d) {
  if (!same_table(x, y))
    throw std::invalid_argument("table mismatch between the two complexes");

  g1_orders_ = table_->g1->orders();
  g2_orders_ = table_->g2->orders();
  wh_ = table_->whitehead_eta.coeffs();
  wh_zero_ = table_->whitehead_eta.is_zero();

  for (const auto& e : x.first_low) {
    p_low_.push_back(e.coeffs());
    GroupElement h = table_->hopf_h.apply(e);
    h_low_.push_back(h.coeff(0));
  }
  for (const auto& e : x.first_high) {
    p_high_.push_back(e.coeffs());
    eta_p_.push_back(table_->eta_push.apply(e).coeffs());
  }
  for (const auto& e : y.first_low) q_low_.push_back(e.coeffs());
  for (const auto& e : y.first_high) q_high_.push_back(e.coeffs());
  x_bits_ = x.second;
  y_bits_ = y.second;

  for (int t = 0; t < m_; ++t) {
    std::vector<Int> r1(g1_orders_.size()), r2(g2_orders_.size());
    for (size_t f = 0; f < r1.size(); ++f) {
      Int q = g1_orders_[f];
      r1[f] = q == 0 ? checked_ll(static_cast<__int128>(d_) * q_low_[t][f],
                                  "degree right side overflow")
                     : mod_reduce(mod_reduce(d_, q) * q_low_[t][f], q);
    }
    for (size_t f = 0; f < r2.size(); ++f) {
      Int q = g2_orders_[f];
      r2[f] = q == 0 ? checked_ll(static_cast<__int128>(d_) * q_high_[t][f],
                                  "degree right side overflow")
                     : mod_reduce(mod_reduce(d_, q) * q_high_[t][f], q);
    }
    rhs1_.push_back(std::move(r1));
    rhs2_.push_back(std::move(r2));
  }
  for (int s = 0; s < m_; ++s)
    for (int t = s + 1; t < m_; ++t)
      rhs3_.push_back(parity(mod_reduce(d_, 2) * y_bit(s, t)));
}

uint8_t ConstraintSystem::x_bit(int i, int j) const {
  return x_bits_[static_cast<size_t>(i) * k_ - static_cast<size_t>(i) * (i + 1) / 2 +
                 (j - i - 1)];
}

uint8_t ConstraintSystem::y_bit(int s, int t) const {
  return y_bits_[static_cast<size_t>(s) * m_ - static_cast<size_t>(s) * (s + 1) / 2 +
                 (t - s - 1)];
}

std::vector<Int> ConstraintSystem::eq1_lhs(const std::vector<Int>& a_col,
                                           const std::vector<Int>& c_col) const {
  /* bracket multiplies a 2-torsion element, so only its parity matters */
  Int bracket = 0;
  if (!wh_zero_) {
    for (int i = 0; i < k_; ++i) {
      if (h_low_[i]) bracket ^= binom2_parity(a_col[i]);
      bracket ^= parity(a_col[i]) & parity(c_col[i]);
    }
    for (int i = 0; i < k_; ++i)
      for (int j = i + 1; j < k_; ++j)
        if (x_bit(i, j)) bracket ^= parity(a_col[i]) & parity(a_col[j]);
  }

  std::vector<Int> out(g1_orders_.size());
  for (size_t f = 0; f < out.size(); ++f) {
    Int q = g1_orders_[f];
    if (q == 0) {
      __int128 acc = 0;
      for (int i = 0; i < k_; ++i) {
        acc += static_cast<__int128>(a_col[i]) * p_low_[i][f];
        acc += static_cast<__int128>(c_col[i]) * eta_p_[i][f];
      }
      /* wh_[f] = 0 on infinite factors (whitehead_eta is 2-torsion) */
      out[f] = checked_ll(acc, "equation (1) overflow on an infinite factor");
    } else {
      Int acc = 0;
      for (int i = 0; i < k_; ++i) {
        acc = mod_reduce(acc + mod_reduce(a_col[i], q) * p_low_[i][f], q);
        acc = mod_reduce(acc + mod_reduce(c_col[i], q) * eta_p_[i][f], q);
      }
      if (bracket) acc = mod_reduce(acc + wh_[f], q);
      out[f] = acc;
    }
  }
  return out;
}

bool ConstraintSystem::eq1_holds(const std::vector<Int>& a_col,
                                 const std::vector<Int>& c_col, int t) const {
  return eq1_lhs(a_col, c_col) == rhs1_[t];
}

bool ConstraintSystem::eq2_holds(const std::vector<Int>& d_col, int t) const {
  for (size_t f = 0; f < g2_orders_.size(); ++f) {
    Int q = g2_orders_[f];
    if (q == 0) {
      __int128 acc = 0;
      for (int i = 0; i < k_; ++i) acc += static_cast<__int128>(d_col[i]) * p_high_[i][f];
      if (acc != rhs2_[t][f]) return false;
    } else {
      Int acc = 0;
      for (int i = 0; i < k_; ++i)
        acc = mod_reduce(acc + mod_reduce(d_col[i], q) * p_high_[i][f], q);
      if (acc != rhs2_[t][f]) return false;
    }
  }
  return true;
}

Int ConstraintSystem::eq3_lhs_mod2(const std::vector<Int>& a,
                                   const std::vector<Int>& c, int s, int t) const {
  auto av = [&](int i, int col) { return parity(a[static_cast<size_t>(i) * m_ + col]); };
  auto cv = [&](int i, int col) { return parity(c[static_cast<size_t>(i) * m_ + col]); };
  Int acc = 0;
  for (int i = 0; i < k_; ++i) {
    if (h_low_[i]) acc ^= av(i, s) & av(i, t);
    acc ^= (av(i, s) & cv(i, t)) ^ (av(i, t) & cv(i, s));
  }
  for (int i = 0; i < k_; ++i)
    for (int j = i + 1; j < k_; ++j)
      if (x_bit(i, j)) acc ^= (av(i, s) & av(j, t)) ^ (av(i, t) & av(j, s));
  return acc;
}

bool ConstraintSystem::eq3_holds(const std::vector<Int>& a, const std::vector<Int>& c,
                                 int s, int t) const {
  size_t idx = static_cast<size_t>(s) * m_ - static_cast<size_t>(s) * (s + 1) / 2 +
               (t - s - 1);
  return eq3_lhs_mod2(a, c, s, t) == rhs3_[idx];
}

bool ConstraintSystem::eq4_holds(const std::vector<Int>& a,
                                 const std::vector<Int>& d) const {
  for (int s = 0; s < m_; ++s)
    for (int t = 0; t < m_; ++t) {
      __int128 acc = 0;
      for (int i = 0; i < k_; ++i)
        acc += static_cast<__int128>(a[static_cast<size_t>(i) * m_ + s]) *
               d[static_cast<size_t>(i) * m_ + t];
      if (acc != (s == t ? static_cast<__int128>(d_) : 0)) return false;
    }
  return true;
}

ConstraintSystem build_system(const ComplexSpec& x, const ComplexSpec& y, Int d) {
  return ConstraintSystem(x, y, d);
}

bool verify_witness(const ConstraintSystem& sys, const WitnessMatrix& w) {
  if (w.k != sys.k() || w.m != sys.m()) return false;
  size_t len = static_cast<size_t>(w.k) * w.m;
  if (w.a.size() != len || w.c.size() != len || w.d.size() != len) return false;

  std::vector<Int> a_col(w.k), c_col(w.k), d_col(w.k);
  for (int t = 0; t < w.m; ++t) {
    for (int i = 0; i < w.k; ++i) {
      a_col[i] = w.A(i, t);
      c_col[i] = w.C(i, t);
      d_col[i] = w.D(i, t);
    }
    if (!sys.eq1_holds(a_col, c_col, t)) return false;
    if (!sys.eq2_holds(d_col, t)) return false;
  }
  for (int s = 0; s < w.m; ++s)
    for (int t = s + 1; t < w.m; ++t)
      if (!sys.eq3_holds(w.a, w.c, s, t)) return false;
  return sys.eq4_holds(w.a, w.d);
}

/* ---------------- staged search ---------------- */

struct StagedSearch {
  const ConstraintSystem& sys;
  Int exp1 = 0, exp2 = 0, exp_im = 1; /* 0 = infinite */
  bool any_hopf = false;

  explicit StagedSearch(const ConstraintSystem& s) : sys(s) {
    auto e1 = s.table()->g1->exponent();
    auto e2 = s.table()->g2->exponent();
    exp1 = e1.value_or(0);
    exp2 = e2.value_or(0);
    for (Int h : sys.hopf_low())
      if (h) any_hopf = true;
    for (const auto& im : sys.eta_p_) {
      GroupElement e(s.table()->g1, im);
      auto ord = e.order();
      if (!ord) {
        exp_im = 0;
        break;
      }
      exp_im = std::lcm(exp_im, *ord);
    }
  }

  int k() const { return sys.k(); }
  int m() const { return sys.m(); }
  Int d() const { return sys.degree(); }

  /* C entries only matter modulo this (0 = unbounded, only on tables with
   * infinite eta images) */
  Int c_modulus() const { return exp_im == 0 ? 0 : std::lcm(Int{2}, exp_im); }

  /* true when the whole equation system restricted to the q-invariant
   * subsystem has no solution among residues mod q: an UNSAT certificate */
  bool unsat_mod(Int q) const {
    int km = k() * m();
    bool can1 = divides(exp1, q) && divides(exp_im, q) &&
                (sys.whitehead_zero() || (q % 2 == 0 && (!any_hopf || q % 4 == 0)));
    bool can2 = divides(exp2, q);
    bool can3 = (q % 2 == 0) && m() >= 2;

    Int cp = 1;
    if (can1) cp = std::lcm(cp, std::max<Int>(exp_im, 1));
    if ((can1 && !sys.whitehead_zero()) || can3) cp = std::lcm(cp, Int{2});
    if (!can1 && !can3) cp = 1;

    double assignments = 1;
    for (int i = 0; i < km; ++i) assignments *= static_cast<double>(q) * cp;
    if (assignments > kStage1Cap) return false; /* too big to certify here */

    std::vector<Int> a(km, 0), c(km, 0);
    std::vector<Int> a_col(k()), c_col(k());
    auto columns_pass = [&]() {
      if (can1) {
        for (int t = 0; t < m(); ++t) {
          for (int i = 0; i < k(); ++i) {
            a_col[i] = a[static_cast<size_t>(i) * m() + t];
            c_col[i] = c[static_cast<size_t>(i) * m() + t];
          }
          if (!sys.eq1_holds(a_col, c_col, t)) return false;
        }
      }
      if (can3) {
        for (int s = 0; s < m(); ++s)
          for (int t = s + 1; t < m(); ++t)
            if (!sys.eq3_holds(a, c, s, t)) return false;
      }
      return true;
    };

    auto advance = [](std::vector<Int>& digits, Int base) {
      for (auto& v : digits) {
        if (++v < base) return true;
        v = 0;
      }
      return false;
    };

    do { /* over A */
      bool any_c_passes = false;
      std::fill(c.begin(), c.end(), 0);
      do { /* over C */
        if (columns_pass()) {
          any_c_passes = true;
          break;
        }
      } while ((can1 || can3) && advance(c, cp));
      if (any_c_passes && d_block_feasible_mod(a, q, can2)) return false;
    } while (advance(a, q));
    return true;
  }

  /* is there a D (mod q) with A^T D = dI (mod q) and, when included,
   * equation (2) mod the factor orders? */
  bool d_block_feasible_mod(const std::vector<Int>& a, Int q, bool can2) const {
    int kk = k(), mm = m();
    size_t km = static_cast<size_t>(kk) * mm;
    std::vector<std::pair<size_t, Int>> extra_rows; /* (g2 factor, order) */
    if (can2)
      for (size_t f = 0; f < sys.g2_orders_.size(); ++f)
        if (sys.g2_orders_[f] >= 2) extra_rows.emplace_back(f, sys.g2_orders_[f]);

    size_t nrows = static_cast<size_t>(mm) * mm + extra_rows.size() * mm;
    IntMatrix ext(nrows, km + nrows), rhs(nrows, 1);
    size_t r = 0;
    for (int s = 0; s < mm; ++s)
      for (int t = 0; t < mm; ++t, ++r) {
        for (int i = 0; i < kk; ++i)
          ext.at(r, static_cast<size_t>(t) * kk + i) = a[static_cast<size_t>(i) * mm + s];
        ext.at(r, km + r) = q;
        rhs.at(r, 0) = (s == t) ? d() : 0;
      }
    for (int t = 0; t < mm; ++t)
      for (const auto& [f, o] : extra_rows) {
        for (int i = 0; i < kk; ++i)
          ext.at(r, static_cast<size_t>(t) * kk + i) = sys.p_high_[i][f];
        ext.at(r, km + r) = o;
        rhs.at(r, 0) = static_cast<long long>(sys.rhs2_[t][f]);
        ++r;
      }
    return solve_linear(ext, rhs).has_value();
  }

  /* complete decision at k = m = 1 via divisor splits of d (d != 0) */
  std::optional<WitnessMatrix> rank1_exact() const {
    Int mc = c_modulus();
    for (Int u_abs : positive_divisors(std::abs(d())))
      for (Int sign : {Int{1}, Int{-1}}) {
        Int u = sign * u_abs;
        Int v = d() / u;
        if (!sys.eq2_holds({v}, 0)) continue;
        for (Int cv = 0; cv < mc; ++cv) {
          if (!sys.eq1_holds({u}, {cv}, 0)) continue;
          WitnessMatrix w = WitnessMatrix::zeros(1, 1);
          w.a[0] = u;
          w.c[0] = cv;
          w.d[0] = v;
          return w;
        }
      }
    return std::nullopt;
  }

  /* diagonal embeddings A = u*E, D = v*E over divisor splits u*v = d,
   * C swept over residues: the explicit witnesses the degree-set formulas
   * construct. Deterministic prefix capped for huge divisor counts. */
  std::optional<WitnessMatrix> diagonal_candidates() const {
    Int mc = c_modulus();
    if (mc == 0) mc = 2;
    int kk = k(), mm = m();
    size_t km = static_cast<size_t>(kk) * mm;
    bool full_c = km <= 12;
    size_t cdigits = full_c ? km : static_cast<size_t>(mm);
    size_t tried = 0;

    auto advance = [](std::vector<Int>& digits, Int base) {
      for (auto& v : digits) {
        if (++v < base) return true;
        v = 0;
      }
      return false;
    };

    for (Int u_abs : positive_divisors(std::abs(d())))
      for (Int sign : {Int{1}, Int{-1}}) {
        Int u = sign * u_abs;
        Int v = d() / u;
        WitnessMatrix w = WitnessMatrix::zeros(kk, mm);
        for (int s = 0; s < mm; ++s) {
          w.A(s, s) = u;
          w.D(s, s) = v;
        }
        std::vector<Int> cdig(cdigits, 0);
        do {
          if (full_c) {
            w.c.assign(cdig.begin(), cdig.end());
          } else {
            std::fill(w.c.begin(), w.c.end(), 0);
            for (int s = 0; s < mm; ++s) w.C(s, s) = cdig[s];
          }
          if (verify_witness(sys, w)) return w;
          if (++tried >= kCandidateCap) return std::nullopt;
        } while (advance(cdig, mc));
      }
    return std::nullopt;
  }

  /* general box search: A over [-B, B]^(k*m), C over residues, D solved
   * exactly per assignment */
  std::optional<WitnessMatrix> box_search(Int box) const {
    Int mc = c_modulus();
    if (mc == 0) mc = 2;
    int kk = k(), mm = m();
    size_t km = static_cast<size_t>(kk) * mm;
    Int nvalues = 2 * box + 1;
    /* value order 0, 1, -1, 2, -2, ... */
    auto value_at = [](Int idx) { return (idx % 2 == 1) ? (idx + 1) / 2 : -idx / 2; };

    /* exact rows of the D system: A^T D = dI plus equation (2) rows for
     * infinite g2 factors; congruence rows collect the finite factors */
    std::vector<size_t> inf_f, fin_f;
    for (size_t f = 0; f < sys.g2_orders_.size(); ++f) {
      if (sys.g2_orders_[f] == 0) inf_f.push_back(f);
      else if (sys.g2_orders_[f] >= 2) fin_f.push_back(f);
    }
    Int md = 1;
    for (size_t f : fin_f) md = std::lcm(md, sys.g2_orders_[f]);

    std::vector<Int> aidx(km, 0), a(km, 0), c(km, 0);
    std::vector<Int> a_col(kk), c_col(kk);

    auto advance = [](std::vector<Int>& digits, Int base) {
      for (auto& v : digits) {
        if (++v < base) return true;
        v = 0;
      }
      return false;
    };

    do { /* over A index digits */
      for (size_t i = 0; i < km; ++i) a[i] = value_at(aidx[i]);
      std::fill(c.begin(), c.end(), 0);
      do { /* over C */
        bool pass = true;
        for (int t = 0; t < mm && pass; ++t) {
          for (int i = 0; i < kk; ++i) {
            a_col[i] = a[static_cast<size_t>(i) * mm + t];
            c_col[i] = c[static_cast<size_t>(i) * mm + t];
          }
          pass = sys.eq1_holds(a_col, c_col, t);
        }
        for (int s = 0; s < mm && pass; ++s)
          for (int t = s + 1; t < mm && pass; ++t)
            pass = sys.eq3_holds(a, c, s, t);
        if (!pass) continue;

        /* solve A^T D = d I (and exact infinite-factor rows) */
        size_t arows = static_cast<size_t>(mm) + inf_f.size();
        IntMatrix asys(arows, kk), bsys(arows, mm);
        for (int s = 0; s < mm; ++s) {
          for (int i = 0; i < kk; ++i)
            asys.at(s, i) = a[static_cast<size_t>(i) * mm + s];
          bsys.at(s, s) = d();
        }
        for (size_t z = 0; z < inf_f.size(); ++z) {
          size_t f = inf_f[z];
          for (int i = 0; i < kk; ++i) asys.at(mm + z, i) = sys.p_high_[i][f];
          for (int t = 0; t < mm; ++t)
            bsys.at(mm + z, t) = static_cast<long long>(sys.rhs2_[t][f]);
        }
        auto sol = solve_linear(asys, bsys);
        if (!sol) continue;

        std::vector<BigInt> dvec;
        if (fin_f.empty() || md == 1) {
          dvec = sol->particular;
        } else {
          size_t crows = fin_f.size() * mm;
          IntMatrix l(crows, km);
          std::vector<BigInt> cvec(crows);
          size_t r = 0;
          for (int t = 0; t < mm; ++t)
            for (size_t f : fin_f) {
              Int scale = md / sys.g2_orders_[f];
              for (int i = 0; i < kk; ++i)
                l.at(r, static_cast<size_t>(t) * kk + i) = scale * sys.p_high_[i][f];
              cvec[r] = BigInt(scale) * sys.rhs2_[t][f];
              ++r;
            }
          auto v = coset_congruence_feasible(*sol, l, cvec, md);
          if (!v) continue;
          dvec = std::move(*v);
        }

        WitnessMatrix w = WitnessMatrix::zeros(kk, mm);
        w.a = a;
        w.c = c;
        for (int t = 0; t < mm; ++t)
          for (int i = 0; i < kk; ++i)
            w.D(i, t) = to_int(dvec[static_cast<size_t>(t) * kk + i]);
        if (!verify_witness(sys, w))
          throw std::logic_error("internal: solved witness failed verification");
        return w;
      } while (advance(c, mc));
    } while (advance(aidx, nvalues));
    return std::nullopt;
  }
};

namespace {

std::vector<Int> default_moduli(const GroupTable& t) {
  Moduli m = required_moduli(t);
  std::vector<Int> qs{2, 4, m.a, std::lcm(std::lcm(m.a, m.c), std::lcm(m.d, Int{4}))};
  std::vector<Int> out;
  for (Int q : qs)
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  return out;
}

void validate_params(const SearchParams& p) {
  if (p.moduli)
    for (Int q : *p.moduli)
      if (q < 1) throw std::invalid_argument("parameter abuse: moduli must be positive");
  if (p.box && *p.box < 0)
    throw std::invalid_argument("parameter abuse: box bound must be >= 0");
  if (p.jobs < 1) throw std::invalid_argument("parameter abuse: jobs must be >= 1");
  if (p.max_modulus < 1)
    throw std::invalid_argument("parameter abuse: max modulus must be >= 1");
}

} // namespace

Verdict check_degree(const ComplexSpec& x, const ComplexSpec& y, Int d,
                     const SearchParams& params) {
  validate_params(params);
  ConstraintSystem sys(x, y, d);
  Verdict out;

  if (d == 0) { /* the zero assignment always satisfies the system */
    out.status = Verdict::Status::witness;
    out.witness = WitnessMatrix::zeros(sys.k(), sys.m());
    return out;
  }
  if (sys.k() < sys.m()) { /* only the zero degree crosses a rank gap */
    out.status = Verdict::Status::no_solution_proven;
    out.certificate = Certificate{Certificate::Kind::rank, 0};
    return out;
  }

  StagedSearch search(sys);

  std::vector<Int> moduli;
  if (params.moduli) {
    for (Int q : *params.moduli)
      if (std::find(moduli.begin(), moduli.end(), q) == moduli.end())
        moduli.push_back(q);
  } else {
    moduli = default_moduli(*x.table);
  }
  out.moduli_used = moduli;

  for (Int q : moduli)
    if (search.unsat_mod(q)) {
      out.status = Verdict::Status::no_solution_proven;
      out.certificate = Certificate{Certificate::Kind::modulus, q};
      return out;
    }

  if (sys.k() == 1 && sys.m() == 1 && std::abs(d) <= kDivisorCap &&
      search.c_modulus() != 0) {
    auto w = search.rank1_exact();
    if (w) {
      if (!verify_witness(sys, *w))
        throw std::logic_error("internal: rank-1 witness failed verification");
      out.status = Verdict::Status::witness;
      out.witness = std::move(w);
    } else {
      out.status = Verdict::Status::no_solution_proven;
      out.certificate = Certificate{Certificate::Kind::rank1_exhaustive, 0};
    }
    return out;
  }

  if (sys.k() >= sys.m() && std::abs(d) <= kDivisorCap) {
    auto w = search.diagonal_candidates();
    if (w) {
      out.status = Verdict::Status::witness;
      out.witness = std::move(w);
      return out;
    }
  }

  Int box = params.box ? *params.box
                       : std::max<Int>(std::abs(d), required_moduli(*x.table).a);
  out.box_used = box;
  auto w = search.box_search(box);
  if (w) {
    out.status = Verdict::Status::witness;
    out.witness = std::move(w);
    return out;
  }
  out.status = Verdict::Status::no_solution_within_bounds;
  return out;
}

bool DegreeReport::member(Int d) const {
  size_t idx = static_cast<size_t>(d + range);
  return verdicts.at(idx).verdict.is_witness();
}

std::vector<Int> DegreeReport::members() const {
  std::vector<Int> out;
  for (const auto& dv : verdicts)
    if (dv.verdict.is_witness()) out.push_back(dv.d);
  return out;
}

DegreeReport degree_set(const ComplexSpec& x, const ComplexSpec& y, Int range,
                        const SearchParams& params) {
  if (range < 0) throw std::invalid_argument("degree range must be >= 0");
  validate_params(params);

  size_t count = static_cast<size_t>(2 * range + 1);
  DegreeReport report;
  report.n = x.table->n;
  report.range = range;
  report.verdicts.resize(count);

  SearchParams single = params;
  single.jobs = 1;

  unsigned jobs = static_cast<unsigned>(
      std::min<Int>(params.jobs, static_cast<Int>(count)));
  if (jobs <= 1) {
    for (size_t i = 0; i < count; ++i) {
      Int d = static_cast<Int>(i) - range;
      report.verdicts[i] = {d, check_degree(x, y, d, single)};
    }
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        Int d = static_cast<Int>(i) - range;
        try {
          report.verdicts[i] = {d, check_degree(x, y, d, single)};
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  report.exact = std::none_of(
      report.verdicts.begin(), report.verdicts.end(),
      [](const DegreeVerdict& dv) { return dv.verdict.is_within_bounds(); });
  return report;
}

std::optional<APUnion> infer_progressions(const DegreeReport& report,
                                          Int max_modulus) {
  if (!report.exact)
    throw std::invalid_argument("progression inference needs an exact report");
  Int range = report.range;
  for (Int mod = 1; mod <= max_modulus; ++mod) {
    std::vector<int> cls(static_cast<size_t>(mod), -1); /* -1 unseen, else 0/1 */
    bool consistent = true;
    for (Int d = -range; d <= range && consistent; ++d) {
      int mem = report.member(d) ? 1 : 0;
      int& slot = cls[static_cast<size_t>(mod_reduce(d, mod))];
      if (slot == -1) slot = mem;
      else if (slot != mem) consistent = false;
    }
    if (!consistent) continue;
    APUnion out;
    out.modulus = mod;
    out.range = range;
    for (Int r = 0; r < mod; ++r)
      if (cls[static_cast<size_t>(r)] == 1) out.classes.push_back(r);
    return out;
  }
  return std::nullopt;
}

std::pair<bool, std::optional<WitnessMatrix>> is_equivalent(
    const ComplexSpec& x, const ComplexSpec& y, const SearchParams& params) {
  if (!same_table(x, y))
    throw std::invalid_argument("table mismatch between the two complexes");
  if (x.rank != y.rank) return {false, std::nullopt};

  Verdict plus = check_degree(x, y, 1, params);
  if (plus.is_witness()) return {true, std::move(plus.witness)};
  Verdict minus = check_degree(x, y, -1, params);
  if (minus.is_witness()) return {true, std::move(minus.witness)};
  if (plus.is_proven() && minus.is_proven()) return {false, std::nullopt};
  throw UndecidedError(
      "equivalence undecided: degree +-1 searches exhausted their bounds "
      "without a proof either way");
}

Classification classify(TablePtr table, int rank, const SearchParams& params) {
  if (!table) throw std::invalid_argument("classify needs a table");
  ComplexEnumerator en(table, rank);
  uint64_t total = en.size();
  std::vector<ComplexSpec> specs;
  specs.reserve(total);
  for (uint64_t i = 0; i < total; ++i) specs.push_back(en.at(i));

  std::vector<uint64_t> parent(total);
  for (uint64_t i = 0; i < total; ++i) parent[i] = i;
  auto find = [&parent](uint64_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  /* queries in enumeration order; negative answers cached per root since
   * equivalence with any member settles equivalence with the class */
  for (uint64_t j = 1; j < total; ++j) {
    std::set<uint64_t> failed_roots;
    for (uint64_t i = 0; i < j; ++i) {
      uint64_t ri = find(i);
      if (ri == find(j) || failed_roots.count(ri)) continue;
      if (is_equivalent(specs[i], specs[j], params).first) {
        parent[find(j)] = ri;
        break;
      }
      failed_roots.insert(ri);
    }
  }

  std::map<uint64_t, std::vector<uint64_t>> grouped;
  for (uint64_t i = 0; i < total; ++i) grouped[find(i)].push_back(i);

  Classification out;
  out.n = table->n;
  out.rank = rank;
  out.family_size = total;
  for (auto& kv : grouped) {
    HomotopyClass cls;
    cls.representative = kv.second.front();
    cls.members = std::move(kv.second);
    out.classes.push_back(std::move(cls));
  }
  return out;
}

WitnessMatrix compose_witness(const WitnessMatrix& p, const WitnessMatrix& q) {
  if (p.m != q.k)
    throw std::invalid_argument("compose_witness shape mismatch: inner ranks differ");
  WitnessMatrix r = WitnessMatrix::zeros(p.k, q.m);
  for (int i = 0; i < p.k; ++i)
    for (int t = 0; t < q.m; ++t) {
      __int128 av = 0, dv = 0, cv = 0;
      for (int s = 0; s < p.m; ++s) {
        av += static_cast<__int128>(p.A(i, s)) * q.A(s, t);
        dv += static_cast<__int128>(p.D(i, s)) * q.D(s, t);
        cv += static_cast<__int128>(p.C(i, s)) * q.A(s, t) +
              static_cast<__int128>(p.D(i, s)) * q.C(s, t);
      }
      r.A(i, t) = checked_ll(av, "composed witness overflow");
      r.D(i, t) = checked_ll(dv, "composed witness overflow");
      r.C(i, t) = static_cast<Int>(((cv % 2) + 2) % 2);
    }
  return r;
}

BigInt det_star(const WitnessMatrix& w) {
  if (w.k != w.m) throw std::invalid_argument("det_star needs a square witness");
  IntMatrix a(w.k, w.k), d(w.k, w.k);
  for (int i = 0; i < w.k; ++i)
    for (int t = 0; t < w.k; ++t) {
      a.at(i, t) = w.A(i, t);
      d.at(i, t) = w.D(i, t);
    }
  return a.determinant() * d.determinant();
}

} // namespace pcdeg
