#include "pcdeg/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace pcdeg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long long v : row) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (size_t r = 0; r < a.rows_; ++r)
    for (size_t k = 0; k < a.cols_; ++k) {
      const BigInt& v = a.at(r, k);
      if (v == 0) continue;
      for (size_t c = 0; c < b.cols_; ++c) p.at(r, c) += v * b.at(k, c);
    }
  return p;
}

size_t IntMatrix::rank() const {
  HnfResult r = hnf(*this);
  size_t rank = 0;
  for (size_t i = 0; i < r.h.rows(); ++i) {
    bool nonzero = false;
    for (size_t j = 0; j < r.h.cols(); ++j)
      if (r.h.at(i, j) != 0) { nonzero = true; break; }
    if (nonzero) ++rank;
  }
  return rank;
}

BigInt IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant needs a square matrix");
  size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (size_t c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(p, c));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

namespace {

/* floor division for BigInt (boost's / truncates toward zero) */
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct XgcdResult {
  BigInt g, s, t; /* g = s*a + t*b, g >= 0 */
};

XgcdResult xgcd(BigInt a, BigInt b) {
  BigInt s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    BigInt q = a / b;
    BigInt r = a - q * b;
    a = std::exchange(b, r);
    BigInt s2 = s0 - q * s1;
    s0 = std::exchange(s1, s2);
    BigInt t2 = t0 - q * t1;
    t0 = std::exchange(t1, t2);
  }
  if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
  return {a, s0, t0};
}

} // namespace

HnfResult hnf(const IntMatrix& a) {
  size_t rows = a.rows(), cols = a.cols();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(rows);

  auto row_combine = [&](size_t r1, size_t r2, const BigInt& x11, const BigInt& x12,
                         const BigInt& x21, const BigInt& x22) {
    /* (row r1, row r2) <- (x11*r1 + x12*r2, x21*r1 + x22*r2), applied to h and u */
    for (IntMatrix* m : {&h, &u}) {
      size_t w = m->cols();
      for (size_t c = 0; c < w; ++c) {
        BigInt v1 = x11 * m->at(r1, c) + x12 * m->at(r2, c);
        BigInt v2 = x21 * m->at(r1, c) + x22 * m->at(r2, c);
        m->at(r1, c) = std::move(v1);
        m->at(r2, c) = std::move(v2);
      }
    }
  };
  auto row_swap = [&](size_t r1, size_t r2) {
    if (r1 == r2) return;
    for (IntMatrix* m : {&h, &u}) {
      size_t w = m->cols();
      for (size_t c = 0; c < w; ++c) std::swap(m->at(r1, c), m->at(r2, c));
    }
  };
  auto row_negate = [&](size_t r) {
    for (IntMatrix* m : {&h, &u}) {
      size_t w = m->cols();
      for (size_t c = 0; c < w; ++c) m->at(r, c) = -m->at(r, c);
    }
  };

  size_t piv = 0;
  for (size_t col = 0; col < cols && piv < rows; ++col) {
    size_t nz = piv;
    while (nz < rows && h.at(nz, col) == 0) ++nz;
    if (nz == rows) continue;
    row_swap(piv, nz);
    for (size_t i = piv + 1; i < rows; ++i) {
      if (h.at(i, col) == 0) continue;
      XgcdResult e = xgcd(h.at(piv, col), h.at(i, col));
      BigInt p_over_g = h.at(piv, col) / e.g;
      BigInt i_over_g = h.at(i, col) / e.g;
      row_combine(piv, i, e.s, e.t, -i_over_g, p_over_g);
    }
    if (h.at(piv, col) < 0) row_negate(piv);
    for (size_t i = 0; i < piv; ++i) {
      BigInt f = floor_div(h.at(i, col), h.at(piv, col));
      if (f == 0) continue;
      for (size_t c = 0; c < cols; ++c) h.at(i, c) -= f * h.at(piv, c);
      for (size_t c = 0; c < rows; ++c) u.at(i, c) -= f * u.at(piv, c);
    }
    ++piv;
  }
  return {std::move(h), std::move(u)};
}

std::optional<AffineLattice> solve_linear(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("solve_linear: right side row count mismatch");
  size_t unknowns = a.cols();
  size_t ncols_b = b.cols();

  HnfResult e = hnf(a.transpose()); /* e.h = e.u * a^T, rows span the column lattice of a */
  size_t hrows = e.h.rows();

  /* pivot position of each nonzero row of h */
  std::vector<std::pair<size_t, size_t>> pivots; /* (row, col in h) */
  for (size_t r = 0; r < hrows; ++r) {
    size_t c = 0;
    while (c < e.h.cols() && e.h.at(r, c) == 0) ++c;
    if (c < e.h.cols()) pivots.emplace_back(r, c);
  }
  size_t rank = pivots.size();

  AffineLattice out;
  out.particular.assign(unknowns * ncols_b, 0);

  for (size_t bc = 0; bc < ncols_b; ++bc) {
    /* express column bc of b over the rows of h by echelon substitution */
    std::vector<BigInt> resid(a.rows());
    for (size_t r = 0; r < a.rows(); ++r) resid[r] = b.at(r, bc);
    std::vector<BigInt> y(rank, 0);
    for (size_t pi = 0; pi < rank; ++pi) {
      auto [hr, hc] = pivots[pi];
      const BigInt& pv = e.h.at(hr, hc);
      if (resid[hc] % pv != 0) return std::nullopt;
      BigInt q = resid[hc] / pv;
      if (q != 0)
        for (size_t c = hc; c < e.h.cols(); ++c) resid[c] -= q * e.h.at(hr, c);
      y[pi] = std::move(q);
    }
    for (const BigInt& r : resid)
      if (r != 0) return std::nullopt;
    /* x = u^T y: sum of y_pi times row pi of u */
    for (size_t pi = 0; pi < rank; ++pi) {
      if (y[pi] == 0) continue;
      for (size_t c = 0; c < unknowns; ++c)
        out.particular[bc * unknowns + c] += y[pi] * e.u.at(pivots[pi].first, c);
    }
  }

  /* kernel basis: rows of u beyond the rank, one copy per b-column block */
  for (size_t bc = 0; bc < ncols_b; ++bc)
    for (size_t r = rank; r < hrows; ++r) {
      std::vector<BigInt> v(unknowns * ncols_b, 0);
      for (size_t c = 0; c < unknowns; ++c) v[bc * unknowns + c] = e.u.at(r, c);
      out.basis.push_back(std::move(v));
    }
  return out;
}

std::optional<std::vector<BigInt>> coset_congruence_feasible(
    const AffineLattice& solutions, const IntMatrix& l,
    const std::vector<BigInt>& c, const BigInt& q) {
  if (q < 1) throw std::invalid_argument("congruence modulus must be >= 1");
  if (l.cols() != solutions.dim())
    throw std::invalid_argument("congruence matrix width does not match lattice dimension");
  if (l.rows() != c.size())
    throw std::invalid_argument("congruence right side length mismatch");

  size_t g = solutions.basis.size();
  size_t rows = l.rows();

  /* residual r = c - l * particular */
  std::vector<BigInt> resid(rows, 0);
  for (size_t r = 0; r < rows; ++r) {
    BigInt acc = 0;
    for (size_t j = 0; j < l.cols(); ++j) acc += l.at(r, j) * solutions.particular[j];
    resid[r] = c[r] - acc;
  }

  /* solve (l*basis) t + q s = resid over the integers */
  IntMatrix ext(rows, g + rows);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t bi = 0; bi < g; ++bi) {
      BigInt acc = 0;
      for (size_t j = 0; j < l.cols(); ++j) acc += l.at(r, j) * solutions.basis[bi][j];
      ext.at(r, bi) = std::move(acc);
    }
    ext.at(r, g + r) = q;
  }
  IntMatrix rhs(rows, 1);
  for (size_t r = 0; r < rows; ++r) rhs.at(r, 0) = resid[r];

  auto sol = solve_linear(ext, rhs);
  if (!sol) return std::nullopt;

  std::vector<BigInt> v = solutions.particular;
  for (size_t bi = 0; bi < g; ++bi) {
    const BigInt& t = sol->particular[bi];
    if (t == 0) continue;
    for (size_t j = 0; j < v.size(); ++j) v[j] += t * solutions.basis[bi][j];
  }
  return v;
}

} // namespace pcdeg
