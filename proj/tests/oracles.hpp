#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <string>
#include <vector>

#include "chevalley/algebra.hpp"

namespace oracle {

using namespace chevalley;

inline RingPtr gl_ring(std::size_t n, std::uint64_t p = 0) {
  std::vector<std::string> names;
  std::vector<int> w;
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back("a" + std::to_string(i));
    w.push_back(static_cast<int>(i));
  }
  return ring_new(names, w, p);
}

// B_n = A_n[x]/(x^n + a_1 x^{n-1} + ... + a_n).
inline AlgebraPtr gl_cover(std::size_t n, std::uint64_t p = 0) {
  RingPtr r = gl_ring(n, p);
  std::vector<Poly> f(n + 1, Poly(r));
  for (std::size_t i = 1; i <= n; ++i) f[n - i] = Poly::var(r, i - 1);
  f[n] = Poly(r, 1);
  return monogenic_algebra(r, f);
}

// det(tI - M) from cofactor determinants at t = 0..n and Lagrange interpolation.
inline std::vector<Poly> charpoly_by_interpolation(const PolyMat& m) {
  std::size_t n = m.rows();
  RingPtr r = ring_of(m);
  std::vector<Poly> out(n + 1, Poly(r));
  for (std::size_t k = 0; k <= n; ++k) {
    PolyMat a = m;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? Poly(r, static_cast<long long>(k)) : Poly(r)) - m(i, j);
    Poly v = det_cofactor(a);
    // Basis polynomial prod_{j != k} (t - j)/(k - j), coefficients low to high.
    std::vector<Scalar> basis{Scalar(1)};
    Scalar denom(1);
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == k) continue;
      std::vector<Scalar> next(basis.size() + 1);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i];
        next[i] -= basis[i] * Scalar(static_cast<long long>(j));
      }
      basis = std::move(next);
      denom = denom * Scalar(static_cast<long long>(k) - static_cast<long long>(j));
    }
    for (std::size_t i = 0; i <= n; ++i) out[i] += v * (basis[i] / denom);
  }
  return out;
}

// Checks the SO_{2n} blowup table against B[1/p_n] where p_{n-1} = p_n / x.
inline bool so_even_table_matches_localization(const AlgebraPtr& bt, std::size_t n) {
  const RingPtr& r = bt->ring;
  Poly pn = Poly::var(r, n - 1);
  std::vector<Poly> f(2 * n + 1, Poly(r));
  f[2 * n] = Poly(r, 1);
  for (std::size_t k = 1; k < n; ++k) f[2 * n - 2 * k] = Poly::var(r, k - 1);
  f[0] = pn * pn;
  AlgebraPtr b = monogenic_algebra(r, f);
  Elem x = Elem::x_of(b);
  // p_n * image: x^i -> p_n x^i, p -> -(x^{2n-1} + a_2 x^{2n-3} + ... + a_{2n-2} x).
  std::vector<Elem> img;
  for (std::size_t i = 0; i + 1 < 2 * n; ++i) img.push_back(pn * x.pow(static_cast<unsigned>(i)));
  Elem pimg = -x.pow(static_cast<unsigned>(2 * n - 1));
  for (std::size_t k = 1; k < n; ++k) pimg = pimg - Poly::var(r, k - 1) * x.pow(static_cast<unsigned>(2 * n - 1 - 2 * k));
  img.push_back(pimg);
  auto phi = [&](const std::vector<Poly>& c) {
    Elem acc = Elem::zero(b);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!c[k].is_zero()) acc = acc + c[k] * img[k];
    return acc;
  };
  for (std::size_t i = 0; i < bt->rank; ++i)
    for (std::size_t j = 0; j < bt->rank; ++j)
      if (img[i] * img[j] != pn * phi(bt->table[i][j])) return false;
  return true;
}


// --- lattices in the box w B subset L subset w^{-1} B ----------------------

// Subspaces of F_p^dim in reduced row echelon form, as sorted row lists.
using ModVec = std::vector<long long>;

inline long long inv_mod(long long a, long long p) {
  long long r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline std::vector<ModVec> rref(std::vector<ModVec> rows, long long p) {
  std::vector<ModVec> out;
  std::size_t dim = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i][c] % p) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    ModVec r = rows[piv];
    rows.erase(rows.begin() + static_cast<long>(piv));
    long long iv = inv_mod((r[c] % p + p) % p, p);
    for (auto& x : r) x = ((x % p + p) % p) * iv % p;
    for (auto& row : rows) {
      long long f = (row[c] % p + p) % p;
      for (std::size_t k = 0; k < dim; ++k) row[k] = ((row[k] - f * r[k]) % p + p) % p;
    }
    for (auto& row : out) {
      long long f = row[c];
      for (std::size_t k = 0; k < dim; ++k) row[k] = ((row[k] - f * r[k]) % p + p) % p;
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every subspace of F_p^dim, by enumerating echelon forms.
inline std::vector<std::vector<ModVec>> all_subspaces(std::size_t dim, long long p) {
  std::vector<std::vector<ModVec>> out;
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < dim; ++c)
      if (mask >> c & 1) pivots.push_back(c);
    // Free positions: row r, column c > pivots[r], c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t c = pivots[r] + 1; c < dim; ++c)
        if (!(mask >> c & 1)) free.push_back({r, c});
    long long total = 1;
    for (std::size_t k = 0; k < free.size(); ++k) total *= p;
    for (long long idx = 0; idx < total; ++idx) {
      std::vector<ModVec> rows(pivots.size(), ModVec(dim, 0));
      for (std::size_t r = 0; r < pivots.size(); ++r) rows[r][pivots[r]] = 1;
      long long rest = idx;
      for (auto [r, c] : free) {
        rows[r][c] = rest % p;
        rest /= p;
      }
      out.push_back(rref(rows, p));
    }
  }
  return out;
}

// M = w^{-1} B / w B with coordinates (row i, exponent -1) at 2i and (row i, exponent 0)
// at 2i + 1. `x0`, `x1` are the w^0 and w^1 parts of the matrix of x.
struct BoxOneModel {
  std::size_t d;
  long long p;
  std::vector<std::vector<long long>> x0, x1;

  ModVec act_w(const ModVec& v) const {
    ModVec out(2 * d, 0);
    for (std::size_t i = 0; i < d; ++i) out[2 * i + 1] = v[2 * i];
    return out;
  }
  ModVec act_x(const ModVec& v) const {
    ModVec out(2 * d, 0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t i = 0; i < d; ++i) {
        out[2 * r] += x0[r][i] * v[2 * i];
        out[2 * r + 1] += x1[r][i] * v[2 * i] + x0[r][i] * v[2 * i + 1];
      }
    for (auto& c : out) c = (c % p + p) % p;
    return out;
  }
};

inline bool contains_subspace(const std::vector<ModVec>& w, const ModVec& v, long long p) {
  auto rows = w;
  rows.push_back(v);
  return rref(rows, p).size() == w.size();
}

// Stable lattices, as subspaces of M, sorted; relative degree is dim W - d.
inline std::vector<std::vector<ModVec>> stable_lattices_box_one(const BoxOneModel& m) {
  std::vector<std::vector<ModVec>> out;
  for (auto& w : all_subspaces(2 * m.d, m.p)) {
    bool ok = true;
    for (const auto& b : w) {
      if (!contains_subspace(w, m.act_w(b), m.p) || !contains_subspace(w, m.act_x(b), m.p)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
