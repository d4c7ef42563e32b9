#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "serialize.hpp"

namespace chevalley {

struct FiniteFreeAlgebra {
  RingPtr ring;
  std::size_t rank = 0;
  std::vector<std::string> labels;
  // table[i][j] = coordinates of v_i * v_j.
  std::vector<std::vector<std::vector<Poly>>> table;
  std::vector<Poly> x;
  // Column j holds the coordinates of tau(v_j).
  std::optional<PolyMat> tau;
  // Monic defining polynomial, low degree first, when the basis is 1, x, ..., x^{d-1}.
  std::vector<Poly> modulus;
  std::vector<int> weights;

  bool is_monogenic() const { return !modulus.empty(); }
};

using AlgebraPtr = std::shared_ptr<const FiniteFreeAlgebra>;

class Elem {
 public:
  Elem() = default;
  Elem(AlgebraPtr parent, std::vector<Poly> coords) : parent_(std::move(parent)), c_(std::move(coords)) {
    if (c_.size() != parent_->rank) fail(ErrorCode::InvalidArgument, "coordinate vector length != rank");
  }
  static Elem zero(const AlgebraPtr& a) { return Elem(a, std::vector<Poly>(a->rank, Poly(a->ring))); }
  static Elem basis(const AlgebraPtr& a, std::size_t i) {
    Elem e = zero(a);
    e.c_.at(i) = Poly(a->ring, Scalar(1));
    return e;
  }
  static Elem scalar(const AlgebraPtr& a, const Poly& s) {
    Elem e = zero(a);
    e.c_[0] = s;
    return e;
  }
  static Elem x_of(const AlgebraPtr& a) { return Elem(a, a->x); }

  const AlgebraPtr& parent() const { return parent_; }
  const std::vector<Poly>& coords() const { return c_; }
  const Poly& operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const {
    for (const auto& p : c_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend Elem operator+(const Elem& a, const Elem& b) {
    Elem r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Elem operator-(const Elem& a, const Elem& b) {
    Elem r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  Elem operator-() const {
    Elem r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
  }
  friend Elem operator*(const Poly& s, const Elem& a) {
    Elem r = a;
    for (auto& p : r.c_) p = s * p;
    return r;
  }
  friend Elem operator*(const Elem& a, const Elem& b) {
    const auto& alg = *a.parent_;
    std::size_t d = alg.rank;
    if (alg.is_monogenic()) {
      std::vector<Poly> prod(2 * d - 1, Poly(alg.ring));
      for (std::size_t i = 0; i < d; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j)
          if (!b.c_[j].is_zero()) prod[i + j] += a.c_[i] * b.c_[j];
      }
      for (std::size_t k = 2 * d - 1; k-- > d;) {
        if (prod[k].is_zero()) continue;
        Poly lead = prod[k];
        for (std::size_t i = 0; i < d; ++i)
          if (!alg.modulus[i].is_zero()) prod[k - d + i] -= lead * alg.modulus[i];
        prod[k] = Poly(alg.ring);
      }
      prod.resize(d);
      return Elem(a.parent_, std::move(prod));
    }
    Elem r = zero(a.parent_);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j].is_zero()) continue;
        Poly s = a.c_[i] * b.c_[j];
        const auto& t = alg.table[i][j];
        for (std::size_t k = 0; k < d; ++k)
          if (!t[k].is_zero()) r.c_[k] += s * t[k];
      }
    }
    return r;
  }
  Elem pow(unsigned e) const {
    Elem r = scalar(parent_, Poly(parent_->ring, Scalar(1)));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  friend bool operator==(const Elem& a, const Elem& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].to_string() + ")*" + parent_->labels[i];
    }
    return out.empty() ? "0" : out;
  }

 private:
  AlgebraPtr parent_;
  std::vector<Poly> c_;
};

// Matrix of multiplication by b: column j = b * v_j.
inline PolyMat mult_matrix(const Elem& b) {
  const auto& a = b.parent();
  PolyMat m = poly_mat(a->ring, a->rank, a->rank);
  for (std::size_t j = 0; j < a->rank; ++j) m.set_column(j, (b * Elem::basis(a, j)).coords());
  return m;
}

inline Poly trace(const Elem& b) { return mat_trace(mult_matrix(b)); }

inline std::vector<Poly> char_poly(const Elem& b) { return char_poly(mult_matrix(b)); }

inline Elem apply_tau(const Elem& b) {
  const auto& a = b.parent();
  if (!a->tau) fail(ErrorCode::InvalidArgument, "algebra has no involution");
  std::vector<Poly> out(a->rank, Poly(a->ring));
  for (std::size_t j = 0; j < a->rank; ++j) {
    if (b[j].is_zero()) continue;
    for (std::size_t i = 0; i < a->rank; ++i)
      if (!(*a->tau)(i, j).is_zero()) out[i] += b[j] * (*a->tau)(i, j);
  }
  return Elem(a, std::move(out));
}

// Evaluates sum coeffs[k] x^k for a polynomial in the algebra generator.
inline Elem eval_in(const AlgebraPtr& a, const std::vector<Poly>& coeffs) {
  Elem x = Elem::x_of(a), acc = Elem::zero(a), pw = Elem::scalar(a, Poly(a->ring, Scalar(1)));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) acc = acc + coeffs[k] * pw;
    if (k + 1 < coeffs.size()) pw = pw * x;
  }
  return acc;
}

inline std::vector<Poly> derivative(const std::vector<Poly>& f) {
  std::vector<Poly> d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * Scalar(static_cast<long long>(k)));
  if (d.empty()) d.push_back(Poly(f[0].ring()));
  return d;
}

namespace detail {

inline bool parity_pure(const std::vector<Poly>& f) {
  std::size_t d = f.size() - 1;
  for (std::size_t k = 0; k < f.size(); ++k)
    if ((d - k) % 2 == 1 && !f[k].is_zero()) return false;
  return true;
}

}  // namespace detail

// A[x]/(f) on the basis 1, x, ..., x^{d-1}; f is given low degree first.
inline AlgebraPtr monogenic_algebra(const RingPtr& ring, std::vector<Poly> f, const std::string& var = "x") {
  if (f.size() < 2) fail(ErrorCode::NotMonic, "defining polynomial must have degree >= 1");
  for (auto& c : f)
    if (!c.ring()) c = Poly(ring) + c;
  if (!(f.back() == Poly(ring, Scalar(1)))) fail(ErrorCode::NotMonic, "leading coefficient is not 1");
  auto alg = std::make_shared<FiniteFreeAlgebra>();
  std::size_t d = f.size() - 1;
  alg->ring = ring;
  alg->rank = d;
  alg->modulus = f;
  for (std::size_t i = 0; i < d; ++i) {
    alg->labels.push_back(i == 0 ? "1" : i == 1 ? var : var + "^" + std::to_string(i));
    alg->weights.push_back(static_cast<int>(i));
  }
  // Reductions of x^k for k < 2d - 1.
  std::vector<std::vector<Poly>> red;
  for (std::size_t k = 0; k < 2 * d - 1; ++k) {
    std::vector<Poly> v(d, Poly(ring));
    if (k < d) {
      v[k] = Poly(ring, Scalar(1));
    } else {
      const auto& prev = red[k - 1];
      // x * prev: shift, then fold the x^d coefficient.
      Poly top = prev[d - 1];
      for (std::size_t i = d - 1; i > 0; --i) v[i] = prev[i - 1];
      v[0] = Poly(ring);
      if (!top.is_zero())
        for (std::size_t i = 0; i < d; ++i) v[i] -= top * f[i];
    }
    red.push_back(std::move(v));
  }
  alg->table.assign(d, std::vector<std::vector<Poly>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) alg->table[i][j] = red[i + j];
  alg->x = d > 1 ? red[1] : std::vector<Poly>{-f[0]};
  if (detail::parity_pure(f)) {
    PolyMat t = poly_mat(ring, d, d);
    for (std::size_t i = 0; i < d; ++i) t(i, i) = Poly(ring, Scalar(i % 2 ? -1 : 1));
    alg->tau = t;
  }
  return alg;
}

inline AlgebraPtr monogenic_algebra(const RingPtr& ring, const std::vector<std::string>& f, const std::string& var = "x") {
  std::vector<Poly> c;
  for (const auto& s : f) c.push_back(parse_poly(ring, s));
  return monogenic_algebra(ring, std::move(c), var);
}

// Structural checks on all basis pairs and triples.
inline bool is_commutative(const FiniteFreeAlgebra& a) {
  for (std::size_t i = 0; i < a.rank; ++i)
    for (std::size_t j = i + 1; j < a.rank; ++j)
      if (a.table[i][j] != a.table[j][i]) return false;
  return true;
}

inline bool is_associative(const AlgebraPtr& a) {
  std::vector<Elem> b;
  for (std::size_t i = 0; i < a->rank; ++i) b.push_back(Elem::basis(a, i));
  for (std::size_t i = 0; i < a->rank; ++i)
    for (std::size_t j = 0; j < a->rank; ++j) {
      Elem ij = b[i] * b[j];
      for (std::size_t k = 0; k < a->rank; ++k)
        if (ij * b[k] != b[i] * (b[j] * b[k])) return false;
    }
  return true;
}

inline bool identity_is_basis0(const AlgebraPtr& a) {
  Elem one = Elem::basis(a, 0);
  for (std::size_t i = 0; i < a->rank; ++i)
    if (one * Elem::basis(a, i) != Elem::basis(a, i)) return false;
  return true;
}

// tau^2 = id, tau multiplicative on basis pairs, tau(x) = -x.
inline bool tau_is_involution(const AlgebraPtr& a) {
  if (!a->tau) return false;
  for (std::size_t i = 0; i < a->rank; ++i) {
    Elem bi = Elem::basis(a, i);
    if (apply_tau(apply_tau(bi)) != bi) return false;
    for (std::size_t j = 0; j < a->rank; ++j) {
      Elem bj = Elem::basis(a, j);
      if (apply_tau(bi * bj) != apply_tau(bi) * apply_tau(bj)) return false;
    }
  }
  return apply_tau(Elem::x_of(a)) == -Elem::x_of(a);
}

// --- the normalized cover for SO_{2n} --------------------------------------

inline RingPtr so_even_ring(std::size_t n, std::uint64_t characteristic = 0) {
  std::vector<std::string> names;
  std::vector<int> w;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    names.push_back("a" + std::to_string(2 * k));
    w.push_back(static_cast<int>(2 * k));
  }
  names.push_back("p" + std::to_string(n));
  w.push_back(static_cast<int>(n));
  return ring_new(names, w, characteristic, RingContext::classical);
}

// Basis 1, x, ..., x^{2n-2}, p with p = p_{n-1}; relations x p = p_n and
// p^2 = -(x^{2n-2} + a_2 x^{2n-4} + ... + a_{2n-2}).
inline AlgebraPtr blowup_algebra_so_even(std::size_t n, std::uint64_t characteristic = 0) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "SO_2n blowup needs n >= 2");
  RingPtr ring = so_even_ring(n, characteristic);
  std::size_t d = 2 * n, top = 2 * n - 2, pidx = d - 1;
  Poly pn = Poly::var(ring, n - 1);
  auto a = [&](std::size_t k) { return Poly::var(ring, k - 1); };  // a_{2k}
  // Reduction of a formal combination sum c_k x^k + sum s_k x^k p.
  struct Formal {
    std::vector<Poly> plain, withp;
  };
  auto reduce = [&](Formal f) {
    std::vector<Poly> out(d, Poly(ring));
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = f.withp.size(); k-- > 1;) {
        if (f.withp[k].is_zero()) continue;
        if (f.plain.size() < k) f.plain.resize(k, Poly(ring));
        f.plain[k - 1] += pn * f.withp[k];
        f.withp[k] = Poly(ring);
        changed = true;
      }
      for (std::size_t k = f.plain.size(); k-- > top + 1;) {
        if (f.plain[k].is_zero()) continue;
        Poly c = f.plain[k];
        f.plain[k] = Poly(ring);
        std::size_t s = k - (2 * n - 1);
        // x^{2n-1} = -p_n p - sum_{k=1}^{n-1} a_{2k} x^{2n-1-2k}
        if (f.withp.size() < s + 1) f.withp.resize(s + 1, Poly(ring));
        f.withp[s] -= c * pn;
        for (std::size_t kk = 1; kk + 1 <= n; ++kk) f.plain[s + 2 * n - 1 - 2 * kk] -= c * a(kk);
        changed = true;
      }
    }
    for (std::size_t k = 0; k < f.plain.size() && k <= top; ++k) out[k] += f.plain[k];
    if (!f.withp.empty()) out[pidx] += f.withp[0];
    return out;
  };
  auto alg = std::make_shared<FiniteFreeAlgebra>();
  alg->ring = ring;
  alg->rank = d;
  for (std::size_t i = 0; i <= top; ++i) {
    alg->labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
    alg->weights.push_back(static_cast<int>(i));
  }
  alg->labels.push_back("p" + std::to_string(n - 1));
  alg->weights.push_back(static_cast<int>(n - 1));
  alg->table.assign(d, std::vector<std::vector<Poly>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Formal f;
      f.plain.assign(2 * top + 1, Poly(ring));
      bool ip = i == pidx, jp = j == pidx;
      if (!ip && !jp) {
        f.plain[i + j] = Poly(ring, Scalar(1));
      } else if (ip != jp) {
        std::size_t k = ip ? j : i;
        f.withp.assign(k + 1, Poly(ring));
        f.withp[k] = Poly(ring, Scalar(1));
      } else {
        // p^2 = -(x^{2n-2} + a_2 x^{2n-4} + ... + a_{2n-2})
        f.plain[top] -= Poly(ring, Scalar(1));
        for (std::size_t kk = 1; kk + 1 <= n; ++kk) f.plain[top - 2 * kk] -= a(kk);
      }
      alg->table[i][j] = reduce(std::move(f));
    }
  alg->x.assign(d, Poly(ring));
  alg->x[1] = Poly(ring, Scalar(1));
  PolyMat t = poly_mat(ring, d, d);
  for (std::size_t i = 0; i <= top; ++i) t(i, i) = Poly(ring, Scalar(i % 2 ? -1 : 1));
  t(pidx, pidx) = Poly(ring, Scalar(-1));
  alg->tau = t;
  AlgebraPtr out = alg;
  if (!is_commutative(*out) || !is_associative(out))
    fail(ErrorCode::AssociativityFailure, "SO_2n blowup table is not commutative and associative");
  return out;
}

// --- subcovers -------------------------------------------------------------

struct SubcoverEmbedding {
  AlgebraPtr sub;    // A' = A[g]/(minimal polynomial), rank m
  AlgebraPtr total;  // B, rank n = m d
  PolyMat embedding;  // n x m, column i = g^i in B
  std::size_t d = 0;
  // Monic P2 of x over A', low degree first; coefficients are elements of A'.
  std::vector<Elem> p2;
  // n x n change of basis: column (i*d + j) holds g^i x^j in B.
  PolyMat relative_basis;
};

inline Elem embed(const SubcoverEmbedding& s, const Elem& a) {
  std::vector<Poly> out(s.total->rank, Poly(s.total->ring));
  for (std::size_t i = 0; i < s.sub->rank; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t r = 0; r < s.total->rank; ++r)
      if (!s.embedding(r, i).is_zero()) out[r] += a[i] * s.embedding(r, i);
  }
  return Elem(s.total, std::move(out));
}

// Coordinates of b over A' in the basis 1, x, ..., x^{d-1}.
inline std::vector<Elem> relative_coords(const SubcoverEmbedding& s, const Elem& b) {
  std::size_t n = s.total->rank, m = s.sub->rank;
  PolyMat rhs = poly_mat(s.total->ring, n, 1);
  rhs.set_column(0, b.coords());
  auto sol = solve_fraction_free(s.relative_basis, rhs);
  if (!sol || !sol->first.is_unit()) fail(ErrorCode::NotFree, "relative basis is not unimodular");
  Scalar inv = sol->first.constant_value().inverse();
  std::vector<Elem> out;
  for (std::size_t j = 0; j < s.d; ++j) {
    std::vector<Poly> c(m, Poly(s.total->ring));
    for (std::size_t i = 0; i < m; ++i) c[i] = sol->second(i * s.d + j, 0) * inv;
    out.emplace_back(s.sub, std::move(c));
  }
  return out;
}

inline SubcoverEmbedding subcover(const AlgebraPtr& total, const Elem& g, const std::string& name) {
  std::size_t n = total->rank;
  const RingPtr& ring = total->ring;
  std::vector<Elem> pw{Elem::scalar(total, Poly(ring, Scalar(1)))};
  std::size_t m = 0;
  for (;;) {
    PolyMat cols = poly_mat(ring, n, pw.size());
    for (std::size_t i = 0; i < pw.size(); ++i) cols.set_column(i, pw[i].coords());
    if (rank_of(cols) < pw.size()) {
      m = pw.size() - 1;
      break;
    }
    if (pw.size() > n) fail(ErrorCode::NotFree, "generator powers never become dependent");
    pw.push_back(pw.back() * g);
  }
  if (m == 0 || n % m != 0) fail(ErrorCode::NotFree, "rank of the generated subalgebra does not divide the total rank");
  // Find m rows with a unit minor.
  std::vector<std::size_t> rows;
  {
    PolyMat cols = poly_mat(ring, n, m);
    for (std::size_t i = 0; i < m; ++i) cols.set_column(i, pw[i].coords());
    // Greedy search over row subsets in lexicographic order.
    std::vector<std::size_t> pick;
    bool found = false;
    auto search = [&](auto&& self, std::size_t start) -> void {
      if (found) return;
      if (pick.size() == m) {
        PolyMat sq = poly_mat(ring, m, m);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c) sq(r, c) = cols(pick[r], c);
        if (det_bareiss(sq).is_unit()) {
          rows = pick;
          found = true;
        }
        return;
      }
      for (std::size_t r = start; r < n && !found; ++r) {
        pick.push_back(r);
        self(self, r + 1);
        pick.pop_back();
      }
    };
    search(search, 0);
    if (!found) fail(ErrorCode::NotFree, "generator powers do not span a free direct summand");
  }
  // Minimal polynomial: g^m = sum c_k g^k.
  PolyMat sq = poly_mat(ring, m, m), rhs = poly_mat(ring, m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) sq(r, c) = pw[c][rows[r]];
    rhs(r, 0) = pw[m][rows[r]];
  }
  auto sol = solve_fraction_free(sq, rhs);
  Scalar inv = sol->first.constant_value().inverse();
  std::vector<Poly> minpoly(m + 1, Poly(ring));
  Elem check = pw[m];
  for (std::size_t k = 0; k < m; ++k) {
    Poly ck = sol->second(k, 0) * inv;
    minpoly[k] = -ck;
    check = check - ck * pw[k];
  }
  if (!check.is_zero()) fail(ErrorCode::NotFree, "minimal polynomial has non-integral coefficients");
  minpoly[m] = Poly(ring, Scalar(1));
  SubcoverEmbedding s;
  s.sub = monogenic_algebra(ring, minpoly, name);
  s.total = total;
  s.d = n / m;
  s.embedding = poly_mat(ring, n, m);
  for (std::size_t i = 0; i < m; ++i) s.embedding.set_column(i, pw[i].coords());
  s.relative_basis = poly_mat(ring, n, n);
  Elem x = Elem::x_of(total);
  std::vector<Elem> xp{Elem::scalar(total, Poly(ring, Scalar(1)))};
  for (std::size_t j = 1; j <= s.d; ++j) xp.push_back(xp.back() * x);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < s.d; ++j) s.relative_basis.set_column(i * s.d + j, (pw[i] * xp[j]).coords());
  if (!det_bareiss(s.relative_basis).is_unit())
    fail(ErrorCode::NotFree, "B is not free over A' on 1, x, ..., x^{d-1}");
  // P2 = x^d - sum beta_j x^j.
  std::vector<Elem> beta = relative_coords(s, xp[s.d]);
  for (std::size_t j = 0; j < s.d; ++j) s.p2.push_back(-beta[j]);
  s.p2.push_back(Elem::scalar(s.sub, Poly(ring, Scalar(1))));
  // Injective algebra map on basis products, and P2(x) = 0.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Elem yi = Elem::basis(s.sub, i), yj = Elem::basis(s.sub, j);
      if (embed(s, yi * yj) != embed(s, yi) * embed(s, yj))
        fail(ErrorCode::NotFree, "embedding is not multiplicative");
    }
  Elem p2x = Elem::zero(total);
  for (std::size_t j = 0; j <= s.d; ++j) p2x = p2x + embed(s, s.p2[j]) * xp[j];
  if (!p2x.is_zero()) fail(ErrorCode::NotFree, "relative polynomial does not vanish on x");
  return s;
}

// Trace of b over A', an element of A'.
inline Elem relative_trace(const SubcoverEmbedding& s, const Elem& b) {
  Elem x = Elem::x_of(s.total), xj = Elem::scalar(s.total, Poly(s.total->ring, Scalar(1)));
  Elem acc = Elem::zero(s.sub);
  for (std::size_t j = 0; j < s.d; ++j) {
    acc = acc + relative_coords(s, b * xj)[j];
    xj = xj * x;
  }
  return acc;
}

// --- JSON ------------------------------------------------------------------

inline json algebra_to_json(const FiniteFreeAlgebra& a) {
  json table = json::array();
  for (std::size_t i = 0; i < a.rank; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.rank; ++j) row.push_back(poly_vector_to_json(a.table[i][j]));
    table.push_back(std::move(row));
  }
  json out{{"ring", ring_to_json(*a.ring)}, {"rank", a.rank}, {"basis", a.labels}, {"table", table},
           {"x", poly_vector_to_json(a.x)}};
  out["tau"] = a.tau ? poly_matrix_to_json(*a.tau) : json(nullptr);
  return out;
}

}  // namespace chevalley
