#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ratfunc.hpp"

namespace chevalley {

template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t r, std::size_t c, const T& fill = T()) : rows_(r), cols_(c), data_(r * c, fill) {}

  static Mat identity(std::size_t n, const T& one) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Mat transpose() const {
    Mat t(cols_, rows_, data_.empty() ? T() : data_[0] - data_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
    Mat c(a.rows_, b.cols_, a.data_.empty() ? T() : a.data_[0] - a.data_[0]);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using PolyMat = Mat<Poly>;

template <class T>
RingPtr ring_of(const Mat<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).ring()) return m(i, j).ring();
  return nullptr;
}
using RatMat = Mat<RatFunc>;

inline PolyMat poly_mat(const RingPtr& r, std::size_t rows, std::size_t cols) { return PolyMat(rows, cols, Poly(r)); }

inline Poly one_of(const Poly& p) { return Poly(p.ring(), Scalar(1)); }
inline RatFunc one_of(const RatFunc& p) { return RatFunc(Poly(p.ring(), Scalar(1))); }

template <class T>
T mat_trace(const Mat<T>& m) {
  T t{};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

namespace detail {

inline std::size_t weight(const Poly& p) { return p.size(); }
inline std::size_t weight(const RatFunc& p) { return p.num().size() + p.den().size(); }

inline Poly exact_quotient(const Poly& a, const Poly& b) {
  auto q = exact_div(a, b);
  if (!q) fail(ErrorCode::CertificationFailure, "fraction-free elimination lost exactness");
  return *q;
}
inline RatFunc exact_quotient(const RatFunc& a, const RatFunc& b) { return a / b; }

}  // namespace detail

// Fraction-free row echelon form (Bareiss). Every entry stays in the ring;
// the pivot of step k divides the updates of step k+1 exactly.
template <class T>
struct Echelon {
  Mat<T> m;
  std::vector<std::size_t> pivot_cols;
  int swaps = 0;
};

template <class T>
Echelon<T> bareiss_echelon(Mat<T> m, std::size_t ncols_to_reduce = static_cast<std::size_t>(-1)) {
  Echelon<T> out;
  std::size_t rows = m.rows(), cols = std::min(m.cols(), ncols_to_reduce);
  T prev{};
  bool have_prev = false;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m(i, c).is_zero() && (best == rows || detail::weight(m(i, c)) < detail::weight(m(best, c)))) best = i;
    if (best == rows) continue;
    if (best != r) {
      m.swap_rows(best, r);
      ++out.swaps;
    }
    T piv = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      T lead = m(i, c);
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        T v = piv * m(i, j) - lead * m(r, j);
        m(i, j) = have_prev ? detail::exact_quotient(v, prev) : v;
      }
      m(i, c) = T{};
    }
    prev = piv;
    have_prev = true;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.m = std::move(m);
  return out;
}

template <class T>
T det_bareiss(const Mat<T>& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty matrix");
  Echelon<T> e = bareiss_echelon(a);
  if (e.pivot_cols.size() < n) return T{};
  T d = e.m(n - 1, n - 1);
  return e.swaps % 2 ? -d : d;
}

// Laplace expansion along the first row, memoized over column subsets.
template <class T>
T det_cofactor(const Mat<T>& a) {
  std::size_t n = a.rows();
  if (n != a.cols() || n == 0 || n > 16) fail(ErrorCode::InvalidArgument, "cofactor determinant needs 1..16 square");
  std::vector<std::optional<T>> memo(std::size_t(1) << n);
  auto rec = [&](auto&& self, std::size_t row, unsigned mask) -> T {
    if (row == n) return one_of(a(0, 0));
    if (memo[mask]) return *memo[mask];
    T acc{};
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) continue;
      if (!a(row, j).is_zero()) {
        T sub = self(self, row + 1, mask | (1u << j));
        if (sign > 0)
          acc += a(row, j) * sub;
        else
          acc -= a(row, j) * sub;
      }
      sign = -sign;
    }
    memo[mask] = acc;
    return acc;
  };
  return rec(rec, 0, 0u);
}


// Solves a x = D b for each column b of rhs, with D = the last Bareiss pivot
// (= +-det a). Returns nullopt when a is singular.
template <class T>
std::optional<std::pair<T, Mat<T>>> solve_fraction_free(const Mat<T>& a, const Mat<T>& rhs) {
  std::size_t n = a.rows();
  if (n != a.cols() || rhs.rows() != n) fail(ErrorCode::InvalidArgument, "solve shape mismatch");
  Mat<T> aug(n, n + rhs.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) aug(i, n + j) = rhs(i, j);
  }
  Echelon<T> e = bareiss_echelon(std::move(aug), n);
  if (e.pivot_cols.size() < n) return std::nullopt;
  const Mat<T>& u = e.m;
  T d = u(n - 1, n - 1);
  Mat<T> x(n, rhs.cols());
  for (std::size_t k = 0; k < rhs.cols(); ++k)
    for (std::size_t ii = n; ii-- > 0;) {
      T acc = d * u(ii, n + k);
      for (std::size_t j = ii + 1; j < n; ++j)
        if (!u(ii, j).is_zero()) acc -= u(ii, j) * x(j, k);
      x(ii, k) = detail::exact_quotient(acc, u(ii, ii));
    }
  return std::make_pair(d, x);
}

// Exact solution over the fraction field.
inline std::optional<RatMat> solve_rational(const PolyMat& a, const PolyMat& rhs) {
  auto s = solve_fraction_free(a, rhs);
  if (!s) return std::nullopt;
  RatMat out(rhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = RatFunc(s->second(i, j), s->first);
  return out;
}

template <class T>
std::size_t rank_of(const Mat<T>& m) {
  return bareiss_echelon(m).pivot_cols.size();
}

// Basis of the right kernel over the fraction field, scaled into the ring.
inline std::vector<std::vector<Poly>> nullspace(const PolyMat& m, const RingPtr& ring) {
  Echelon<Poly> e = bareiss_echelon(m);
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Poly>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<RatFunc> x(n, RatFunc(Poly(ring)));
    x[f] = RatFunc(Poly(ring, Scalar(1)));
    for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
      std::size_t c = e.pivot_cols[k];
      RatFunc acc{Poly(ring)};
      for (std::size_t j = c + 1; j < n; ++j)
        if (!e.m(k, j).is_zero() && !x[j].is_zero()) acc += RatFunc(e.m(k, j)) * x[j];
      x[c] = -(acc / RatFunc(e.m(k, c)));
    }
    Poly common(ring, Scalar(1));
    for (auto& v : x) {
      v = v.normalized();
      Poly g = poly_gcd(common, v.den());
      common = common * *exact_div(v.den(), g);
    }
    std::vector<Poly> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = *(x[j] * RatFunc(common)).is_polynomial();
    basis.push_back(std::move(row));
  }
  return basis;
}

// Solution set of a x = b over the fraction field: a particular solution and
// a kernel basis. Returns nullopt when the system is inconsistent.
struct AffineSolution {
  std::vector<RatFunc> particular;
  std::vector<std::vector<RatFunc>> kernel;
  std::size_t rank = 0;
};

inline std::optional<AffineSolution> solve_affine(RatMat a, std::vector<RatFunc> b, const RingPtr& ring) {
  std::size_t rows = a.rows(), cols = a.cols();
  if (b.size() != rows) fail(ErrorCode::InvalidArgument, "solve shape mismatch");
  RatFunc zero{Poly(ring)};
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        best = i;
        break;
      }
    if (best == rows) continue;
    a.swap_rows(best, r);
    std::swap(b[best], b[r]);
    RatFunc inv = a(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) a(r, j) = (a(r, j) * inv).normalized();
    b[r] = (b[r] * inv).normalized();
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      RatFunc m = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) = (a(i, j) - m * a(r, j)).normalized();
      b[i] = (b[i] - m * b[r]).normalized();
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  AffineSolution out;
  out.rank = r;
  out.particular.assign(cols, zero);
  for (std::size_t k = 0; k < r; ++k) out.particular[pivots[k]] = b[k];
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<RatFunc> v(cols, zero);
    v[f] = one_of(zero);
    for (std::size_t k = 0; k < r; ++k) v[pivots[k]] = -a(k, f);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomials det(tI - A), coefficients low to high, monic.

inline std::vector<Poly> charpoly_faddeev_leverrier(const PolyMat& a) {
  std::size_t n = a.rows();
  RingPtr r = ring_of(a);
  if (r->characteristic != 0 && r->characteristic <= n)
    fail(ErrorCode::CharTooSmall, "Faddeev-LeVerrier divides by 1..n");
  std::vector<Poly> c(n + 1, Poly(r));
  c[n] = Poly(r, Scalar(1));
  PolyMat mk = poly_mat(r, n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    PolyMat amk = a * mk;
    c[n - k] = mat_trace(amk) * Scalar(-1, static_cast<long long>(k));
  }
  return c;
}

template <class T>
std::vector<T> charpoly_berkowitz(const Mat<T>& a) {
  std::size_t n = a.rows();
  T one = one_of(a(0, 0));
  T zero = one - one;
  std::vector<T> poly{one};  // high to low
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<T> t(r + 2, zero);
    t[0] = one;
    t[1] = -a(r, r);
    std::vector<T> v(r);  // S^k C
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T s = zero;
      for (std::size_t j = 0; j < r; ++j)
        if (!a(r, j).is_zero() && !v[j].is_zero()) s += a(r, j) * v[j];
      t[k + 2] = -s;
      std::vector<T> w(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (!a(i, j).is_zero() && !v[j].is_zero()) w[i] += a(i, j) * v[j];
      v = std::move(w);
    }
    std::vector<T> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!t[i - j].is_zero() && !poly[j].is_zero()) next[i] += t[i - j] * poly[j];
    poly = std::move(next);
  }
  return std::vector<T>(poly.rbegin(), poly.rend());
}

inline std::vector<Poly> char_poly(const PolyMat& a) {
  RingPtr r = ring_of(a);
  if (r && r->characteristic == 0) return charpoly_faddeev_leverrier(a);
  return charpoly_berkowitz(a);
}

}  // namespace chevalley
