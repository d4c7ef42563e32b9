#pragma once

#include <string>
#include <vector>

#include "tensor.hpp"

namespace chevalley {

inline RingPtr gl_ring(std::size_t n, std::uint64_t characteristic = 0) {
  std::vector<std::string> names;
  std::vector<int> w;
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back("a" + std::to_string(i));
    w.push_back(static_cast<int>(i));
  }
  return ring_new(names, w, characteristic);
}

// f = x^n + a_1 x^{n-1} + ... + a_n over A_n, low degree first.
inline std::vector<Poly> gl_polynomial(const RingPtr& r, std::size_t n) {
  std::vector<Poly> f(n + 1, Poly(r));
  for (std::size_t i = 1; i <= n; ++i) f[n - i] = Poly::var(r, i - 1);
  f[n] = Poly(r, 1);
  return f;
}

inline AlgebraPtr gl_cover(std::size_t n, std::uint64_t characteristic = 0) {
  RingPtr r = gl_ring(n, characteristic);
  return monogenic_algebra(r, gl_polynomial(r, n));
}

// Matrix of multiplication by x in the basis 1, x, ..., x^{d-1}.
inline PolyMat companion_matrix(const AlgebraPtr& a) {
  if (!a->is_monogenic()) fail(ErrorCode::NotMonogenic, "companion matrix needs a monogenic algebra");
  return mult_matrix(Elem::x_of(a));
}

inline FormTensor trace_pairing(const AlgebraPtr& a) {
  PolyMat g = poly_mat(a->ring, a->rank, a->rank);
  for (std::size_t i = 0; i < a->rank; ++i)
    for (std::size_t j = i; j < a->rank; ++j) {
      g(i, j) = trace(Elem::basis(a, i) * Elem::basis(a, j));
      g(j, i) = g(i, j);
    }
  return FormTensor::bilinear(a, Symmetry::symmetric, g);
}

// Element of Hom_A(B, A) in the dual basis v_0^*, ..., v_{d-1}^*.
struct DualElement {
  AlgebraPtr parent;
  std::vector<Poly> coords;

  Poly operator()(const Elem& b) const {
    Poly acc(parent->ring);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!coords[i].is_zero()) acc += coords[i] * b[i];
    return acc;
  }
  // (b . lambda)(c) = lambda(b c).
  DualElement act(const Elem& b) const {
    DualElement out{parent, std::vector<Poly>(parent->rank, Poly(parent->ring))};
    for (std::size_t j = 0; j < parent->rank; ++j) out.coords[j] = (*this)(b * Elem::basis(parent, j));
    return out;
  }
  friend bool operator==(const DualElement& a, const DualElement& b) { return a.coords == b.coords; }
};

// beta^* = v_{d-1}^*.
inline DualElement beta_generator(const AlgebraPtr& a) {
  if (!a->is_monogenic()) fail(ErrorCode::NotMonogenic, "beta^* is defined on the power basis");
  DualElement b{a, std::vector<Poly>(a->rank, Poly(a->ring))};
  b.coords[a->rank - 1] = Poly(a->ring, 1);
  return b;
}

// Gram matrix of b1 (x) b2 -> lambda(b1 b2).
inline PolyMat pairing_gram(const DualElement& l) {
  const auto& a = l.parent;
  PolyMat g = poly_mat(a->ring, a->rank, a->rank);
  for (std::size_t i = 0; i < a->rank; ++i)
    for (std::size_t j = 0; j < a->rank; ++j) g(i, j) = l(Elem::basis(a, i) * Elem::basis(a, j));
  return g;
}

inline Elem f_prime(const AlgebraPtr& a) {
  if (!a->is_monogenic()) fail(ErrorCode::NotMonogenic, "f' needs the defining polynomial");
  return eval_in(a, derivative(a->modulus));
}

// Norm of f', which equals resultant(f, f') for monic f.
inline Poly resultant_f_fprime(const AlgebraPtr& a) { return det_bareiss(mult_matrix(f_prime(a))); }

// Certifies resultant(f, f') != 0 by a specialization of A at which det M(f') is
// nonzero; falls back to the symbolic resultant when no tried point works.
inline bool discriminant_nonzero(const AlgebraPtr& a) {
  PolyMat m = mult_matrix(f_prime(a));
  const RingPtr& r = a->ring;
  for (long long t = 1; t <= 12; ++t) {
    std::vector<Poly> point;
    for (std::size_t i = 0; i < r->nvars(); ++i)
      point.push_back(Poly(r, (t * static_cast<long long>(i * i + 1) + static_cast<long long>(i)) % 17 - 8));
    PolyMat v = poly_mat(r, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j).substitute(r, point);
    if (!det_bareiss(v).is_zero()) return true;
  }
  return !resultant_f_fprime(a).is_zero();
}

// The inverse of an element over Frac(A): returns (numerator coordinates, denominator).
inline std::pair<Elem, Poly> inverse_over_fraction_field(const Elem& b) {
  const auto& a = b.parent();
  PolyMat rhs = poly_mat(a->ring, a->rank, 1);
  rhs(0, 0) = Poly(a->ring, 1);
  auto sol = solve_fraction_free(mult_matrix(b), rhs);
  if (!sol) fail(ErrorCode::CertificationFailure, "element is not invertible over the fraction field");
  return {Elem(a, sol->second.column(0)), sol->first};
}

struct MuDecomposition {
  Elem fprime;
  DualElement beta;
  // mu(v_i) = f' . lambda_i with lambda_i(v_j) = beta^*(v_i v_j); the entries
  // of lambda_i beyond the anti-diagonal are the a'_{i,j}.
  std::vector<DualElement> lambda;
};

// Certifies mu = f' beta^*: for every i, the dual element b -> tr(v_i b)
// equals lambda_i(f' b), checked through the fraction field.
// The fraction-field cross-check is optional: its cost grows steeply past rank 6.
inline MuDecomposition mu_decomposition(const AlgebraPtr& a, bool fraction_field_check = true) {
  MuDecomposition m{f_prime(a), beta_generator(a), {}};
  if (!discriminant_nonzero(a)) fail(ErrorCode::CertificationFailure, "f' is a zero divisor");
  PolyMat gxi = trace_pairing(a).gram();
  PolyMat gbeta = pairing_gram(m.beta);
  if (gxi != gbeta * mult_matrix(m.fprime)) fail(ErrorCode::CertificationFailure, "G_xi != G_beta * M(f')");
  if (!fraction_field_check) {
    for (std::size_t i = 0; i < a->rank; ++i) m.lambda.push_back(m.beta.act(Elem::basis(a, i)));
    return m;
  }
  // Fraction-field route: lambda_i(v_j) = tr(v_i v_j / f').
  auto [num, den] = inverse_over_fraction_field(m.fprime);
  for (std::size_t i = 0; i < a->rank; ++i) {
    DualElement li{a, std::vector<Poly>(a->rank, Poly(a->ring))};
    for (std::size_t j = 0; j < a->rank; ++j) {
      RatFunc v(trace(num * Elem::basis(a, i) * Elem::basis(a, j)), den);
      auto p = v.is_polynomial();
      if (!p) fail(ErrorCode::CertificationFailure, "tr(v_i v_j / f') is not polynomial");
      li.coords[j] = *p;
    }
    if (li.coords != m.beta.act(Elem::basis(a, i)).coords)
      fail(ErrorCode::CertificationFailure, "fraction-field trace disagrees with beta^*");
    m.lambda.push_back(std::move(li));
  }
  return m;
}

// tr(x^k / f') for k = 0..d-1 via the fraction field; each value certified polynomial.
inline std::vector<Poly> euler_traces(const AlgebraPtr& a) {
  auto [num, den] = inverse_over_fraction_field(f_prime(a));
  PolyMat gxi = trace_pairing(a).gram();  // gxi(i, j) = tr(x^{i+j})
  std::vector<Poly> out;
  for (std::size_t k = 0; k < a->rank; ++k) {
    Poly acc(a->ring);
    for (std::size_t j = 0; j < a->rank; ++j)
      if (!num[j].is_zero()) acc += num[j] * gxi(k, j);
    auto p = RatFunc(acc, den).is_polynomial();
    if (!p) fail(ErrorCode::CertificationFailure, "Euler trace is not polynomial");
    out.push_back(*p);
  }
  return out;
}

// tr(x^k / f') for k = 0..d-1 without inverting f': since f' is a unit in
// A[1/disc] and tr(v_j) = beta^*(f' v_j) on the basis, tr(x^k / f') = beta^*(x^k).
inline std::vector<Poly> euler_traces_certified(const AlgebraPtr& a) {
  DualElement beta = beta_generator(a);
  Elem fp = f_prime(a);
  if (!discriminant_nonzero(a)) fail(ErrorCode::CertificationFailure, "f' is a zero divisor");
  for (std::size_t j = 0; j < a->rank; ++j)
    if (trace(Elem::basis(a, j)) != beta(fp * Elem::basis(a, j)))
      fail(ErrorCode::CertificationFailure, "tr(v_j) != beta^*(f' v_j)");
  std::vector<Poly> out;
  Elem xk = Elem::scalar(a, Poly(a->ring, 1));
  for (std::size_t k = 0; k < a->rank; ++k, xk = xk * Elem::x_of(a)) out.push_back(beta(xk));
  return out;
}

// ad(diag(t^{n-1}, t^{n-3}, ..., t^{1-n}))(X) = t^{-2} X(t^2 a_1, t^4 a_2, ...).
inline bool check_grading_identity(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "rank must be positive");
  std::vector<std::string> names;
  std::vector<int> w;
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back("a" + std::to_string(i));
    w.push_back(static_cast<int>(i));
  }
  names.push_back("t");
  w.push_back(1);
  RingPtr r = ring_new(names, w);
  auto b = monogenic_algebra(r, gl_polynomial(r, n));
  PolyMat x = companion_matrix(b);
  Poly t = Poly::var(r, n);
  std::vector<Poly> images;
  for (std::size_t i = 1; i <= n; ++i) images.push_back(t.pow(static_cast<unsigned>(2 * i)) * Poly::var(r, i - 1));
  images.push_back(t);
  auto tpow = [&](long long e) {
    return e >= 0 ? RatFunc(t.pow(static_cast<unsigned>(e))) : RatFunc(Poly(r, 1), t.pow(static_cast<unsigned>(-e)));
  };
  RatFunc tm2 = tpow(-2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long long ei = static_cast<long long>(n) - 1 - 2 * static_cast<long long>(i);
      long long ej = static_cast<long long>(n) - 1 - 2 * static_cast<long long>(j);
      RatFunc lhs = tpow(ei) * RatFunc(x(i, j)) * tpow(-ej);
      RatFunc rhs = tm2 * RatFunc(x(i, j).substitute(r, images));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace chevalley
