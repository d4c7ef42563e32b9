#pragma once

#include <string>
#include <vector>

#include "companion.hpp"

namespace chevalley {

// k[a_2, a_4, ..., a_{2n}] with weights 2k.
inline RingPtr classical_ring(std::size_t n, std::uint64_t characteristic = 0) {
  std::vector<std::string> names;
  std::vector<int> w;
  for (std::size_t k = 1; k <= n; ++k) {
    names.push_back("a" + std::to_string(2 * k));
    w.push_back(static_cast<int>(2 * k));
  }
  return ring_new(names, w, characteristic, RingContext::classical);
}

// x^{2n} + a_2 x^{2n-2} + ... + a_{2n}, low degree first.
inline std::vector<Poly> even_polynomial(const RingPtr& r, std::size_t n) {
  std::vector<Poly> f(2 * n + 1, Poly(r));
  f[2 * n] = Poly(r, 1);
  for (std::size_t k = 1; k <= n; ++k) f[2 * n - 2 * k] = Poly::var(r, k - 1);
  return f;
}

inline AlgebraPtr sp_cover(std::size_t n, std::uint64_t characteristic = 0) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "Sp_2n needs n >= 1");
  RingPtr r = classical_ring(n, characteristic);
  return monogenic_algebra(r, even_polynomial(r, n));
}

// B = A[x]/(x f_0), rank 2n+1.
inline AlgebraPtr so_odd_cover(std::size_t n, std::uint64_t characteristic = 0) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "SO_{2n+1} needs n >= 1");
  RingPtr r = classical_ring(n, characteristic);
  auto f0 = even_polynomial(r, n);
  f0.insert(f0.begin(), Poly(r));
  return monogenic_algebra(r, f0);
}

// Gram of (b1, b2) -> tr(delta^{-1} b1 tau(b2)), computed over Frac(A) and
// certified polynomial entry by entry.
inline FormTensor twisted_trace_form(const AlgebraPtr& a, const Elem& delta, Symmetry sym) {
  if (!a->tau) fail(ErrorCode::InvalidArgument, "algebra carries no involution");
  auto [num, den] = inverse_over_fraction_field(delta);
  std::vector<Poly> tr(a->rank, Poly(a->ring));
  for (std::size_t k = 0; k < a->rank; ++k) tr[k] = trace(Elem::basis(a, k));
  auto tr_of = [&](const Elem& y) {
    Poly acc(a->ring);
    for (std::size_t k = 0; k < a->rank; ++k)
      if (!y[k].is_zero() && !tr[k].is_zero()) acc += y[k] * tr[k];
    return acc;
  };
  std::vector<Elem> taus;
  for (std::size_t j = 0; j < a->rank; ++j) taus.push_back(apply_tau(Elem::basis(a, j)));
  PolyMat g = poly_mat(a->ring, a->rank, a->rank);
  for (std::size_t i = 0; i < a->rank; ++i) {
    Elem ni = num * Elem::basis(a, i);
    for (std::size_t j = 0; j < a->rank; ++j) {
      auto p = RatFunc(tr_of(ni * taus[j]), den).is_polynomial();
      if (!p)
        fail(ErrorCode::CertificationFailure,
             "Gram entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not polynomial");
      g(i, j) = *p;
    }
  }
  FormTensor f = FormTensor::bilinear(a, sym, g);
  if (!symmetry_holds(f)) fail(ErrorCode::CertificationFailure, std::string("Gram is not ") + symmetry_name(sym));
  return f;
}

inline FormTensor symplectic_form(const AlgebraPtr& b) {
  return twisted_trace_form(b, f_prime(b), Symmetry::alternating);
}
inline FormTensor symplectic_form(std::size_t n, std::uint64_t characteristic = 0) {
  return symplectic_form(sp_cover(n, characteristic));
}

inline FormTensor so_odd_form(const AlgebraPtr& b) { return twisted_trace_form(b, f_prime(b), Symmetry::symmetric); }
inline FormTensor so_odd_form(std::size_t n, std::uint64_t characteristic = 0) {
  return so_odd_form(so_odd_cover(n, characteristic));
}

// --- the different of the SO_{2n} blowup ----------------------------------

struct DifferentElement {
  AlgebraPtr parent;
  Elem value;
};

namespace detail {

inline Elem so_even_p(const AlgebraPtr& b) { return Elem::basis(b, b->rank - 1); }

// a_{2k} with a_0 = 1.
inline Poly so_even_a(const RingPtr& r, std::size_t k) { return k == 0 ? Poly(r, 1) : Poly::var(r, k - 1); }

}  // namespace detail

// Jacobian determinant of (x p - p_n, p^2 + g(x)) in (x, p), up to sign:
// x g'(x) - 2 p^2 with g = x^{2n-2} + a_2 x^{2n-4} + ... + a_{2n-2}.
inline DifferentElement different_element(const AlgebraPtr& b) {
  std::size_t n = b->rank / 2;
  const RingPtr& r = b->ring;
  Elem x = Elem::x_of(b), p = detail::so_even_p(b);
  Elem xgp = Elem::zero(b);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto e = static_cast<long long>(2 * (n - 1 - k));
    xgp = xgp + (detail::so_even_a(r, k) * Scalar(e)) * x.pow(static_cast<unsigned>(e));
  }
  Elem d = xgp - Poly(r, 2) * (p * p);
  if (apply_tau(d) != d) fail(ErrorCode::CertificationFailure, "different is not tau-fixed");
  return {b, d};
}

// (n-1) x^{2(n-1)} + (n-2) a_2 x^{2(n-2)} + ... + p_{n-1}^2, the general term
// being (n-1-k) a_{2k} x^{2(n-1-k)}.
inline Elem different_printed_expansion(const AlgebraPtr& b) {
  std::size_t n = b->rank / 2;
  const RingPtr& r = b->ring;
  Elem x = Elem::x_of(b), p = detail::so_even_p(b);
  Elem acc = p * p;
  for (std::size_t k = 0; k + 1 < n; ++k)
    acc = acc + (detail::so_even_a(r, k) * Scalar(static_cast<long long>(n - 1 - k))) *
                    x.pow(static_cast<unsigned>(2 * (n - 1 - k)));
  return acc;
}

// 2((n-1) x^{2(n-1)} + (n-2) a_2 x^{2(n-2)} + ... + a_{2n-4} x^2 - p_{n-1}^2).
inline Elem different_corrected_expansion(const AlgebraPtr& b) {
  std::size_t n = b->rank / 2;
  const RingPtr& r = b->ring;
  Elem x = Elem::x_of(b), p = detail::so_even_p(b);
  Elem acc = -(p * p);
  for (std::size_t k = 0; k + 1 < n; ++k)
    acc = acc + (detail::so_even_a(r, k) * Scalar(static_cast<long long>(n - 1 - k))) *
                    x.pow(static_cast<unsigned>(2 * (n - 1 - k)));
  return Poly(r, 2) * acc;
}

inline FormTensor so_even_form(const AlgebraPtr& bt) {
  return twisted_trace_form(bt, different_element(bt).value, Symmetry::symmetric);
}
inline FormTensor so_even_form(std::size_t n, std::uint64_t characteristic = 0) {
  return so_even_form(blowup_algebra_so_even(n, characteristic));
}

// Columns hold the coordinates in B-tilde of 1, x, ..., x^{2n-1} from B = A[x]/(f).
inline PolyMat so_even_embedding(const AlgebraPtr& bt) {
  PolyMat p = poly_mat(bt->ring, bt->rank, bt->rank);
  Elem x = Elem::x_of(bt), cur = Elem::basis(bt, 0);
  for (std::size_t j = 0; j < bt->rank; ++j) {
    p.set_column(j, cur.coords());
    cur = x * cur;
  }
  return p;
}

// The pairing induced on the non-normalized B: P^T G P.
inline PolyMat so_even_pushdown_gram(const FormTensor& w) {
  PolyMat p = so_even_embedding(w.parent());
  return p.transpose() * w.gram() * p;
}

struct FormReport {
  std::string group;
  std::size_t n = 0;
  bool polynomial = false;
  bool symmetry = false;
  bool nondegenerate = false;
  std::optional<Scalar> det;
  bool anti_self_adjoint = false;
  bool associative = true;
  std::optional<bool> different_literal;
  std::optional<bool> different_corrected;
  FormTensor form;
};

// Builds the form for the group tag and runs the full battery of checks.
inline FormReport check_classical_form(const std::string& group, std::size_t n, std::uint64_t characteristic = 0) {
  FormReport r;
  r.group = group;
  r.n = n;
  AlgebraPtr b;
  if (group == "sp") {
    b = sp_cover(n, characteristic);
    r.form = symplectic_form(b);
  } else if (group == "so-odd") {
    b = so_odd_cover(n, characteristic);
    r.form = so_odd_form(b);
  } else if (group == "so-even") {
    b = blowup_algebra_so_even(n, characteristic);
    r.associative = is_associative(b);
    DifferentElement d = different_element(b);
    r.different_literal = d.value == different_printed_expansion(b);
    r.different_corrected = d.value == different_corrected_expansion(b);
    r.form = so_even_form(b);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown group tag '" + group + "'");
  }
  r.polynomial = true;  // construction throws otherwise
  r.symmetry = symmetry_holds(r.form);
  r.det = unit_determinant(r.form.gram());
  r.nondegenerate = r.det.has_value();
  r.anti_self_adjoint = verify_anti_self_adjoint(r.form, mult_matrix(Elem::x_of(b)));
  return r;
}

inline bool report_passes(const FormReport& r) {
  return r.polynomial && r.symmetry && r.nondegenerate && r.anti_self_adjoint && r.associative &&
         r.different_literal.value_or(true);
}

inline json form_report_to_json(const FormReport& r) {
  json j{{"group", r.group},
         {"n", r.n},
         {"polynomial", r.polynomial},
         {"symmetry", r.symmetry},
         {"nondegenerate", r.nondegenerate},
         {"det", r.det ? json(r.det->to_string()) : json(nullptr)},
         {"anti_self_adjoint", r.anti_self_adjoint}};
  if (r.group == "so-even") {
    j["associative"] = r.associative;
    j["different_matches_printed_expansion"] = *r.different_literal;
    j["different_matches_corrected_expansion"] = *r.different_corrected;
  }
  j["form"] = form_to_json(r.form);
  return j;
}

}  // namespace chevalley
