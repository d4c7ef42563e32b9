#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "exterior.hpp"
#include "forms.hpp"

namespace chevalley {

inline RingPtr g2_ring(std::uint64_t characteristic = 0) {
  return ring_new({"e", "q"}, {2, 6}, characteristic, RingContext::g2);
}

// f_0 = x^6 - e x^4 + e^2/4 x^2 + q, low degree first.
inline std::vector<Poly> g2_f0(const RingPtr& r) {
  Poly e = Poly::var(r, "e"), q = Poly::var(r, "q");
  return {q, Poly(r), e * e * Scalar(1, 4), Poly(r), -e, Poly(r), Poly(r, 1)};
}

// B = A[x]/(x f_0), rank 7.
inline AlgebraPtr g2_cover(const RingPtr& r) {
  auto f = g2_f0(r);
  f.insert(f.begin(), Poly(r));
  return monogenic_algebra(r, f);
}
inline AlgebraPtr g2_cover(std::uint64_t characteristic = 0) { return g2_cover(g2_ring(characteristic)); }

// z = x^3 - (e/2) x.
inline Elem g2_z(const AlgebraPtr& b) {
  Elem x = Elem::x_of(b);
  return x.pow(3) - (Poly::var(b->ring, "e") * Scalar(1, 2)) * x;
}

// omega(g, h) = tr(f'^{-1} g tau(h)) = beta^*(g tau(h)).
inline FormTensor g2_omega(const AlgebraPtr& b) { return so_odd_form(b); }

inline Poly pair_with_gram(const PolyMat& g, const Elem& a, const Elem& b) {
  Poly acc(a.parent()->ring);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (!b[j].is_zero() && !g(i, j).is_zero()) acc += a[i] * g(i, j) * b[j];
  }
  return acc;
}

// --- the 3-form from the dual basis ----------------------------------------

// Names of the functionals dual to f_0, x, x^2, x^3, xz, x^2z, x^3z.
inline const std::vector<std::string>& g2_dual_labels() {
  static const std::vector<std::string> labels{"eps", "delta1", "delta2", "delta3", "eta1", "eta2", "eta3"};
  return labels;
}

struct DualBasis {
  AlgebraPtr parent;
  std::vector<Elem> vectors;                  // f_0, x, x^2, x^3, xz, x^2z, x^3z
  std::vector<std::vector<RatFunc>> values;  // values[k][i] = functional k on x^i
};

inline DualBasis g2_dual_basis(const AlgebraPtr& b) {
  DualBasis d{b, {}, {}};
  const RingPtr& r = b->ring;
  Elem x = Elem::x_of(b), z = g2_z(b);
  d.vectors = {eval_in(b, g2_f0(r)), x, x.pow(2), x.pow(3), x * z, x.pow(2) * z, x.pow(3) * z};
  PolyMat p = poly_mat(r, 7, 7);
  for (std::size_t j = 0; j < 7; ++j) p.set_column(j, d.vectors[j].coords());
  auto inv = solve_rational(p, PolyMat::identity(7, Poly(r, 1)));
  if (!inv) fail(ErrorCode::CertificationFailure, "dual basis vectors are dependent over Frac(A)");
  d.values.assign(7, std::vector<RatFunc>());
  for (std::size_t k = 0; k < 7; ++k)
    for (std::size_t i = 0; i < 7; ++i) d.values[k].push_back((*inv)(k, i).normalized());
  return d;
}

enum class TrZReading { full_cover, sextic_factor };

// tr_z(g, h) = tr(g tau(h) z / f'), read on B (full_cover) or on B' = A[x]/(f_0).
inline AltForm<RatFunc> g2_tr_z(const AlgebraPtr& b, TrZReading reading) {
  const RingPtr& r = b->ring;
  AltForm<RatFunc> t(7);
  Elem z = g2_z(b);
  AlgebraPtr bp = reading == TrZReading::sextic_factor ? monogenic_algebra(r, g2_f0(r)) : nullptr;
  Elem zp = bp ? Elem::x_of(bp).pow(3) - (Poly::var(r, "e") * Scalar(1, 2)) * Elem::x_of(bp) : Elem();
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t k = j + 1; k < 7; ++k) {
      Poly v;
      if (!bp) {
        v = (Elem::basis(b, j) * apply_tau(Elem::basis(b, k)) * z)[6];
      } else {
        Elem xj = Elem::x_of(bp).pow(static_cast<unsigned>(j));
        Elem xk = Elem::x_of(bp).pow(static_cast<unsigned>(k));
        v = (xj * apply_tau(xk) * zp)[5];
      }
      t.add(mask_of({j, k}), RatFunc(v));
    }
  return t;
}

// delta1^delta2^eta3 + delta1^eta2^delta3 + eta1^delta2^delta3 - q eta1^eta2^eta3 + eps^tr_z,
// expanded on the monomial basis and certified polynomial.
inline FormTensor assemble_rho(const AlgebraPtr& b, TrZReading reading = TrZReading::full_cover) {
  const RingPtr& r = b->ring;
  DualBasis d = g2_dual_basis(b);
  std::vector<AltForm<RatFunc>> f;
  for (const auto& v : d.values) f.push_back(AltForm<RatFunc>::one_form(v));
  const auto &eps = f[0], &d1 = f[1], &d2 = f[2], &d3 = f[3], &h1 = f[4], &h2 = f[5], &h3 = f[6];
  RatFunc q(Poly::var(r, "q"));
  AltForm<RatFunc> rho = wedge(wedge(d1, d2), h3) + wedge(wedge(d1, h2), d3) + wedge(wedge(h1, d2), d3) -
                         q * wedge(wedge(h1, h2), h3) + wedge(eps, g2_tr_z(b, reading));
  FormTensor out = FormTensor::trilinear(b);
  for (const auto& [mask, v] : rho.terms()) {
    auto p = v.is_polynomial();
    if (!p) fail(ErrorCode::CertificationFailure, "rho has a coefficient outside A: " + v.to_string());
    std::array<std::size_t, 3> idx{};
    std::size_t n = 0;
    for (std::size_t i = 0; i < 7; ++i)
      if (mask & (1u << i)) idx[n++] = i;
    out.set(idx[0], idx[1], idx[2], *p);
  }
  return out;
}

// --- the cross product -----------------------------------------------------

using G2Pin = std::array<Poly, 3>;  // tc(x^6, x^3), tc(x^6, x^4), tc(x^6, x^5)

inline G2Pin g2_default_pin(const RingPtr& r) {
  return {Poly(r, 1), Poly(r), Poly::var(r, "e") * Scalar(5, 2)};
}

// Parses "c63=1,c64=0,c65=5e/2"; omitted keys keep the default.
inline G2Pin parse_g2_pin(const RingPtr& r, const std::string& text) {
  G2Pin pin = g2_default_pin(r);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::ParseError, "pin entry '" + item + "' lacks '='");
    std::string key = item.substr(0, eq);
    Poly v = parse_poly(r, item.substr(eq + 1));
    if (key == "c63")
      pin[0] = v;
    else if (key == "c64")
      pin[1] = v;
    else if (key == "c65")
      pin[2] = v;
    else
      fail(ErrorCode::ParseError, "unknown pin key '" + key + "'");
  }
  return pin;
}

struct CrossProductTable {
  AlgebraPtr parent;
  PolyMat tc;                          // tc(i, j) = beta^*(c(x^i, x^j))
  std::vector<std::vector<Elem>> c;  // c[i][j] = c(x^i, x^j)

  Elem operator()(const Elem& u, const Elem& v) const {
    Elem acc = Elem::zero(parent);
    for (std::size_t i = 0; i < 7; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < 7; ++j)
        if (!v[j].is_zero()) acc = acc + (u[i] * v[j]) * c[i][j];
    }
    return acc;
  }
};

struct G2Solve {
  std::size_t unknowns = 21;
  std::size_t linear_rank = 0;
  std::size_t linear_dim = 0;  // solutions of the linear constraints over Frac(A)
  std::size_t pin_rank = 0;
  std::size_t jacobian_rank = 0;
  std::size_t family_dim = 0;
  bool tangent_certified = false;
  CrossProductTable table;
  FormTensor rho;  // omega(c(u, v), w)
};

namespace detail {

// Linear forms in the 21 unknowns u_{ij} = tc(x^i, x^j), i < j.
class TcForms {
 public:
  explicit TcForms(const RingPtr& r) : r_(r) {
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = i + 1; j < 7; ++j) {
        pos_[i][j] = static_cast<int>(pairs_.size());
        pairs_.push_back({i, j});
      }
  }
  using Lin = std::vector<Poly>;

  const std::vector<std::array<std::size_t, 2>>& pairs() const { return pairs_; }
  int pos(std::size_t i, std::size_t j) const { return pos_[i][j]; }

  // tc(x^i, x^j) for i, j <= 13, reducing with x^7 = e x^5 - e^2/4 x^3 - q x.
  const Lin& p(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Lin out(pairs_.size(), Poly(r_));
    Poly e = Poly::var(r_, "e"), q = Poly::var(r_, "q");
    if (i >= 7 || j >= 7) {
      bool first = i >= 7;
      auto at = [&](std::size_t s) -> const Lin& { return first ? p(i - s, j) : p(i, j - s); };
      Lin a = at(2), b = at(4), c = at(6);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = e * a[k] - e * e * Scalar(1, 4) * b[k] - q * c[k];
    } else if (i < j) {
      out[static_cast<std::size_t>(pos_[i][j])] = Poly(r_, 1);
    } else if (j < i) {
      out[static_cast<std::size_t>(pos_[j][i])] = Poly(r_, -1);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  // beta^*(x^l c(x^i, x^j)) = sum_r binom(l, r) tc(x^{i+r}, x^{j+l-r}).
  Lin t(std::size_t l, std::size_t i, std::size_t j) {
    Lin out(pairs_.size(), Poly(r_));
    long long binom = 1;
    for (std::size_t rr = 0; rr <= l; ++rr) {
      const Lin& v = p(i + rr, j + l - rr);
      for (std::size_t k = 0; k < out.size(); ++k)
        if (!v[k].is_zero()) out[k] += v[k] * Scalar(binom);
      binom = binom * static_cast<long long>(l - rr) / static_cast<long long>(rr + 1);
    }
    return out;
  }

  static Poly eval(const Lin& l, const std::vector<Poly>& u, const RingPtr& r) {
    Poly acc(r);
    for (std::size_t k = 0; k < l.size(); ++k)
      if (!l[k].is_zero() && !u[k].is_zero()) acc += l[k] * u[k];
    return acc;
  }

 private:
  RingPtr r_;
  std::vector<std::array<std::size_t, 2>> pairs_;
  int pos_[7][7]{};
  std::map<std::pair<std::size_t, std::size_t>, Lin> memo_;
};

// Dual basis of x^l under (g, h) -> beta^*(g h): w_l = (f / x^{l+1}) truncated.
inline std::vector<Elem> g2_beta_dual(const AlgebraPtr& b) {
  std::vector<Elem> w;
  Elem x = Elem::x_of(b);
  for (std::size_t l = 0; l < 7; ++l) {
    Elem acc = Elem::zero(b);
    for (std::size_t k = l + 1; k <= 7; ++k) acc = acc + b->modulus[k] * x.pow(static_cast<unsigned>(k - l - 1));
    w.push_back(acc);
  }
  return w;
}

inline std::vector<std::vector<Elem>> g2_reconstruct(const AlgebraPtr& b, TcForms& forms, const std::vector<Poly>& u) {
  auto w = g2_beta_dual(b);
  std::vector<std::vector<Elem>> c(7, std::vector<Elem>(7, Elem::zero(b)));
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      if (i == j) continue;
      Elem acc = Elem::zero(b);
      for (std::size_t l = 0; l < 7; ++l) {
        Poly v = TcForms::eval(forms.t(l, i, j), u, b->ring);
        if (!v.is_zero()) acc = acc + v * w[l];
      }
      c[i][j] = acc;
    }
  return c;
}

inline RatFunc dot(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b, const RingPtr& r) {
  RatFunc acc{Poly(r)};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  return acc.normalized();
}

inline std::vector<RatFunc> mat_vec(const std::vector<std::vector<RatFunc>>& m, const std::vector<RatFunc>& v,
                                    const RingPtr& r) {
  std::vector<RatFunc> out;
  for (const auto& row : m) out.push_back(dot(row, v, r));
  return out;
}

}  // namespace detail

// rho(u, v, w) = omega(c(u, v), w); fails unless the result is alternating.
inline FormTensor rho_from_cross_product(const CrossProductTable& t, const PolyMat& omega) {
  const AlgebraPtr& b = t.parent;
  auto val = [&](std::size_t i, std::size_t j, std::size_t k) {
    return pair_with_gram(omega, t.c[i][j], Elem::basis(b, k));
  };
  FormTensor rho = FormTensor::trilinear(b);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      for (std::size_t k = 0; k < 7; ++k) {
        Poly v = val(i, j, k);
        if (i < j && j < k) rho.set(i, j, k, v);
        if ((i == j || j == k || i == k) && !v.is_zero())
          fail(ErrorCode::CertificationFailure, "omega(c(u, v), w) is not alternating");
      }
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      for (std::size_t k = 0; k < 7; ++k)
        if (val(i, j, k) != rho(i, j, k)) fail(ErrorCode::CertificationFailure, "omega(c(u, v), w) is not alternating");
  return rho;
}

// D_z rho = rho(z., ., .) + rho(., z., .) + rho(., ., z.), tangent to rho_u = rho(u., u., u.) at u = 1.
inline FormTensor derivation_by(const FormTensor& rho, const Elem& g) {
  const AlgebraPtr& b = rho.parent();
  PolyMat m = mult_matrix(g);
  FormTensor out = FormTensor::trilinear(b);
  for (const auto& [i, j, k] : rho.triples()) {
    Poly acc(b->ring);
    for (std::size_t l = 0; l < 7; ++l) {
      if (!m(l, i).is_zero()) acc += m(l, i) * rho(l, j, k);
      if (!m(l, j).is_zero()) acc += m(l, j) * rho(i, l, k);
      if (!m(l, k).is_zero()) acc += m(l, k) * rho(i, j, l);
    }
    out.set(i, j, k, acc);
  }
  return out;
}

// Solves skew symmetry, orthogonality, compatibility and normalization for
// tc, with the three pinned values, then reconstructs c by downward induction.
inline G2Solve solve_cross_product(const AlgebraPtr& b, const G2Pin& pin) {
  const RingPtr& r = b->ring;
  G2Solve out;
  PolyMat omega = g2_omega(b).gram();
  detail::TcForms forms(r);
  const std::size_t nu = forms.pairs().size();

  // Linear constraints: polarized orthogonality and consistency of x^7.
  std::vector<detail::TcForms::Lin> rows;
  auto push = [&](detail::TcForms::Lin l) {
    for (const auto& v : l)
      if (!v.is_zero()) {
        rows.push_back(std::move(l));
        return;
      }
  };
  Poly e = Poly::var(r, "e"), q = Poly::var(r, "q");
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t k = 0; k < 7; ++k)
      for (std::size_t m = k; m < 7; ++m) {
        // omega(c(x^k, x^a), x^m) = (-1)^m beta^*(x^m c(x^k, x^a)).
        auto l1 = forms.t(m, k, a), l2 = forms.t(k, m, a);
        detail::TcForms::Lin l(nu, Poly(r));
        for (std::size_t s = 0; s < nu; ++s) l[s] = l1[s] * Scalar(m % 2 ? -1 : 1) + l2[s] * Scalar(k % 2 ? -1 : 1);
        push(std::move(l));
      }
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      auto t7 = forms.t(7, i, j), t5 = forms.t(5, i, j), t3 = forms.t(3, i, j), t1 = forms.t(1, i, j);
      detail::TcForms::Lin l(nu, Poly(r));
      for (std::size_t s = 0; s < nu; ++s) l[s] = t7[s] - e * t5[s] + e * e * Scalar(1, 4) * t3[s] + q * t1[s];
      push(std::move(l));
    }
  PolyMat lin = poly_mat(r, rows.size(), nu);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nu; ++j) lin(i, j) = rows[i][j];
  auto basis = nullspace(lin, r);
  out.linear_dim = basis.size();
  out.linear_rank = nu - basis.size();
  const std::size_t ns = basis.size();
  if (ns == 0) fail(ErrorCode::SolutionSpaceDimensionMismatch, "linear constraints admit only zero");

  // Each tc entry as a linear form in the coordinates s on the solution space.
  auto in_s = [&](const detail::TcForms::Lin& l) {
    std::vector<RatFunc> v;
    for (std::size_t m = 0; m < ns; ++m) v.push_back(RatFunc(detail::TcForms::eval(l, basis[m], r)));
    return v;
  };

  // Pins.
  RatMat pa(3, ns);
  std::vector<RatFunc> pb;
  for (std::size_t k = 0; k < 3; ++k) {
    auto row = in_s(forms.p(6, 3 + k));
    for (std::size_t m = 0; m < ns; ++m) pa(k, m) = row[m];
    pb.push_back(RatFunc(pin[k]));
  }
  auto pinned = solve_affine(pa, pb, r);
  if (!pinned) fail(ErrorCode::InconsistentPin, "pinned values are incompatible with the linear constraints");
  out.pin_rank = pinned->rank;

  // Normalization: omega(c(u, v), c(u, v)) = omega(u, u) omega(v, v) - omega(u, v)^2.
  std::vector<std::vector<Elem>> cm;  // cm[m] flattened over pairs
  for (std::size_t m = 0; m < ns; ++m) {
    auto c = detail::g2_reconstruct(b, forms, basis[m]);
    std::vector<Elem> flat;
    for (const auto& pr : forms.pairs()) flat.push_back(c[pr[0]][pr[1]]);
    cm.push_back(std::move(flat));
  }
  struct Quadric {
    std::vector<std::vector<RatFunc>> q;
    RatFunc d;
  };
  std::vector<Quadric> quads;
  for (std::size_t pi = 0; pi < nu; ++pi) {
    auto [i, j] = forms.pairs()[pi];
    Quadric qd;
    qd.q.assign(ns, std::vector<RatFunc>(ns, RatFunc(Poly(r))));
    for (std::size_t m = 0; m < ns; ++m)
      for (std::size_t m2 = m; m2 < ns; ++m2) {
        qd.q[m][m2] = RatFunc(pair_with_gram(omega, cm[m][pi], cm[m2][pi]));
        qd.q[m2][m] = qd.q[m][m2];
      }
    qd.d = RatFunc(omega(i, i) * omega(j, j) - omega(i, j) * omega(i, j));
    quads.push_back(std::move(qd));
  }
  auto quad_value = [&](const Quadric& qd, const std::vector<RatFunc>& s) {
    return detail::dot(s, detail::mat_vec(qd.q, s, r), r) - qd.d;
  };

  const auto& sp = pinned->particular;
  const auto& ker = pinned->kernel;
  const std::size_t nt = ker.size();
  std::vector<RatFunc> s = sp;
  if (nt > 0) {
    // Substitute s = sp + sum y_t ker_t and linearize over the monomials y_a y_b, y_a.
    std::vector<std::array<std::size_t, 2>> mons;
    for (std::size_t a = 0; a < nt; ++a)
      for (std::size_t c = a; c < nt; ++c) mons.push_back({a, c});
    std::size_t nm = mons.size() + nt;
    RatMat la(quads.size(), nm);
    std::vector<RatFunc> lb;
    for (std::size_t qi = 0; qi < quads.size(); ++qi) {
      const auto& qd = quads[qi];
      std::vector<std::vector<RatFunc>> qk;
      for (std::size_t a = 0; a < nt; ++a) qk.push_back(detail::mat_vec(qd.q, ker[a], r));
      auto qsp = detail::mat_vec(qd.q, sp, r);
      for (std::size_t mi = 0; mi < mons.size(); ++mi) {
        auto [a, c] = mons[mi];
        RatFunc v = detail::dot(ker[a], qk[c], r);
        la(qi, mi) = a == c ? v : v + v;
      }
      for (std::size_t a = 0; a < nt; ++a) {
        RatFunc v = detail::dot(sp, qk[a], r);
        la(qi, mons.size() + a) = v + v;
      }
      lb.push_back((qd.d - detail::dot(sp, qsp, r)).normalized());
    }
    auto lin_sol = solve_affine(la, lb, r);
    if (!lin_sol) fail(ErrorCode::InconsistentPin, "normalization has no solution at this pin");
    if (!lin_sol->kernel.empty())
      fail(ErrorCode::SolutionSpaceDimensionMismatch, "pin leaves the normalization underdetermined");
    std::vector<RatFunc> y(lin_sol->particular.begin() + static_cast<long>(mons.size()), lin_sol->particular.end());
    for (std::size_t mi = 0; mi < mons.size(); ++mi)
      if (lin_sol->particular[mi] != y[mons[mi][0]] * y[mons[mi][1]])
        fail(ErrorCode::InconsistentPin, "linearized normalization is not a point of the quadric");
    for (std::size_t a = 0; a < nt; ++a)
      for (std::size_t m = 0; m < ns; ++m) s[m] = (s[m] + y[a] * ker[a][m]).normalized();
  }
  for (const auto& qd : quads)
    if (!quad_value(qd, s).is_zero()) fail(ErrorCode::InconsistentPin, "normalization fails at the pinned point");

  // tc must lie in A.
  std::vector<Poly> u(nu, Poly(r));
  for (std::size_t k = 0; k < nu; ++k) {
    RatFunc acc{Poly(r)};
    for (std::size_t m = 0; m < ns; ++m)
      if (!basis[m][k].is_zero()) acc += RatFunc(basis[m][k]) * s[m];
    auto p = acc.is_polynomial();
    if (!p) fail(ErrorCode::CertificationFailure, "tc has an entry outside A");
    u[k] = *p;
  }

  // Local dimension of the solution set at s: kernel of the Jacobian of the normalization.
  RatMat jac(quads.size(), ns);
  for (std::size_t qi = 0; qi < quads.size(); ++qi) {
    auto g = detail::mat_vec(quads[qi].q, s, r);
    for (std::size_t m = 0; m < ns; ++m) jac(qi, m) = g[m] + g[m];
  }
  out.jacobian_rank = solve_affine(jac, std::vector<RatFunc>(quads.size(), RatFunc(Poly(r))), r)->rank;
  out.family_dim = ns - out.jacobian_rank;

  out.table.parent = b;
  out.table.tc = poly_mat(r, 7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) out.table.tc(i, j) = detail::TcForms::eval(forms.p(i, j), u, r);
  out.table.c = detail::g2_reconstruct(b, forms, u);
  out.rho = rho_from_cross_product(out.table, omega);

  // The torus direction u = exp(t z) gives a tangent vector to the family.
  FormTensor drho = derivation_by(out.rho, g2_z(b));
  RatMat na(nu, ns);
  std::vector<RatFunc> nb;
  for (std::size_t k = 0; k < nu; ++k) {
    auto [i, j] = forms.pairs()[k];
    for (std::size_t m = 0; m < ns; ++m) na(k, m) = RatFunc(basis[m][k]);
    nb.push_back(RatFunc(drho(0, i, j)));
  }
  auto tangent = solve_affine(na, nb, r);
  if (tangent && !drho.triple_values().empty()) {
    const auto& ds = tangent->particular;
    bool nonzero = false, in_kernel = true;
    for (const auto& v : ds) nonzero = nonzero || !v.is_zero();
    for (std::size_t qi = 0; qi < quads.size(); ++qi) {
      RatFunc acc{Poly(r)};
      for (std::size_t m = 0; m < ns; ++m) acc += jac(qi, m) * ds[m];
      if (!acc.normalized().is_zero()) in_kernel = false;
    }
    out.tangent_certified = nonzero && in_kernel;
  }
  if (out.family_dim != 1 || !out.tangent_certified)
    fail(ErrorCode::SolutionSpaceDimensionMismatch,
         "solution family has local dimension " + std::to_string(out.family_dim) + ", expected 1");
  return out;
}

inline G2Solve solve_cross_product(const AlgebraPtr& b) { return solve_cross_product(b, g2_default_pin(b->ring)); }

struct CrossProductChecks {
  bool skew = true;
  bool orthogonal = true;
  bool normalized = true;
  bool compatible = true;
};

inline CrossProductChecks check_cross_product(const CrossProductTable& t, const PolyMat& omega) {
  CrossProductChecks ch;
  const AlgebraPtr& b = t.parent;
  Elem x = Elem::x_of(b);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      Elem ui = Elem::basis(b, i), vj = Elem::basis(b, j);
      const Elem& c = t.c[i][j];
      if (c != -t.c[j][i]) ch.skew = false;
      if (!pair_with_gram(omega, c, ui).is_zero() || !pair_with_gram(omega, c, vj).is_zero()) ch.orthogonal = false;
      if (pair_with_gram(omega, c, c) != omega(i, i) * omega(j, j) - omega(i, j) * omega(i, j)) ch.normalized = false;
      if (t(x * ui, vj) + t(ui, x * vj) != x * c) ch.compatible = false;
    }
  return ch;
}

// --- the two propositions --------------------------------------------------

// nu(v_1, v_2) = <iota, mu_{v_1} ^ mu_{v_2} ^ mu> with mu = rho, mu_v = iota_v rho and
// iota = 1 ^ x ^ ... ^ x^6, normalized as the sum over all of S_7 (the shuffle sum times 2!2!3!).
inline PolyMat nu_from_rho(const FormTensor& rho) {
  const RingPtr& r = rho.parent()->ring;
  AltForm<Poly> mu = alt_from_tensor(rho);
  std::vector<AltForm<Poly>> mus;
  for (std::size_t i = 0; i < 7; ++i) mus.push_back(mu.contract(i));
  PolyMat nu = poly_mat(r, 7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i; j < 7; ++j) {
      nu(i, j) = wedge(wedge(mus[i], mus[j]), mu).coeff(0x7F, Poly(r)) * Scalar(24);
      nu(j, i) = nu(i, j);
    }
  return nu;
}

struct G2Report {
  bool nu_equals_minus_144_omega = false;
  bool nu_nondegenerate = false;
  bool compatibility = false;  // all 343 basis triples
  bool rho_agrees = false;     // dual-basis assembly vs omega(c(., .), .)
  bool degrees_consistent = false;
  bool f0_relation = false;
  bool iota1_literal = false;
  AltForm<Poly> iota1;
  CrossProductChecks cross;
};

// iota_1 rho as printed: e3^e6 + e4^e5 - (3e/2) e5^e6.
inline AltForm<Poly> iota1_printed(const RingPtr& r) {
  AltForm<Poly> a(7);
  a.add(mask_of({3, 6}), Poly(r, 1));
  a.add(mask_of({4, 5}), Poly(r, 1));
  a.add(mask_of({5, 6}), Poly::var(r, "e") * Scalar(-3, 2));
  return a;
}

inline bool rho_degrees_consistent(const FormTensor& rho) {
  for (std::size_t t = 0; t < rho.triples().size(); ++t) {
    const Poly& v = rho.triple_values()[t];
    if (v.is_zero()) continue;
    auto [i, j, k] = rho.triples()[t];
    if (!v.is_homogeneous() || v.wdeg() != static_cast<int>(i + j + k) - 9) return false;
  }
  return true;
}

inline G2Report verify_g2_propositions(const FormTensor& rho, const G2Solve& solve) {
  G2Report rep;
  const AlgebraPtr& b = rho.parent();
  const RingPtr& r = b->ring;
  PolyMat omega = g2_omega(b).gram();
  PolyMat nu = nu_from_rho(rho);
  PolyMat want = omega;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) want(i, j) = omega(i, j) * Scalar(-144);
  rep.nu_equals_minus_144_omega = nu == want;
  rep.nu_nondegenerate = gram_is_symmetric(nu) && unit_determinant(nu).has_value();
  rep.compatibility = verify_anti_self_adjoint(rho, mult_matrix(Elem::x_of(b)));
  rep.rho_agrees = rho == solve.rho;
  rep.degrees_consistent = rho_degrees_consistent(rho);
  // x f_0 = 0, and eps ^ tr_z vanishes on basis triples of {f_0, x, ..., x^3 z} avoiding f_0.
  DualBasis d = g2_dual_basis(b);
  bool f0 = (Elem::x_of(b) * d.vectors[0]).is_zero();
  AltForm<RatFunc> et = wedge(AltForm<RatFunc>::one_form(d.values[0]), g2_tr_z(b, TrZReading::full_cover));
  for (std::size_t i = 1; i < 7 && f0; ++i)
    for (std::size_t j = i + 1; j < 7 && f0; ++j)
      for (std::size_t k = j + 1; k < 7 && f0; ++k) {
        RatFunc acc{Poly(r)};
        for (const auto& [mask, v] : et.terms()) {
          std::array<std::size_t, 3> idx{};
          std::size_t n = 0;
          for (std::size_t s = 0; s < 7; ++s)
            if (mask & (1u << s)) idx[n++] = s;
          // Determinant of the 3x3 minor of the vectors on the support.
          const Elem* vs[3] = {&d.vectors[i], &d.vectors[j], &d.vectors[k]};
          PolyMat minor = poly_mat(r, 3, 3);
          for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t c = 0; c < 3; ++c) minor(a, c) = (*vs[a])[idx[c]];
          acc += v * RatFunc(det_cofactor(minor));
        }
        if (!acc.normalized().is_zero()) f0 = false;
      }
  rep.f0_relation = f0;
  rep.iota1 = alt_from_tensor(rho).contract(0);
  rep.iota1_literal = rep.iota1 == iota1_printed(r);
  rep.cross = check_cross_product(solve.table, omega);
  return rep;
}

inline json g2_report_to_json(const G2Solve& s, const G2Report& rep) {
  json tc = poly_matrix_to_json(s.table.tc);
  json c = json::array();
  for (std::size_t i = 0; i < 7; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 7; ++j) row.push_back(poly_vector_to_json(s.table.c[i][j].coords()));
    c.push_back(row);
  }
  json iota = json::array();
  for (const auto& [mask, v] : rep.iota1.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < 7; ++k)
      if (mask & (1u << k)) idx.push_back(k);
    iota.push_back(json{{"indices", idx}, {"value", v.to_string()}});
  }
  return json{{"solve",
               {{"unknowns", s.unknowns},
                {"linear_dim", s.linear_dim},
                {"pin_rank", s.pin_rank},
                {"jacobian_rank", s.jacobian_rank},
                {"family_dim", s.family_dim},
                {"tangent_certified", s.tangent_certified}}},
              {"tc", tc},
              {"c", c},
              {"rho", form_to_json(s.rho)},
              {"report",
               {{"skew", rep.cross.skew},
                {"orthogonal", rep.cross.orthogonal},
                {"normalized", rep.cross.normalized},
                {"compatible_cross_product", rep.cross.compatible},
                {"nu_equals_minus_144_omega", rep.nu_equals_minus_144_omega},
                {"nu_nondegenerate", rep.nu_nondegenerate},
                {"compatibility_343", rep.compatibility},
                {"rho_constructions_agree", rep.rho_agrees},
                {"degrees_consistent", rep.degrees_consistent},
                {"f0_relation", rep.f0_relation},
                {"iota1_rho", iota},
                {"iota1_matches_printed", rep.iota1_literal}}}};
}

}  // namespace chevalley
