#pragma once

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "companion.hpp"
#include "lattice.hpp"
#include "special.hpp"

namespace chevalley {

// Outcome of one randomized invariant.
struct PropertyResult {
  std::string module;
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::size_t abstentions = 0;  // samples where a predicate declined for lack of precision
  std::string counterexample;   // first failing sample, rendered
  bool passes() const { return failures == 0; }
};

struct PropertyOptions {
  std::uint64_t seed = 20240601;
  std::size_t samples = 200;
  std::string module;  // empty: every module
};

namespace props {

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// Nonzero numerators, denominators in {1, ..., 4}: invertible modulo 7.
inline Scalar random_rational(Rng& rng) {
  long long n = uniform(rng, -9, 9);
  return Scalar(n == 0 ? 1 : n, uniform(rng, 1, 4));
}

inline Poly random_poly(Rng& rng, const RingPtr& r, std::size_t max_terms = 4, unsigned max_exp = 2) {
  Poly f(r);
  std::size_t terms = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<unsigned> e(r->nvars());
    for (auto& x : e) x = static_cast<unsigned>(uniform(rng, 0, max_exp));
    f += Poly::monomial(r, e, r->characteristic ? random_rational(rng).lift(r->characteristic) : random_rational(rng));
  }
  return f;
}

// A random polynomial all of whose monomials have weighted degree w.
inline Poly random_homogeneous(Rng& rng, const RingPtr& r, int w) {
  std::vector<std::vector<unsigned>> monos;
  std::vector<unsigned> e(r->nvars(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == r->nvars()) {
      if (left == 0) monos.push_back(e);
      return;
    }
    for (int k = 0; k * r->weights[i] <= left; ++k) {
      e[i] = static_cast<unsigned>(k);
      rec(i + 1, left - k * r->weights[i]);
    }
    e[i] = 0;
  };
  rec(0, w);
  Poly f(r);
  for (const auto& m : monos)
    if (uniform(rng, 0, 2) > 0) f += Poly::monomial(r, m, random_rational(rng));
  return f;
}

inline Elem random_elem(Rng& rng, const AlgebraPtr& a, std::size_t max_terms = 2) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < a->rank; ++i) c.push_back(random_poly(rng, a->ring, max_terms, 1));
  return Elem(a, std::move(c));
}

inline std::string render(const Elem& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.parent()->rank; ++i) out += (i ? ", " : "") + b[i].to_string();
  return out + ")";
}

inline LaurentScalar random_series(Rng& rng, std::uint64_t p, int maxdeg) {
  LaurentScalar s(p);
  for (int k = 0; k <= maxdeg; ++k) s.add_term(k, LaurentScalar::scalar(static_cast<long long>(rng() % p), p));
  return s;
}

// Generators of the same lattice: the basis times a random unimodular matrix over O, plus a redundant column.
inline std::vector<LaurentVec> re_present(const LaurentLattice& l, Rng& rng) {
  std::uint64_t p = l.characteristic();
  std::size_t d = l.dim();
  std::vector<LaurentVec> g = l.basis();
  for (int step = 0; step < 6; ++step) {
    std::size_t i = rng() % d, j = rng() % d;
    if (i == j) {
      LaurentScalar u = random_series(rng, p, 2).from(1);
      u.add_term(0, LaurentScalar::scalar(static_cast<long long>(1 + rng() % (p - 1)), p));
      for (auto& e : g[i]) e = u * e;
    } else {
      LaurentScalar c = random_series(rng, p, 2);
      for (std::size_t r = 0; r < d; ++r) g[i][r] += c * g[j][r];
    }
  }
  std::shuffle(g.begin(), g.end(), rng);
  LaurentVec extra(d, LaurentScalar(p));
  for (const auto& col : g) {
    LaurentScalar c = random_series(rng, p, 1);
    for (std::size_t r = 0; r < d; ++r) extra[r] += c * col[r];
  }
  g.push_back(extra);
  return g;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

// Runs `sample` the requested number of times. A sample returns an empty string on
// success, a rendered counterexample on failure; InsufficientPrecision counts as abstention.
inline PropertyResult run(const std::string& module, const std::string& name, std::uint64_t seed, std::size_t samples,
                          const std::function<std::string(Rng&)>& sample) {
  PropertyResult r{module, name, samples, 0, 0, {}};
  Rng rng(seed ^ fnv1a(module + "/" + name));
  for (std::size_t s = 0; s < samples; ++s) {
    std::string bad;
    try {
      bad = sample(rng);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InsufficientPrecision) {
        ++r.abstentions;
        continue;
      }
      bad = std::string("raised ") + e.what();
    }
    if (!bad.empty()) {
      if (r.failures++ == 0) r.counterexample = "sample " + std::to_string(s) + ": " + bad;
    }
  }
  return r;
}

inline std::vector<PropertyResult> polyring_properties(const PropertyOptions& o) {
  std::vector<PropertyResult> out;
  RingPtr r = ring_new({"a", "b", "c"}, {1, 2, 3});
  RingPtr r7 = ring_new({"a", "b", "c"}, {1, 2, 3}, 7);
  std::vector<Poly> to7{Poly::var(r7, 0), Poly::var(r7, 1), Poly::var(r7, 2)};
  out.push_back(run("polyring", "ring_axioms", o.seed, o.samples, [&](Rng& g) -> std::string {
    Poly f = random_poly(g, r), h = random_poly(g, r), k = random_poly(g, r);
    if ((f * h) * k != f * (h * k)) return "associativity at f = " + f.to_string();
    if (f * (h + k) != f * h + f * k) return "distributivity at f = " + f.to_string();
    if (f * h != h * f || f + h != h + f) return "commutativity at f = " + f.to_string();
    if (!(f - f).is_zero() || f * Poly(r, 1) != f) return "identities at f = " + f.to_string();
    return {};
  }));
  out.push_back(run("polyring", "ratfunc_normal_form", o.seed, o.samples, [&](Rng& g) -> std::string {
    Poly n = random_poly(g, r, 3), d = random_poly(g, r, 3), c = random_poly(g, r, 2);
    if (d.is_zero()) d = Poly(r, 3);
    if (c.is_zero()) c = Poly::var(r, 0) + 1;
    RatFunc q = RatFunc(n, d).normalized(), qq = q.normalized(), scaled = RatFunc(n * c, d * c).normalized();
    if (q.num() != qq.num() || q.den() != qq.den()) return "not idempotent at " + q.to_string();
    if (q.num() != scaled.num() || q.den() != scaled.den()) return "common factor changes " + q.to_string();
    return {};
  }));
  out.push_back(run("polyring", "weighted_degree_additive", o.seed, o.samples, [&](Rng& g) -> std::string {
    int w1 = static_cast<int>(uniform(g, 0, 6)), w2 = static_cast<int>(uniform(g, 0, 6));
    Poly f = random_homogeneous(g, r, w1), h = random_homogeneous(g, r, w2);
    if (f.is_zero() || h.is_zero()) return {};
    Poly p = f * h;
    if (!f.is_homogeneous() || !p.is_homogeneous() || p.wdeg() != w1 + w2)
      return "deg(" + f.to_string() + " * " + h.to_string() + ") != " + std::to_string(w1 + w2);
    return {};
  }));
  out.push_back(run("polyring", "reduction_mod_p_is_ring_map", o.seed, o.samples, [&](Rng& g) -> std::string {
    Poly f = random_poly(g, r), h = random_poly(g, r);
    auto red = [&](const Poly& x) { return x.substitute(r7, to7); };
    if (red(f + h) != red(f) + red(h)) return "sum at f = " + f.to_string();
    if (red(f * h) != red(f) * red(h)) return "product at f = " + f.to_string();
    return {};
  }));
  return out;
}

inline std::vector<PropertyResult> algebra_properties(const PropertyOptions& o) {
  std::vector<PropertyResult> out;
  std::vector<AlgebraPtr> gl{gl_cover(2), gl_cover(3), gl_cover(4)};
  AlgebraPtr sp = sp_cover(2);
  SubcoverEmbedding sub = sp_subcover(sp);
  out.push_back(run("algebra", "commutative_associative", o.seed, o.samples, [&](Rng& g) -> std::string {
    const AlgebraPtr& a = gl[g() % gl.size()];
    Elem b = random_elem(g, a), c = random_elem(g, a), d = random_elem(g, a);
    if (b * c != c * b) return "b c != c b at b = " + render(b);
    if ((b * c) * d != b * (c * d)) return "(b c) d != b (c d) at b = " + render(b);
    return {};
  }));
  out.push_back(run("algebra", "cayley_hamilton", o.seed, o.samples, [&](Rng& g) -> std::string {
    const AlgebraPtr& a = gl[g() % 2];
    Elem b = random_elem(g, a);
    std::vector<Poly> chi = char_poly(b);
    Elem acc = Elem::zero(a), pw = Elem::scalar(a, Poly(a->ring, 1));
    for (const auto& c : chi) {
      acc = acc + Elem::scalar(a, c) * pw;
      pw = pw * b;
    }
    return acc.is_zero() ? std::string() : "chi_b(b) != 0 at b = " + render(b);
  }));
  out.push_back(run("algebra", "tau_involutive_algebra_map", o.seed, o.samples, [&](Rng& g) -> std::string {
    Elem b = random_elem(g, sp), c = random_elem(g, sp);
    if (apply_tau(b * c) != apply_tau(b) * apply_tau(c)) return "tau(bc) != tau(b) tau(c) at b = " + render(b);
    if (apply_tau(apply_tau(b)) != b) return "tau^2 != id at b = " + render(b);
    if (apply_tau(b + c) != apply_tau(b) + apply_tau(c)) return "tau not additive at b = " + render(b);
    return {};
  }));
  out.push_back(run("algebra", "trace_transitivity", o.seed, o.samples, [&](Rng& g) -> std::string {
    Elem b = random_elem(g, sp);
    return trace(b) == trace(relative_trace(sub, b)) ? std::string() : "tr_B != tr_A' tr_B/A' at b = " + render(b);
  }));
  return out;
}

inline std::vector<PropertyResult> companion_properties(const PropertyOptions& o) {
  std::vector<PropertyResult> out;
  std::vector<AlgebraPtr> gl;
  for (std::size_t n = 2; n <= 5; ++n) gl.push_back(gl_cover(n));
  auto beta = [](const Elem& b) { return beta_generator(b.parent())(b); };
  out.push_back(run("companion", "mu_equals_fprime_beta", o.seed, o.samples, [&](Rng& g) -> std::string {
    const AlgebraPtr& a = gl[g() % gl.size()];
    Elem b1 = random_elem(g, a), b2 = random_elem(g, a);
    return trace(b1 * b2) == beta(f_prime(a) * b1 * b2) ? std::string() : "tr(b1 b2) != beta(f' b1 b2) at b1 = " + render(b1);
  }));
  out.push_back(run("companion", "beta_star_x_self_adjoint", o.seed, o.samples, [&](Rng& g) -> std::string {
    const AlgebraPtr& a = gl[g() % gl.size()];
    Elem x = Elem::x_of(a), b1 = random_elem(g, a), b2 = random_elem(g, a);
    return beta(x * b1 * b2) == beta(b1 * (x * b2)) ? std::string() : "at b1 = " + render(b1);
  }));
  // The identity beta(x v1 v2) + beta(v1 x v2) = 0 as literally stated; it forces beta(x v1 v2) = 0.
  out.push_back(run("companion", "beta_star_x_anti_self_adjoint", o.seed, o.samples, [&](Rng& g) -> std::string {
    const AlgebraPtr& a = gl[g() % gl.size()];
    Elem x = Elem::x_of(a), b1 = random_elem(g, a), b2 = random_elem(g, a);
    Poly s = beta(x * b1 * b2) + beta(b1 * (x * b2));
    return s.is_zero() ? std::string()
                       : "beta(x v1 v2) + beta(v1 x v2) = " + s.to_string() + " at v1 = " + render(b1) + ", v2 = " + render(b2);
  }));
  out.push_back(run("companion", "sl_companion_trace_free", o.seed, o.samples, [&](Rng& g) -> std::string {
    const AlgebraPtr& a = gl[g() % gl.size()];
    std::vector<Poly> images;
    for (std::size_t i = 0; i < a->ring->nvars(); ++i) images.push_back(i == 0 ? Poly(a->ring) : Poly::var(a->ring, i));
    Poly t = mat_trace(companion_matrix(a)).substitute(a->ring, images);
    return t.is_zero() ? std::string() : "trace at a1 = 0 is " + t.to_string();
  }));
  return out;
}

struct NamedForm {
  std::string label;
  FormTensor form;
};

inline std::vector<NamedForm> classical_forms() {
  return {{"sp n=1", symplectic_form(1)},  {"sp n=2", symplectic_form(2)},     {"so-odd n=1", so_odd_form(1)},
          {"so-odd n=2", so_odd_form(2)}, {"so-even n=2", so_even_form(2)}};
}

inline std::vector<PropertyResult> forms_properties(const PropertyOptions& o) {
  std::vector<PropertyResult> out;
  std::vector<NamedForm> forms = classical_forms();
  out.push_back(run("forms", "x_anti_self_adjoint", o.seed, o.samples, [&](Rng& g) -> std::string {
    const NamedForm& f = forms[g() % forms.size()];
    const AlgebraPtr& a = f.form.parent();
    Elem x = Elem::x_of(a), b1 = random_elem(g, a), b2 = random_elem(g, a);
    return (f.form.eval(x * b1, b2) + f.form.eval(b1, x * b2)).is_zero() ? std::string() : f.label + " at b1 = " + render(b1);
  }));
  out.push_back(run("forms", "symmetry_type", o.seed, o.samples, [&](Rng& g) -> std::string {
    const NamedForm& f = forms[g() % forms.size()];
    const AlgebraPtr& a = f.form.parent();
    Elem b1 = random_elem(g, a), b2 = random_elem(g, a);
    Poly u = f.form.eval(b1, b2), v = f.form.eval(b2, b1);
    bool ok = f.form.symmetry() == Symmetry::symmetric ? u == v : (u == -v && f.form.eval(b1, b1).is_zero());
    return ok ? std::string() : f.label + " at b1 = " + render(b1);
  }));
  return out;
}

inline std::vector<PropertyResult> special_properties(const PropertyOptions& o) {
  std::vector<PropertyResult> out;
  AlgebraPtr b = sp_cover(2);
  SubcoverEmbedding s = sp_subcover(b);
  SpecialForm w = special_form(s);
  out.push_back(run("special", "component_image_multiplicative", o.seed, o.samples, [&](Rng& g) -> std::string {
    Elem b1 = random_elem(g, b, 1), b2 = random_elem(g, b, 1), c1 = random_elem(g, b, 1), c2 = random_elem(g, b, 1);
    Elem lhs = special_component_image(s, {b1, b2}) * special_component_image(s, {c1, c2});
    Elem rhs = special_component_image(s, {b1 * c1, b2 * c2}) + special_component_image(s, {b1 * c2, b2 * c1});
    return lhs == rhs ? std::string() : "at b1 = " + render(b1);
  }));
  out.push_back(run("special", "special_form_annihilates_x", o.seed, o.samples, [&](Rng& g) -> std::string {
    Elem x = Elem::x_of(b), b1 = random_elem(g, b), b2 = random_elem(g, b);
    return (w.form.eval(x * b1, b2) + w.form.eval(b1, x * b2)).is_zero() ? std::string() : "at b1 = " + render(b1);
  }));
  return out;
}

inline std::vector<PropertyResult> g2_properties(const PropertyOptions& o) {
  std::vector<PropertyResult> out;
  AlgebraPtr b = g2_cover();
  FormTensor rho = assemble_rho(b);
  out.push_back(run("g2", "rho_compatibility", o.seed, o.samples, [&](Rng& g) -> std::string {
    Elem x = Elem::x_of(b), u = random_elem(g, b, 1), v = random_elem(g, b, 1), w = random_elem(g, b, 1);
    Poly s = rho.eval(x * u, v, w) + rho.eval(u, x * v, w) + rho.eval(u, v, x * w);
    return s.is_zero() ? std::string() : "at u = " + render(u);
  }));
  out.push_back(run("g2", "rho_alternating", o.seed, o.samples, [&](Rng& g) -> std::string {
    Elem u = random_elem(g, b, 1), v = random_elem(g, b, 1);
    return rho.eval(u, u, v).is_zero() && rho.eval(u, v, v).is_zero() ? std::string() : "at u = " + render(u);
  }));
  return out;
}

inline std::vector<PropertyResult> lattice_properties(const PropertyOptions& o) {
  std::vector<PropertyResult> out;
  constexpr std::uint64_t p = 5;
  SpecAlgebraAt gl = spec_algebra_at("gl", 2, {"0", "-w^2"}, p);
  SpecAlgebraAt so = spec_algebra_at("so-odd", 1, {"-w^2"}, p);
  SpringerOptions gl_opt = default_options("gl"), so_loose = default_options("so-odd");
  so_loose.check_form = false;
  std::vector<std::pair<const SpecAlgebraAt*, LaurentLattice>> pool;
  for (const auto& l : enumerate_lattices(gl, 1, SpringerOptions{false, std::nullopt}).lattices) pool.push_back({&gl, l});
  for (const auto& l : enumerate_lattices(so, 1, so_loose).lattices) pool.push_back({&so, l});
  out.push_back(run("lattice", "presentation_invariance", o.seed, o.samples, [&](Rng& g) -> std::string {
    const auto& [s, l] = pool[g() % pool.size()];
    LaurentLattice again = LaurentLattice::from_generators(re_present(l, g), p);
    if (!(again == l)) return "canonical form differs for " + l.key();
    if (is_springer_point(again, *s).accepted != is_springer_point(l, *s).accepted) return "verdict differs for " + l.key();
    return {};
  }));
  out.push_back(run("lattice", "scaling_shifts_degree", o.seed, o.samples, [&](Rng& g) -> std::string {
    const auto& [s, l] = pool[g() % pool.size()];
    const SpringerOptions& opt = s == &gl ? gl_opt : so_loose;
    int k = static_cast<int>(uniform(g, -2, 2));
    LaurentLattice m = l.scaled(k);
    bool stable = is_springer_point(l, *s, opt).stable;
    if (is_springer_point(m, *s, opt).stable != stable) return "stability changes under w^" + std::to_string(k);
    if (m.relative_degree() != l.relative_degree() - static_cast<int>(l.dim()) * k) return "degree shift wrong for " + l.key();
    return {};
  }));
  std::vector<std::string> coeffs{"w^3", "-w^2 + w^4"};
  SpecAlgebraAt exact = spec_algebra_at("gl", 2, coeffs, p);
  std::vector<LaurentLattice> lat = enumerate_lattices(exact, 1, SpringerOptions{false, std::nullopt}).lattices;
  out.push_back(run("lattice", "precision_soundness", o.seed, o.samples, [&](Rng& g) -> std::string {
    int prec = static_cast<int>(uniform(g, 1, 8));
    const LaurentLattice& l = lat[g() % lat.size()];
    SpecAlgebraAt s = spec_algebra_at("gl", 2, coeffs, p, prec);
    bool truth = is_springer_point(l, exact, gl_opt).accepted;
    return is_springer_point(l, s, gl_opt).accepted == truth ? std::string()
                                                             : "wrong verdict at precision " + std::to_string(prec) + " for " + l.key();
  }));
  return out;
}

}  // namespace props

inline const std::vector<std::string>& property_modules() {
  static const std::vector<std::string> m{"polyring", "algebra", "companion", "forms", "special", "g2", "lattice"};
  return m;
}

inline std::vector<PropertyResult> run_properties(const PropertyOptions& o = {}) {
  using Fn = std::vector<PropertyResult> (*)(const PropertyOptions&);
  const std::vector<std::pair<std::string, Fn>> table{
      {"polyring", props::polyring_properties}, {"algebra", props::algebra_properties},
      {"companion", props::companion_properties}, {"forms", props::forms_properties},
      {"special", props::special_properties},   {"g2", props::g2_properties},
      {"lattice", props::lattice_properties}};
  bool known = o.module.empty();
  std::vector<PropertyResult> out;
  for (const auto& [name, fn] : table) {
    if (!o.module.empty() && o.module != name) continue;
    known = true;
    for (auto& r : fn(o)) out.push_back(std::move(r));
  }
  if (!known) fail(ErrorCode::InvalidArgument, "unknown property module '" + o.module + "'");
  return out;
}

inline json property_to_json(const PropertyResult& r) {
  return json{{"module", r.module},       {"name", r.name},           {"samples", r.samples},
              {"failures", r.failures},   {"abstentions", r.abstentions}, {"pass", r.passes()},
              {"counterexample", r.counterexample.empty() ? json(nullptr) : json(r.counterexample)}};
}

}  // namespace chevalley
