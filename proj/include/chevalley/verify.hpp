#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "properties.hpp"

namespace chevalley {

// One named identity and its outcome.
struct Check {
  std::string key;    // JSON field name
  std::string label;  // text-mode name
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyReport {
  std::string group;
  std::size_t rank = 0;
  std::uint64_t characteristic = 0;
  std::vector<Check> checks;

  bool passes() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.label);
    return out;
  }
};

namespace detail {

class CheckRecorder {
 public:
  explicit CheckRecorder(VerifyReport& r) : r_(r) {}

  // Runs fn, which returns pass/fail; library errors count as failures with the message as detail.
  template <class Fn>
  void operator()(const std::string& key, const std::string& label, Fn&& fn) {
    Check c{key, label, false, {}, 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.pass = fn(c.detail);
    } catch (const Error& e) {
      c.detail = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& r_;
};

inline std::uint64_t lattice_field(const std::string& group) { return group == "g2" ? 11 : 5; }

inline void standard_lattice_check(CheckRecorder& rec, const std::string& group, std::size_t n) {
  rec("standard_lattice_trivial", "standard lattice is a Springer point", [&](std::string& d) {
    std::uint64_t p = lattice_field(group);
    SpecAlgebraAt s = spec_algebra_at(group, n, default_point(group, n), p);
    SpringerCertificate c = is_springer_point(LaurentLattice::standard(s.d, p), s);
    d = certificate_to_json(c).dump();
    return c.accepted && c.degree == 0;
  });
}

}  // namespace detail

// A 2-form on the power basis, e.g. "-e3^e6 + 2*e4^e5".
inline std::string render_two_form(const AltForm<Poly>& a) {
  std::string out;
  for (const auto& [mask, v] : a.terms()) {
    std::string wedge;
    for (std::size_t k = 0; k < 32; ++k)
      if (mask & (1u << k)) wedge += (wedge.empty() ? "e" : "^e") + std::to_string(k);
    std::string c = v.to_string();
    bool neg = c[0] == '-';
    if (neg) c = c.substr(1);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (c != "1") out += (v.size() > 1 ? "(" + c + ")" : c) + "*";
    out += wedge;
  }
  return out.empty() ? "0" : out;
}

inline AlgebraPtr sl_cover(std::size_t n, std::uint64_t characteristic = 0) {
  RingPtr r = gl_ring(n, characteristic);
  std::vector<Poly> f = gl_polynomial(r, n);
  f[n - 1] = Poly(r);
  return monogenic_algebra(r, f);
}

// Companion identities for gl_n, or sl_n (a_1 = 0).
inline VerifyReport verify_linear(const std::string& group, std::size_t n, std::uint64_t characteristic = 0) {
  if (group != "gl" && group != "sl") fail(ErrorCode::InvalidArgument, "expected gl or sl");
  if (n < 2) fail(ErrorCode::InvalidArgument, "rank must be at least 2");
  VerifyReport r{group, n, characteristic, {}};
  detail::CheckRecorder rec(r);
  AlgebraPtr a = group == "gl" ? gl_cover(n, characteristic) : sl_cover(n, characteristic);
  PolyMat x = companion_matrix(a);
  DualElement beta = beta_generator(a);
  PolyMat gb = pairing_gram(beta);
  rec("char_poly_equals_f", "char_poly(companion) = f", [&](std::string&) { return char_poly(x) == a->modulus; });
  rec("discriminant_nonzero", "resultant(f, f') != 0", [&](std::string&) { return discriminant_nonzero(a); });
  rec("mu_equals_fprime_beta", "G_xi = G_beta * M(f')", [&](std::string&) {
    return trace_pairing(a).gram() == gb * mult_matrix(f_prime(a));
  });
  rec("euler_traces", "tr(x^k / f') = [k = n-1]", [&](std::string& d) {
    std::vector<Poly> t = euler_traces_certified(a);
    for (std::size_t k = 0; k < n; ++k)
      if (t[k] != Poly(a->ring, k + 1 == n ? 1 : 0)) {
        d = "k = " + std::to_string(k) + ": " + t[k].to_string();
        return false;
      }
    return true;
  });
  if (n <= 5)
    rec("mu_fraction_field", "mu = f' beta^* over Frac(A)", [&](std::string&) {
      return mu_decomposition(a).lambda.size() == n;
    });
  rec("det_gram_unit", "det G_beta in k^x", [&](std::string& d) {
    auto u = unit_determinant(gb);
    if (u) d = u->to_string();
    return u.has_value();
  });
  rec("beta_self_adjoint", "beta(x v1, v2) = beta(v1, x v2)", [&](std::string&) { return gb * x == x.transpose() * gb; });
  rec("anti_self_adjoint", "beta(x v1, v2) + beta(v1, x v2) = 0", [&](std::string& d) {
    PolyMat s = gb * x + x.transpose() * gb;
    if (!s.is_zero()) d = "entry (0, " + std::to_string(n - 2) + ") = " + s(0, n - 2).to_string();
    return s.is_zero();
  });
  if (group == "sl") rec("trace_free", "trace(companion) = 0", [&](std::string&) { return mat_trace(x).is_zero(); });
  if (characteristic == 0)
    rec("grading_identity", "ad(diag(t^(n-1), ..., t^(1-n))) x = t^-2 x(t^2 a)", [&](std::string&) {
      return check_grading_identity(n);
    });
  detail::standard_lattice_check(rec, group, n);
  return r;
}

// The classical forms: polynomial Gram, symmetry type, unit determinant, [x] anti-self-adjoint.
inline VerifyReport verify_classical(const std::string& group, std::size_t n, std::uint64_t characteristic = 0) {
  VerifyReport r{group, n, characteristic, {}};
  detail::CheckRecorder rec(r);
  FormReport f = check_classical_form(group, n, characteristic);
  rec("polynomial", "Gram certified polynomial", [&](std::string&) { return f.polynomial; });
  rec("symmetry", std::string("Gram is ") + (group == "sp" ? "skew" : "symmetric"), [&](std::string&) {
    return f.symmetry && f.form.symmetry() == (group == "sp" ? Symmetry::alternating : Symmetry::symmetric);
  });
  rec("det_gram_unit", "det Gram in k^x", [&](std::string& d) {
    if (f.det) d = f.det->to_string();
    return f.nondegenerate;
  });
  rec("anti_self_adjoint", "omega(x v1, v2) + omega(v1, x v2) = 0", [&](std::string&) { return f.anti_self_adjoint; });
  if (group == "so-even") {
    rec("associative", "normalized cover is associative", [&](std::string&) { return f.associative; });
    rec("different_printed_expansion", "different element = printed expansion", [&](std::string&) {
      return *f.different_literal;
    });
    rec("different_corrected_expansion", "different element = corrected expansion", [&](std::string&) {
      return *f.different_corrected;
    });
  }
  if (group == "sp" && n <= 3) {
    AlgebraPtr b = sp_cover(n, characteristic);
    SubcoverEmbedding s = sp_subcover(b);
    rec("special_form_equivalence", "special form = unit * omega", [&](std::string& d) {
      Equivalence eq = compare_up_to_unit(special_form(s).form, symplectic_form(b));
      if (eq.unit) d = "unit " + eq.unit->to_string();
      return eq.equal_up_to_unit;
    });
    rec("special_kernel_generator", "kernel generated by the diagonal sum", [&](std::string&) {
      return kernel_generator_check(s).generates_kernel;
    });
  }
  detail::standard_lattice_check(rec, group, n);
  return r;
}

// The cross-product solve, both propositions, and the gluing of the special forms.
inline VerifyReport verify_g2(std::uint64_t characteristic = 0, const std::string& pin = "") {
  VerifyReport r{"g2", 2, characteristic, {}};
  detail::CheckRecorder rec(r);
  AlgebraPtr b = g2_cover(characteristic);
  const RingPtr& ring = b->ring;
  G2Pin p = pin.empty() ? g2_default_pin(ring) : parse_g2_pin(ring, pin);
  G2Solve s = solve_cross_product(b, p);
  FormTensor rho = assemble_rho(b);
  G2Report rep = verify_g2_propositions(rho, s);
  PolyMat omega = g2_omega(b).gram();
  rec("one_parameter_family", "cross-product constraints cut out a 1-parameter family", [&](std::string& d) {
    d = "family_dim " + std::to_string(s.family_dim);
    return s.family_dim == 1 && s.tangent_certified;
  });
  rec("pinned_values", "tc(x^6, x^3) = 1, tc(x^6, x^4) = 0, tc(x^6, x^5) = 5e/2", [&](std::string&) {
    return s.table.tc(6, 3) == p[0] && s.table.tc(6, 4) == p[1] && s.table.tc(6, 5) == p[2];
  });
  rec("cross_product_axioms", "c skew, orthogonal, normalized, compatible", [&](std::string&) {
    auto ch = check_cross_product(s.table, omega);
    return ch.skew && ch.orthogonal && ch.normalized && ch.compatible;
  });
  bool pinned_default = pin.empty();
  rec("rho_agrees", "omega(c(u, v), w) = dual-basis rho", [&](std::string&) {
    return pinned_default ? rep.rho_agrees : s.rho == rho || s.rho == rho.scaled(Poly(ring, -1));
  });
  rec("compatibility", "rho compatibility on all 343 basis triples", [&](std::string&) { return rep.compatibility; });
  rec("nu_equals_minus_144_omega", "nu = -144*omega", [&](std::string&) { return rep.nu_equals_minus_144_omega; });
  rec("nu_nondegenerate", "nu symmetric with det in k^x", [&](std::string&) { return rep.nu_nondegenerate; });
  rec("degrees_consistent", "rho coefficients have the expected weights", [&](std::string&) { return rep.degrees_consistent; });
  rec("f0_relation", "x f_0 = 0 and f_0^* ^ tr_z vanishes", [&](std::string&) { return rep.f0_relation; });
  rec("iota1_printed", "iota_1 rho = e3^e6 + e4^e5 - (3e/2) e5^e6", [&](std::string& d) {
    d = "computed " + render_two_form(rep.iota1);
    return rep.iota1_literal;
  });
  G2Subcovers g = g2_subcovers(ring);
  FormTensor w3 = special_form(g.a1).form, w2 = special_form(g.a2).form;
  Elem x = Elem::x_of(g.bprime), z = g2_z_prime(g.bprime);
  rec("cubic_subcover_restriction", "rho restricted along x is omega_A'", [&](std::string&) {
    return restrict_by_x(rho, g.bprime) == w3;
  });
  rec("special_forms_annihilate_x", "special forms annihilate the derivation by x", [&](std::string&) {
    return derivation_annihilation(special_form(g.a1), mult_matrix(x)) &&
           derivation_annihilation(special_form(g.a2), mult_matrix(x));
  });
  rec("gluing_recovers_rho", "gluing (omega_A', xz omega_A'') = rho", [&](std::string&) {
    return glue_g2_three_form(w3, twist_bilinear(w2, x * z), b) == rho;
  });
  rec("incompatible_pair_rejected", "gluing (omega_A', omega_A'') is rejected", [&](std::string&) {
    try {
      glue_g2_three_form(w3, w2, b);
    } catch (const Error& e) {
      return e.code() == ErrorCode::IncompatiblePair;
    }
    return false;
  });
  if (characteristic == 0) detail::standard_lattice_check(rec, "g2", 1);
  return r;
}

inline VerifyReport verify_group(const std::string& group, std::size_t n, std::uint64_t characteristic = 0) {
  if (group == "gl" || group == "sl") return verify_linear(group, n, characteristic);
  if (group == "sp" || group == "so-odd" || group == "so-even") return verify_classical(group, n, characteristic);
  if (group == "g2") return verify_g2(characteristic);
  fail(ErrorCode::InvalidArgument, "unknown group tag '" + group + "'");
}

// Default ranks exercised by `verify --all`.
inline std::vector<std::pair<std::string, std::size_t>> default_verify_targets() {
  std::vector<std::pair<std::string, std::size_t>> t;
  for (std::size_t n = 2; n <= 6; ++n) t.push_back({"gl", n});
  for (std::size_t n = 2; n <= 6; ++n) t.push_back({"sl", n});
  for (std::size_t n = 1; n <= 3; ++n) t.push_back({"sp", n});
  for (std::size_t n = 1; n <= 3; ++n) t.push_back({"so-odd", n});
  for (std::size_t n : {2, 3}) t.push_back({"so-even", n});
  t.push_back({"g2", 0});
  return t;
}

// Property results as a report, one check per property.
inline VerifyReport properties_report(const PropertyOptions& o) {
  VerifyReport r{"properties", 0, 0, {}};
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& p : run_properties(o)) {
    std::string detail = std::to_string(p.samples) + " samples, " + std::to_string(p.failures) + " failures";
    if (p.abstentions) detail += ", " + std::to_string(p.abstentions) + " abstentions";
    if (!p.counterexample.empty()) detail += "; first counterexample " + p.counterexample;
    r.checks.push_back({p.module + "." + p.name, p.module + "/" + p.name, p.passes(), detail, 0});
  }
  if (!r.checks.empty())
    r.checks.back().seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Flat object: identification fields, one boolean per check, then the verdict.
inline json verify_to_json(const VerifyReport& r) {
  json j{{"group", r.group}};
  if (r.group != "properties") {
    j["rank"] = r.rank;
    j["characteristic"] = r.characteristic;
  }
  for (const auto& c : r.checks) j[c.key] = c.pass;
  json details = json::object();
  for (const auto& c : r.checks)
    if (!c.detail.empty()) details[c.key] = c.detail;
  j["details"] = details;
  j["pass"] = r.passes();
  return j;
}

inline std::string verify_to_text(const VerifyReport& r, bool timings = true) {
  std::string out = "verify " + r.group;
  if (r.group != "properties" && r.group != "g2") out += " rank " + std::to_string(r.rank);
  if (r.characteristic) out += " char " + std::to_string(r.characteristic);
  out += "\n";
  for (const auto& c : r.checks) {
    out += "  " + c.label + ": " + (c.pass ? "PASS" : "FAIL");
    if (timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.3f s)", c.seconds);
      out += buf;
    }
    if (!c.pass && !c.detail.empty()) out += "\n    " + c.detail;
    out += "\n";
  }
  return out;
}

}  // namespace chevalley
