#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "chevalley/verify.hpp"

using namespace chevalley;

namespace {

constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Common {
  std::string group;
  std::size_t rank = 0;
  std::uint64_t characteristic = 0;
  bool json = false;
};

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string render_matrix(const PolyMat& m) {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::vector<std::size_t> width(m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells[i][j] = m(i, j).to_string();
      width[j] = std::max(width[j], cells[i][j].size());
    }
  std::string out;
  for (const auto& row : cells) {
    out += "[ ";
    for (std::size_t j = 0; j < row.size(); ++j) out += std::string(width[j] - row[j].size(), ' ') + row[j] + "  ";
    out += "]\n";
  }
  return out;
}

std::string render_poly(const std::vector<Poly>& coeffs, const std::string& var) {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k].is_zero()) continue;
    std::string c = coeffs[k].to_string(), m = k == 0 ? "" : k == 1 ? var : var + "^" + std::to_string(k);
    if (!out.empty()) out += " + ";
    if (m.empty())
      out += c;
    else if (c == "1")
      out += m;
    else
      out += (coeffs[k].size() > 1 ? "(" + c + ")" : c) + "*" + m;
  }
  return out.empty() ? "0" : out;
}

int report_outcome(const std::vector<VerifyReport>& reports) {
  bool ok = true;
  for (const auto& r : reports) {
    if (r.passes()) continue;
    ok = false;
    std::string head = r.group + (r.group == "properties" || r.group == "g2" ? "" : " rank " + std::to_string(r.rank));
    std::string names;
    for (const auto& f : r.failing()) names += (names.empty() ? "" : "; ") + f;
    std::cerr << "FAILED " << head << ": " << names << "\n";
  }
  return ok ? 0 : kCheckFailed;
}

int cmd_companion(const Common& c) {
  if (c.group != "gl" && c.group != "sl") fail(ErrorCode::InvalidArgument, "companion expects --group gl or sl");
  AlgebraPtr a = c.group == "gl" ? gl_cover(c.rank, c.characteristic) : sl_cover(c.rank, c.characteristic);
  PolyMat x = companion_matrix(a);
  if (c.json) {
    print_json(json{{"group", c.group},
                    {"rank", c.rank},
                    {"characteristic", c.characteristic},
                    {"ring", ring_to_json(*a->ring)},
                    {"polynomial", poly_vector_to_json(a->modulus)},
                    {"companion", poly_matrix_to_json(x)}});
  } else {
    std::cout << "f = " << render_poly(a->modulus, "x") << "\n" << render_matrix(x);
  }
  return 0;
}

int cmd_gram(const Common& c) {
  FormReport r = check_classical_form(c.group, c.rank, c.characteristic);
  if (c.json) {
    print_json(form_report_to_json(r));
  } else {
    std::cout << c.group << " rank " << c.rank << ": " << symmetry_name(r.form.symmetry()) << " form on B, rank "
              << r.form.dim() << "\n"
              << render_matrix(r.form.gram()) << "det = " << (r.det ? r.det->to_string() : "not a unit") << "\n";
  }
  bool ok = r.polynomial && r.symmetry && r.nondegenerate && r.anti_self_adjoint && r.associative;
  return ok ? 0 : kCheckFailed;
}

int cmd_g2_solve(const Common& c, const std::string& pin) {
  AlgebraPtr b = g2_cover(c.characteristic);
  G2Pin p = pin.empty() ? g2_default_pin(b->ring) : parse_g2_pin(b->ring, pin);
  G2Solve s = solve_cross_product(b, p);
  G2Report rep = verify_g2_propositions(assemble_rho(b), s);
  if (c.json) {
    print_json(g2_report_to_json(s, rep));
  } else {
    std::cout << "unknowns " << s.unknowns << ", solutions of the linear constraints " << s.linear_dim
              << ", family dimension " << s.family_dim << (s.tangent_certified ? " (tangent certified)" : "") << "\n"
              << "tc(x^i, x^j) = rho(1, x^i, x^j):\n"
              << render_matrix(s.table.tc);
  }
  return s.family_dim == 1 ? 0 : kCheckFailed;
}

int cmd_special(const Common& c) {
  if (c.group == "sp") {
    AlgebraPtr b = sp_cover(c.rank, c.characteristic);
    SpecialForm s = special_form(sp_subcover(b));
    Equivalence eq = compare_up_to_unit(s.form, symplectic_form(b));
    if (c.json) {
      print_json(json{{"group", "sp"},
                      {"rank", c.rank},
                      {"subcover", "y = x^2"},
                      {"form", form_to_json(s.form)},
                      {"equal_up_to_unit", eq.equal_up_to_unit},
                      {"unit", eq.unit ? json(eq.unit->to_string()) : json(nullptr)}});
    } else {
      std::cout << "special form of B over A[x^2]:\n"
                << render_matrix(s.form.gram()) << "special form = "
                << (eq.unit ? eq.unit->to_string() + " * omega" : "no unit multiple of omega") << "\n";
    }
    return eq.equal_up_to_unit ? 0 : kCheckFailed;
  }
  if (c.group != "g2") fail(ErrorCode::InvalidArgument, "special-form expects --group sp or g2");
  RingPtr r = g2_ring(c.characteristic);
  G2Subcovers g = g2_subcovers(r);
  SpecialForm w3 = special_form(g.a1), w2 = special_form(g.a2);
  bool ok = restrict_by_x(assemble_rho(g2_cover(r)), g.bprime) == w3.form;
  if (c.json) {
    print_json(json{{"group", "g2"},
                    {"cubic_subcover", {{"generator", "z"}, {"form", form_to_json(w3.form)}}},
                    {"quadratic_subcover", {{"generator", "x^2"}, {"form", form_to_json(w2.form)}}},
                    {"rho_restricts_to_cubic_form", ok}});
  } else {
    Elem x = Elem::x_of(g.bprime), one = Elem::basis(g.bprime, 0), z = g2_z_prime(g.bprime);
    std::cout << "omega_A' (relative degree 3):\n"
              << "  z ^ x ^ x^2 = " << w3.form.eval(z, x, x * x) << "\n"
              << "  1 ^ zx ^ x^2 = " << w3.form.eval(one, z * x, x * x) << "\n"
              << "  1 ^ x ^ zx^2 = " << w3.form.eval(one, x, z * x * x) << "\n"
              << "  z ^ zx ^ zx^2 = " << w3.form.eval(z, z * x, z * x * x) << "\n"
              << "omega_A'' (relative degree 2), " << symmetry_name(w2.form.symmetry()) << ":\n"
              << render_matrix(w2.form.gram()) << "rho restricts to omega_A': " << (ok ? "yes" : "no") << "\n";
  }
  return ok ? 0 : kCheckFailed;
}

int cmd_g2_glue(const Common& c) {
  RingPtr r = g2_ring(c.characteristic);
  G2Subcovers g = g2_subcovers(r);
  AlgebraPtr b = g2_cover(r);
  FormTensor w3 = special_form(g.a1).form, w2 = special_form(g.a2).form;
  Elem x = Elem::x_of(g.bprime), z = g2_z_prime(g.bprime);
  FormTensor twisted = twist_bilinear(w2, x * z);
  FormTensor rho = glue_g2_three_form(w3, twisted, b);
  bool equal = rho == assemble_rho(b);
  auto rejected = [&](const FormTensor& w) {
    try {
      glue_g2_three_form(w3, w, b);
    } catch (const Error& e) {
      return e.code() == ErrorCode::IncompatiblePair;
    }
    return false;
  };
  bool plain = rejected(w2), by_z = rejected(twist_bilinear(w2, z));
  if (c.json) {
    print_json(json{{"twist", "x*z"},
                    {"twisted_symmetry", symmetry_name(twisted.symmetry())},
                    {"defect_divisible_by_q", gluing_defect_divisible_by_q(w3, twisted)},
                    {"glued_equals_rho", equal},
                    {"untwisted_pair_rejected", plain},
                    {"z_twisted_pair_rejected", by_z},
                    {"rho", form_to_json(rho)}});
  } else {
    std::cout << "glued (omega_A', xz omega_A''): " << (equal ? "equals rho" : "differs from rho") << "\n"
              << "(omega_A', omega_A'') rejected: " << (plain ? "yes" : "no") << "\n"
              << "(omega_A', z omega_A'') rejected: " << (by_z ? "yes" : "no") << "\n";
  }
  return equal && plain && by_z ? 0 : kCheckFailed;
}

struct LatticeArgs {
  std::vector<std::string> a;
  int box = 1;
  int prec = LaurentScalar::kExact;
  std::uint64_t field = 0;
  std::optional<int> degree;
  bool no_form_check = false;
};

int cmd_lattice(const Common& c, const LatticeArgs& l) {
  std::uint64_t p = l.field ? l.field : detail::lattice_field(c.group);
  std::vector<std::string> a = l.a.empty() ? default_point(c.group, c.rank) : l.a;
  SpecAlgebraAt s = spec_algebra_at(c.group, c.rank, a, p, l.prec);
  SpringerOptions opt = default_options(c.group);
  if (l.degree) opt.degree = *l.degree;
  if (l.no_form_check) opt.check_form = false;
  EnumerationResult r = enumerate_lattices(s, l.box, opt);
  if (c.json) {
    print_json(enumeration_to_json(s, l.box, r));
  } else {
    std::cout << c.group << " rank " << c.rank << " over F_" << p << ", box " << l.box << ": " << r.lattices.size()
              << " lattices from " << r.candidates << " candidates\n";
    for (const auto& [deg, n] : r.counts_by_degree) std::cout << "  degree " << deg << ": " << n << "\n";
    for (const auto& lat : r.lattices) std::cout << "  " << lat.key() << "\n";
  }
  return 0;
}

struct VerifyArgs {
  bool all = false;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 200;
  std::string pin;
};

int cmd_verify(const Common& c, bool rank_given, const VerifyArgs& v) {
  std::vector<VerifyReport> reports;
  if (v.all) {
    for (const auto& [g, n] : default_verify_targets()) reports.push_back(verify_group(g, n, c.characteristic));
  } else if (!c.group.empty()) {
    if (c.group == "g2") {
      reports.push_back(verify_g2(c.characteristic, v.pin));
    } else if (rank_given) {
      reports.push_back(verify_group(c.group, c.rank, c.characteristic));
    } else {
      for (const auto& [g, n] : default_verify_targets())
        if (g == c.group) reports.push_back(verify_group(g, n, c.characteristic));
    }
  } else if (!v.seed) {
    throw CLI::ValidationError("verify", "one of --all, --group or --seed is required");
  }
  if (v.all || v.seed) {
    PropertyOptions o;
    o.seed = v.seed.value_or(o.seed);
    o.samples = v.samples;
    reports.push_back(properties_report(o));
  }
  if (c.json) {
    if (reports.size() == 1) {
      print_json(verify_to_json(reports.front()));
    } else {
      json arr = json::array();
      bool ok = true;
      for (const auto& r : reports) {
        arr.push_back(verify_to_json(r));
        ok = ok && r.passes();
      }
      print_json(json{{"reports", arr}, {"pass", ok}});
    }
  } else {
    for (const auto& r : reports) std::cout << verify_to_text(r);
  }
  return report_outcome(reports);
}

const std::vector<std::string> kGroups{"gl", "sl", "sp", "so-odd", "so-even", "g2"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Companion sections, invariant tensors and spectral lattices for Chevalley maps"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* sub, const std::vector<std::string>& groups, bool need_group, bool need_rank) {
    auto* g = sub->add_option("--group", c.group, "group tag")->check(CLI::IsMember(groups));
    if (need_group) g->required();
    auto* r = sub->add_option("--rank", c.rank, "rank n")->check(CLI::PositiveNumber);
    if (need_rank) r->required();
    sub->add_option("--char", c.characteristic, "characteristic of the base field (0 or a prime)");
    sub->add_flag("--json", c.json, "machine-readable output");
  };

  auto* companion = app.add_subcommand("companion", "companion matrix of the universal polynomial");
  common(companion, {"gl", "sl"}, true, true);
  auto* gram = app.add_subcommand("gram", "invariant bilinear form of a classical group");
  common(gram, {"sp", "so-odd", "so-even"}, true, true);
  std::string pin;
  auto* g2solve = app.add_subcommand("g2-solve", "solve the cross-product constraints");
  common(g2solve, {"g2"}, false, false);
  g2solve->add_option("--pin", pin, "pin values, e.g. c63=1,c64=0,c65=5e/2");
  auto* special = app.add_subcommand("special-form", "special forms of subcovers");
  common(special, {"sp", "g2"}, true, false);
  auto* glue = app.add_subcommand("g2-glue", "glue the G2 three-form from the special forms");
  common(glue, {"g2"}, false, false);

  LatticeArgs lat;
  auto* lattice = app.add_subcommand("lattice-enum", "enumerate Springer lattices in a box");
  common(lattice, kGroups, true, true);
  lattice->add_option("--a", lat.a, "coefficients as polynomials in w, comma separated")->delimiter(',');
  lattice->add_option("--box", lat.box, "box size N")->check(CLI::NonNegativeNumber);
  lattice->add_option("--prec", lat.prec, "precision of the coefficients in w")->check(CLI::PositiveNumber);
  lattice->add_option("--field", lat.field, "residue field size p");
  lattice->add_option("--degree", lat.degree, "keep only lattices of this relative degree");
  lattice->add_flag("--no-form-check", lat.no_form_check, "skip integrality of the invariant form");

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  common(verify, kGroups, false, false);
  verify->add_flag("--all", v.all, "every group at the default ranks, plus the property suite");
  verify->add_option("--seed", v.seed, "seed for the randomized property suite");
  verify->add_option("--samples", v.samples, "samples per property")->check(CLI::PositiveNumber);
  verify->add_option("--pin", v.pin, "pin for the G2 solve");

  try {
    app.parse(argc, argv);
    if (special->parsed() && c.group == "sp" && c.rank == 0) throw CLI::RequiredError("--rank");
    if (companion->parsed()) return cmd_companion(c);
    if (gram->parsed()) return cmd_gram(c);
    if (g2solve->parsed()) return cmd_g2_solve(c, pin);
    if (special->parsed()) return cmd_special(c);
    if (glue->parsed()) return cmd_g2_glue(c);
    if (lattice->parsed()) return cmd_lattice(c, lat);
    if (verify->parsed()) return cmd_verify(c, verify->count("--rank") > 0, v);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool check = e.code() == ErrorCode::CertificationFailure || e.code() == ErrorCode::IncompatiblePair;
    return check ? kCheckFailed : kUsage;
  }
  return kUsage;
}
