#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "chevalley/g2.hpp"

using namespace chevalley;

namespace {

struct Fixture {
  AlgebraPtr b = g2_cover();
  RingPtr r = b->ring;
  Poly e = Poly::var(r, "e"), q = Poly::var(r, "q");
};

// Nonzero coefficients on sorted triples, computed by hand from the dual basis.
std::map<std::array<std::size_t, 3>, std::string> expected_rho() {
  return {{{0, 3, 6}, "-1"},      {{0, 4, 5}, "2"},     {{0, 5, 6}, "-5/2*e"}, {{1, 2, 6}, "1"},
          {{1, 3, 5}, "-1"},      {{1, 4, 6}, "1/2*e"}, {{2, 3, 4}, "1"},      {{2, 3, 6}, "1/2*e"},
          {{2, 4, 5}, "-1/2*e"}, {{2, 5, 6}, "1/4*e^2"}, {{4, 5, 6}, "-q"}};
}

// Full permutation sum over S_7 of sgn * rho(i, s0, s1) rho(j, s2, s3) rho(s4, s5, s6).
Poly nu_by_permutations(const FormTensor& rho, std::size_t i, std::size_t j) {
  std::array<std::size_t, 7> p;
  std::iota(p.begin(), p.end(), 0);
  Poly acc(rho.parent()->ring);
  do {
    Poly a = rho(i, p[0], p[1]);
    if (a.is_zero()) continue;
    Poly b = rho(j, p[2], p[3]);
    if (b.is_zero()) continue;
    Poly c = rho(p[4], p[5], p[6]);
    if (c.is_zero()) continue;
    int inv = 0;
    for (std::size_t s = 0; s < 7; ++s)
      for (std::size_t t = s + 1; t < 7; ++t) inv += p[s] > p[t];
    acc += inv % 2 ? -(a * b * c) : a * b * c;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

}  // namespace

TEST(G2, OmegaGram) {
  Fixture f;
  PolyMat g = g2_omega(f.b).gram();
  std::vector<std::vector<std::string>> want{{"0", "0", "0", "0", "0", "0", "1"},
                                             {"0", "0", "0", "0", "0", "-1", "0"},
                                             {"0", "0", "0", "0", "1", "0", "e"},
                                             {"0", "0", "0", "-1", "0", "-e", "0"},
                                             {"0", "0", "1", "0", "e", "0", "3/4*e^2"},
                                             {"0", "-1", "0", "-e", "0", "-3/4*e^2", "0"},
                                             {"1", "0", "e", "0", "3/4*e^2", "0", "1/2*e^3 - q"}};
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(g(i, j), parse_poly(f.r, want[i][j])) << i << "," << j;
  EXPECT_EQ(unit_determinant(g), std::optional<Scalar>(Scalar(1)));
}

TEST(G2, AssembledRhoCoefficients) {
  Fixture f;
  FormTensor rho = assemble_rho(f.b);
  auto want = expected_rho();
  for (std::size_t t = 0; t < rho.triples().size(); ++t) {
    auto it = want.find(rho.triples()[t]);
    Poly expect = it == want.end() ? Poly(f.r) : parse_poly(f.r, it->second);
    EXPECT_EQ(rho.triple_values()[t], expect);
  }
  EXPECT_TRUE(rho(1, 1, 2).is_zero());
  EXPECT_EQ(rho(6, 3, 0), -rho(0, 3, 6));
  EXPECT_TRUE(rho_degrees_consistent(rho));
}

TEST(G2, SexticTraceReadingDoesNotCertify) {
  Fixture f;
  EXPECT_THROW(assemble_rho(f.b, TrZReading::sextic_factor), Error);
}

TEST(G2, TauReversesRho) {
  Fixture f;
  FormTensor rho = assemble_rho(f.b);
  for (const auto& [i, j, k] : rho.triples()) {
    Poly v = rho.eval(apply_tau(Elem::basis(f.b, i)), apply_tau(Elem::basis(f.b, j)), apply_tau(Elem::basis(f.b, k)));
    EXPECT_EQ(v, -rho(i, j, k));
  }
}

TEST(G2, NuMatchesPermutationSum) {
  Fixture f;
  FormTensor rho = assemble_rho(f.b);
  PolyMat nu = nu_from_rho(rho);
  PolyMat omega = g2_omega(f.b).gram();
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i; j < 7; ++j) {
      if (i == 0 || i + j == 6 || (i == 2 && j == 6)) {
        EXPECT_EQ(nu(i, j), nu_by_permutations(rho, i, j));
      }
      EXPECT_EQ(nu(i, j), omega(i, j) * Scalar(-144));
    }
}

TEST(G2, SolveWithDefaultPin) {
  Fixture f;
  G2Solve s = solve_cross_product(f.b);
  EXPECT_EQ(s.family_dim, 1u);
  EXPECT_TRUE(s.tangent_certified);
  EXPECT_EQ(s.table.tc(6, 3), Poly(f.r, 1));
  EXPECT_TRUE(s.table.tc(6, 4).is_zero());
  EXPECT_EQ(s.table.tc(6, 5), f.e * Scalar(5, 2));
  Elem x = Elem::x_of(f.b);
  EXPECT_TRUE(s.table(x, x).is_zero());
  // tc(i, j) = rho(1, x^i, x^j).
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(s.table.tc(i, j), s.rho(0, i, j));
  EXPECT_EQ(s.rho, assemble_rho(f.b));
  auto ch = check_cross_product(s.table, g2_omega(f.b).gram());
  EXPECT_TRUE(ch.skew);
  EXPECT_TRUE(ch.orthogonal);
  EXPECT_TRUE(ch.normalized);
  EXPECT_TRUE(ch.compatible);
}

TEST(G2, Propositions) {
  Fixture f;
  G2Solve s = solve_cross_product(f.b);
  G2Report rep = verify_g2_propositions(assemble_rho(f.b), s);
  EXPECT_TRUE(rep.nu_equals_minus_144_omega);
  EXPECT_TRUE(rep.nu_nondegenerate);
  EXPECT_TRUE(rep.compatibility);
  EXPECT_TRUE(rep.rho_agrees);
  EXPECT_TRUE(rep.degrees_consistent);
  EXPECT_TRUE(rep.f0_relation);
  // The contraction by 1 as computed from the assembled form.
  AltForm<Poly> want(7);
  want.add(mask_of({3, 6}), Poly(f.r, -1));
  want.add(mask_of({4, 5}), Poly(f.r, 2));
  want.add(mask_of({5, 6}), f.e * Scalar(-5, 2));
  EXPECT_EQ(rep.iota1, want);
  EXPECT_FALSE(rep.iota1_literal);
}

TEST(G2, SecondPinGivesNegatedForm) {
  Fixture f;
  G2Solve s = solve_cross_product(f.b, parse_g2_pin(f.r, "c63=-1,c64=0,c65=-5e/2"));
  FormTensor rho = assemble_rho(f.b);
  EXPECT_EQ(s.rho, rho.scaled(Poly(f.r, -1)));
  EXPECT_TRUE(verify_anti_self_adjoint(s.rho, mult_matrix(Elem::x_of(f.b))));
  EXPECT_EQ(s.family_dim, 1u);
}

TEST(G2, InconsistentPin) {
  Fixture f;
  EXPECT_THROW(solve_cross_product(f.b, parse_g2_pin(f.r, "c63=2")), Error);
  EXPECT_THROW(parse_g2_pin(f.r, "c99=1"), Error);
}

TEST(G2, CompatibilityOfTheRotatedForm) {
  // rho(u., u., u.) with u = (1+z)/(1-z) is again compatible; checked over the fraction field.
  Fixture f;
  FormTensor rho = assemble_rho(f.b);
  Elem z = g2_z(f.b), one = Elem::basis(f.b, 0);
  auto [inv, den] = inverse_over_fraction_field(one - z);
  Elem un = (one + z) * inv;  // u * den
  PolyMat mu = mult_matrix(un);
  FormTensor rot = FormTensor::trilinear(f.b);
  for (const auto& [i, j, k] : rho.triples())
    rot.set(i, j, k, rho.eval(Elem(f.b, mu.column(i)), Elem(f.b, mu.column(j)), Elem(f.b, mu.column(k))));
  EXPECT_TRUE(verify_anti_self_adjoint(rot, mult_matrix(Elem::x_of(f.b))));
}

TEST(G2, RefusesBadCharacteristic) {
  EXPECT_THROW(g2_ring(7), Error);
  EXPECT_THROW(g2_ring(3), Error);
  EXPECT_NO_THROW(g2_cover(11));
}
