#include <gtest/gtest.h>

#include "chevalley/special.hpp"

using namespace chevalley;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

// Values of a polynomial element of B after specializing A to constants.
Scalar eval_at(const Elem& b, const std::vector<Poly>& consts, const Scalar& point) {
  Scalar acc(0), pw(1);
  for (std::size_t i = 0; i < b.parent()->rank; ++i) {
    Poly c = b[i].substitute(b.parent()->ring, consts);
    if (!c.is_zero()) acc = acc + c.constant_value() * pw;
    pw = pw * point;
  }
  return acc;
}

Elem sample(const AlgebraPtr& b, const std::vector<long long>& c) {
  std::vector<Poly> v(b->rank, Poly(b->ring));
  for (std::size_t i = 0; i < c.size() && i < b->rank; ++i) v[i] = Poly(b->ring, c[i]);
  return Elem(b, v);
}

}  // namespace

TEST(Special, SymplecticIsMinusSpecialForm) {
  for (std::size_t n = 1; n <= 3; ++n) {
    AlgebraPtr b = sp_cover(n);
    SpecialForm s = special_form(sp_subcover(b));
    Equivalence eq = compare_up_to_unit(s.form, symplectic_form(b));
    ASSERT_TRUE(eq.equal_up_to_unit) << n;
    EXPECT_EQ(eq.unit->to_string(), "-1") << n;
    EXPECT_TRUE(derivation_annihilation(s, mult_matrix(Elem::x_of(b))));
  }
}

// Over f = (x^2 - 1)(x^2 - 4) the fibres of y = x^2 are {1, -1} and {2, -2}, so
// the symmetrized image of b1 (x) b2 is b1(r) b2(-r) + b2(r) b1(-r) at y = r^2.
TEST(Special, ComponentImageMatchesSplitFibres) {
  AlgebraPtr b = sp_cover(2);
  SubcoverEmbedding s = sp_subcover(b);
  std::vector<Poly> consts{Poly(b->ring, -5), Poly(b->ring, 4)};
  std::vector<std::vector<long long>> samples{{1, 2, 0, -1}, {0, 3, 1, 1}, {2, -1, 5, 0}, {0, 0, 0, 1}};
  for (const auto& c1 : samples)
    for (const auto& c2 : samples) {
      Elem b1 = sample(b, c1), b2 = sample(b, c2);
      Elem img = special_component_image(s, {b1, b2});
      for (long long r : {1, 2}) {
        Scalar x(r), y(r * r);
        Scalar expect = eval_at(b1, consts, x) * eval_at(b2, consts, -x) + eval_at(b2, consts, x) * eval_at(b1, consts, -x);
        EXPECT_EQ(eval_at(img, consts, y), expect);
      }
    }
}

TEST(Special, ComponentImageIsMultiplicative) {
  RingPtr r = g2_ring();
  G2Subcovers g = g2_subcovers(r);
  const SubcoverEmbedding& s = g.a1;
  Elem x = Elem::x_of(g.bprime);
  std::vector<Elem> bs{x, x * x + Elem::scalar(g.bprime, Poly(r, 1)), x.pow(4)};
  std::vector<Elem> cs{x.pow(5), Elem::scalar(g.bprime, Poly(r, 2)), x + x.pow(3)};
  Elem lhs = special_component_image(s, bs) * special_component_image(s, cs);
  std::vector<std::size_t> t{0, 1, 2};
  Elem rhs = Elem::zero(s.sub);
  do {
    rhs = rhs + special_component_image(s, {bs[0] * cs[t[0]], bs[1] * cs[t[1]], bs[2] * cs[t[2]]});
  } while (std::next_permutation(t.begin(), t.end()));
  EXPECT_EQ(lhs, rhs);
  // b (x) 1 (x) 1 + 1 (x) b (x) 1 + 1 (x) 1 (x) b maps to the relative trace.
  for (std::size_t i = 0; i < g.bprime->rank; ++i)
    EXPECT_EQ(power_sum_image(s, Elem::basis(g.bprime, i)), relative_trace(s, Elem::basis(g.bprime, i)));
}

TEST(Special, KernelGeneratedByDiagonalSum) {
  for (std::size_t n = 1; n <= 3; ++n) {
    KernelCheck k = kernel_generator_check(sp_subcover(sp_cover(n)));
    EXPECT_EQ(k.sym_rank, n * (2 * n + 1));
    EXPECT_EQ(k.image_rank, 2 * n * n);
    EXPECT_TRUE(k.annihilated);
    EXPECT_TRUE(k.image_summand);
    EXPECT_TRUE(k.phi_surjective);
    EXPECT_TRUE(k.generates_kernel);
  }
}

TEST(Special, G2CubicSubcoverValues) {
  RingPtr r = g2_ring();
  G2Subcovers g = g2_subcovers(r);
  EXPECT_EQ(g.a1.d, 3u);
  EXPECT_EQ(g.a2.d, 2u);
  FormTensor w = special_form(g.a1).form;
  Elem x = Elem::x_of(g.bprime), one = Elem::basis(g.bprime, 0), x2 = x * x;
  Elem z = g2_z_prime(g.bprime);
  EXPECT_EQ(w.eval(z, x, x2), Poly(r, 1));
  EXPECT_EQ(w.eval(one, z * x, x2), Poly(r, 1));
  EXPECT_EQ(w.eval(one, x, z * x2), Poly(r, 1));
  EXPECT_EQ(w.eval(z, z * x, z * x2), -Poly::var(r, "q"));
  EXPECT_TRUE(w.eval(x, z * x, x2).is_zero());
  EXPECT_TRUE(everywhere_nonzero(w));
  EXPECT_TRUE(derivation_annihilation(special_form(g.a1), mult_matrix(x)));
}

TEST(Special, G2FormRestrictsToCubicSubcover) {
  RingPtr r = g2_ring();
  G2Subcovers g = g2_subcovers(r);
  FormTensor rho = assemble_rho(g2_cover(r), TrZReading::full_cover);
  EXPECT_EQ(restrict_by_x(rho, g.bprime), special_form(g.a1).form);
}

TEST(Special, G2QuadraticSubcoverIsUnimodular) {
  RingPtr r = g2_ring();
  G2Subcovers g = g2_subcovers(r);
  SpecialForm w = special_form(g.a2);
  EXPECT_EQ(w.form.symmetry(), Symmetry::alternating);
  EXPECT_TRUE(unit_determinant(w.form.gram()).has_value());
  EXPECT_TRUE(derivation_annihilation(w, mult_matrix(Elem::x_of(g.bprime))));
}

TEST(Special, GluingRecoversRho) {
  RingPtr r = g2_ring();
  G2Subcovers g = g2_subcovers(r);
  FormTensor w3 = special_form(g.a1).form, w2 = special_form(g.a2).form;
  Elem x = Elem::x_of(g.bprime), z = g2_z_prime(g.bprime);
  FormTensor twisted = twist_bilinear(w2, x * z);
  EXPECT_TRUE(gluing_defect_divisible_by_q(w3, twisted));
  FormTensor rho = glue_g2_three_form(w3, twisted, g2_cover(r));
  EXPECT_EQ(rho, assemble_rho(g2_cover(r), TrZReading::full_cover));
}

TEST(Special, GluingRejectsIncompatiblePairs) {
  RingPtr r = g2_ring();
  G2Subcovers g = g2_subcovers(r);
  FormTensor w3 = special_form(g.a1).form, w2 = special_form(g.a2).form;
  AlgebraPtr b = g2_cover(r);
  EXPECT_FALSE(gluing_defect_divisible_by_q(w3, w2));
  EXPECT_EQ(code_of([&] { glue_g2_three_form(w3, w2, b); }), ErrorCode::IncompatiblePair);
  FormTensor by_z = twist_bilinear(w2, g2_z_prime(g.bprime));
  EXPECT_EQ(by_z.symmetry(), Symmetry::symmetric);
  EXPECT_EQ(code_of([&] { glue_g2_three_form(w3, by_z, b); }), ErrorCode::IncompatiblePair);
}

TEST(Special, RelativeDegreeOneIsBetaStar) {
  AlgebraPtr b = sp_cover(2);
  SpecialForm s = special_form(subcover(b, Elem::x_of(b), "y"));
  ASSERT_EQ(s.form.arity(), 1);
  for (std::size_t i = 0; i < b->rank; ++i)
    EXPECT_EQ(s.form.gram()(0, i), Poly(b->ring, i + 1 == b->rank ? 1 : 0));
}

TEST(Special, SmallCharacteristicRefused) {
  // B = A[x]/(x^6 + a x^3 + b) over A[y]/(y^2 + a y + b) with y = x^3, relative degree 3.
  RingPtr r3 = ring_new({"a", "b"}, {3, 6}, 3);
  std::vector<Poly> f(7, Poly(r3));
  f[0] = Poly::var(r3, "b");
  f[3] = Poly::var(r3, "a");
  f[6] = Poly(r3, 1);
  AlgebraPtr b = monogenic_algebra(r3, f);
  SubcoverEmbedding s = subcover(b, Elem::x_of(b).pow(3), "y");
  ASSERT_EQ(s.d, 3u);
  EXPECT_EQ(code_of([&] { special_form(s); }), ErrorCode::CharTooSmall);
  AlgebraPtr b5 = sp_cover(2, 5);
  EXPECT_TRUE(compare_up_to_unit(special_form(sp_subcover(b5)).form, symplectic_form(b5)).equal_up_to_unit);
}
