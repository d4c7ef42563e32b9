#include <gtest/gtest.h>

#include "chevalley/forms.hpp"

using namespace chevalley;

namespace {

// Euler route: tr(b / f') is the top power-basis coordinate of b.
PolyMat gram_via_top_coefficient(const AlgebraPtr& b) {
  PolyMat g = poly_mat(b->ring, b->rank, b->rank);
  for (std::size_t i = 0; i < b->rank; ++i)
    for (std::size_t j = 0; j < b->rank; ++j)
      g(i, j) = (Elem::basis(b, i) * apply_tau(Elem::basis(b, j)))[b->rank - 1];
  return g;
}

PolyMat parse_mat(const RingPtr& r, const std::vector<std::vector<std::string>>& rows) {
  PolyMat m = poly_mat(r, rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = parse_poly(r, rows[i][j]);
  return m;
}

}  // namespace

TEST(Symplectic, RankTwoGram) {
  auto w = symplectic_form(1);
  const auto& r = w.parent()->ring;
  EXPECT_EQ(w.gram(), parse_mat(r, {{"0", "-1"}, {"1", "0"}}));
}

TEST(Symplectic, MatchesEulerRouteAndIsNondegenerate) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto b = sp_cover(n);
    auto w = symplectic_form(b);
    EXPECT_EQ(w.gram(), gram_via_top_coefficient(b)) << "n=" << n;
    EXPECT_TRUE(gram_is_alternating(w.gram()));
    auto u = unit_determinant(w.gram());
    ASSERT_TRUE(u.has_value());
    EXPECT_EQ(*u, Scalar(1)) << "n=" << n;
    EXPECT_TRUE(verify_anti_self_adjoint(w, companion_matrix(b)));
  }
}

TEST(Symplectic, AlternatingOnDiagonal) {
  auto w = symplectic_form(3);
  for (std::size_t i = 0; i < w.dim(); ++i) {
    Elem v = Elem::basis(w.parent(), i);
    EXPECT_TRUE(w.eval(v, v).is_zero());
  }
}

TEST(SoOdd, RankThreeGram) {
  auto w = so_odd_form(1);
  const auto& r = w.parent()->ring;
  // Fraction-field oracle with f = x^3 + a2 x, f' = 3x^2 + a2.
  EXPECT_EQ(w.gram(), parse_mat(r, {{"0", "0", "1"}, {"0", "-1", "0"}, {"1", "0", "-a2"}}));
}

TEST(SoOdd, MatchesEulerRouteAndIsNondegenerate) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto b = so_odd_cover(n);
    auto w = so_odd_form(b);
    EXPECT_EQ(w.gram(), gram_via_top_coefficient(b));
    EXPECT_TRUE(gram_is_symmetric(w.gram()));
    EXPECT_TRUE(unit_determinant(w.gram()).has_value()) << "n=" << n;
    EXPECT_TRUE(verify_anti_self_adjoint(w, companion_matrix(b)));
  }
}

TEST(SoEven, GramsForSmallRanks) {
  auto w2 = so_even_form(2);
  EXPECT_EQ(w2.gram(), parse_mat(w2.parent()->ring, {{"0", "0", "1", "0"},
                                                     {"0", "-1", "0", "0"},
                                                     {"1", "0", "-a2", "0"},
                                                     {"0", "0", "0", "1"}}));
  auto w3 = so_even_form(3);
  EXPECT_EQ(w3.gram(), parse_mat(w3.parent()->ring, {{"0", "0", "0", "0", "1", "0"},
                                                     {"0", "0", "0", "-1", "0", "0"},
                                                     {"0", "0", "1", "0", "-a2", "0"},
                                                     {"0", "-1", "0", "a2", "0", "0"},
                                                     {"1", "0", "-a2", "0", "a2^2 - a4", "0"},
                                                     {"0", "0", "0", "0", "0", "1"}}));
  for (const auto* w : {&w2, &w3}) {
    EXPECT_EQ(unit_determinant(w->gram()), std::optional<Scalar>(Scalar(1)));
    EXPECT_TRUE(verify_anti_self_adjoint(*w, mult_matrix(Elem::x_of(w->parent()))));
  }
}

TEST(SoEven, DifferentIsTauFixedAndJacobian) {
  for (std::size_t n : {2u, 3u, 4u}) {
    auto b = blowup_algebra_so_even(n);
    auto d = different_element(b);
    EXPECT_EQ(apply_tau(d.value), d.value);
    EXPECT_EQ(d.value, different_corrected_expansion(b)) << "n=" << n;
    EXPECT_NE(d.value, different_printed_expansion(b)) << "n=" << n;
    // 2 sum (n-k) a_{2k} x^{2(n-1-k)} after eliminating p^2.
    Elem want = Elem::zero(b), x = Elem::x_of(b);
    for (std::size_t k = 0; k < n; ++k) {
      Poly a = k == 0 ? Poly(b->ring, 1) : Poly::var(b->ring, k - 1);
      want = want + (a * Scalar(static_cast<long long>(2 * (n - k)))) * x.pow(static_cast<unsigned>(2 * (n - 1 - k)));
    }
    EXPECT_EQ(d.value, want);
  }
}

TEST(SoEven, PushdownDegeneratesOnSingularLocus) {
  for (std::size_t n : {2u, 3u}) {
    auto w = so_even_form(n);
    const auto& r = w.parent()->ring;
    PolyMat gb = so_even_pushdown_gram(w);
    Poly dp = det_bareiss(so_even_embedding(w.parent()));
    EXPECT_EQ(det_bareiss(gb), dp * dp * det_bareiss(w.gram()));
    std::vector<Poly> zero(r->nvars(), Poly(r));
    PolyMat spec = gb;
    for (std::size_t i = 0; i < spec.rows(); ++i)
      for (std::size_t j = 0; j < spec.cols(); ++j) spec(i, j) = gb(i, j).substitute(r, zero);
    EXPECT_TRUE(det_bareiss(spec).is_zero());
    EXPECT_FALSE(det_bareiss(gb).is_zero());
  }
}

TEST(AntiSelfAdjoint, TracePairingIsNot) {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto b = gl_cover(n);
    EXPECT_FALSE(verify_anti_self_adjoint(trace_pairing(b), companion_matrix(b)));
  }
}

TEST(Report, BatteryAndErrors) {
  auto sp = check_classical_form("sp", 2);
  EXPECT_TRUE(report_passes(sp));
  auto so = check_classical_form("so-even", 2);
  EXPECT_TRUE(so.associative);
  EXPECT_TRUE(*so.different_corrected);
  EXPECT_FALSE(*so.different_literal);
  EXPECT_THROW(check_classical_form("e8", 2), Error);
  EXPECT_THROW(sp_cover(1, 2), Error);
  json j = form_report_to_json(sp);
  EXPECT_EQ(j["det"], "1");
  EXPECT_EQ(j["form"]["symmetry"], "alternating");
}

TEST(Forms, PrimeCharacteristic) {
  auto w = symplectic_form(2, 5);
  EXPECT_TRUE(unit_determinant(w.gram()).has_value());
  auto s = so_odd_form(2, 7);
  EXPECT_TRUE(verify_anti_self_adjoint(s, companion_matrix(s.parent())));
}
