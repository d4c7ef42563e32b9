#include <gtest/gtest.h>

#include <fstream>

#include "chevalley/companion.hpp"
#include "oracles.hpp"

using namespace chevalley;

namespace {

// Sylvester matrix of f and g (coefficients low to high).
PolyMat sylvester(const std::vector<Poly>& f, const std::vector<Poly>& g, const RingPtr& r) {
  std::size_t m = f.size() - 1, n = g.size() - 1;
  PolyMat s = poly_mat(r, m + n, m + n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s(i, i + k) = f[m - k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s(n + i, i + k) = g[n - k];
  return s;
}

}  // namespace

TEST(Companion, MatrixShape) {
  auto b = gl_cover(3);
  PolyMat c = companion_matrix(b);
  const auto& r = b->ring;
  EXPECT_EQ(c(1, 0), Poly(r, 1));
  EXPECT_EQ(c(2, 1), Poly(r, 1));
  EXPECT_EQ(c(0, 2), -Poly::var(r, 2));
  EXPECT_EQ(c(1, 2), -Poly::var(r, 1));
  EXPECT_EQ(c(2, 2), -Poly::var(r, 0));
  EXPECT_TRUE(c(0, 0).is_zero());
  EXPECT_EQ(char_poly(c), b->modulus);
}

TEST(Companion, NotMonogenic) {
  auto b = blowup_algebra_so_even(2);
  EXPECT_THROW(companion_matrix(b), Error);
  EXPECT_THROW(beta_generator(b), Error);
}

TEST(TracePairing, NewtonGramRankTwo) {
  auto b = gl_cover(2);
  const auto& r = b->ring;
  Poly a1 = Poly::var(r, 0), a2 = Poly::var(r, 1);
  PolyMat g = trace_pairing(b).gram();
  EXPECT_EQ(g(0, 0), Poly(r, 2));
  EXPECT_EQ(g(0, 1), -a1);
  EXPECT_EQ(g(1, 1), a1 * a1 - Poly(r, 2) * a2);
}

TEST(TracePairing, DeterminantIsDiscriminant) {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto b = gl_cover(n);
    const auto& r = b->ring;
    Poly res = det_cofactor(sylvester(b->modulus, derivative(b->modulus), r));
    long long sign = (n * (n - 1) / 2) % 2 ? -1 : 1;
    EXPECT_EQ(det_bareiss(trace_pairing(b).gram()), res * sign) << "n=" << n;
    EXPECT_EQ(resultant_f_fprime(b), res) << "n=" << n;
  }
}

TEST(TracePairing, BetaGramIsHankelWithUnitDeterminant) {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto b = gl_cover(n);
    PolyMat g = pairing_gram(beta_generator(b));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i + j + 1 < n) {
          EXPECT_TRUE(g(i, j).is_zero());
        }
        if (i + j + 1 == n) {
          EXPECT_EQ(g(i, j), Poly(b->ring, 1));
        }
        if (i + 1 < n && j > 0) {
          EXPECT_EQ(g(i, j), g(i + 1, j - 1));
        }
      }
    auto u = unit_determinant(g);
    ASSERT_TRUE(u.has_value()) << "n=" << n;
    long long sign = (n * (n - 1) / 2) % 2 ? -1 : 1;
    EXPECT_EQ(*u, Scalar(sign));
  }
}

TEST(MuDecomposition, CertifiedForSmallRanks) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto b = gl_cover(n);
    auto m = mu_decomposition(b);
    ASSERT_EQ(m.lambda.size(), n);
    // lambda_{d-1} = x^{d-1} . beta^* vanishes below the anti-diagonal.
    EXPECT_EQ(m.lambda[0], m.beta);
  }
}

TEST(EulerTraces, RankFive) {
  auto b = gl_cover(5);
  auto t = euler_traces(b);
  ASSERT_EQ(t.size(), 5u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(t[k].is_zero()) << "k=" << k;
  EXPECT_EQ(t[4], Poly(b->ring, 1));
}

TEST(EulerTraces, PrimeCharacteristic) {
  auto b = gl_cover(3, 7);
  auto t = euler_traces(b);
  EXPECT_TRUE(t[0].is_zero());
  EXPECT_TRUE(t[1].is_zero());
  EXPECT_EQ(t[2], Poly(b->ring, 1));
}

TEST(Grading, IdentityHolds) {
  for (std::size_t n = 2; n <= 5; ++n) EXPECT_TRUE(check_grading_identity(n)) << "n=" << n;
}

TEST(Grading, SlCompanionIsTraceFree) {
  for (std::size_t n = 2; n <= 5; ++n) {
    auto r = gl_ring(n);
    auto f = gl_polynomial(r, n);
    f[n - 1] = Poly(r);
    auto b = monogenic_algebra(r, f);
    EXPECT_TRUE(mat_trace(companion_matrix(b)).is_zero());
    EXPECT_TRUE(trace(Elem::x_of(b)).is_zero());
  }
}

TEST(Kostant, GoldenCharPoly) {
  std::ifstream in(std::string(CHEVALLEY_TEST_DATA) + "/kostant_gl3.json");
  ASSERT_TRUE(in.good());
  json j = json::parse(in);
  RingPtr r = ring_from_json(j["ring"]);
  PolyMat k = poly_mat(r, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t c = 0; c < 3; ++c) k(i, c) = parse_poly(r, j["matrix"][i][c].get<std::string>());
  std::vector<Poly> want;
  for (const auto& s : j["char_poly"]) want.push_back(parse_poly(r, s.get<std::string>()));
  EXPECT_EQ(char_poly(k), want);
  EXPECT_EQ(oracle::charpoly_by_interpolation(k), want);
  auto b = monogenic_algebra(r, gl_polynomial(r, 3));
  std::vector<Poly> comp;
  for (const auto& s : j["companion_char_poly"]) comp.push_back(parse_poly(r, s.get<std::string>()));
  EXPECT_EQ(char_poly(companion_matrix(b)), comp);
}

TEST(EulerTraces, CertifiedRouteAgreesWithFractionField) {
  for (std::size_t n = 2; n <= 5; ++n) {
    auto b = gl_cover(n);
    EXPECT_EQ(euler_traces_certified(b), euler_traces(b)) << "n=" << n;
    EXPECT_TRUE(discriminant_nonzero(b));
  }
  auto b7 = gl_cover(4, 7);
  EXPECT_EQ(euler_traces_certified(b7), euler_traces(b7));
}

TEST(EulerTraces, CertifiedRouteRankEight) {
  auto b = gl_cover(8);
  auto t = euler_traces_certified(b);
  for (std::size_t k = 0; k < 7; ++k) EXPECT_TRUE(t[k].is_zero()) << "k=" << k;
  EXPECT_EQ(t[7], Poly(b->ring, 1));
  EXPECT_EQ(mu_decomposition(b, false).lambda.size(), 8u);
}

TEST(EulerTraces, DegenerateModulusDetected) {
  // x^2 has f' = 2x nilpotent.
  auto r = ring_new({"a"}, {1});
  auto b = monogenic_algebra(r, std::vector<Poly>{Poly(r), Poly(r), Poly(r, 1)});
  EXPECT_FALSE(discriminant_nonzero(b));
  EXPECT_THROW(euler_traces_certified(b), Error);
}
