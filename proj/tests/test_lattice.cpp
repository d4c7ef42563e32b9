#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "chevalley/lattice.hpp"
#include "oracles.hpp"

using namespace chevalley;

namespace {

constexpr std::uint64_t kP = 5;

LaurentScalar wmono(long long c, int v, std::uint64_t p = kP) {
  return LaurentScalar::monomial(LaurentScalar::scalar(c, p), v, p);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

SpringerOptions gl_options() { return default_options("gl"); }

// The image of L in w^{-1} B / w B, in the oracle's coordinates.
std::vector<oracle::ModVec> box_one_image(const LaurentLattice& l, long long p) {
  std::size_t d = l.dim();
  std::vector<oracle::ModVec> rows;
  for (const auto& c : l.basis())
    for (int s : {0, 1}) {
      oracle::ModVec v(2 * d, 0);
      for (std::size_t r = 0; r < d; ++r) {
        LaurentScalar e = c[r].shifted(s);
        v[2 * r] = static_cast<long long>(e.coeff(-1).residue_value());
        v[2 * r + 1] = static_cast<long long>(e.coeff(0).residue_value());
      }
      rows.push_back(v);
    }
  return oracle::rref(rows, p);
}

oracle::BoxOneModel model_of(const SpecAlgebraAt& s) {
  oracle::BoxOneModel m{s.d, static_cast<long long>(s.characteristic), {}, {}};
  m.x0.assign(s.d, std::vector<long long>(s.d, 0));
  m.x1 = m.x0;
  for (std::size_t i = 0; i < s.d; ++i)
    for (std::size_t j = 0; j < s.d; ++j) {
      m.x0[i][j] = static_cast<long long>(s.x[i][j].coeff(0).residue_value());
      m.x1[i][j] = static_cast<long long>(s.x[i][j].coeff(1).residue_value());
    }
  return m;
}

// Companion matrix of x^d + c_1 x^{d-1} + ... + c_d written out directly.
oracle::BoxOneModel companion_model(const std::vector<std::array<long long, 2>>& c, long long p) {
  std::size_t d = c.size();
  oracle::BoxOneModel m{d, p, std::vector<std::vector<long long>>(d, std::vector<long long>(d, 0)), {}};
  m.x1 = m.x0;
  for (std::size_t i = 1; i < d; ++i) m.x0[i][i - 1] = 1;
  for (std::size_t i = 0; i < d; ++i) {
    m.x0[i][d - 1] = ((-c[d - 1 - i][0]) % p + p) % p;
    m.x1[i][d - 1] = ((-c[d - 1 - i][1]) % p + p) % p;
  }
  return m;
}

LaurentScalar random_series(std::mt19937_64& rng, std::uint64_t p, int maxdeg) {
  LaurentScalar s(p);
  for (int k = 0; k <= maxdeg; ++k) s.add_term(k, LaurentScalar::scalar(static_cast<long long>(rng() % p), p));
  return s;
}

// Generators of the same lattice: basis times a random O-unimodular matrix, plus one redundant column.
std::vector<LaurentVec> re_present(const LaurentLattice& l, std::mt19937_64& rng) {
  std::uint64_t p = l.characteristic();
  std::size_t d = l.dim();
  std::vector<LaurentVec> g = l.basis();
  for (int step = 0; step < 6; ++step) {
    std::size_t i = rng() % d, j = rng() % d;
    if (i == j) {
      LaurentScalar u = random_series(rng, p, 2);
      u.add_term(0, LaurentScalar::scalar(1, p));
      if (!u.known_nonzero() || u.valuation() != 0) u = wmono(1, 0, p);
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

}  // namespace

TEST(Laurent, SeriesArithmeticTracksPrecision) {
  LaurentScalar one_minus_w = wmono(1, 0) - wmono(1, 1);
  LaurentScalar inv = one_minus_w.inverse(6);
  EXPECT_EQ(inv.prec(), 6);
  for (int k = 0; k < 6; ++k) EXPECT_EQ(inv.coeff(k), LaurentScalar::scalar(1, kP));
  LaurentScalar prod = inv * one_minus_w;
  EXPECT_EQ(prod.to_string(), "1 + O(w^6)");
  LaurentScalar t = wmono(2, -1).truncated(3);
  EXPECT_EQ((t * wmono(1, 2)).prec(), 5);
  EXPECT_EQ((wmono(1, -2) * t).prec(), 1);
  EXPECT_EQ(wmono(3, -2).to_string(), "3*w^(-2)");
}

TEST(Lattice, StandardLatticeIsTrivialForEveryGroup) {
  struct Case {
    std::string g;
    std::size_t n;
    std::uint64_t p;
  };
  for (const Case& c : {Case{"gl", 2, 5}, Case{"gl", 3, 5}, Case{"sl", 3, 5}, Case{"sp", 1, 5}, Case{"sp", 2, 5},
                        Case{"sp", 3, 5}, Case{"so-odd", 1, 5}, Case{"so-odd", 2, 5}, Case{"so-even", 2, 5},
                        Case{"so-even", 3, 5}, Case{"g2", 1, 11}}) {
    SpecAlgebraAt s = spec_algebra_at(c.g, c.n, default_point(c.g, c.n), c.p);
    SpringerCertificate cert = is_springer_point(LaurentLattice::standard(s.d, c.p), s);
    EXPECT_TRUE(cert.accepted) << c.g << c.n;
    EXPECT_EQ(cert.degree, 0);
  }
}

TEST(Lattice, GL2Examples) {
  SpecAlgebraAt s = spec_algebra_at("gl", 2, {"0", "-w^2"}, kP);
  EXPECT_EQ(s.discriminant_valuation, 2);
  LaurentVec one{wmono(1, 0), LaurentScalar(kP)};
  // span{1, w^{-1} x}: x * w^{-1} x = w^{-1} x^2 = w.
  LaurentLattice l1 = LaurentLattice::from_generators({one, {LaurentScalar(kP), wmono(1, -1)}}, kP);
  SpringerCertificate c1 = is_springer_point(l1, s);
  EXPECT_TRUE(c1.accepted);
  EXPECT_EQ(c1.degree, 1);
  // span{1, w^{-2} x}: x * 1 = w^2 (w^{-2} x) and x * w^{-2} x = 1, so this lattice is stable too.
  LaurentLattice l2 = LaurentLattice::from_generators({one, {LaurentScalar(kP), wmono(1, -2)}}, kP);
  EXPECT_TRUE(is_springer_point(l2, s).accepted);
  LaurentVec xw2 = apply_x(s, l2.basis()[1]);
  EXPECT_EQ(xw2[0], wmono(1, 0));
  EXPECT_TRUE(xw2[1].is_zero());
  // span{w^{-1}, x} is not stable: x * w^{-1} = w^{-1} x.
  LaurentLattice l3 = LaurentLattice::from_generators({{wmono(1, -1), LaurentScalar(kP)}, {LaurentScalar(kP), wmono(1, 0)}}, kP);
  SpringerCertificate c3 = is_springer_point(l3, s);
  EXPECT_FALSE(c3.stable);
  EXPECT_EQ(*c3.unstable_column, 0u);
}

TEST(Lattice, BoxZeroIsSingleton) {
  SpecAlgebraAt s = spec_algebra_at("gl", 2, {"0", "-w^2"}, kP);
  EnumerationResult r = enumerate_lattices(s, 0, gl_options());
  ASSERT_EQ(r.lattices.size(), 1u);
  EXPECT_EQ(r.lattices[0], LaurentLattice::standard(2, kP));
}

TEST(Lattice, BoxOneMatchesSubspaceBruteForce) {
  struct Case {
    std::vector<std::string> a;
    std::vector<std::array<long long, 2>> coeffs;  // w^0 and w^1 parts of a_1, ..., a_d
    std::uint64_t p;
  };
  for (const Case& c : {Case{{"0", "-w^2"}, {{{0, 0}}, {{0, 0}}}, 5}, Case{{"0", "-w"}, {{{0, 0}}, {{0, -1}}}, 5},
                        Case{{"w", "w"}, {{{0, 1}}, {{0, 1}}}, 5}, Case{{"0", "-w^2", "0"}, {{{0, 0}}, {{0, 0}}, {{0, 0}}}, 3}}) {
    std::size_t n = c.a.size();
    SpecAlgebraAt s = spec_algebra_at("gl", n, c.a, c.p);
    oracle::BoxOneModel direct = companion_model(c.coeffs, static_cast<long long>(c.p));
    oracle::BoxOneModel from_spec = model_of(s);
    EXPECT_EQ(direct.x0, from_spec.x0);
    EXPECT_EQ(direct.x1, from_spec.x1);
    auto expected = oracle::stable_lattices_box_one(direct);
    EnumerationResult r = enumerate_lattices(s, 1, gl_options());
    std::vector<std::vector<oracle::ModVec>> got;
    for (const auto& l : r.lattices) got.push_back(box_one_image(l, static_cast<long long>(c.p)));
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected) << c.a[n - 1];
    for (const auto& l : r.lattices)
      EXPECT_EQ(static_cast<int>(box_one_image(l, static_cast<long long>(c.p)).size()) - static_cast<int>(n),
                l.relative_degree());
  }
}

TEST(Lattice, GoldenCountsGL2) {
  std::ifstream in(std::string(CHEVALLEY_TEST_DATA) + "/lattice_gl2_counts.json");
  ASSERT_TRUE(in.good());
  json golden = json::parse(in);
  std::vector<std::string> a;
  for (const auto& c : golden["a"]) a.push_back(c.get<std::string>());
  SpecAlgebraAt s = spec_algebra_at("gl", 2, a, golden["field"].get<std::uint64_t>());
  for (const auto& entry : golden["boxes"]) {
    EnumerationResult r = enumerate_lattices(s, entry["box"].get<int>(), gl_options());
    std::map<std::string, std::size_t> counts;
    for (const auto& [deg, c] : r.counts_by_degree) counts[std::to_string(deg)] = c;
    std::map<std::string, std::size_t> expect;
    for (const auto& [deg, c] : entry["counts_by_degree"].items()) expect[deg] = c.get<std::size_t>();
    EXPECT_EQ(counts, expect) << entry["box"];
  }
}

TEST(Lattice, SubBoxConsistency) {
  SpecAlgebraAt s = spec_algebra_at("gl", 2, {"0", "-w^2"}, kP);
  for (int n = 0; n <= 1; ++n) {
    EnumerationResult small = enumerate_lattices(s, n, gl_options());
    EnumerationResult big = enumerate_lattices(s, n + 1, gl_options());
    std::vector<LaurentLattice> restricted;
    for (const auto& l : big.lattices)
      if (l.within_box(n)) restricted.push_back(l);
    EXPECT_EQ(restricted, small.lattices) << n;
  }
}

TEST(Lattice, VerdictsIndependentOfPresentation) {
  std::mt19937_64 rng(20240601);
  SpecAlgebraAt gl = spec_algebra_at("gl", 2, {"0", "-w^2"}, kP);
  SpecAlgebraAt so = spec_algebra_at("so-odd", 1, {"-w^2"}, kP);
  EnumerationResult all = enumerate_lattices(gl, 1, SpringerOptions{false, std::nullopt});
  std::vector<std::pair<const SpecAlgebraAt*, LaurentLattice>> pool;
  for (const auto& l : all.lattices) pool.push_back({&gl, l});
  SpringerOptions so_loose = default_options("so-odd");
  so_loose.check_form = false;
  for (const auto& l : enumerate_lattices(so, 1, so_loose).lattices) pool.push_back({&so, l});
  for (int trial = 0; trial < 100; ++trial) {
    const auto& [s, l] = pool[rng() % pool.size()];
    LaurentLattice again = LaurentLattice::from_generators(re_present(l, rng), kP);
    ASSERT_EQ(again, l) << trial;
    EXPECT_EQ(is_springer_point(again, *s).accepted, is_springer_point(l, *s).accepted);
  }
}

TEST(Lattice, ScalingShiftsDegree) {
  SpecAlgebraAt s = spec_algebra_at("gl", 2, {"0", "-w^2"}, kP);
  for (const auto& l : enumerate_lattices(s, 1, gl_options()).lattices) {
    LaurentLattice m = l.scaled(1);
    EXPECT_TRUE(is_springer_point(m, s, gl_options()).stable);
    EXPECT_EQ(m.relative_degree(), l.relative_degree() - 2);
  }
}

TEST(Lattice, FormIntegralityCutsDown) {
  SpecAlgebraAt s = spec_algebra_at("so-odd", 1, {"-w^2"}, kP);
  SpringerOptions strict = default_options("so-odd"), loose = strict;
  loose.check_form = false;
  EnumerationResult a = enumerate_lattices(s, 1, strict), b = enumerate_lattices(s, 1, loose);
  EXPECT_LT(a.lattices.size(), b.lattices.size());
  for (const auto& l : a.lattices) {
    SpringerCertificate c = is_springer_point(l, s, strict);
    EXPECT_TRUE(c.stable && c.degree == 0 && c.form_integral.value_or(false));
    EXPECT_TRUE(std::binary_search(b.lattices.begin(), b.lattices.end(), l));
  }
}

TEST(Lattice, PrecisionSoundness) {
  SpecAlgebraAt exact = spec_algebra_at("gl", 2, {"w^3", "-w^2 + w^4"}, kP);
  std::vector<LaurentLattice> pool = enumerate_lattices(exact, 1, SpringerOptions{false, std::nullopt}).lattices;
  LaurentLattice wide = LaurentLattice::from_generators({{wmono(1, -2), LaurentScalar(kP)}, {wmono(1, 0), wmono(1, -1)}}, kP);
  pool.push_back(wide);
  std::size_t abstained = 0, compared = 0;
  for (int prec = 1; prec <= 6; ++prec) {
    SpecAlgebraAt s;
    try {
      s = spec_algebra_at("gl", 2, {"w^3", "-w^2 + w^4"}, kP, prec);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InsufficientPrecision);
      ++abstained;
      continue;
    }
    for (const auto& l : pool) {
      bool truth = is_springer_point(l, exact, gl_options()).accepted;
      try {
        EXPECT_EQ(is_springer_point(l, s, gl_options()).accepted, truth) << prec;
        ++compared;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientPrecision);
        ++abstained;
      }
    }
  }
  EXPECT_GT(abstained, 0u);
  EXPECT_GT(compared, 0u);
}

TEST(Lattice, RejectsBadInput) {
  EXPECT_EQ(code_of([] { spec_algebra_at("gl", 2, {"0", "0"}, kP); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { spec_algebra_at("gl", 2, {"0"}, kP); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { spec_algebra_at("gl", 2, {"0", "-w^2"}, kP, 2); }), ErrorCode::InsufficientPrecision);
  LaurentVec vague{wmono(1, 0).truncated(0), LaurentScalar(kP)};
  EXPECT_EQ(code_of([&] { LaurentLattice::from_generators({vague, {LaurentScalar(kP), wmono(1, 0)}}, kP); }),
            ErrorCode::InsufficientPrecision);
  SpecAlgebraAt s = spec_algebra_at("gl", 2, {"0", "-w^2"}, 0);
  EXPECT_EQ(code_of([&] { enumerate_lattices(s, 1, gl_options()); }), ErrorCode::InvalidArgument);
}
