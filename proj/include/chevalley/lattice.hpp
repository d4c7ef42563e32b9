#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "g2.hpp"
#include "laurent.hpp"

namespace chevalley {

using LaurentVec = std::vector<LaurentScalar>;

// --- the spectral algebra at a point a in c(O) -----------------------------

struct SpecAlgebraAt {
  std::string group;
  std::size_t n = 0;
  std::uint64_t characteristic = 0;
  int prec = LaurentScalar::kExact;  // declared precision of the coefficients of a
  std::size_t d = 0;
  std::vector<std::string> names;  // generators of the invariant ring
  std::vector<LaurentScalar> a;
  std::vector<LaurentVec> x;  // x[i][j]: matrix of multiplication by x
  int form_arity = 0;
  std::vector<LaurentVec> gram;
  std::vector<std::array<std::size_t, 3>> triples;
  std::vector<LaurentScalar> tri;
  int discriminant_valuation = 0;
};

struct UniversalCover {
  AlgebraPtr algebra;
  std::optional<FormTensor> form;
};

// The cover over the invariant ring and its invariant tensor; the SO_2n form
// lives on the normalized cover.
inline UniversalCover universal_cover(const std::string& group, std::size_t n, std::uint64_t p) {
  if (group == "gl" || group == "sl") return {gl_cover(n, p), std::nullopt};
  if (group == "sp") {
    AlgebraPtr b = sp_cover(n, p);
    return {b, symplectic_form(b)};
  }
  if (group == "so-odd") {
    AlgebraPtr b = so_odd_cover(n, p);
    return {b, so_odd_form(b)};
  }
  if (group == "so-even") {
    AlgebraPtr b = blowup_algebra_so_even(n, p);
    return {b, so_even_form(b)};
  }
  if (group == "g2") {
    AlgebraPtr b = g2_cover(p);
    return {b, assemble_rho(b, TrZReading::full_cover)};
  }
  fail(ErrorCode::InvalidArgument, "unknown group tag '" + group + "'");
}

// Coefficients are polynomials in w; for sl the coefficient a1 is omitted and set to 0.
inline SpecAlgebraAt spec_algebra_at(const std::string& group, std::size_t n, const std::vector<std::string>& coeffs,
                                     std::uint64_t p = 5, int prec = LaurentScalar::kExact) {
  UniversalCover u = universal_cover(group, n, p);
  const RingPtr& ra = u.algebra->ring;
  RingPtr rw = ring_new({"w"}, {1}, p);
  std::vector<std::string> input = coeffs;
  if (group == "sl") input.insert(input.begin(), "0");
  if (input.size() != ra->nvars())
    fail(ErrorCode::InvalidArgument, group + " at rank " + std::to_string(n) + " needs " +
                                         std::to_string(ra->nvars() - (group == "sl")) + " coefficients");
  SpecAlgebraAt s;
  s.group = group;
  s.n = n;
  s.characteristic = p;
  s.prec = prec;
  s.d = u.algebra->rank;
  s.names = ra->names;
  std::vector<Poly> images;
  for (const auto& c : input) {
    images.push_back(parse_poly(rw, c));
    s.a.push_back(LaurentScalar::from_poly(images.back(), prec));
    if (s.a.back().known_nonzero() && s.a.back().valuation() < 0)
      fail(ErrorCode::InvalidArgument, "coefficients must be integral");
  }
  auto at = [&](const Poly& f) { return LaurentScalar::from_poly(f.substitute(rw, images), prec); };
  PolyMat xm = mult_matrix(Elem::x_of(u.algebra));
  s.x.assign(s.d, LaurentVec(s.d, LaurentScalar(p)));
  for (std::size_t i = 0; i < s.d; ++i)
    for (std::size_t j = 0; j < s.d; ++j) s.x[i][j] = at(xm(i, j));
  if (u.form) {
    s.form_arity = u.form->arity();
    if (s.form_arity == 2) {
      s.gram.assign(s.d, LaurentVec(s.d, LaurentScalar(p)));
      for (std::size_t i = 0; i < s.d; ++i)
        for (std::size_t j = 0; j < s.d; ++j) s.gram[i][j] = at(u.form->gram()(i, j));
    } else {
      s.triples = u.form->triples();
      for (const auto& v : u.form->triple_values()) s.tri.push_back(at(v));
    }
  }
  LaurentScalar disc = at(det_bareiss(trace_pairing(u.algebra).gram()));
  if (!disc.known_nonzero()) {
    if (disc.is_exact()) fail(ErrorCode::InvalidArgument, "the point is not regular semisimple: discriminant vanishes");
    fail(ErrorCode::InsufficientPrecision, "discriminant vanishes to the declared precision");
  }
  s.discriminant_valuation = disc.valuation();
  return s;
}

// A point for each group tag at rank n, regular semisimple over F_5 and Q.
inline std::vector<std::string> default_point(const std::string& group, std::size_t n) {
  if (group == "g2") return {"1 + w", "w + 2*w^2"};
  std::size_t count = group == "sl" ? n - 1 : n;
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back("w + " + std::to_string(i));
  return out;
}

// --- lattices --------------------------------------------------------------

// O-lattice in F^d held in Hermite form: column j is w^{v_j} e_j plus entries in
// rows i < j whose exponents lie below v_i.
class LaurentLattice {
 public:
  LaurentLattice() = default;

  static LaurentLattice standard(std::size_t d, std::uint64_t p) {
    std::vector<int> piv(d, 0);
    std::vector<LaurentVec> cols(d, LaurentVec(d, LaurentScalar(p)));
    for (std::size_t j = 0; j < d; ++j) cols[j][j] = LaurentScalar::constant(1, p);
    return LaurentLattice(p, std::move(piv), std::move(cols));
  }

  // Assumes the columns are already in Hermite form.
  static LaurentLattice from_hermite(std::uint64_t p, std::vector<int> pivots, std::vector<LaurentVec> columns) {
    return LaurentLattice(p, std::move(pivots), std::move(columns));
  }

  // Hermite form of the O-span of arbitrary generators, using series inverses to
  // relative precision `work`.
  static LaurentLattice from_generators(std::vector<LaurentVec> rem, std::uint64_t p, int work = 64) {
    if (rem.empty()) fail(ErrorCode::InvalidArgument, "no generators");
    std::size_t d = rem[0].size();
    std::vector<LaurentVec> piv(d);
    std::vector<int> v(d, 0);
    for (std::size_t i = d; i-- > 0;) {
      std::size_t best = rem.size();
      int bestv = 0;
      for (std::size_t k = 0; k < rem.size(); ++k) {
        const auto& e = rem[k][i];
        if (e.known_nonzero() && (best == rem.size() || e.valuation() < bestv)) {
          best = k;
          bestv = e.valuation();
        }
      }
      if (best == rem.size()) {
        for (const auto& c : rem)
          if (!c[i].is_exact()) fail(ErrorCode::InsufficientPrecision, "pivot row is zero to working precision");
        fail(ErrorCode::InvalidArgument, "generators do not span F^d");
      }
      for (const auto& c : rem)
        if (c[i].prec() < bestv) fail(ErrorCode::InsufficientPrecision, "pivot valuation undetermined");
      LaurentVec c = rem[best];
      rem.erase(rem.begin() + static_cast<long>(best));
      LaurentScalar uinv = c[i].shifted(-bestv).inverse(work);
      for (std::size_t r = 0; r < i; ++r) c[r] = c[r] * uinv;
      c[i] = LaurentScalar::monomial(LaurentScalar::scalar(1, p), bestv, p);
      for (std::size_t r = i + 1; r < d; ++r) c[r] = LaurentScalar(p);
      for (auto& col : rem) {
        LaurentScalar q = col[i].shifted(-bestv);
        if (q.known_nonzero() || !q.is_exact())
          for (std::size_t r = 0; r < i; ++r) col[r] -= q * c[r];
        col[i] = LaurentScalar(p);
      }
      piv[i] = std::move(c);
      v[i] = bestv;
    }
    LaurentLattice l(p, std::move(v), std::move(piv));
    l.reduce();
    return l;
  }

  std::size_t dim() const { return pivots_.size(); }
  std::uint64_t characteristic() const { return p_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const std::vector<LaurentVec>& basis() const { return cols_; }

  // deg(L : B_a) = dim_k(L / L cap B_a) - dim_k(B_a / L cap B_a).
  int relative_degree() const {
    int s = 0;
    for (int v : pivots_) s -= v;
    return s;
  }

  bool contains(const LaurentVec& vec) const {
    LaurentVec r = vec;
    for (std::size_t i = dim(); i-- > 0;) {
      const LaurentScalar& e = r[i];
      if (e.below(pivots_[i]).known_nonzero()) return false;
      if (e.prec() < pivots_[i]) fail(ErrorCode::InsufficientPrecision, "membership depends on truncated terms");
      LaurentScalar q = e.shifted(-pivots_[i]);
      if (q.known_nonzero() || !q.is_exact())
        for (std::size_t k = 0; k < i; ++k)
          if (!cols_[i][k].is_zero()) r[k] -= q * cols_[i][k];
    }
    return true;
  }

  LaurentLattice scaled(int k) const {
    LaurentLattice l = *this;
    for (auto& v : l.pivots_) v += k;
    for (auto& c : l.cols_)
      for (auto& e : c) e = e.shifted(k);
    return l;
  }

  // w^N B_a subset L subset w^{-N} B_a.
  bool within_box(int box) const {
    for (const auto& c : cols_)
      for (const auto& e : c)
        if (e.known_nonzero() && e.valuation() < -box) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      LaurentVec ei(dim(), LaurentScalar(p_));
      ei[i] = LaurentScalar::monomial(LaurentScalar::scalar(1, p_), box, p_);
      if (!contains(ei)) return false;
    }
    return true;
  }

  std::string key() const {
    std::string k;
    for (int v : pivots_) k += std::to_string(v) + ",";
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t i = 0; i < j; ++i) k += "|" + cols_[j][i].to_string();
    return k;
  }

  json to_json() const {
    json cols = json::array();
    for (const auto& c : cols_) {
      json col = json::array();
      for (const auto& e : c) col.push_back(e.to_string());
      cols.push_back(col);
    }
    return json{{"degree", relative_degree()}, {"pivots", pivots_}, {"basis", cols}};
  }

  friend bool operator==(const LaurentLattice& a, const LaurentLattice& b) {
    return a.pivots_ == b.pivots_ && a.cols_ == b.cols_;
  }
  friend bool operator<(const LaurentLattice& a, const LaurentLattice& b) {
    if (a.relative_degree() != b.relative_degree()) return a.relative_degree() < b.relative_degree();
    return a.key() < b.key();
  }

 private:
  LaurentLattice(std::uint64_t p, std::vector<int> piv, std::vector<LaurentVec> cols)
      : p_(p), pivots_(std::move(piv)), cols_(std::move(cols)) {}

  void reduce() {
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t i = j; i-- > 0;) {
        LaurentScalar h = cols_[j][i];
        if (h.prec() < pivots_[i]) fail(ErrorCode::InsufficientPrecision, "Hermite entry undetermined");
        LaurentScalar q = h.from(pivots_[i]).shifted(-pivots_[i]);
        for (std::size_t r = 0; r < i; ++r) cols_[j][r] -= q * cols_[i][r];
        cols_[j][i] = h.below(pivots_[i]);
      }
  }

  std::uint64_t p_ = 0;
  std::vector<int> pivots_;
  std::vector<LaurentVec> cols_;
};

// --- membership predicates -------------------------------------------------

struct SpringerOptions {
  bool check_form = true;
  std::optional<int> degree;  // required relative degree
};

inline SpringerOptions default_options(const std::string& group) {
  SpringerOptions o;
  o.check_form = group != "gl" && group != "sl";
  if (group != "gl") o.degree = 0;
  return o;
}

struct SpringerCertificate {
  bool stable = false;
  std::optional<std::size_t> unstable_column;
  std::optional<bool> form_integral;
  std::optional<std::array<std::size_t, 3>> nonintegral_at;
  int degree = 0;
  bool degree_ok = true;
  bool accepted = false;
};

inline LaurentVec apply_x(const SpecAlgebraAt& s, const LaurentVec& v) {
  LaurentVec out(s.d, LaurentScalar(s.characteristic));
  for (std::size_t i = 0; i < s.d; ++i)
    for (std::size_t j = 0; j < s.d; ++j)
      if (v[j].known_nonzero() || !v[j].is_exact())
        if (s.x[i][j].known_nonzero() || !s.x[i][j].is_exact()) out[i] += s.x[i][j] * v[j];
  return out;
}

namespace detail {

inline bool is_integral(const LaurentScalar& v) {
  if (v.known_nonzero() && v.valuation() < 0) return false;
  if (v.prec() < 0) fail(ErrorCode::InsufficientPrecision, "form value depends on truncated terms");
  return true;
}

inline LaurentScalar form_value(const SpecAlgebraAt& s, const LaurentVec& a, const LaurentVec& b) {
  LaurentScalar acc(s.characteristic);
  for (std::size_t i = 0; i < s.d; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < s.d; ++j)
      if (!b[j].is_zero() && !s.gram[i][j].is_zero()) acc += a[i] * s.gram[i][j] * b[j];
  }
  return acc;
}

inline LaurentScalar form_value(const SpecAlgebraAt& s, const LaurentVec& a, const LaurentVec& b,
                                const LaurentVec& c) {
  LaurentScalar acc(s.characteristic);
  for (std::size_t t = 0; t < s.triples.size(); ++t) {
    if (s.tri[t].is_zero()) continue;
    auto [i, j, k] = s.triples[t];
    LaurentScalar m = a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) +
                      a[k] * (b[i] * c[j] - b[j] * c[i]);
    if (!m.is_zero()) acc += m * s.tri[t];
  }
  return acc;
}

}  // namespace detail

// (i) x L subset L, (ii) the form is O-valued on L, (iii) the relative degree condition.
inline SpringerCertificate is_springer_point(const LaurentLattice& l, const SpecAlgebraAt& s,
                                             const SpringerOptions& opt) {
  if (l.dim() != s.d) fail(ErrorCode::InvalidArgument, "lattice rank differs from the cover rank");
  SpringerCertificate c;
  c.degree = l.relative_degree();
  c.degree_ok = !opt.degree || *opt.degree == c.degree;
  c.stable = true;
  for (std::size_t j = 0; j < s.d && c.stable; ++j)
    if (!l.contains(apply_x(s, l.basis()[j]))) {
      c.stable = false;
      c.unstable_column = j;
    }
  if (opt.check_form && s.form_arity > 0 && c.stable && c.degree_ok) {
    const auto& b = l.basis();
    c.form_integral = true;
    for (std::size_t i = 0; i < s.d && *c.form_integral; ++i)
      for (std::size_t j = i; j < s.d && *c.form_integral; ++j) {
        if (s.form_arity == 2) {
          if (!detail::is_integral(detail::form_value(s, b[i], b[j]))) {
            c.form_integral = false;
            c.nonintegral_at = std::array<std::size_t, 3>{i, j, j};
          }
          continue;
        }
        for (std::size_t k = j + 1; k < s.d && *c.form_integral && i < j; ++k)
          if (!detail::is_integral(detail::form_value(s, b[i], b[j], b[k]))) {
            c.form_integral = false;
            c.nonintegral_at = std::array<std::size_t, 3>{i, j, k};
          }
      }
  }
  c.accepted = c.stable && c.degree_ok && c.form_integral.value_or(true);
  return c;
}

inline SpringerCertificate is_springer_point(const LaurentLattice& l, const SpecAlgebraAt& s) {
  return is_springer_point(l, s, default_options(s.group));
}

inline json certificate_to_json(const SpringerCertificate& c) {
  json j{{"accepted", c.accepted}, {"stable", c.stable}, {"degree", c.degree}, {"degree_ok", c.degree_ok}};
  j["form_integral"] = c.form_integral ? json(*c.form_integral) : json(nullptr);
  if (c.unstable_column) j["unstable_column"] = *c.unstable_column;
  if (c.nonintegral_at) j["nonintegral_at"] = *c.nonintegral_at;
  return j;
}

// --- enumeration -----------------------------------------------------------

struct EnumerationResult {
  std::vector<LaurentLattice> lattices;  // sorted by degree, then canonical key
  std::map<int, std::size_t> counts_by_degree;
  std::size_t candidates = 0;
};

namespace detail {

struct PivotJob {
  std::vector<int> pivots;
  std::vector<std::pair<std::size_t, std::size_t>> entries;  // (i, j) with free window [-N, v_i)
  std::size_t free = 0;                                       // number of free coefficients
};

}  // namespace detail

inline constexpr double kMaxEnumerationCandidates = 5e7;

// All lattices in the box w^N B_a subset L subset w^{-N} B_a passing the
// predicates, over the finite residue field of the point.
inline EnumerationResult enumerate_lattices(const SpecAlgebraAt& s, int box, const SpringerOptions& opt,
                                            unsigned threads = 0) {
  if (box < 0) fail(ErrorCode::InvalidArgument, "box must be nonnegative");
  std::uint64_t p = s.characteristic;
  if (p == 0) fail(ErrorCode::InvalidArgument, "enumeration needs a finite residue field");
  std::size_t d = s.d;
  std::vector<detail::PivotJob> jobs;
  std::vector<int> piv(d, -box);
  double total = 0;
  for (;;) {
    int deg = 0;
    for (int v : piv) deg -= v;
    if (!opt.degree || *opt.degree == deg) {
      detail::PivotJob job{piv, {}, 0};
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (piv[i] + box > 0) {
            job.entries.push_back({i, j});
            job.free += static_cast<std::size_t>(piv[i] + box);
          }
      total += std::pow(static_cast<double>(p), static_cast<double>(job.free));
      jobs.push_back(std::move(job));
    }
    std::size_t k = 0;
    while (k < d && piv[k] == box) piv[k++] = -box;
    if (k == d) break;
    ++piv[k];
  }
  if (total > kMaxEnumerationCandidates)
    fail(ErrorCode::InvalidArgument, "box too large: " + std::to_string(static_cast<long long>(total)) + " candidates");

  // Work items: (job, first candidate index, count).
  struct Item {
    std::size_t job;
    unsigned long long start, count;
  };
  std::vector<Item> items;
  constexpr unsigned long long kChunk = 2048;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    unsigned long long n = 1;
    for (std::size_t t = 0; t < jobs[j].free; ++t) n *= p;
    for (unsigned long long st = 0; st < n; st += kChunk) items.push_back({j, st, std::min(kChunk, n - st)});
  }
  std::vector<std::vector<LaurentLattice>> found(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t it; (it = next.fetch_add(1)) < items.size();) {
      try {
        const auto& job = jobs[items[it].job];
        for (unsigned long long idx = items[it].start; idx < items[it].start + items[it].count; ++idx) {
          std::vector<LaurentVec> cols(d, LaurentVec(d, LaurentScalar(p)));
          for (std::size_t j = 0; j < d; ++j)
            cols[j][j] = LaurentScalar::monomial(LaurentScalar::scalar(1, p), job.pivots[j], p);
          unsigned long long rest = idx;
          for (auto [i, j] : job.entries)
            for (int e = -box; e < job.pivots[i]; ++e) {
              cols[j][i].add_term(e, LaurentScalar::scalar(static_cast<long long>(rest % p), p));
              rest /= p;
            }
          LaurentLattice l = LaurentLattice::from_hermite(p, job.pivots, std::move(cols));
          if (!l.within_box(box)) continue;
          if (is_springer_point(l, s, opt).accepted) found[it].push_back(std::move(l));
        }
      } catch (...) {
        errors[it] = std::current_exception();
      }
    }
  };
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  EnumerationResult r;
  r.candidates = static_cast<std::size_t>(total);
  for (auto& v : found)
    for (auto& l : v) r.lattices.push_back(std::move(l));
  std::sort(r.lattices.begin(), r.lattices.end());
  for (const auto& l : r.lattices) ++r.counts_by_degree[l.relative_degree()];
  return r;
}

inline EnumerationResult enumerate_lattices(const SpecAlgebraAt& s, int box) {
  return enumerate_lattices(s, box, default_options(s.group));
}

inline json enumeration_to_json(const SpecAlgebraAt& s, int box, const EnumerationResult& r) {
  json counts = json::object();
  for (const auto& [deg, c] : r.counts_by_degree) counts[std::to_string(deg)] = c;
  json ls = json::array();
  for (const auto& l : r.lattices) ls.push_back(l.to_json());
  json a = json::array();
  for (const auto& c : s.a) a.push_back(c.to_string());
  return json{{"group", s.group}, {"n", s.n},       {"field", s.characteristic}, {"a", a},
              {"box", box},       {"count", r.lattices.size()}, {"counts_by_degree", counts}, {"lattices", ls}};
}

}  // namespace chevalley
