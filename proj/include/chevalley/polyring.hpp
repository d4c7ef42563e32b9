#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <ostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace chevalley {

// Characteristic restrictions imposed by the group a ring is built for.
enum class RingContext { generic, classical, g2 };

struct PolyRing {
  std::vector<std::string> names;
  std::vector<int> weights;
  std::uint64_t characteristic = 0;

  std::size_t nvars() const { return names.size(); }
  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.names == b.names && a.weights == b.weights && a.characteristic == b.characteristic;
  }
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline constexpr std::size_t kMaxVars = 8;
inline constexpr unsigned kMaxExponent = 255;

inline RingPtr ring_new(std::vector<std::string> names, std::vector<int> weights, std::uint64_t characteristic = 0,
                        RingContext ctx = RingContext::generic) {
  if (names.size() != weights.size()) fail(ErrorCode::InvalidArgument, "one weight per generator required");
  if (names.size() > kMaxVars) fail(ErrorCode::InvalidArgument, "at most 8 generators are supported");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])))
      fail(ErrorCode::InvalidArgument, "generator names must start with a letter");
    if (!seen.insert(n).second) fail(ErrorCode::DuplicateGenerator, n);
  }
  for (int w : weights)
    if (w <= 0) fail(ErrorCode::InvalidArgument, "gradings must be positive");
  if (characteristic != 0 && !detail::is_prime(characteristic))
    fail(ErrorCode::BadCharacteristic, std::to_string(characteristic) + " is not prime");
  if (characteristic >= (std::uint64_t(1) << 62)) fail(ErrorCode::BadCharacteristic, "characteristic too large");
  if (ctx == RingContext::classical && characteristic == 2)
    fail(ErrorCode::BadCharacteristic, "symplectic and orthogonal groups need characteristic != 2");
  if (ctx == RingContext::g2 && (characteristic == 2 || characteristic == 3 || characteristic == 7))
    fail(ErrorCode::BadCharacteristic, "G2 needs characteristic outside {2,3,7}");
  auto r = std::make_shared<PolyRing>();
  r->names = std::move(names);
  r->weights = std::move(weights);
  r->characteristic = characteristic;
  return r;
}

// Exponent vector packed 8 bits per generator, generator 0 most significant,
// so integer comparison is lexicographic order.
using Mono = std::uint64_t;

namespace mono {

inline constexpr unsigned shift(std::size_t i) { return static_cast<unsigned>(56 - 8 * i); }
inline unsigned exp(Mono m, std::size_t i) { return unsigned((m >> shift(i)) & 0xFF); }
inline Mono single(std::size_t i, unsigned e) {
  if (e > kMaxExponent) fail(ErrorCode::InvalidArgument, "exponent overflow");
  return Mono(e) << shift(i);
}
inline constexpr Mono kCarryMask = 0x0101010101010100ULL;
inline Mono mul(Mono a, Mono b) {
  Mono s = a + b;
  if (((a ^ b ^ s) & kCarryMask) != 0 || s < a) fail(ErrorCode::InvalidArgument, "exponent overflow");
  return s;
}
inline bool divides(Mono b, Mono a) {
  Mono d = a - b;
  return a >= b && ((a ^ b ^ d) & kCarryMask) == 0;
}
inline int wdeg(Mono m, const PolyRing& r) {
  int d = 0;
  for (std::size_t i = 0; i < r.nvars(); ++i) d += r.weights[i] * int(exp(m, i));
  return d;
}

}  // namespace mono

struct Term {
  Mono m = 0;
  int wdeg = 0;
  Scalar c;
};

// Descending weighted graded-lex order.
inline bool term_greater(const Term& a, const Term& b) { return a.wdeg != b.wdeg ? a.wdeg > b.wdeg : a.m > b.m; }
inline bool key_greater(int da, Mono ma, int db, Mono mb) { return da != db ? da > db : ma > mb; }

class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr r) : ring_(std::move(r)) {}
  Poly(RingPtr r, const Scalar& c) : ring_(std::move(r)) {
    if (!c.is_zero()) terms_.push_back({0, 0, ring_ ? c.lift(ring_->characteristic) : c});
  }
  Poly(RingPtr r, long long c) : Poly(std::move(r), Scalar(c)) {}

  static Poly var(RingPtr r, std::size_t i, unsigned e = 1) {
    if (i >= r->nvars()) fail(ErrorCode::InvalidArgument, "generator index out of range");
    Poly p(r);
    Mono m = mono::single(i, e);
    p.terms_.push_back({m, mono::wdeg(m, *r), Scalar(1).lift(r->characteristic)});
    return p;
  }
  static Poly var(RingPtr r, std::string_view name) {
    int i = r->index_of(name);
    if (i < 0) fail(ErrorCode::InvalidArgument, "unknown generator '" + std::string(name) + "'");
    return var(std::move(r), static_cast<std::size_t>(i));
  }
  static Poly monomial(RingPtr r, const std::vector<unsigned>& exps, const Scalar& c) {
    if (exps.size() != r->nvars()) fail(ErrorCode::InvalidArgument, "exponent vector length mismatch");
    Poly p(r);
    if (c.is_zero()) return p;
    Mono m = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) m |= mono::single(i, exps[i]);
    p.terms_.push_back({m, mono::wdeg(m, *r), c.lift(r->characteristic)});
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m == 0); }
  Scalar constant_value() const {
    if (terms_.empty()) return Scalar(0);
    const Term& t = terms_.back();
    return t.m == 0 ? t.c : Scalar(0);
  }
  // Nonzero constant.
  bool is_unit() const { return terms_.size() == 1 && terms_[0].m == 0; }
  const Term& lead() const { return terms_.front(); }

  int wdeg() const { return terms_.empty() ? -1 : terms_.front().wdeg; }
  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.wdeg == terms_.front().wdeg; });
  }
  unsigned degree_in(std::size_t v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, mono::exp(t.m, v));
    return d;
  }
  bool involves(std::size_t v) const { return degree_in(v) > 0; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const Poly& a, const Scalar& s) {
    Poly r(a.ring_);
    if (s.is_zero()) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.c = t.c * s;
    return r;
  }
  friend Poly operator*(const Scalar& s, const Poly& a) { return a * s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    RingPtr r = common_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(r);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0], r);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0], r);
    return mul_general(a, b, r);
  }

  Poly pow(unsigned e) const {
    Poly result(ring_, Scalar(1));
    Poly base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!a.terms_.empty()) common_ring(a, b);
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Exact quotient a / b, or nullopt when b does not divide a.
  friend std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
    RingPtr r = common_ring(a, b);
    if (b.is_zero()) fail(ErrorCode::DivisionByZeroPoly, "division by the zero polynomial");
    if (a.is_zero()) return Poly(r);
    if (b.terms_.size() == 1) {
      const Term& d = b.terms_[0];
      Scalar inv = d.c.inverse();
      Poly q(r);
      q.terms_.reserve(a.terms_.size());
      for (const auto& t : a.terms_) {
        if (!mono::divides(d.m, t.m)) return std::nullopt;
        q.terms_.push_back({t.m - d.m, t.wdeg - d.wdeg, t.c * inv});
      }
      return q;
    }
    using Key = std::pair<int, Mono>;
    auto cmp = [](const Key& x, const Key& y) { return key_greater(x.first, x.second, y.first, y.second); };
    std::map<Key, Scalar, decltype(cmp)> rem(cmp);
    for (const auto& t : a.terms_) rem.emplace(Key{t.wdeg, t.m}, t.c);
    const Term& ld = b.terms_[0];
    Scalar inv = ld.c.inverse();
    Poly q(r);
    while (!rem.empty()) {
      auto it = rem.begin();
      if (it->second.is_zero()) {
        rem.erase(it);
        continue;
      }
      if (!mono::divides(ld.m, it->first.second)) return std::nullopt;
      Term qt{it->first.second - ld.m, it->first.first - ld.wdeg, it->second * inv};
      rem.erase(it);
      for (std::size_t k = 1; k < b.terms_.size(); ++k) {
        const Term& bt = b.terms_[k];
        Key key{qt.wdeg + bt.wdeg, mono::mul(qt.m, bt.m)};
        Scalar v = -(qt.c * bt.c);
        auto [pos, inserted] = rem.emplace(key, v);
        if (!inserted) {
          pos->second += v;
          if (pos->second.is_zero()) rem.erase(pos);
        }
      }
      q.terms_.push_back(std::move(qt));
    }
    return q;
  }

  // Evaluates generator i at images[i], landing in the ring of the images.
  Poly substitute(RingPtr target, const std::vector<Poly>& images) const {
    if (!ring_) return is_zero() ? Poly(target) : Poly(target, terms_.front().c.lift(target->characteristic));
    if (images.size() != ring_->nvars()) fail(ErrorCode::InvalidArgument, "one image per generator required");
    std::vector<std::vector<Poly>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> const Poly& {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly(target, Scalar(1)));
      while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
      return pw[e];
    };
    Poly out(target);
    for (const auto& t : terms_) {
      if (t.c.characteristic() != 0 && t.c.characteristic() != target->characteristic)
        fail(ErrorCode::RingMismatch, "cannot map between characteristics");
      Poly prod(target, t.c.lift(target->characteristic));
      for (std::size_t i = 0; i < images.size(); ++i) {
        unsigned e = mono::exp(t.m, i);
        if (e) prod = prod * power(i, e);
      }
      out += prod;
    }
    return out;
  }

  // Coefficient of v^k, viewed as a polynomial in the other generators.
  Poly coeff_in(std::size_t v, unsigned k) const {
    Poly out(ring_);
    Mono mask = Mono(0xFF) << mono::shift(v);
    for (const auto& t : terms_)
      if (mono::exp(t.m, v) == k) {
        Mono m = t.m & ~mask;
        out.terms_.push_back({m, mono::wdeg(m, *ring_), t.c});
      }
    std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
    return out;
  }

  std::string to_string() const;

  // Builds a polynomial from terms in arbitrary order, combining duplicates.
  static Poly from_terms(RingPtr r, std::vector<Term> ts) {
    Poly p(std::move(r));
    for (auto& t : ts) {
      t.wdeg = mono::wdeg(t.m, *p.ring_);
      t.c = t.c.lift(p.ring_->characteristic);
    }
    std::sort(ts.begin(), ts.end(), term_greater);
    for (auto& t : ts) {
      if (!p.terms_.empty() && p.terms_.back().m == t.m)
        p.terms_.back().c += t.c;
      else
        p.terms_.push_back(std::move(t));
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.c.is_zero(); });
    return p;
  }

  static RingPtr common_ring(const Poly& a, const Poly& b) {
    if (!a.ring_) return b.ring_;
    if (!b.ring_ || a.ring_ == b.ring_) return a.ring_;
    if (!(*a.ring_ == *b.ring_)) fail(ErrorCode::RingMismatch, "polynomials from different rings");
    return a.ring_;
  }

 private:
  Poly mul_term(const Term& s, const RingPtr& r) const {
    Poly out(r);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Scalar c = t.c * s.c;
      if (!c.is_zero()) out.terms_.push_back({mono::mul(t.m, s.m), t.wdeg + s.wdeg, std::move(c)});
    }
    return out;
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    RingPtr r = common_ring(a, b);
    Poly out(r);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && term_greater(a.terms_[i], b.terms_[j]))) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || term_greater(b.terms_[j], a.terms_[i])) {
        Term t = b.terms_[j++];
        if (subtract) t.c = -t.c;
        out.terms_.push_back(std::move(t));
      } else {
        Scalar c = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
        if (!c.is_zero()) out.terms_.push_back({a.terms_[i].m, a.terms_[i].wdeg, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  static Poly mul_general(const Poly& a, const Poly& b, const RingPtr& r) {
    // Open-addressing accumulation keyed by the packed monomial.
    std::size_t want = a.terms_.size() * b.terms_.size();
    std::size_t cap = 16;
    while (cap < 2 * want && cap < (std::size_t(1) << 26)) cap <<= 1;
    std::vector<Mono> keys(cap);
    std::vector<int> degs(cap);
    std::vector<Scalar> vals(cap);
    std::vector<char> used(cap, 0);
    std::size_t count = 0;
    auto grow = [&]() {
      std::vector<Mono> k2(cap * 2);
      std::vector<int> d2(cap * 2);
      std::vector<Scalar> v2(cap * 2);
      std::vector<char> u2(cap * 2, 0);
      for (std::size_t s = 0; s < cap; ++s) {
        if (!used[s]) continue;
        std::size_t h = hash(keys[s]) & (cap * 2 - 1);
        while (u2[h]) h = (h + 1) & (cap * 2 - 1);
        u2[h] = 1;
        k2[h] = keys[s];
        d2[h] = degs[s];
        v2[h] = std::move(vals[s]);
      }
      cap *= 2;
      keys.swap(k2);
      degs.swap(d2);
      vals.swap(v2);
      used.swap(u2);
    };
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) {
        Mono m = mono::mul(x.m, y.m);
        std::size_t h = hash(m) & (cap - 1);
        while (used[h] && keys[h] != m) h = (h + 1) & (cap - 1);
        if (used[h]) {
          vals[h] += x.c * y.c;
        } else {
          used[h] = 1;
          keys[h] = m;
          degs[h] = x.wdeg + y.wdeg;
          vals[h] = x.c * y.c;
          if (++count * 2 > cap) grow();
        }
      }
    Poly out(r);
    out.terms_.reserve(count);
    for (std::size_t s = 0; s < cap; ++s)
      if (used[s] && !vals[s].is_zero()) out.terms_.push_back({keys[s], degs[s], std::move(vals[s])});
    std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
    return out;
  }

  static std::size_t hash(Mono m) {
    m ^= m >> 33;
    m *= 0xff51afd7ed558ccdULL;
    m ^= m >> 33;
    return static_cast<std::size_t>(m);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

inline Poly operator+(const Poly& a, long long c) { return a + Poly(a.ring(), c); }
inline Poly operator*(const Poly& a, long long c) { return a * Scalar(c); }
inline Poly operator*(long long c, const Poly& a) { return a * Scalar(c); }

inline std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mon;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      unsigned e = mono::exp(t.m, i);
      if (!e) continue;
      if (!mon.empty()) mon += "*";
      mon += ring_->names[i];
      if (e > 1) mon += "^" + std::to_string(e);
    }
    Scalar c = t.c;
    bool neg = ring_->characteristic == 0 && c.sign() < 0;
    if (neg) c = -c;
    std::string coef = c.to_string();
    std::string body;
    if (mon.empty())
      body = coef;
    else if (c.is_one())
      body = mon;
    else
      body = coef + "*" + mon;
    if (first)
      out += neg ? "-" + body : body;
    else
      out += neg ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

// --- parsing -------------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  PolyParser(RingPtr r, std::string_view s) : r_(std::move(r)), s_(s) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  Poly expr() {
    Poly acc(r_);
    bool first = true;
    for (;;) {
      int sign = 1;
      if (peek('+')) {
        ++pos_;
      } else if (peek('-')) {
        ++pos_;
        sign = -1;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
      skip();
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * power();
      } else if (peek('/')) {
        ++pos_;
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) error("division by a non-constant or zero");
        acc = acc * d.constant_value().inverse();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > kMaxExponent) error("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly(r_, Scalar::parse(s_.substr(start, pos_ - start), r_->characteristic));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      int i = r_->index_of(name);
      if (i < 0) error("unknown generator '" + name + "'");
      return Poly::var(r_, static_cast<std::size_t>(i));
    }
    error("unexpected character");
  }

  RingPtr r_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const RingPtr& r, std::string_view text) { return detail::PolyParser(r, text).run(); }

// --- gcd -----------------------------------------------------------------

// Unit multiple with positive integer primitive coefficients (char 0) or
// monic leading term (char p).
inline Poly normalize_unit(const Poly& p) {
  if (p.is_zero()) return p;
  if (p.ring()->characteristic) return p * p.lead().c.inverse();
  mpz_class g = 0, l = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.numerator().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.denominator().get_mpz_t());
  }
  mpq_class f(l, g);
  if (p.lead().c.sign() < 0) f = -f;
  return p * Scalar::from_mpq(f);
}

namespace detail {

inline Poly content_in(const Poly& p, std::size_t v);
inline Poly poly_gcd_impl(const Poly& a, const Poly& b);

inline Poly pseudo_rem(Poly a, const Poly& b, std::size_t v) {
  unsigned n = b.degree_in(v);
  Poly lcb = b.coeff_in(v, n);
  while (!a.is_zero() && a.degree_in(v) >= n) {
    unsigned m = a.degree_in(v);
    Poly lca = a.coeff_in(v, m);
    a = lcb * a - lca * Poly::var(a.ring(), v, m - n) * b;
  }
  return a;
}

inline Poly content_in(const Poly& p, std::size_t v) {
  Poly g(p.ring());
  unsigned d = p.degree_in(v);
  for (unsigned k = 0; k <= d; ++k) {
    Poly c = p.coeff_in(v, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_unit(c) : poly_gcd_impl(g, c);
    if (g.is_unit()) break;
  }
  return g;
}

inline Poly primitive_in(const Poly& p, std::size_t v) {
  if (p.is_zero()) return p;
  return *exact_div(p, content_in(p, v));
}

inline Poly poly_gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  if (a.is_constant() || b.is_constant()) return Poly(a.ring(), Scalar(1));
  std::size_t nv = a.ring()->nvars();
  std::size_t v = nv;
  for (std::size_t i = 0; i < nv; ++i)
    if (a.involves(i) || b.involves(i)) {
      v = i;
      break;
    }
  if (!a.involves(v)) return poly_gcd_impl(a, content_in(b, v));
  if (!b.involves(v)) return poly_gcd_impl(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = *exact_div(a, ca), pb = *exact_div(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    Poly r = pseudo_rem(pa, pb, v);
    pa = pb;
    pb = r.is_zero() ? r : primitive_in(r, v);
    if (!pb.is_zero() && !pb.involves(v)) {
      pa = Poly(a.ring(), Scalar(1));
      break;
    }
  }
  Poly g = pa.involves(v) ? primitive_in(pa, v) : Poly(a.ring(), Scalar(1));
  return normalize_unit(poly_gcd_impl(ca, cb) * g);
}

}  // namespace detail

inline Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly::common_ring(a, b);
  return detail::poly_gcd_impl(a, b);
}

}  // namespace chevalley
