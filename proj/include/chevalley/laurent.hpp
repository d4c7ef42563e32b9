#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>

#include "polyring.hpp"

namespace chevalley {

// Truncated Laurent series in w over Q or F_p. Coefficients are known exactly
// for exponents below prec(); exact values have prec() == kExact.
class LaurentScalar {
 public:
  static constexpr int kExact = INT_MAX / 4;

  explicit LaurentScalar(std::uint64_t p = 0, int prec = kExact) : p_(p), prec_(prec) {}

  static LaurentScalar monomial(const Scalar& c, int v, std::uint64_t p) {
    LaurentScalar s(p);
    s.add_term(v, c);
    return s;
  }
  static LaurentScalar constant(long long c, std::uint64_t p) { return monomial(scalar(c, p), 0, p); }

  // A polynomial in the single generator of r, with declared precision.
  static LaurentScalar from_poly(const Poly& f, int prec = kExact) {
    std::uint64_t p = f.ring() ? f.ring()->characteristic : 0;
    LaurentScalar s(p, prec);
    for (const auto& t : f.terms()) {
      int v = f.ring() && f.ring()->nvars() ? static_cast<int>(mono::exp(t.m, 0)) : 0;
      if (v < prec) s.add_term(v, t.c);
    }
    return s;
  }

  static Scalar scalar(long long c, std::uint64_t p) { return p ? Scalar::residue(c, p) : Scalar(c); }

  std::uint64_t characteristic() const { return p_; }
  int prec() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  const std::map<int, Scalar>& terms() const { return terms_; }

  // Smallest exponent with a known nonzero coefficient, or prec() when none is known.
  int valuation() const { return terms_.empty() ? prec_ : terms_.begin()->first; }
  bool known_nonzero() const { return !terms_.empty(); }
  bool is_zero() const { return terms_.empty() && is_exact(); }

  Scalar coeff(int v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? scalar(0, p_) : it->second;
  }

  void add_term(int v, const Scalar& c) {
    if (v >= prec_ || c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(v, p_ ? c.lift(p_) : c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentScalar truncated(int prec) const {
    LaurentScalar s(p_, std::min(prec, prec_));
    for (const auto& [v, c] : terms_)
      if (v < s.prec_) s.terms_.emplace(v, c);
    return s;
  }

  // Terms of exponent < v, exact.
  LaurentScalar below(int v) const {
    LaurentScalar s(p_);
    for (const auto& [e, c] : terms_)
      if (e < v) s.terms_.emplace(e, c);
    return s;
  }
  // Terms of exponent >= v, keeping the precision.
  LaurentScalar from(int v) const {
    LaurentScalar s(p_, prec_);
    for (const auto& [e, c] : terms_)
      if (e >= v) s.terms_.emplace(e, c);
    return s;
  }

  // Multiplication by w^k.
  LaurentScalar shifted(int k) const {
    LaurentScalar s(p_, is_exact() ? kExact : prec_ + k);
    for (const auto& [v, c] : terms_) s.terms_.emplace(v + k, c);
    return s;
  }

  LaurentScalar operator-() const {
    LaurentScalar s(p_, prec_);
    for (const auto& [v, c] : terms_) s.terms_.emplace(v, -c);
    return s;
  }

  friend LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar s(common(a, b), std::min(a.prec_, b.prec_));
    for (const auto& [v, c] : a.terms_) s.add_term(v, c);
    for (const auto& [v, c] : b.terms_) s.add_term(v, c);
    return s;
  }
  friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) { return a + (-b); }

  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    long long pa = a.is_exact() ? kExact : static_cast<long long>(a.prec_) + b.valuation();
    long long pb = b.is_exact() ? kExact : static_cast<long long>(b.prec_) + a.valuation();
    if (a.is_zero() || b.is_zero()) pa = pb = kExact;
    LaurentScalar s(common(a, b), static_cast<int>(std::clamp<long long>(std::min(pa, pb), -kExact, kExact)));
    for (const auto& [va, ca] : a.terms_)
      for (const auto& [vb, cb] : b.terms_)
        if (va + vb < s.prec_) s.add_term(va + vb, ca * cb);
    return s;
  }

  LaurentScalar& operator+=(const LaurentScalar& o) { return *this = *this + o; }
  LaurentScalar& operator-=(const LaurentScalar& o) { return *this = *this - o; }

  // Inverse to relative precision min(prec() - valuation(), work).
  LaurentScalar inverse(int work) const {
    if (terms_.empty()) fail(ErrorCode::InsufficientPrecision, "inverse of a series with no known leading term");
    int v0 = valuation();
    int rel = is_exact() ? work : std::min(work, prec_ - v0);
    Scalar c0inv = terms_.begin()->second.inverse();
    std::vector<Scalar> u(static_cast<std::size_t>(rel), scalar(0, p_)), b(u);
    for (const auto& [v, c] : terms_)
      if (v - v0 < rel) u[static_cast<std::size_t>(v - v0)] = c;
    for (int k = 0; k < rel; ++k) {
      Scalar acc = k == 0 ? scalar(1, p_) : scalar(0, p_);
      for (int i = 1; i <= k; ++i) acc -= u[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
      b[static_cast<std::size_t>(k)] = acc * c0inv;
    }
    LaurentScalar s(p_, rel - v0);
    for (int k = 0; k < rel; ++k) s.add_term(k - v0, b[static_cast<std::size_t>(k)]);
    return s;
  }

  // Equality of the known windows: both values agree below the common precision.
  friend bool agree(const LaurentScalar& a, const LaurentScalar& b) {
    return (a - b).terms_.empty();
  }
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
    return a.prec_ == b.prec_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [v, c] : terms_) {
      std::string cs = c.to_string();
      bool neg = !cs.empty() && cs[0] == '-';
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      if (neg) cs = cs.substr(1);
      if (v == 0) {
        out += cs;
        continue;
      }
      if (cs != "1") out += cs + "*";
      out += v == 1 ? "w" : "w^" + (v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v));
    }
    if (!is_exact()) out += (out.empty() ? "" : " + ") + std::string("O(w^") + std::to_string(prec_) + ")";
    return out.empty() ? "0" : out;
  }

 private:
  static std::uint64_t common(const LaurentScalar& a, const LaurentScalar& b) {
    if (a.p_ != b.p_ && a.p_ && b.p_) fail(ErrorCode::RingMismatch, "series of different characteristic");
    return a.p_ ? a.p_ : b.p_;
  }

  std::uint64_t p_ = 0;
  int prec_ = kExact;
  std::map<int, Scalar> terms_;
};

}  // namespace chevalley
