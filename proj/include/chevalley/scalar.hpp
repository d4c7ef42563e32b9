#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace chevalley {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 gcd128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  do {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

inline bool fits64(i128 v) { return v >= INT64_MIN && v <= INT64_MAX; }

inline mpz_class mpz_from(i128 v) {
  bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  mpz_class hi(static_cast<unsigned long>(std::uint64_t(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(std::uint64_t(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return std::uint64_t((u128(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

// Exact element of Q or of F_p. Rationals use an int64 fast path and fall
// back to GMP when a result leaves it. A characteristic-0 value combined with
// an F_p value is mapped into F_p, so integer literals work in every ring.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int n) : num_(n) {}
  Scalar(long n) : num_(n) {}
  Scalar(long long n) : num_(n) {}
  Scalar(long long n, long long d) { set_ratio(n, d); }

  static Scalar residue(long long v, std::uint64_t p) {
    Scalar s;
    s.p_ = p;
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    s.num_ = r;
    return s;
  }

  static Scalar from_mpq(mpq_class q) {
    q.canonicalize();
    Scalar s;
    s.assign_big(std::move(q));
    return s;
  }

  // Accepts "n" or "n/d" with arbitrary-size integers.
  static Scalar parse(std::string_view text, std::uint64_t p = 0) {
    std::string t(text);
    if (t.empty()) fail(ErrorCode::ParseError, "empty number");
    for (char ch : t)
      if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
        fail(ErrorCode::ParseError, "bad number '" + t + "'");
    mpq_class q;
    try {
      if (t[0] == '+') t.erase(0, 1);
      q.set_str(t, 10);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad number '" + t + "'");
    }
    if (q.get_den() == 0) fail(ErrorCode::DivisionByZeroPoly, "zero denominator in '" + t + "'");
    Scalar s = from_mpq(q);
    return p ? s.lift(p) : s;
  }

  std::uint64_t characteristic() const { return p_; }
  bool is_big() const { return static_cast<bool>(big_); }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const {
    if (p_) return num_ == 0 ? 0 : 1;
    return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
  }
  mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
  mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }
  // Only meaningful for F_p values.
  std::uint64_t residue_value() const { return std::uint64_t(num_); }

  // Image in F_p of a characteristic-0 value.
  Scalar lift(std::uint64_t p) const {
    if (p_ == p) return *this;
    if (p_ != 0) fail(ErrorCode::RingMismatch, "scalars of different characteristic");
    if (p == 0) return *this;
    mpz_class n = numerator() % mpz_class(static_cast<unsigned long>(p));
    mpz_class d = denominator() % mpz_class(static_cast<unsigned long>(p));
    if (n < 0) n += static_cast<unsigned long>(p);
    if (d == 0) fail(ErrorCode::DivisionByZeroPoly, "denominator divisible by the characteristic");
    std::uint64_t nn = n.get_ui(), dd = d.get_ui();
    Scalar s;
    s.p_ = p;
    s.num_ = static_cast<long long>(detail::mulmod(nn, detail::powmod(dd, p - 2, p), p));
    return s;
  }

  Scalar operator-() const {
    Scalar r = *this;
    if (p_) {
      if (num_) r.num_ = static_cast<long long>(p_) - num_;
    } else if (big_) {
      r.assign_big(-*big_);
    } else if (num_ == INT64_MIN) {
      r.assign_big(-to_mpq());
    } else {
      r.num_ = -num_;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.p_ || b.p_) {
      std::uint64_t p = common_p(a, b);
      Scalar x = a.lift(p), y = b.lift(p), r;
      r.p_ = p;
      std::uint64_t s = std::uint64_t(x.num_) + std::uint64_t(y.num_);
      if (s >= p) s -= p;
      r.num_ = static_cast<long long>(s);
      return r;
    }
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return from_i128(detail::i128(a.num_) + b.num_, 1);
      detail::i128 n = detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_;
      detail::i128 d = detail::i128(a.den_) * b.den_;
      return from_i128(n, d);
    }
    return from_mpq(a.to_mpq() + b.to_mpq());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.p_ || b.p_) {
      std::uint64_t p = common_p(a, b);
      Scalar x = a.lift(p), y = b.lift(p), r;
      r.p_ = p;
      r.num_ = static_cast<long long>(detail::mulmod(std::uint64_t(x.num_), std::uint64_t(y.num_), p));
      return r;
    }
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return from_i128(detail::i128(a.num_) * b.num_, 1);
      return from_i128(detail::i128(a.num_) * b.num_, detail::i128(a.den_) * b.den_);
    }
    return from_mpq(a.to_mpq() * b.to_mpq());
  }

  Scalar inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZeroPoly, "inverse of zero");
    if (p_) {
      Scalar r;
      r.p_ = p_;
      r.num_ = static_cast<long long>(detail::powmod(std::uint64_t(num_), p_ - 2, p_));
      return r;
    }
    if (!big_) return from_i128(den_, num_);
    return from_mpq(1 / *big_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) {
      std::uint64_t p = common_p(a, b);
      return a.lift(p) == b.lift(p);
    }
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical form: small values are never stored big
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static std::uint64_t common_p(const Scalar& a, const Scalar& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) fail(ErrorCode::RingMismatch, "scalars of different characteristic");
    return a.p_ ? a.p_ : b.p_;
  }

  void set_ratio(long long n, long long d) {
    if (d == 0) fail(ErrorCode::DivisionByZeroPoly, "zero denominator");
    *this = from_i128(n, d);
  }

  static Scalar from_i128(detail::i128 n, detail::i128 d) {
    if (d == 0) fail(ErrorCode::DivisionByZeroPoly, "zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (d != 1) {
      detail::u128 g = detail::gcd128(n < 0 ? detail::u128(0) - detail::u128(n) : detail::u128(n), detail::u128(d));
      if (g > 1) {
        n /= detail::i128(g);
        d /= detail::i128(g);
      }
    }
    Scalar s;
    if (detail::fits64(n) && detail::fits64(d)) {
      s.num_ = static_cast<long long>(n);
      s.den_ = static_cast<long long>(d);
      return s;
    }
    mpq_class q(detail::mpz_from(n), detail::mpz_from(d));
    s.assign_big(std::move(q));
    return s;
  }

  void assign_big(mpq_class q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      big_.reset();
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      return;
    }
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }

  long long num_ = 0;
  long long den_ = 1;
  std::uint64_t p_ = 0;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace chevalley
