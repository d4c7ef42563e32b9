#pragma once

#include <optional>
#include <string>

#include "polyring.hpp"

namespace chevalley {

// Element of the fraction field. Normalization is deferred: arithmetic only
// cancels when one denominator divides the other; equality and
// is_polynomial work on any representative.
class RatFunc {
 public:
  RatFunc() : den_(RingPtr(), Scalar(1)) {}
  RatFunc(const Poly& p) : num_(p), den_(p.ring(), Scalar(1)) {}  // NOLINT implicit lift
  RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) fail(ErrorCode::DivisionByZeroPoly, "zero denominator");
    Poly::common_ring(num_, den_);
  }
  RatFunc(const RingPtr& r, long long c) : num_(r, c), den_(r, Scalar(1)) {}

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring() ? num_.ring() : den_.ring(); }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const { return RatFunc(-num_, den_, Raw{}); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return combine(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return combine(a, b, true); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(Poly(Poly::common_ring(a.num_, b.num_)), one_like(a, b), Raw{});
    if (a.den_.is_unit() && b.den_.is_unit()) {
      Scalar s = (a.den_.constant_value() * b.den_.constant_value()).inverse();
      return RatFunc(a.num_ * b.num_ * s, one_like(a, b), Raw{});
    }
    // Cheap cross-cancellation when a denominator divides the other numerator.
    Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_unit())
      if (auto q = exact_div(an, bd)) {
        an = *q;
        bd = Poly(bd.ring(), Scalar(1));
      }
    if (!ad.is_unit())
      if (auto q = exact_div(bn, ad)) {
        bn = *q;
        ad = Poly(ad.ring(), Scalar(1));
      }
    return RatFunc(an * bn, ad * bd, Raw{});
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZeroPoly, "division by zero");
    return a * RatFunc(b.den_, b.num_, Raw{});
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZeroPoly, "inverse of zero");
    return RatFunc(den_, num_, Raw{});
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // The polynomial this fraction equals, if the denominator divides.
  std::optional<Poly> is_polynomial() const {
    if (den_.is_unit()) return num_ * den_.constant_value().inverse();
    return exact_div(num_, den_);
  }

  // Lowest terms with a normalized denominator.
  RatFunc normalized() const {
    if (num_.is_zero()) return RatFunc(num_, Poly(den_.ring(), Scalar(1)), Raw{});
    Poly g = poly_gcd(num_, den_);
    Poly n = *exact_div(num_, g), d = *exact_div(den_, g);
    Scalar u = d.lead().c.inverse();
    if (d.ring()->characteristic == 0) {
      Poly dn = normalize_unit(d);
      u = dn.lead().c / d.lead().c;
    }
    return RatFunc(n * u, d * u, Raw{});
  }

  std::string to_string() const {
    if (den_.is_unit() && den_.constant_value().is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  struct Raw {};
  RatFunc(Poly n, Poly d, Raw) : num_(std::move(n)), den_(std::move(d)) {}

  static Poly one_like(const RatFunc& a, const RatFunc& b) { return Poly(Poly::common_ring(a.den_, b.den_), Scalar(1)); }

  static RatFunc combine(const RatFunc& a, const RatFunc& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    const Poly& bn = b.num_;
    if (a.den_ == b.den_) return RatFunc(subtract ? a.num_ - bn : a.num_ + bn, a.den_, Raw{});
    if (a.den_.is_unit() && b.den_.is_unit()) {
      Scalar sa = a.den_.constant_value().inverse(), sb = b.den_.constant_value().inverse();
      Poly n = subtract ? a.num_ * sa - bn * sb : a.num_ * sa + bn * sb;
      return RatFunc(n, Poly(n.ring() ? n.ring() : a.den_.ring(), Scalar(1)), Raw{});
    }
    if (auto q = exact_div(b.den_, a.den_)) {
      Poly n = a.num_ * *q;
      return RatFunc(subtract ? n - bn : n + bn, b.den_, Raw{});
    }
    if (auto q = exact_div(a.den_, b.den_)) {
      Poly m = bn * *q;
      return RatFunc(subtract ? a.num_ - m : a.num_ + m, a.den_, Raw{});
    }
    Poly n1 = a.num_ * b.den_, n2 = bn * a.den_;
    return RatFunc(subtract ? n1 - n2 : n1 + n2, a.den_ * b.den_, Raw{});
  }

  Poly num_;
  Poly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

}  // namespace chevalley
