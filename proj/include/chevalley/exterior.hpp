#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "tensor.hpp"

namespace chevalley {

// Alternating form on a free module of rank <= 32. The coefficient stored at
// a bitmask is the value on the sorted tuple of basis vectors it selects.
template <class T>
class AltForm {
 public:
  AltForm() = default;
  explicit AltForm(std::size_t dim) : dim_(dim) {}

  static AltForm one_form(const std::vector<T>& values) {
    AltForm a(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!values[i].is_zero()) a.terms_[std::uint32_t(1) << i] = values[i];
    return a;
  }

  std::size_t dim() const { return dim_; }
  const std::map<std::uint32_t, T>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coeff(std::uint32_t mask, const T& zero) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? zero : it->second;
  }

  void add(std::uint32_t mask, const T& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = terms_.emplace(mask, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend AltForm operator+(const AltForm& a, const AltForm& b) {
    AltForm r = a;
    r.dim_ = std::max(a.dim_, b.dim_);
    for (const auto& [m, v] : b.terms_) r.add(m, v);
    return r;
  }
  friend AltForm operator-(const AltForm& a, const AltForm& b) {
    AltForm r = a;
    r.dim_ = std::max(a.dim_, b.dim_);
    for (const auto& [m, v] : b.terms_) r.add(m, -v);
    return r;
  }
  friend AltForm operator*(const T& s, const AltForm& a) {
    AltForm r(a.dim_);
    for (const auto& [m, v] : a.terms_) r.add(m, s * v);
    return r;
  }

  // Shuffle product: (a ^ b)(e_I) = sum over splittings of sign * a * b.
  friend AltForm wedge(const AltForm& a, const AltForm& b) {
    AltForm r(std::max(a.dim_, b.dim_));
    for (const auto& [ma, va] : a.terms_)
      for (const auto& [mb, vb] : b.terms_) {
        if (ma & mb) continue;
        r.add(ma | mb, shuffle_sign(ma, mb) > 0 ? va * vb : -(va * vb));
      }
    return r;
  }

  // Insertion of e_i into the first slot.
  AltForm contract(std::size_t i) const {
    AltForm r(dim_);
    std::uint32_t bit = std::uint32_t(1) << i;
    for (const auto& [m, v] : terms_) {
      if (!(m & bit)) continue;
      int below = std::popcount(m & (bit - 1));
      r.add(m & ~bit, below % 2 ? -v : v);
    }
    return r;
  }

  friend bool operator==(const AltForm& a, const AltForm& b) { return a.terms_ == b.terms_; }

 private:
  // Sign of the permutation sorting (elements of a, then elements of b).
  static int shuffle_sign(std::uint32_t a, std::uint32_t b) {
    int inv = 0;
    for (std::uint32_t bb = b; bb; bb &= bb - 1) {
      std::uint32_t low = bb & (~bb + 1);
      inv += std::popcount(a & ~(low - 1) & ~low);
    }
    return inv % 2 ? -1 : 1;
  }

  std::size_t dim_ = 0;
  std::map<std::uint32_t, T> terms_;
};

inline std::uint32_t mask_of(std::initializer_list<std::size_t> idx) {
  std::uint32_t m = 0;
  for (auto i : idx) m |= std::uint32_t(1) << i;
  return m;
}

inline AltForm<Poly> alt_from_tensor(const FormTensor& f) {
  AltForm<Poly> a(f.dim());
  if (f.arity() == 3) {
    for (std::size_t t = 0; t < f.triples().size(); ++t) {
      auto [i, j, k] = f.triples()[t];
      a.add(mask_of({i, j, k}), f.triple_values()[t]);
    }
  } else {
    for (std::size_t i = 0; i < f.dim(); ++i)
      for (std::size_t j = i + 1; j < f.dim(); ++j) a.add(mask_of({i, j}), f(i, j));
  }
  return a;
}

}  // namespace chevalley
