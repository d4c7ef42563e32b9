#pragma once

#include <array>
#include <vector>

#include "algebra.hpp"

namespace chevalley {

enum class Symmetry { symmetric, alternating };

inline const char* symmetry_name(Symmetry s) { return s == Symmetry::symmetric ? "symmetric" : "alternating"; }

// Sorted triples i < j < k of {0..d-1} in lexicographic order.
inline std::vector<std::array<std::size_t, 3>> sorted_triples(std::size_t d) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) out.push_back({i, j, k});
  return out;
}

// A 2- or 3-linear form on the basis of an algebra. Arity 2 keeps the full
// Gram matrix; arity 3 is alternating and keeps sorted triples only.
class FormTensor {
 public:
  FormTensor() = default;

  static FormTensor bilinear(AlgebraPtr parent, Symmetry sym, PolyMat gram) {
    FormTensor f;
    f.parent_ = std::move(parent);
    f.arity_ = 2;
    f.sym_ = sym;
    f.gram_ = std::move(gram);
    return f;
  }

  // Arity 1: values on the basis, kept as a 1 x d Gram row.
  static FormTensor linear(AlgebraPtr parent, const std::vector<Poly>& values) {
    FormTensor f;
    f.arity_ = 1;
    f.sym_ = Symmetry::alternating;
    f.gram_ = poly_mat(parent->ring, 1, parent->rank);
    for (std::size_t i = 0; i < values.size(); ++i) f.gram_(0, i) = values[i];
    f.parent_ = std::move(parent);
    return f;
  }

  static FormTensor trilinear(AlgebraPtr parent) {
    FormTensor f;
    std::size_t d = parent->rank;
    f.parent_ = std::move(parent);
    f.arity_ = 3;
    f.sym_ = Symmetry::alternating;
    f.triples_ = sorted_triples(d);
    f.tri_.assign(f.triples_.size(), Poly(f.parent_->ring));
    f.index_.assign(d * d * d, -1);
    for (std::size_t t = 0; t < f.triples_.size(); ++t) {
      auto [i, j, k] = f.triples_[t];
      f.index_[(i * d + j) * d + k] = static_cast<int>(t);
    }
    return f;
  }

  const AlgebraPtr& parent() const { return parent_; }
  int arity() const { return arity_; }
  Symmetry symmetry() const { return sym_; }
  std::size_t dim() const { return parent_->rank; }
  const PolyMat& gram() const { return gram_; }
  const std::vector<std::array<std::size_t, 3>>& triples() const { return triples_; }
  const std::vector<Poly>& triple_values() const { return tri_; }

  const Poly& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

  Poly operator()(std::size_t i, std::size_t j, std::size_t k) const {
    int sign = 1;
    std::array<std::size_t, 3> a{i, j, k};
    if (a[0] == a[1] || a[1] == a[2] || a[0] == a[2]) return Poly(parent_->ring);
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 2; ++q)
        if (a[q] > a[q + 1]) {
          std::swap(a[q], a[q + 1]);
          sign = -sign;
        }
    const Poly& v = tri_[static_cast<std::size_t>(index_[(a[0] * dim() + a[1]) * dim() + a[2]])];
    return sign > 0 ? v : -v;
  }

  // Sets the value on a sorted triple.
  void set(std::size_t i, std::size_t j, std::size_t k, const Poly& v) {
    if (!(i < j && j < k)) fail(ErrorCode::InvalidArgument, "set() expects a sorted triple");
    tri_[static_cast<std::size_t>(index_[(i * dim() + j) * dim() + k])] = v;
  }

  Poly eval(const Elem& a, const Elem& b) const {
    Poly acc(parent_->ring);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (!b[j].is_zero() && !gram_(i, j).is_zero()) acc += a[i] * b[j] * gram_(i, j);
    }
    return acc;
  }

  Poly eval(const Elem& a, const Elem& b, const Elem& c) const {
    Poly acc(parent_->ring);
    for (std::size_t t = 0; t < triples_.size(); ++t) {
      if (tri_[t].is_zero()) continue;
      auto [i, j, k] = triples_[t];
      // Alternating sum over the six orderings of (i, j, k).
      Poly m = a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) +
               a[k] * (b[i] * c[j] - b[j] * c[i]);
      if (!m.is_zero()) acc += m * tri_[t];
    }
    return acc;
  }

  friend bool operator==(const FormTensor& a, const FormTensor& b) {
    return a.arity_ == b.arity_ && a.sym_ == b.sym_ && a.gram_ == b.gram_ && a.tri_ == b.tri_;
  }

  FormTensor scaled(const Poly& s) const {
    FormTensor f = *this;
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      for (std::size_t j = 0; j < gram_.cols(); ++j) f.gram_(i, j) = s * gram_(i, j);
    for (auto& v : f.tri_) v = s * v;
    return f;
  }

 private:
  AlgebraPtr parent_;
  int arity_ = 0;
  Symmetry sym_ = Symmetry::symmetric;
  PolyMat gram_;
  std::vector<std::array<std::size_t, 3>> triples_;
  std::vector<Poly> tri_;
  std::vector<int> index_;
};

inline bool gram_is_symmetric(const PolyMat& g) { return g == g.transpose(); }

inline bool gram_is_alternating(const PolyMat& g) {
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (!g(i, i).is_zero()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (g(i, j) != -g(j, i)) return false;
  }
  return true;
}

inline bool symmetry_holds(const FormTensor& f) {
  if (f.arity() != 2) return true;  // alternating by storage
  return f.symmetry() == Symmetry::symmetric ? gram_is_symmetric(f.gram()) : gram_is_alternating(f.gram());
}

// Fiberwise nondegeneracy: the Gram determinant is a nonzero constant.
inline std::optional<Scalar> unit_determinant(const PolyMat& g) {
  Poly d = det_bareiss(g);
  if (!d.is_unit()) return std::nullopt;
  return d.constant_value();
}

// The d-term derivation identity sum_slots form(..., X v, ...) = 0 on all
// basis tuples, for the endomorphism with matrix X.
inline bool verify_anti_self_adjoint(const FormTensor& f, const PolyMat& x) {
  std::size_t d = f.dim();
  if (x.rows() != d) fail(ErrorCode::InvalidArgument, "endomorphism and form live on different modules");
  if (f.arity() == 1) {
    PolyMat lhs = f.gram() * x;
    return lhs.is_zero();
  }
  if (f.arity() == 2) {
    PolyMat lhs = f.gram() * x + x.transpose() * f.gram();
    return lhs.is_zero();
  }
  const RingPtr& r = f.parent()->ring;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Poly acc(r);
        for (std::size_t l = 0; l < d; ++l) {
          if (!x(l, i).is_zero()) acc += x(l, i) * f(l, j, k);
          if (!x(l, j).is_zero()) acc += x(l, j) * f(i, l, k);
          if (!x(l, k).is_zero()) acc += x(l, k) * f(i, j, l);
        }
        if (!acc.is_zero()) return false;
      }
  return true;
}

inline json form_to_json(const FormTensor& f) {
  json out{{"arity", f.arity()}, {"symmetry", symmetry_name(f.symmetry())}, {"basis", f.parent()->labels}};
  if (f.arity() == 1) {
    json vals = json::array();
    for (std::size_t i = 0; i < f.dim(); ++i) vals.push_back(f.gram()(0, i).to_string());
    out["values"] = vals;
  } else if (f.arity() == 2) {
    out["gram"] = poly_matrix_to_json(f.gram());
  } else {
    json vals = json::array();
    for (std::size_t t = 0; t < f.triples().size(); ++t) {
      if (f.triple_values()[t].is_zero()) continue;
      auto [i, j, k] = f.triples()[t];
      vals.push_back(json{{"indices", {i, j, k}}, {"value", f.triple_values()[t].to_string()}});
    }
    out["coefficients"] = vals;
  }
  return out;
}

}  // namespace chevalley
