#pragma once

#include <functional>
#include <string>
#include <vector>

#include "g2.hpp"

namespace chevalley {

struct SpecialForm {
  FormTensor form;
  SubcoverEmbedding embedding;
};

namespace detail {

inline Elem elem_det(const std::vector<std::vector<Elem>>& m, const AlgebraPtr& a) {
  std::size_t d = m.size();
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  Elem acc = Elem::zero(a);
  do {
    int inv = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) inv += perm[i] > perm[j];
    Elem prod = Elem::scalar(a, Poly(a->ring, 1));
    for (std::size_t i = 0; i < d && !prod.is_zero(); ++i) prod = prod * m[i][perm[i]];
    acc = inv % 2 ? acc - prod : acc + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

inline void for_each_sorted_tuple(std::size_t n, std::size_t d,
                                  const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> t;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (t.size() == d) {
      fn(t);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      t.push_back(i);
      rec(i + 1);
      t.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

// The alternating d-form b_1 ^ ... ^ b_d -> beta^*_{A'}(det C) where C holds the
// coordinates of b_i over A' on 1, x, ..., x^{d-1}. This is the image of
// det[b_i(x_j)] in A' (x) R^sgn divided by prod_{i<j} (x_j - x_i) = det[x_j^k].
inline SpecialForm special_form(const SubcoverEmbedding& s) {
  const AlgebraPtr& b = s.total;
  const RingPtr& r = b->ring;
  std::size_t d = s.d;
  if (r->characteristic != 0 && r->characteristic <= d)
    fail(ErrorCode::CharTooSmall, "special forms need characteristic > " + std::to_string(d));
  if (d < 1 || d > 3) fail(ErrorCode::InvalidArgument, "special forms are implemented for relative degree 1..3");
  std::vector<std::vector<Elem>> coords;
  for (std::size_t i = 0; i < b->rank; ++i) coords.push_back(relative_coords(s, Elem::basis(b, i)));
  DualElement beta = beta_generator(s.sub);
  auto value = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<Elem>> m;
    for (auto i : idx) m.push_back(coords[i]);
    return beta(detail::elem_det(m, s.sub));
  };
  SpecialForm out{FormTensor(), s};
  if (d == 1) {
    std::vector<Poly> vals;
    for (std::size_t i = 0; i < b->rank; ++i) vals.push_back(value({i}));
    out.form = FormTensor::linear(b, vals);
  } else if (d == 2) {
    PolyMat g = poly_mat(r, b->rank, b->rank);
    for (std::size_t i = 0; i < b->rank; ++i)
      for (std::size_t j = i + 1; j < b->rank; ++j) {
        g(i, j) = value({i, j});
        g(j, i) = -g(i, j);
      }
    out.form = FormTensor::bilinear(b, Symmetry::alternating, g);
  } else {
    out.form = FormTensor::trilinear(b);
    detail::for_each_sorted_tuple(b->rank, 3, [&](const std::vector<std::size_t>& t) {
      out.form.set(t[0], t[1], t[2], value(t));
    });
  }
  return out;
}

inline bool derivation_annihilation(const SpecialForm& f, const PolyMat& endo) {
  return verify_anti_self_adjoint(f.form, endo);
}

// Some coefficient is a nonzero constant.
inline bool everywhere_nonzero(const FormTensor& f) {
  if (f.arity() == 3) {
    for (const auto& v : f.triple_values())
      if (v.is_unit()) return true;
    return false;
  }
  const PolyMat& g = f.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j).is_unit()) return true;
  return false;
}

// --- the special component map S^d_A B -> A' -------------------------------

// Image of sum_{sigma in S_d} b_{sigma(1)} (x) ... (x) b_{sigma(d)}, computed as
// sum over set partitions pi of prod_{blocks} (-1)^{|B|-1} (|B|-1)! tr_{B/A'}(prod_{i in B} b_i).
inline Elem special_component_image(const SubcoverEmbedding& s, const std::vector<Elem>& bs) {
  if (bs.size() != s.d) fail(ErrorCode::InvalidArgument, "expected d tensor factors");
  const RingPtr& r = s.total->ring;
  Elem acc = Elem::zero(s.sub);
  std::vector<std::vector<std::size_t>> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == bs.size()) {
      Elem term = Elem::scalar(s.sub, Poly(r, 1));
      for (const auto& blk : blocks) {
        Elem prod = Elem::scalar(s.total, Poly(r, 1));
        for (auto k : blk) prod = prod * bs[k];
        long long fact = 1;
        for (std::size_t t = 2; t < blk.size(); ++t) fact *= static_cast<long long>(t);
        long long mu = blk.size() % 2 ? fact : -fact;
        term = term * (Poly(r, mu) * relative_trace(s, prod));
      }
      acc = acc + term;
      return;
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k].push_back(i);
      rec(i + 1);
      blocks[k].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
  return acc;
}

// Image of b (x) 1 (x) ... (x) 1 + ... + 1 (x) ... (x) b.
inline Elem power_sum_image(const SubcoverEmbedding& s, const Elem& b) {
  std::vector<Elem> bs(s.d, Elem::scalar(s.total, Poly(s.total->ring, 1)));
  bs[0] = b;
  long long fact = 1;
  for (std::size_t t = 2; t < s.d; ++t) fact *= static_cast<long long>(t);
  return Poly(s.total->ring, Scalar(1, fact)) * special_component_image(s, bs);
}

// --- unimodular elimination ------------------------------------------------

struct UnitElimination {
  std::size_t unit_pivots = 0;
  bool remainder_zero = false;
};

// Eliminates with constant pivots only. When the remainder vanishes, the column
// span is a free direct summand of rank unit_pivots.
inline UnitElimination unit_pivot_elimination(PolyMat m) {
  UnitElimination out;
  std::vector<bool> row_used(m.rows(), false), col_used(m.cols(), false);
  for (;;) {
    std::size_t pr = m.rows(), pc = m.cols();
    for (std::size_t i = 0; i < m.rows() && pr == m.rows(); ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!col_used[j] && m(i, j).is_unit()) {
          pr = i;
          pc = j;
          break;
        }
    }
    if (pr == m.rows()) break;
    Scalar inv = m(pr, pc).constant_value().inverse();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_used[i] || i == pr || m(i, pc).is_zero()) continue;
      Poly f = m(i, pc) * inv;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(pr, j).is_zero()) m(i, j) -= f * m(pr, j);
    }
    row_used[pr] = col_used[pc] = true;
    ++out.unit_pivots;
  }
  out.remainder_zero = true;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!row_used[i] && !m(i, j).is_zero()) out.remainder_zero = false;
  return out;
}

struct KernelCheck {
  std::size_t sym_rank = 0;     // rank of S^2_A B
  std::size_t image_rank = 0;   // unit pivots of multiplication by x (x) 1 + 1 (x) x
  bool image_summand = false;
  bool annihilated = false;     // phi(s t) = 0 on the basis
  bool phi_surjective = false;  // phi has rank(A') unit pivots
  bool generates_kernel = false;
};

// ker(S^2_A B -> A') = (x (x) 1 + 1 (x) x) S^2_A B, for relative degree 2.
inline KernelCheck kernel_generator_check(const SubcoverEmbedding& s) {
  if (s.d != 2) fail(ErrorCode::InvalidArgument, "kernel check is implemented for relative degree 2");
  const AlgebraPtr& b = s.total;
  const RingPtr& r = b->ring;
  std::size_t n = b->rank;
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) basis.push_back({i, j});
  auto index = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), std::make_pair(i, j)) - basis.begin());
  };
  KernelCheck out;
  out.sym_rank = basis.size();
  // e_ij = x^i (x) x^j + x^j (x) x^i for i < j, e_ii = x^i (x) x^i.
  PolyMat mult = poly_mat(r, basis.size(), basis.size());
  Elem x = Elem::x_of(b);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto [i, j] = basis[c];
    // Tensors as coefficient lists over x^a (x) x^b, then symmetrized coordinates.
    PolyMat t = poly_mat(r, n, n);
    auto add_tensor = [&](const Elem& u, const Elem& v) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb)
          if (!u[a].is_zero() && !v[bb].is_zero()) t(a, bb) += u[a] * v[bb];
    };
    Elem xi = Elem::basis(b, i), xj = Elem::basis(b, j);
    add_tensor(x * xi, xj);
    add_tensor(xi, x * xj);
    if (i != j) {
      add_tensor(x * xj, xi);
      add_tensor(xj, x * xi);
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t bb = a; bb < n; ++bb) mult(index(a, bb), c) = t(a, bb);
  }
  UnitElimination img = unit_pivot_elimination(mult);
  out.image_rank = img.unit_pivots;
  out.image_summand = img.remainder_zero;
  // phi on the basis, as an m x N matrix over A.
  PolyMat phi = poly_mat(r, s.sub->rank, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto [i, j] = basis[c];
    Elem v = special_component_image(s, {Elem::basis(b, i), Elem::basis(b, j)});
    if (i == j) v = Poly(r, Scalar(1, 2)) * v;
    phi.set_column(c, v.coords());
  }
  out.annihilated = (phi * mult).is_zero();
  UnitElimination ph = unit_pivot_elimination(phi.transpose());
  out.phi_surjective = ph.unit_pivots == s.sub->rank && ph.remainder_zero;
  out.generates_kernel = out.annihilated && out.image_summand && out.phi_surjective &&
                         out.image_rank + s.sub->rank == out.sym_rank;
  return out;
}

// --- Sp cross-check --------------------------------------------------------

inline SubcoverEmbedding sp_subcover(const AlgebraPtr& b) {
  Elem x = Elem::x_of(b);
  return subcover(b, x * x, "y");
}

struct Equivalence {
  bool equal_up_to_unit = false;
  std::optional<Scalar> unit;  // special = unit * reference
};

inline Equivalence compare_up_to_unit(const FormTensor& special, const FormTensor& reference) {
  Equivalence eq;
  const PolyMat &a = special.gram(), &b = reference.gram();
  std::optional<Scalar> u;
  for (std::size_t i = 0; i < a.rows() && !u; ++i)
    for (std::size_t j = 0; j < a.cols() && !u; ++j)
      if (!b(i, j).is_zero()) {
        auto q = exact_div(a(i, j), b(i, j));
        if (!q || !q->is_unit()) return eq;
        u = q->constant_value();
      }
  if (!u) return eq;
  eq.unit = u;
  eq.equal_up_to_unit = special == reference.scaled(Poly(special.parent()->ring, *u));
  return eq;
}

// --- G2 ------------------------------------------------------------------

struct G2Subcovers {
  AlgebraPtr bprime;  // B' = A[x]/(f_0)
  SubcoverEmbedding a1;  // A' = A[z]/(z^2 + q), relative degree 3
  SubcoverEmbedding a2;  // A'' = A[y]/(y^3 - e y^2 + e^2/4 y + q), relative degree 2
};

// z = x^3 - e/2 x in B', with z^2 = -q.
inline Elem g2_z_prime(const AlgebraPtr& bprime) {
  Elem x = Elem::x_of(bprime);
  return x.pow(3) - (Poly::var(bprime->ring, "e") * Scalar(1, 2)) * x;
}

inline G2Subcovers g2_subcovers(const RingPtr& r) {
  G2Subcovers g;
  g.bprime = monogenic_algebra(r, g2_f0(r));
  Elem x = Elem::x_of(g.bprime);
  g.a1 = subcover(g.bprime, g2_z_prime(g.bprime), "z");
  g.a2 = subcover(g.bprime, x * x, "y");
  return g;
}

// (b_1, b_2) -> w(m b_1, b_2).
inline FormTensor twist_bilinear(const FormTensor& w, const Elem& m) {
  PolyMat g = mult_matrix(m).transpose() * w.gram();
  Symmetry sym = gram_is_alternating(g) ? Symmetry::alternating : Symmetry::symmetric;
  return FormTensor::bilinear(w.parent(), sym, g);
}

// g = (f_0 - q) / x = x^5 - e x^3 + e^2/4 x in B'.
inline Elem g2_contraction_vector(const AlgebraPtr& bprime) {
  const RingPtr& r = bprime->ring;
  Elem x = Elem::x_of(bprime);
  Poly e = Poly::var(r, "e");
  return x.pow(5) - e * x.pow(3) + (e * e * Scalar(1, 4)) * x;
}

// The 2-form w2 - iota_g w3 on B', which must vanish mod q for a compatible pair.
inline PolyMat g2_gluing_defect(const FormTensor& w3, const FormTensor& w2) {
  const AlgebraPtr& bp = w3.parent();
  Elem g = g2_contraction_vector(bp);
  PolyMat d = poly_mat(bp->ring, bp->rank, bp->rank);
  for (std::size_t i = 0; i < bp->rank; ++i)
    for (std::size_t j = 0; j < bp->rank; ++j)
      d(i, j) = w2(i, j) - w3.eval(g, Elem::basis(bp, i), Elem::basis(bp, j));
  return d;
}

// The unique 3-form rho on B = A[x]/(x f_0) with rho(x b_1, x b_2, x b_3) = w3(b_1, b_2, b_3)
// and rho(f_0, x b_1, x b_2) = w2(b_1, b_2).
inline FormTensor glue_g2_three_form(const FormTensor& w3, const FormTensor& w2, const AlgebraPtr& b) {
  const RingPtr& r = b->ring;
  if (w3.arity() != 3 || w2.arity() != 2 || w3.dim() != 6 || w2.dim() != 6 || b->rank != 7)
    fail(ErrorCode::InvalidArgument, "gluing expects a 3-form and a 2-form on B' and the rank-7 cover");
  if (w2.symmetry() != Symmetry::alternating || !gram_is_alternating(w2.gram()))
    fail(ErrorCode::IncompatiblePair, "the 2-form is not alternating");
  PolyMat defect = g2_gluing_defect(w3, w2);
  Poly q = Poly::var(r, "q");
  FormTensor rho = FormTensor::trilinear(b);
  for (const auto& [i, j, k] : rho.triples()) {
    if (i > 0) {
      rho.set(i, j, k, w3(i - 1, j - 1, k - 1));
    } else {
      auto v = exact_div(defect(j - 1, k - 1), q);
      if (!v)
        fail(ErrorCode::IncompatiblePair, "images differ modulo q at (" + std::to_string(j - 1) + "," +
                                              std::to_string(k - 1) + ")");
      rho.set(0, j, k, *v);
    }
  }
  return rho;
}

inline bool gluing_defect_divisible_by_q(const FormTensor& w3, const FormTensor& w2) {
  PolyMat d = g2_gluing_defect(w3, w2);
  Poly q = Poly::var(w3.parent()->ring, "q");
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (!exact_div(d(i, j), q)) return false;
  return true;
}

// rho(x b_1, x b_2, x b_3) on B' through the inclusion 1 -> x.
inline FormTensor restrict_by_x(const FormTensor& rho, const AlgebraPtr& bprime) {
  FormTensor out = FormTensor::trilinear(bprime);
  for (const auto& [i, j, k] : out.triples()) out.set(i, j, k, rho(i + 1, j + 1, k + 1));
  return out;
}

}  // namespace chevalley
