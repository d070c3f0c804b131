#pragma once

// Square matrices over the quaternion skew-field.
//
// Indices are 0-based throughout the C++ API: transvection(n, 0, 1, x) is
// the identity plus x in row 0, column 1. Products are evaluated left to
// right, and scalars act on entries from the side they are written on.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "commlen/skewfield.hpp"

namespace commlen {

class MatD {
 public:
  // n x n zero matrix; n >= 1.
  MatD(std::size_t n, Algebra alg);

  static MatD identity(std::size_t n, const Algebra& alg);
  static MatD diagonal(std::span<const Quat> entries);
  // Rows must all have length rows.size(). Throws PreconditionError.
  static MatD from_rows(const std::vector<std::vector<Quat>>& rows);

  std::size_t size() const { return n_; }
  const Algebra& algebra() const { return alg_; }

  Quat& operator()(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
  const Quat& operator()(std::size_t r, std::size_t c) const {
    return e_[r * n_ + c];
  }

  bool is_identity() const;
  bool is_diagonal() const;
  bool is_upper_unitriangular() const;
  bool is_lower_unitriangular() const;
  std::vector<Quat> diagonal_entries() const;

  // In-place row and column operations realising multiplication by a
  // transvection t_{i,j}(x): left multiplication adds x * (row j) to row i,
  // right multiplication adds (column i) * x to column j.
  void left_transvect(std::size_t i, std::size_t j, const Quat& x);
  void right_transvect(std::size_t i, std::size_t j, const Quat& x);

  friend MatD operator*(const MatD& a, const MatD& b);
  friend bool operator==(const MatD& a, const MatD& b);

 private:
  std::size_t n_;
  Algebra alg_;
  std::vector<Quat> e_;
};

std::ostream& operator<<(std::ostream& os, const MatD& m);

// Identity plus x at (i, j). Throws PreconditionError if i == j.
MatD transvection(std::size_t n, std::size_t i, std::size_t j, const Quat& x);

// Diagonal matrix with e at i, e^-1 at j and ones elsewhere.
MatD h_elem(std::size_t n, std::size_t i, std::size_t j, const Quat& e);

// Inverse by Gauss-Jordan elimination. Throws SingularError.
MatD inverse(const MatD& g);

inline MatD identity_like(const MatD& g) {
  return MatD::identity(g.size(), g.algebra());
}

MatD commutator(const MatD& x, const MatD& y);

// d^-1 m d for d = diag(d_0, ..., d_{n-1}), computed entrywise as
// d_i^-1 m_ij d_j so triangular shapes are preserved exactly.
MatD conjugate_by_diagonal(const MatD& m, std::span<const Quat> d);

// Class of the Dieudonne determinant in D*/[D*, D*]. Two classes are equal
// when their reduced-norm invariants agree.
struct DetClass {
  Quat representative;
  Rat invariant;

  friend bool operator==(const DetClass& x, const DetClass& y) {
    return x.invariant == y.invariant;
  }
};

// Reduces g to diagonal form with transvections only (below the diagonal
// column by column, then above) and multiplies the diagonal left to right.
// Throws SingularError.
DetClass dieudonne_det(const MatD& g);

// Membership in E(n, D), decided by the reduced norm of the determinant
// representative. For quaternion algebras over Q the reduced Whitehead group
// is trivial, so norm one is equivalent to lying in the derived subgroup.
bool is_elementary(const MatD& g);

// Central in E(n, D): a scalar matrix whose entry lies in Q.
bool is_central_in_elementary(const MatD& g);

// Gauss decomposition g = v * diag(h) * u with v lower and u upper
// unitriangular, computed without pivoting. Empty when a pivot vanishes.
struct GaussForm {
  MatD v;
  std::vector<Quat> h;
  MatD u;
};
std::optional<GaussForm> gauss_decompose(const MatD& g);

// Block embedding g -> diag(g, 1, ..., 1) into size m >= g.size().
MatD pad_identity(const MatD& g, std::size_t m);

// Conjugation by the permutation matrix of perm: result(perm[i], perm[j]) =
// g(i, j).
MatD permute(const MatD& g, std::span<const std::size_t> perm);

// Parameters of the four defining transvection relations.
//   relation 1: t_ij(xi) t_ij(zeta) = t_ij(xi + zeta)
//   relation 2: [t_ij(xi), t_pq(zeta)] = t_iq(xi zeta) if j = p, i != q,
//               and = e if j != p, i != q
//   relation 3: t_ij(zeta) t_ji(xi) = h_ij(zeta) h_ij(zeta^-1 + xi)
//               t_ji((1 + xi zeta) xi) t_ij((1 + zeta xi)^-1 zeta),
//               for zeta, 1 + zeta xi nonzero
//   relation 4: t_ij(xi) t_ji(-xi^-1) t_ij(xi)
//               = t_ji(-xi^-1) t_ij(xi) t_ji(-xi^-1), for xi nonzero
struct RelationParams {
  std::size_t n = 2;
  std::size_t i = 0, j = 1;
  std::size_t p = 1, q = 0;  // second transvection, relation 2 only
  Quat xi;
  Quat zeta;
};

// Evaluates both sides exactly. Throws PreconditionError on an unknown
// relation, bad indices, or violated nonvanishing conditions.
bool verify_relation(int relation, const RelationParams& params);

}  // namespace commlen
