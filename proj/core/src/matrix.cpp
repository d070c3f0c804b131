#include "commlen/matrix.hpp"

#include <utility>

#include "commlen/errors.hpp"

namespace commlen {

MatD::MatD(std::size_t n, Algebra alg)
    : n_(n), alg_(std::move(alg)), e_(n * n, Quat::zero(alg_)) {
  if (n == 0) throw PreconditionError("matrix size must be positive");
}

MatD MatD::identity(std::size_t n, const Algebra& alg) {
  MatD m(n, alg);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Quat::one(alg);
  return m;
}

MatD MatD::diagonal(std::span<const Quat> entries) {
  if (entries.empty()) throw PreconditionError("empty diagonal");
  MatD m(entries.size(), entries.front().algebra());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

MatD MatD::from_rows(const std::vector<std::vector<Quat>>& rows) {
  if (rows.empty()) throw PreconditionError("empty matrix");
  const std::size_t n = rows.size();
  MatD m(n, rows.front().empty() ? Algebra() : rows.front().front().algebra());
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw PreconditionError("matrix is not square");
    for (std::size_t c = 0; c < n; ++c) {
      if (!(rows[r][c].algebra() == m.alg_)) {
        throw PreconditionError("matrix entries from different algebras");
      }
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

bool MatD::is_identity() const {
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      const Quat& x = (*this)(r, c);
      if (r == c ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

bool MatD::is_diagonal() const {
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (r != c && !(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

bool MatD::is_upper_unitriangular() const {
  for (std::size_t r = 0; r < n_; ++r) {
    if (!(*this)(r, r).is_one()) return false;
    for (std::size_t c = 0; c < r; ++c) {
      if (!(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

bool MatD::is_lower_unitriangular() const {
  for (std::size_t r = 0; r < n_; ++r) {
    if (!(*this)(r, r).is_one()) return false;
    for (std::size_t c = r + 1; c < n_; ++c) {
      if (!(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

std::vector<Quat> MatD::diagonal_entries() const {
  std::vector<Quat> d;
  d.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) d.push_back((*this)(i, i));
  return d;
}

void MatD::left_transvect(std::size_t i, std::size_t j, const Quat& x) {
  if (x.is_zero()) return;
  for (std::size_t c = 0; c < n_; ++c) {
    const Quat& src = (*this)(j, c);
    if (!src.is_zero()) (*this)(i, c) += x * src;
  }
}

void MatD::right_transvect(std::size_t i, std::size_t j, const Quat& x) {
  if (x.is_zero()) return;
  for (std::size_t r = 0; r < n_; ++r) {
    const Quat& src = (*this)(r, i);
    if (!src.is_zero()) (*this)(r, j) += src * x;
  }
}

MatD operator*(const MatD& a, const MatD& b) {
  if (a.n_ != b.n_) throw PreconditionError("matrix size mismatch");
  if (!(a.alg_ == b.alg_)) throw PreconditionError("matrix algebra mismatch");
  MatD c(a.n_, a.alg_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      const Quat& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j) {
        const Quat& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

bool operator==(const MatD& a, const MatD& b) {
  return a.n_ == b.n_ && a.e_ == b.e_;
}

std::ostream& operator<<(std::ostream& os, const MatD& m) {
  os << '[';
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.size(); ++c) {
      os << (c ? ", " : "") << m(r, c);
    }
    os << ']';
  }
  return os << ']';
}

MatD transvection(std::size_t n, std::size_t i, std::size_t j, const Quat& x) {
  if (i == j || i >= n || j >= n) {
    throw PreconditionError("transvection needs distinct in-range indices");
  }
  MatD m = MatD::identity(n, x.algebra());
  m(i, j) = x;
  return m;
}

MatD h_elem(std::size_t n, std::size_t i, std::size_t j, const Quat& e) {
  if (i == j || i >= n || j >= n) {
    throw PreconditionError("h_elem needs distinct in-range indices");
  }
  if (e.is_zero()) throw PreconditionError("h_elem of zero");
  MatD m = MatD::identity(n, e.algebra());
  m(i, i) = e;
  m(j, j) = inverse(e);
  return m;
}

MatD inverse(const MatD& g) {
  const std::size_t n = g.size();
  MatD a = g;
  MatD inv = MatD::identity(n, g.algebra());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw SingularError("matrix is singular");
    if (pivot != col) {
      // Adding the pivot row keeps every step a transvection.
      a.left_transvect(col, pivot, Quat::one(g.algebra()));
      inv.left_transvect(col, pivot, Quat::one(g.algebra()));
    }
    const Quat s = inverse(a(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) = s * a(col, c);
      inv(col, c) = s * inv(col, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Quat f = -a(r, col);
      a.left_transvect(r, col, f);
      inv.left_transvect(r, col, f);
    }
  }
  return inv;
}

MatD commutator(const MatD& x, const MatD& y) {
  return x * y * inverse(x) * inverse(y);
}

MatD conjugate_by_diagonal(const MatD& m, std::span<const Quat> d) {
  if (d.size() != m.size()) throw PreconditionError("diagonal size mismatch");
  std::vector<Quat> dinv;
  dinv.reserve(d.size());
  for (const auto& x : d) dinv.push_back(inverse(x));
  MatD r(m.size(), m.algebra());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m(i, j).is_zero()) continue;
      r(i, j) = dinv[i] * m(i, j) * d[j];
    }
  }
  return r;
}

DetClass dieudonne_det(const MatD& g) {
  const std::size_t n = g.size();
  const Algebra& alg = g.algebra();
  MatD a = g;
  for (std::size_t col = 0; col < n; ++col) {
    if (a(col, col).is_zero()) {
      std::size_t r = col + 1;
      while (r < n && a(r, col).is_zero()) ++r;
      if (r == n) throw SingularError("matrix is singular");
      a.left_transvect(col, r, Quat::one(alg));
    }
    const Quat pinv = inverse(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      a.left_transvect(r, col, -(a(r, col) * pinv));
    }
  }
  // Upper triangle: clearing above the diagonal does not touch the diagonal.
  Quat rep = Quat::one(alg);
  for (std::size_t i = 0; i < n; ++i) rep = rep * a(i, i);
  Rat inv = nrd(rep);
  return DetClass{std::move(rep), std::move(inv)};
}

bool is_elementary(const MatD& g) { return dieudonne_det(g).invariant == 1; }

bool is_central_in_elementary(const MatD& g) {
  if (!g.is_diagonal()) return false;
  const Quat& s = g(0, 0);
  if (!s.is_central()) return false;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g(i, i) == s)) return false;
  }
  return true;
}

std::optional<GaussForm> gauss_decompose(const MatD& g) {
  const std::size_t n = g.size();
  const Algebra& alg = g.algebra();
  MatD a = g;
  MatD v = MatD::identity(n, alg);
  for (std::size_t col = 0; col < n; ++col) {
    if (a(col, col).is_zero()) return std::nullopt;
    const Quat pinv = inverse(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Quat m = a(r, col) * pinv;
      a.left_transvect(r, col, -m);
      v(r, col) = m;
    }
  }
  std::vector<Quat> h = a.diagonal_entries();
  MatD u = MatD::identity(n, alg);
  for (std::size_t r = 0; r < n; ++r) {
    const Quat dinv = inverse(h[r]);
    for (std::size_t c = r + 1; c < n; ++c) {
      if (!a(r, c).is_zero()) u(r, c) = dinv * a(r, c);
    }
  }
  return GaussForm{std::move(v), std::move(h), std::move(u)};
}

MatD pad_identity(const MatD& g, std::size_t m) {
  if (m < g.size()) throw PreconditionError("cannot pad to a smaller size");
  MatD r = MatD::identity(m, g.algebra());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) r(i, j) = g(i, j);
  }
  return r;
}

MatD permute(const MatD& g, std::span<const std::size_t> perm) {
  if (perm.size() != g.size()) throw PreconditionError("permutation size");
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) {
      throw PreconditionError("not a permutation");
    }
    seen[p] = true;
  }
  MatD r(g.size(), g.algebra());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) r(perm[i], perm[j]) = g(i, j);
  }
  return r;
}

bool verify_relation(int relation, const RelationParams& prm) {
  const std::size_t n = prm.n;
  const auto& xi = prm.xi;
  const auto& zeta = prm.zeta;
  const Quat one = Quat::one(xi.algebra());
  if (prm.i == prm.j || prm.i >= n || prm.j >= n) {
    throw PreconditionError("relation needs distinct in-range i, j");
  }
  auto t = [n](std::size_t i, std::size_t j, const Quat& x) {
    return transvection(n, i, j, x);
  };
  const std::size_t i = prm.i, j = prm.j;
  switch (relation) {
    case 1:
      return t(i, j, xi) * t(i, j, zeta) == t(i, j, xi + zeta);
    case 2: {
      const std::size_t p = prm.p, q = prm.q;
      if (p == q || p >= n || q >= n || i == q) {
        throw PreconditionError("relation 2 needs p != q and i != q");
      }
      const MatD lhs = commutator(t(i, j, xi), t(p, q, zeta));
      if (j == p) return lhs == t(i, q, xi * zeta);
      return lhs.is_identity();
    }
    case 3: {
      if (zeta.is_zero() || (one + zeta * xi).is_zero()) {
        throw PreconditionError("relation 3 needs zeta and 1 + zeta xi nonzero");
      }
      const MatD lhs = t(i, j, zeta) * t(j, i, xi);
      const MatD rhs = h_elem(n, i, j, zeta) *
                       h_elem(n, i, j, inverse(zeta) + xi) *
                       t(j, i, (one + xi * zeta) * xi) *
                       t(i, j, inverse(one + zeta * xi) * zeta);
      return lhs == rhs;
    }
    case 4: {
      if (xi.is_zero()) throw PreconditionError("relation 4 needs xi nonzero");
      const Quat m = -inverse(xi);
      return t(i, j, xi) * t(j, i, m) * t(i, j, xi) ==
             t(j, i, m) * t(i, j, xi) * t(j, i, m);
    }
    default:
      throw PreconditionError("unknown relation " + std::to_string(relation));
  }
}

}  // namespace commlen
