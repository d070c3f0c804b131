#include "commlen/normal_form.hpp"

#include <algorithm>

#include "commlen/errors.hpp"

namespace commlen {

namespace {

void check_index(std::size_t n, std::size_t k) {
  if (k + 1 >= n) throw PreconditionError("subdiagonal index out of range");
}

// Diagonal with a at position k and b at position k + 1.
std::vector<Quat> two_slot_diag(std::size_t n, std::size_t k, Quat a, Quat b) {
  std::vector<Quat> d(n, Quat::one(a.algebra()));
  d[k] = std::move(a);
  d[k + 1] = std::move(b);
  return d;
}

// With u2 having zero (k, k+1) entry: v u2 t_{k+1,k}(xi) =
// (v t_{k+1,k}(xi)) (t_{k+1,k}(-xi) u2 t_{k+1,k}(xi)).
void pass_lower_through(MatD& v, MatD& u2, std::size_t k, const Quat& xi) {
  v.right_transvect(k + 1, k, xi);
  u2.left_transvect(k + 1, k, -xi);
  u2.right_transvect(k + 1, k, xi);
}

std::vector<LowerStep> row_setter(std::size_t m, const std::vector<Quat>& r) {
  // Builds a product whose row m equals r (columns 0..m-1) and which is the
  // identity outside rows 0..m; rows below m are untouched.
  if (m == 1) {
    if (r[0].is_zero()) return {};
    return {LowerStep{0, r[0]}};
  }
  if (std::all_of(r.begin(), r.end() - 1, [](const Quat& x) { return x.is_zero(); })) {
    if (r.back().is_zero()) return {};
    return {LowerStep{m - 1, r.back()}};
  }
  const Quat alpha = r[0].is_zero() ? Quat::one(r[0].algebra()) : r[0];
  const Quat ainv = inverse(alpha);
  std::vector<Quat> sub;
  sub.reserve(m - 1);
  for (std::size_t j = 0; j + 1 < m; ++j) sub.push_back(ainv * r[j]);

  // t_{m,m-1}(alpha) Y t_{m,m-1}(-alpha) adds alpha * (row m-1 of Y) to row m.
  std::vector<LowerStep> steps{LowerStep{m - 1, alpha}};
  auto inner = row_setter(m - 1, sub);
  steps.insert(steps.end(), inner.begin(), inner.end());
  const Quat last = r[m - 1] - alpha;
  if (!last.is_zero()) steps.push_back(LowerStep{m - 1, last});
  return steps;
}

std::vector<Quat> inverse_diag(const std::vector<Quat>& d) {
  std::vector<Quat> r;
  r.reserve(d.size());
  for (const auto& x : d) r.push_back(inverse(x));
  return r;
}

// Entrywise product of diagonals, left to right.
std::vector<Quat> diag_mul(const std::vector<Quat>& a,
                           const std::vector<Quat>& b) {
  std::vector<Quat> r;
  r.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] * b[i]);
  return r;
}

UVUForm single_commutator_form(const MatD& x, const MatD& y) {
  const HUVU dx = decompose_HUVU(x);
  const HUVU dy = decompose_HUVU(y);
  const auto hx = dx.head.diagonal_entries();
  const auto hy = dy.head.diagonal_entries();
  const auto hx_inv = inverse_diag(hx);
  const auto hy_inv = inverse_diag(hy);

  // [x, y] = [hx, hy] * wx^A * (wy wx^-1)^B * (wy^-1)^C, where w = u1 v u2
  // is the unipotent part and z^D = D^-1 z D.
  const auto a = diag_mul(diag_mul(hy, hx_inv), hy_inv);
  const auto b = diag_mul(hx_inv, hy_inv);
  const auto& c = hy_inv;

  const auto& fx = dx.form;
  const auto& fy = dy.form;
  auto conj = [](const MatD& m, const std::vector<Quat>& d) {
    return conjugate_by_diagonal(m, d);
  };
  // Unipotent word U V U V U V U V U.
  const MatD u0 = conj(fx.u1, a);
  const MatD v0 = conj(fx.v, a);
  const MatD u1 = conj(fx.u2, a) * conj(fy.u1, b);
  const MatD v1 = conj(fy.v, b);
  const MatD u2 = conj(fy.u2, b) * conj(inverse(fx.u2), b);
  const MatD v2 = conj(inverse(fx.v), b);
  const MatD u3 = conj(inverse(fx.u1), b) * conj(inverse(fy.u2), c);
  const MatD v3 = conj(inverse(fy.v), c);
  const MatD u4 = conj(inverse(fy.u1), c);

  UVUForm f{x.size(), h_commutator_factors(dx.head, dy.head), u0, v0, u1};
  f = absorb_V(f, v1);
  f.u2 = f.u2 * u2;
  f = absorb_V(f, v2);
  f.u2 = f.u2 * u3;
  f = absorb_V(f, v3);
  f.u2 = f.u2 * u4;
  return f;
}

}  // namespace

MatD eval_lower_steps(std::size_t n, const Algebra& alg,
                      const std::vector<LowerStep>& steps) {
  MatD m = MatD::identity(n, alg);
  for (const auto& s : steps) m.right_transvect(s.k + 1, s.k, s.xi);
  return m;
}

UVUForm UVUForm::identity(std::size_t n, const Algebra& alg) {
  const MatD e = MatD::identity(n, alg);
  return UVUForm{n, {}, e, e, e};
}

MatD UVUForm::eval() const {
  return eval_hfactors(hfactors, n, algebra()) * unipotent_part();
}

MatD UVUForm::unipotent_part() const { return u1 * v * u2; }

bool UVUForm::well_formed() const {
  return u1.size() == n && v.size() == n && u2.size() == n &&
         u1.is_upper_unitriangular() && v.is_lower_unitriangular() &&
         u2.is_upper_unitriangular();
}

UVUForm absorb_lower_transvection(const UVUForm& form, std::size_t k,
                                  const Quat& xi) {
  const std::size_t n = form.n;
  check_index(n, k);
  if (xi.is_zero()) return form;
  const std::size_t kp = k + 1;
  const Quat one = Quat::one(xi.algebra());

  UVUForm r = form;
  const Quat zeta = r.u2(k, kp);

  if (zeta.is_zero()) {
    pass_lower_through(r.v, r.u2, k, xi);
  } else if (!(one + zeta * xi).is_zero()) {
    // u2 = u2' t_{k,k+1}(zeta) and
    // t_{k,k+1}(zeta) t_{k+1,k}(xi) = H t_{k+1,k}(xi') t_{k,k+1}(zeta').
    r.u2.right_transvect(k, kp, -zeta);
    const Quat second = inverse(zeta) + xi;
    r.hfactors.push_back({k, zeta});
    r.hfactors.push_back({k, second});
    const auto h = two_slot_diag(n, k, one + zeta * xi, inverse(one + xi * zeta));
    r.u1 = conjugate_by_diagonal(r.u1, h);
    r.v = conjugate_by_diagonal(r.v, h);
    r.u2 = conjugate_by_diagonal(r.u2, h);
    const Quat xi2 = (one + xi * zeta) * xi;
    const Quat zeta2 = inverse(one + zeta * xi) * zeta;
    pass_lower_through(r.v, r.u2, k, xi2);
    r.u2.right_transvect(k, kp, zeta2);
  } else {
    const Quat eta = r.v(kp, k);
    if (!(one + eta * zeta).is_zero()) {
      // First rewrite u1 v t_{k,k+1}(zeta) into H U V, then pass xi through.
      MatD vprime = r.v;
      vprime.right_transvect(kp, k, -eta);
      MatD u2rest = r.u2;
      u2rest.left_transvect(k, kp, -zeta);
      MatD vnew = vprime;
      if (eta.is_zero()) {
        r.u1.right_transvect(k, kp, zeta);
        vnew.left_transvect(k, kp, -zeta);
        vnew.right_transvect(k, kp, zeta);
      } else {
        // t_{k+1,k}(eta) t_{k,k+1}(zeta) = H t_{k,k+1}(zeta') t_{k+1,k}(eta')
        // with H = h_{k,k+1}(eta^-1) h_{k,k+1}((eta^-1 + zeta)^-1).
        const Quat einv = inverse(eta);
        r.hfactors.push_back({k, einv});
        r.hfactors.push_back({k, inverse(einv + zeta)});
        const auto h =
            two_slot_diag(n, k, inverse(one + zeta * eta), one + eta * zeta);
        const Quat zeta2 = (one + zeta * eta) * zeta;
        const Quat eta2 = inverse(one + eta * zeta) * eta;
        r.u1 = conjugate_by_diagonal(r.u1, h);
        r.u1.right_transvect(k, kp, zeta2);
        vnew = conjugate_by_diagonal(vprime, h);
        vnew.left_transvect(k, kp, -zeta2);
        vnew.right_transvect(k, kp, zeta2);
        vnew.right_transvect(kp, k, eta2);
      }
      r.v = std::move(vnew);
      r.u2 = std::move(u2rest);
      pass_lower_through(r.v, r.u2, k, xi);
    } else {
      // eta = xi and zeta = -xi^-1: the braid-type identity
      // t_{k+1,k}(xi) t_{k,k+1}(-m) t_{k+1,k}(xi)
      //   = t_{k,k+1}(-m) t_{k+1,k}(xi) t_{k,k+1}(-m), m = xi^-1,
      // needs no new generators.
      const Quat m = inverse(xi);
      MatD vprime = r.v;
      vprime.right_transvect(kp, k, -eta);
      MatD w = r.u2;
      w.right_transvect(k, kp, -zeta);
      r.u1.right_transvect(k, kp, -m);
      MatD vnew = std::move(vprime);
      vnew.left_transvect(k, kp, m);
      vnew.right_transvect(k, kp, -m);
      vnew.right_transvect(kp, k, xi);
      w.left_transvect(k, kp, m);
      w.left_transvect(kp, k, -xi);
      w.right_transvect(k, kp, -m);
      w.right_transvect(kp, k, xi);
      w.left_transvect(k, kp, -m);
      r.v = std::move(vnew);
      r.u2 = std::move(w);
    }
  }
  if (!r.well_formed()) {
    throw InvariantError("absorb_lower_transvection broke the UVU shape");
  }
  return r;
}

std::vector<LowerStep> factor_lower_unitriangular(const MatD& v) {
  if (!v.is_lower_unitriangular()) {
    throw PreconditionError("expected a lower unitriangular matrix");
  }
  const std::size_t n = v.size();
  MatD w = v;
  std::vector<std::vector<LowerStep>> segments(n);
  for (std::size_t m = n; m-- > 1;) {
    std::vector<Quat> row;
    row.reserve(m);
    for (std::size_t c = 0; c < m; ++c) row.push_back(w(m, c));
    auto seg = row_setter(m, row);
    for (auto it = seg.rbegin(); it != seg.rend(); ++it) {
      w.right_transvect(it->k + 1, it->k, -it->xi);
    }
    segments[m] = std::move(seg);
  }
  if (!w.is_identity()) {
    throw InvariantError("lower unitriangular factorization left a residue");
  }
  std::vector<LowerStep> steps;
  for (auto& seg : segments) steps.insert(steps.end(), seg.begin(), seg.end());

  std::vector<std::size_t> counts(n > 1 ? n - 1 : 0, 0);
  for (const auto& s : steps) ++counts[s.k];
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const std::size_t cap = k == 0 ? n - 1 : 2 * (n - 1 - k);
    if (counts[k] > cap) {
      throw InvariantError("lower unitriangular factorization over budget");
    }
  }
  return steps;
}

UVUForm absorb_V(const UVUForm& form, const MatD& v) {
  UVUForm r = form;
  for (const auto& s : factor_lower_unitriangular(v)) {
    r = absorb_lower_transvection(r, s.k, s.xi);
  }
  return r;
}

HUVU decompose_HUVU(const MatD& g) {
  const std::size_t n = g.size();
  const Algebra& alg = g.algebra();
  const Quat one = Quat::one(alg);

  // Find an upper unitriangular w^-1 with w^-1 g admitting a Gauss
  // decomposition: eliminate downwards and, when a pivot vanishes, add a
  // lower row with a nonzero entry in that column.
  MatD winv = MatD::identity(n, alg);
  MatD a = g;
  for (std::size_t col = 0; col < n; ++col) {
    if (a(col, col).is_zero()) {
      std::size_t r = col + 1;
      while (r < n && a(r, col).is_zero()) ++r;
      if (r == n) throw SingularError("matrix is singular");
      a.left_transvect(col, r, one);
      winv.left_transvect(col, r, one);
    }
    const Quat pinv = inverse(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (!a(r, col).is_zero()) a.left_transvect(r, col, -(a(r, col) * pinv));
    }
  }
  auto gf = gauss_decompose(winv * g);
  if (!gf) throw InvariantError("pivot repair did not yield a Gauss form");

  // g = w v' d u = d (w^d) (v'^d) u.
  const MatD w = inverse(winv);
  UVUForm form{n, {}, conjugate_by_diagonal(w, gf->h),
               conjugate_by_diagonal(gf->v, gf->h), std::move(gf->u)};
  if (!form.well_formed()) throw InvariantError("decompose_HUVU shape");
  return HUVU{MatD::diagonal(gf->h), std::move(form)};
}

UVUForm commutator_normal_form(
    const std::vector<std::pair<MatD, MatD>>& pairs) {
  if (pairs.empty()) {
    throw PreconditionError("commutator_normal_form needs at least one pair");
  }
  const std::size_t n = pairs.front().first.size();
  UVUForm total = single_commutator_form(pairs[0].first, pairs[0].second);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const UVUForm f = single_commutator_form(pairs[i].first, pairs[i].second);
    const auto d = eval_diagonal(f.hfactors, n, f.algebra());
    total.hfactors.insert(total.hfactors.end(), f.hfactors.begin(),
                          f.hfactors.end());
    total.u1 = conjugate_by_diagonal(total.u1, d);
    total.v = conjugate_by_diagonal(total.v, d);
    total.u2 = conjugate_by_diagonal(total.u2, d) * f.u1;
    total = absorb_V(total, f.v);
    total.u2 = total.u2 * f.u2;
  }
  if (!kappa_leq(kappa_of(total.hfactors, n),
                 kappa_p(static_cast<std::int64_t>(pairs.size()), n))) {
    throw InvariantError("commutator normal form exceeded its budget");
  }
  return total;
}

HFactorList extract_H(const UVUForm& form) {
  if (!form.unipotent_part().is_identity()) {
    throw InvariantError("diagonal element with nontrivial unipotent residue");
  }
  return form.hfactors;
}

}  // namespace commlen
