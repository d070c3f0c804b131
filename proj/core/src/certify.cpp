#include "commlen/certify.hpp"

#include <algorithm>
#include <string>

#include "commlen/errors.hpp"
#include "commlen/random.hpp"

namespace commlen {

namespace {

QuatCert empty_cert(const Algebra& alg) { return QuatCert{{}, Quat::one(alg)}; }

// The pairs [begin, end) of cert with their product as target.
QuatCert slice_cert(const QuatCert& cert, std::size_t begin, std::size_t end) {
  QuatCert out{{cert.pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                cert.pairs.begin() + static_cast<std::ptrdiff_t>(end)},
               Quat::one(cert.target.algebra())};
  out.target = commutator_product(out.pairs, out.target);
  return out;
}

// M <- t_{i,j}(-x) M t_{i,j}(x) and C <- C t_{i,j}(x), keeping
// C^-1 g C = M.
void conjugate_step(MatD& m, MatD& c, std::size_t i, std::size_t j,
                    const Quat& x) {
  m.left_transvect(i, j, -x);
  m.right_transvect(i, j, x);
  c.right_transvect(i, j, x);
}

GaussForm require_gauss(const MatD& m, const char* what) {
  auto gf = gauss_decompose(m);
  if (!gf) throw InvariantError(std::string(what) + ": lost the Gauss form");
  return std::move(*gf);
}

MatD corner_diagonal(std::size_t n, const Quat& delta) {
  std::vector<Quat> d(n, Quat::one(delta.algebra()));
  d[n - 1] = delta;
  return MatD::diagonal(d);
}

MatD reassemble(const MatD& v, const std::vector<Quat>& h, const MatD& u) {
  return v * MatD::diagonal(h) * u;
}

std::vector<Quat> cert_targets(const std::vector<QuatCert>& certs) {
  std::vector<Quat> t;
  t.reserve(certs.size());
  for (const auto& c : certs) t.push_back(c.target);
  return t;
}

// Assembly shared by both upper pipelines: split every
// diagonal certificate into its last pair and the rest, realise the rest as
// diagonal commutators and the remainder as one commutator.
MatCert assemble_factorization(const PrescribedGauss& pg, const MatD& g,
                               std::int64_t bound, Mode mode) {
  const std::size_t n = pg.v.size();
  const Algebra& alg = g.algebra();
  const Quat one = Quat::one(alg);

  std::vector<QuatCert> head(n), last(n);
  std::size_t depth = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cert = pg.certs[i];
    const std::size_t len = cert.length();
    if (len == 0) {
      head[i] = empty_cert(alg);
      last[i] = empty_cert(alg);
    } else {
      head[i] = slice_cert(cert, 0, len - 1);
      last[i] = slice_cert(cert, len - 1, len);
    }
    depth = std::max(depth, head[i].length());
  }

  const auto h_head = cert_targets(head);
  // v h u = h' (h'^-1 v h') h'' u.
  const MatD v_tilde = conjugate_by_diagonal(pg.v, h_head);

  std::vector<std::pair<MatD, MatD>> pairs;
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<Quat> a(n, one), b(n, one);
    for (std::size_t i = 0; i < n; ++i) {
      if (k < head[i].length()) {
        a[i] = head[i].pairs[k].first;
        b[i] = head[i].pairs[k].second;
      }
    }
    if (mode == Mode::E) {
      // Determinant-one diagonals: the first two slots absorb the products.
      Quat pa = one, pb = one;
      for (std::size_t i = 2; i < n; ++i) {
        pa = pa * a[i];
        pb = pb * b[i];
      }
      a[0] = inverse(pa);
      a[1] = one;
      b[0] = one;
      b[1] = inverse(pb);
    }
    pairs.emplace_back(MatD::diagonal(a), MatD::diagonal(b));
  }
  const auto pq = single_commutator(v_tilde, pg.u, last, mode);
  pairs.emplace_back(pq.p, pq.q);

  const MatD c_inv = inverse(pg.gamma);
  MatCert cert{{}, g};
  cert.pairs.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    cert.pairs.emplace_back(pg.gamma * x * c_inv, pg.gamma * y * c_inv);
  }
  if (!cert_verify(cert)) {
    throw VerificationError("matrix commutator factorization failed to verify");
  }
  if (static_cast<std::int64_t>(cert.length()) > bound) {
    throw InvariantError("matrix commutator factorization exceeded its bound");
  }
  if (mode == Mode::E) {
    for (const auto& [x, y] : cert.pairs) {
      if (!is_elementary(x) || !is_elementary(y)) {
        throw InvariantError("non-elementary witness in E mode");
      }
    }
  }
  return cert;
}

}  // namespace

// ---- bounds -------------------------------------------------------------------

std::int64_t lower_bound_length(std::int64_t n, std::int64_t d) {
  if (n < 2 || d < 1) throw PreconditionError("need n >= 2 and d >= 1");
  return d * (8 * n * n - 13 * n + 8) - 2 * n * n + 3 * n - 1;
}

Rat width_lower_bound(std::int64_t n, std::int64_t c) {
  if (n < 2) throw PreconditionError("need n >= 2");
  if (c < 1) throw PreconditionError("need c >= 1");
  Rat r(static_cast<long>(c + 2 * n * n - 3 * n + 1),
        static_cast<long>(8 * n * n - 13 * n + 8));
  r.canonicalize();
  return r;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  if (b <= 0 || a < 0) throw PreconditionError("ceil_div needs a >= 0, b > 0");
  return (a + b - 1) / b;
}

UpperBounds width_upper_bounds(std::int64_t n, std::int64_t c) {
  if (n < 2) throw PreconditionError("need n >= 2");
  if (c < 1) throw PreconditionError("need c >= 1");
  UpperBounds b{ceil_div(c, n), std::nullopt};
  if (n >= 3) b.e = ceil_div(c, n - 2);
  return b;
}

std::int64_t single_commutator_threshold(std::int64_t n) {
  if (n < 2) throw PreconditionError("need n >= 2");
  return 6 * n * n - 10 * n + 7;
}

// ---- instances ------------------------------------------------------------------

std::int64_t Partition::total() const {
  std::int64_t s = 0;
  for (auto x : d) s += x;
  return s;
}

Partition balanced_partition(std::size_t n, std::int64_t c) {
  return balanced_tail_partition(n, 0, c);
}

Partition balanced_tail_partition(std::size_t n, std::size_t first,
                                  std::int64_t c) {
  if (first >= n || c < 0) throw PreconditionError("bad partition request");
  const auto parts = static_cast<std::int64_t>(n - first);
  const std::int64_t base = c / parts;
  const std::int64_t rem = c % parts;
  Partition p{std::vector<std::int64_t>(n, 0)};
  for (std::size_t i = first; i < n; ++i) {
    const auto pos = static_cast<std::int64_t>(i - first);
    p.d[i] = base + (pos >= parts - rem ? 1 : 0);
  }
  return p;
}

MatD BasedInstance::element() const {
  return inverse(gamma) * v * corner_diagonal(n, delta) * u * gamma;
}

void BasedInstance::validate() const {
  if (n < 2) throw PreconditionError("instance needs n >= 2");
  if (v.size() != n || u.size() != n || gamma.size() != n) {
    throw PreconditionError("instance matrices have the wrong size");
  }
  if (!v.is_lower_unitriangular()) {
    throw PreconditionError("instance v is not lower unitriangular");
  }
  if (!u.is_upper_unitriangular()) {
    throw PreconditionError("instance u is not upper unitriangular");
  }
  if (!(delta_cert.target == delta) || !cert_verify(delta_cert)) {
    throw PreconditionError("delta certificate does not verify");
  }
  (void)inverse(gamma);
}

GeneratedInstance make_instance(std::uint64_t seed, std::size_t n,
                                std::int64_t c, const Algebra& alg,
                                const InstanceOptions& opts) {
  if (n < 2 || c < 0) throw PreconditionError("make_instance needs n >= 2, c >= 0");
  Rng rng(seed, alg);
  for (int attempt = 0; attempt < 32; ++attempt) {
    QuatCert cert = empty_cert(alg);
    for (std::int64_t j = 0; j < c; ++j) {
      cert.pairs.emplace_back(rng.nonzero_quat(), rng.nonzero_quat());
    }
    cert.target = commutator_product(cert.pairs, Quat::one(alg));
    const MatD e = MatD::identity(n, alg);
    BasedInstance inst{n,
                       opts.unipotent ? rng.lower_unitriangular(n) : e,
                       opts.unipotent ? rng.upper_unitriangular(n) : e,
                       cert.target,
                       cert,
                       opts.conjugate ? rng.elementary(n, 2 * n) : e};
    MatD g = inst.element();
    if (!is_central_in_elementary(g)) return GeneratedInstance{std::move(g), std::move(inst)};
  }
  throw PreconditionError("make_instance: could not produce a noncentral element");
}

// ---- lower direction ----------------------------------------------------------

QuatCert extract_corner_cert(const HFactorList& hf, std::size_t n,
                             const Quat& tau) {
  const Algebra& alg = tau.algebra();
  const Quat one = Quat::one(alg);
  const auto diag = eval_diagonal(hf, n, alg);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!diag[i].is_one()) {
      throw PreconditionError("h-factor list is not of the form diag(1, ..., 1, tau)");
    }
  }
  if (!(diag[n - 1] == tau)) {
    throw PreconditionError("h-factor list does not evaluate to tau in the corner");
  }

  const KappaVec kappa = kappa_of(hf, n);
  const std::size_t last = n - 2;
  if (kappa[last] == 0) {
    // No generator touches the corner, so tau = 1.
    return QuatCert{{}, tau};
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    if (kappa[i] == 0) start = i + 1;
  }

  std::vector<Quat> first;
  for (const auto& f : hf) {
    if (f.index == start) first.push_back(f.eps);
  }
  QuatCert cert = detail::cyclic_product_cert_unchecked(first, one);
  for (std::size_t i = start + 1; i <= last; ++i) {
    // Diagonal entry i: generators at index i contribute eps, those at index
    // i - 1 contribute eps^-1, interleaved in list order.
    Word<Quat> w;
    std::size_t na = 0, nb = 0;
    for (const auto& f : hf) {
      if (f.index + 1 == i) {
        w.push_back({Role::A, na++, inverse(f.eps)});
      } else if (f.index == i) {
        w.push_back({Role::B, nb++, f.eps});
      }
    }
    cert = detail::interleaved_word_cert_unchecked(w, cert, one);
  }
  if (!(cert.target == tau) || !cert_verify(cert)) {
    throw InvariantError("corner certificate does not certify tau");
  }
  if (static_cast<std::int64_t>(cert.length()) > s_of(kappa)) {
    throw InvariantError("corner certificate exceeds s(kappa)");
  }
  return cert;
}

LowerResult lower_extract(const std::vector<std::pair<MatD, MatD>>& pairs,
                          const Quat& tau) {
  if (pairs.empty()) {
    if (!tau.is_one()) throw PreconditionError("empty product must give tau = 1");
    return LowerResult{QuatCert{{}, tau}, {}};
  }
  const std::size_t n = pairs.front().first.size();
  for (const auto& [x, y] : pairs) {
    if (x.size() != n || y.size() != n) {
      throw PreconditionError("commutator pairs have mixed sizes");
    }
  }
  const MatD target = corner_diagonal(n, tau);
  if (!(commutator_product(pairs, MatD::identity(n, tau.algebra())) == target)) {
    throw PreconditionError("pairs do not multiply to diag(1, ..., 1, tau)");
  }
  const UVUForm form = commutator_normal_form(pairs);
  const HFactorList hf = extract_H(form);
  if (!(eval_hfactors(hf, n, tau.algebra()) == target)) {
    throw InvariantError("normal form lost the diagonal value");
  }
  LowerResult r{extract_corner_cert(hf, n, tau), kappa_of(hf, n)};
  const auto budget = kappa_p(static_cast<std::int64_t>(pairs.size()), n);
  if (!kappa_leq(r.kappa, budget) ||
      static_cast<std::int64_t>(r.cert.length()) > s_of(budget)) {
    throw InvariantError("lower certificate exceeds its budget");
  }
  return r;
}

// ---- upper direction -----------------------------------------------------------

namespace {

// Drives every diagonal entry except the last to one, conjugating m and c.
// Empty when a pivot vanishes or the degenerate case needs a new start.
std::optional<BaseDecomposition> push_to_corner(MatD m, MatD c) {
  const std::size_t n = m.size();
  const Quat one = Quat::one(m.algebra());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto gf = gauss_decompose(m);
    if (!gf) return std::nullopt;
    const Quat alpha = gf->h[k];
    if (alpha.is_one()) continue;
    if (gf->u(k, k + 1).is_zero() && gf->v(k + 1, k).is_zero()) {
      // [h^-1, t_{k,k+1}(-1)] is a nontrivial upper transvection exactly
      // when the two diagonal entries differ.
      if (alpha == gf->h[k + 1]) return std::nullopt;
      conjugate_step(m, c, k, k + 1, one);
      gf = gauss_decompose(m);
      if (!gf || gf->u(k, k + 1).is_zero()) return std::nullopt;
    }
    const Quat ainv = inverse(gf->h[k]);
    const Quat zeta_u = gf->u(k, k + 1);
    if (!zeta_u.is_zero()) {
      // New entries: 1 at k and beta zeta^-1 alpha zeta at k + 1.
      conjugate_step(m, c, k + 1, k, inverse(zeta_u) * (ainv - one));
    } else {
      // New entries: 1 at k and zeta alpha zeta^-1 beta at k + 1.
      const Quat& zeta_v = gf->v(k + 1, k);
      conjugate_step(m, c, k, k + 1, (one - ainv) * inverse(zeta_v));
    }
  }
  auto gf = gauss_decompose(m);
  if (!gf) return std::nullopt;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!gf->h[k].is_one()) throw InvariantError("diagonal push left a residue");
  }
  return BaseDecomposition{std::move(c), std::move(gf->v), gf->h[n - 1],
                           std::move(gf->u)};
}

}  // namespace

BaseDecomposition prescribed_gauss_base(const MatD& g, std::uint64_t seed) {
  if (!is_elementary(g)) throw PreconditionError("element is not in E(n, D)");
  if (is_central_in_elementary(g)) {
    throw PreconditionError("element is central in E(n, D)");
  }
  const std::size_t n = g.size();
  const Algebra& alg = g.algebra();
  Rng rng(seed, alg);
  constexpr int kRetries = 64;
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    MatD c = attempt == 0 ? MatD::identity(n, alg) : rng.elementary(n, n + 1);
    MatD m = inverse(c) * g * c;
    if (auto r = push_to_corner(std::move(m), std::move(c))) {
      if (!(inverse(r->gamma) * g * r->gamma ==
            r->v * corner_diagonal(n, r->delta) * r->u)) {
        throw InvariantError("base decomposition failed to reassemble");
      }
      return std::move(*r);
    }
  }
  throw InvariantError("base decomposition: retry budget exhausted");
}

PrescribedGauss prescribed_gauss(const BasedInstance& inst,
                                 const Partition& part) {
  inst.validate();
  const std::size_t n = inst.n;
  const Algebra& alg = inst.delta.algebra();
  const Quat one = Quat::one(alg);
  if (part.d.size() != n) throw PreconditionError("partition has the wrong length");
  for (auto x : part.d) {
    if (x < 0) throw PreconditionError("partition has a negative part");
  }
  if (static_cast<std::int64_t>(inst.delta_cert.length()) > part.total()) {
    throw PreconditionError("delta certificate is longer than the partition total");
  }

  MatD m = inst.v * corner_diagonal(n, inst.delta) * inst.u;
  MatD c = inverse(inst.gamma);
  std::vector<QuatCert> certs(n, empty_cert(alg));
  certs[n - 1] = inst.delta_cert;

  for (std::size_t k = n - 1; k-- > 0;) {
    const QuatCert running = certs[k + 1];
    const std::size_t len = running.length();
    const auto keep = static_cast<std::size_t>(part.d[k + 1]);
    if (len <= keep) continue;

    GaussForm gf = require_gauss(m, "prescribed_gauss");
    if (!gf.h[k].is_one() || !(gf.h[k + 1] == running.target)) {
      throw InvariantError("prescribed_gauss: diagonal out of sync");
    }
    if (gf.u(k, k + 1).is_zero() && gf.v(k + 1, k).is_zero()) {
      if (running.target.is_one()) {
        certs[k + 1] = empty_cert(alg);
        continue;
      }
      // [h^-1, t_{k,k+1}(-1)] creates a unit above the diagonal.
      conjugate_step(m, c, k, k + 1, one);
      gf = require_gauss(m, "prescribed_gauss");
      if (gf.u(k, k + 1).is_zero()) {
        throw InvariantError("prescribed_gauss: pre-conjugation produced no unit");
      }
    }

    const Quat zeta_u = gf.u(k, k + 1);
    if (!zeta_u.is_zero()) {
      // eps~ = eps theta; conjugating by t_{k+1,k}((theta - 1) zeta^-1) leaves
      // eps at k + 1 and zeta theta zeta^-1 at k.
      QuatCert eps = slice_cert(running, 0, keep);
      QuatCert theta = slice_cert(running, keep, len);
      if (!theta.target.is_one()) {
        conjugate_step(m, c, k + 1, k, (theta.target - one) * inverse(zeta_u));
      }
      certs[k] = conjugate_cert(theta, zeta_u, inverse(zeta_u));
      certs[k + 1] = std::move(eps);
    } else {
      // eps~ = theta eps; conjugating by t_{k,k+1}(zeta^-1 (1 - theta))
      // leaves eps at k + 1 and zeta^-1 theta zeta at k.
      const Quat zeta_v = gf.v(k + 1, k);
      QuatCert theta = slice_cert(running, 0, len - keep);
      QuatCert eps = slice_cert(running, len - keep, len);
      if (!theta.target.is_one()) {
        conjugate_step(m, c, k, k + 1, inverse(zeta_v) * (one - theta.target));
      }
      certs[k] = conjugate_cert(theta, inverse(zeta_v), zeta_v);
      certs[k + 1] = std::move(eps);
    }
    gf = require_gauss(m, "prescribed_gauss");
    if (!(gf.h[k] == certs[k].target) || !(gf.h[k + 1] == certs[k + 1].target)) {
      throw InvariantError("prescribed_gauss: transfer produced the wrong diagonal");
    }
  }

  GaussForm gf = require_gauss(m, "prescribed_gauss");
  const auto targets = cert_targets(certs);
  if (gf.h != targets) {
    throw InvariantError("prescribed_gauss: final diagonal mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<std::int64_t>(certs[i].length()) > part.d[i] ||
        !cert_verify(certs[i])) {
      throw InvariantError("prescribed_gauss: diagonal certificate out of budget");
    }
  }
  if (!(inverse(c) * inst.element() * c == reassemble(gf.v, gf.h, gf.u))) {
    throw InvariantError("prescribed_gauss: reassembly failed");
  }
  return PrescribedGauss{std::move(c), std::move(gf.v), std::move(gf.u),
                         std::move(certs)};
}

CommutatorPair single_commutator(const MatD& v, const MatD& u,
                                 const std::vector<QuatCert>& eps, Mode mode) {
  const std::size_t n = v.size();
  const Algebra& alg = v.algebra();
  const Quat one = Quat::one(alg);
  if (u.size() != n || eps.size() != n) {
    throw PreconditionError("single_commutator: size mismatch");
  }
  if (!v.is_lower_unitriangular() || !u.is_upper_unitriangular()) {
    throw PreconditionError("single_commutator: v or u has the wrong shape");
  }
  std::vector<Quat> a(n, one), b(n, one);
  for (std::size_t i = 0; i < n; ++i) {
    if (eps[i].length() > 1 || !cert_verify(eps[i])) {
      throw PreconditionError("single_commutator: each entry needs one verified pair");
    }
    if (eps[i].length() == 1) {
      a[i] = eps[i].pairs[0].first;
      b[i] = eps[i].pairs[0].second;
    }
  }
  if (mode == Mode::E) {
    if (n < 3) throw PreconditionError("E mode needs n >= 3");
    if (!eps[0].target.is_one() || !eps[1].target.is_one()) {
      throw PreconditionError("E mode needs the first two entries equal to one");
    }
    // a_1 and b_0 central, a_0 and b_1 chosen so both diagonals have
    // trivial determinant.
    a[1] = one;
    b[0] = one;
    Quat pa = a[1], pb = b[0];
    for (std::size_t i = 2; i < n; ++i) {
      pa = pa * a[i];
      pb = pb * b[i];
    }
    a[0] = inverse(pa);
    b[1] = inverse(pb);
  }

  // Rescale a_i (i >= 1) by central t_i until all reduced norms are pairwise
  // distinct; a_0 absorbs the inverse product of the t_i. The commutators
  // [a_i, b_i] do not change.
  std::vector<Rat> t(n, Rat(1));
  std::vector<Quat> scaled(n);
  bool distinct = false;
  constexpr int kSearch = 10000;
  for (int s = 0; s < kSearch && !distinct; ++s) {
    Rat prod(1);
    for (std::size_t i = 1; i < n; ++i) {
      scaled[i] = t[i] * a[i];
      prod *= t[i];
    }
    scaled[0] = Rat(1 / prod) * a[0];
    std::vector<Rat> norms;
    norms.reserve(n);
    for (const auto& x : scaled) norms.push_back(nrd(x));
    distinct = true;
    for (std::size_t j = 1; j < n && distinct; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (norms[i] == norms[j]) {
          t[j] += 1;
          distinct = false;
          break;
        }
      }
    }
  }
  if (!distinct) throw Error("single_commutator: rescaling search exhausted");
  a = std::move(scaled);

  std::vector<Quat> eps_val(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    eps_val[i] = eps[i].target;
    if (!(commutator(a[i], b[i]) == eps_val[i])) {
      throw InvariantError("single_commutator: normalized witnesses changed eps");
    }
    c[i] = b[i] * inverse(a[i]) * inverse(b[i]);
  }

  // v = [v', h1] with h1 = diag(a): (v h1) v' = v' h1, entry (i, j), i > j:
  // a_i x - x a_j = -((v h1)_ij + sum_{j<k<i} (v h1)_ik v'_kj).
  MatD vp = MatD::identity(n, alg);
  for (std::size_t depth = 1; depth < n; ++depth) {
    for (std::size_t j = 0; j + depth < n; ++j) {
      const std::size_t i = j + depth;
      Quat r = v(i, j) * a[j];
      for (std::size_t k = j + 1; k < i; ++k) r += v(i, k) * a[k] * vp(k, j);
      const Quat ainv = inverse(a[i]);
      vp(i, j) = solve_twisted(ainv, a[j], ainv * (-r));
    }
  }
  // u = [h2^-1, u'] with h2 = diag(c): (h2 u) u' = u' h2, entry (i, j), i < j:
  // c_i x - x c_j = -((h2 u)_ij + sum_{i<k<j} (h2 u)_ik u'_kj).
  MatD up = MatD::identity(n, alg);
  for (std::size_t depth = 1; depth < n; ++depth) {
    for (std::size_t i = 0; i + depth < n; ++i) {
      const std::size_t j = i + depth;
      Quat r = c[i] * u(i, j);
      for (std::size_t k = i + 1; k < j; ++k) r += c[i] * u(i, k) * up(k, j);
      const Quat cinv = inverse(c[i]);
      up(i, j) = solve_twisted(cinv, c[j], cinv * (-r));
    }
  }
  const MatD h1 = MatD::diagonal(a);
  const MatD tau = MatD::diagonal(b);
  const MatD vp_inv = inverse(vp);
  CommutatorPair out{vp * h1 * vp_inv, up * tau * vp_inv};
  if (!(commutator(out.p, out.q) == reassemble(v, eps_val, u))) {
    throw InvariantError("single_commutator: [P, Q] does not reassemble");
  }
  if (mode == Mode::E && (!is_elementary(out.p) || !is_elementary(out.q))) {
    throw InvariantError("single_commutator: witness outside E(n, D)");
  }
  return out;
}

MatCert factor_commutators_gl(const BasedInstance& inst) {
  inst.validate();
  const auto c = static_cast<std::int64_t>(inst.delta_cert.length());
  if (c < 1) throw PreconditionError("factorization needs a nonempty delta certificate");
  const MatD g = inst.element();
  if (is_central_in_elementary(g)) throw PreconditionError("element is central");
  const auto n = static_cast<std::int64_t>(inst.n);
  const auto pg = prescribed_gauss(inst, balanced_partition(inst.n, c));
  return assemble_factorization(pg, g, ceil_div(c, n), Mode::GL);
}

MatCert factor_commutators_e(const BasedInstance& inst) {
  inst.validate();
  if (inst.n < 3) throw PreconditionError("E-mode factorization needs n >= 3");
  const auto c = static_cast<std::int64_t>(inst.delta_cert.length());
  if (c < 1) throw PreconditionError("factorization needs a nonempty delta certificate");
  const MatD g = inst.element();
  if (is_central_in_elementary(g)) throw PreconditionError("element is central");
  const auto n = static_cast<std::int64_t>(inst.n);
  const auto pg = prescribed_gauss(inst, balanced_tail_partition(inst.n, 2, c));
  return assemble_factorization(pg, g, ceil_div(c, n - 2), Mode::E);
}

std::vector<std::size_t> stable_permutation(std::size_t n, std::size_t m) {
  if (n < 1 || m < n) throw PreconditionError("stable_permutation needs 1 <= n <= m");
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i + 1 < n; ++i) perm[i] = i;
  perm[n - 1] = m - 1;
  for (std::size_t j = n; j < m; ++j) perm[j] = j - 1;
  return perm;
}

StableResult stable_single_commutator(const BasedInstance& inst) {
  inst.validate();
  const Algebra& alg = inst.delta.algebra();
  QuatCert cert = inst.delta_cert;
  if (cert.length() == 0) {
    cert.pairs.emplace_back(Quat::one(alg), Quat::one(alg));
  }
  const std::size_t m = std::max(inst.n, cert.length() + 2);
  const auto perm = stable_permutation(inst.n, m);
  auto embed = [&](const MatD& x) { return permute(pad_identity(x, m), perm); };
  const BasedInstance padded{m, embed(inst.v), embed(inst.u), inst.delta, cert,
                             embed(inst.gamma)};
  const MatCert f = factor_commutators_e(padded);
  if (f.length() != 1) throw InvariantError("stable embedding did not give one pair");

  std::vector<std::size_t> inv(m);
  for (std::size_t i = 0; i < m; ++i) inv[perm[i]] = i;
  StableResult r{m, permute(f.pairs[0].first, inv), permute(f.pairs[0].second, inv),
                 pad_identity(inst.element(), m)};
  if (!(commutator(r.p, r.q) == r.padded)) {
    throw VerificationError("stable commutator does not reassemble");
  }
  if (!is_elementary(r.p) || !is_elementary(r.q)) {
    throw InvariantError("stable witness outside E(n, D)");
  }
  return r;
}

}  // namespace commlen
