#include "commlen/budget.hpp"

#include <algorithm>

#include "commlen/errors.hpp"

namespace commlen {

KappaVec kappa_of(const HFactorList& list, std::size_t n) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  KappaVec k(n - 1, 0);
  for (const auto& f : list) {
    if (f.index >= n - 1) throw PreconditionError("h-factor index out of range");
    ++k[f.index];
  }
  return k;
}

bool kappa_leq(const KappaVec& a, const KappaVec& b) {
  if (a.size() != b.size()) throw PreconditionError("kappa length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

KappaVec kappa_add(const KappaVec& a, const KappaVec& b) {
  if (a.size() != b.size()) throw PreconditionError("kappa length mismatch");
  KappaVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<Quat> eval_diagonal(const HFactorList& list, std::size_t n,
                                const Algebra& alg) {
  std::vector<Quat> d(n, Quat::one(alg));
  for (const auto& f : list) {
    if (f.index + 1 >= n) throw PreconditionError("h-factor index out of range");
    d[f.index] = d[f.index] * f.eps;
    d[f.index + 1] = d[f.index + 1] * inverse(f.eps);
  }
  return d;
}

MatD eval_hfactors(const HFactorList& list, std::size_t n, const Algebra& alg) {
  const auto d = eval_diagonal(list, n, alg);
  return MatD::diagonal(d);
}

KappaVec lambda_vec(std::size_t n) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  KappaVec l(n - 1);
  l[0] = 2 * static_cast<std::int64_t>(n - 1);
  for (std::size_t i = 1; i < n - 1; ++i) {
    // 1-based index i + 1.
    l[i] = 4 * static_cast<std::int64_t>(n - (i + 1));
  }
  return l;
}

KappaVec mu_vec(std::size_t n) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  KappaVec m(n - 1, 3);
  m[0] = 6;
  return m;
}

KappaVec kappa_p(std::int64_t p, std::size_t n) {
  if (p < 1) throw PreconditionError("p must be at least 1");
  const auto l = lambda_vec(n);
  const auto m = mu_vec(n);
  KappaVec k(n - 1);
  for (std::size_t i = 0; i < n - 1; ++i) k[i] = p * m[i] + (4 * p - 1) * l[i];
  return k;
}

std::int64_t s_of(const KappaVec& kappa) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    s += std::max<std::int64_t>(0, kappa[i] - (i == 0 ? 2 : 1));
  }
  return s;
}

HFactorList h_commutator_factors(const MatD& h1, const MatD& h2) {
  if (h1.size() != h2.size() || !h1.is_diagonal() || !h2.is_diagonal()) {
    throw PreconditionError("h_commutator_factors needs diagonal matrices");
  }
  const std::size_t n = h1.size();
  if (n < 2) throw PreconditionError("n must be at least 2");
  HFactorList out;
  for (std::size_t s = 0; s < n; ++s) {
    const Quat& x = h1(s, s);
    const Quat& y = h2(s, s);
    if (commutator(x, y).is_one()) continue;
    if (s == 0) {
      out.push_back({0, x});
      out.push_back({0, y});
      out.push_back({0, inverse(x) * inverse(y)});
    } else {
      out.push_back({s - 1, inverse(x)});
      out.push_back({s - 1, inverse(y)});
      out.push_back({s - 1, y * x});
    }
  }
  return out;
}

}  // namespace commlen
