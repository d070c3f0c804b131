#pragma once

// End-to-end certificate pipelines.
//
// Lower direction: a product of d matrix commutators equal to
// diag(1, ..., 1, tau) is turned into an explicit certificate for tau in D*.
// Upper direction: an element v * diag(1, ..., 1, delta) * u of E(n, D) with
// a certificate for delta is factored into few matrix commutators.
//
// All indices are 0-based. Every pipeline verifies its output by exact
// multiplication before returning and throws VerificationError or
// InvariantError otherwise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "commlen/budget.hpp"
#include "commlen/matrix.hpp"
#include "commlen/normal_form.hpp"
#include "commlen/word_calculus.hpp"

namespace commlen {

using QuatCert = CommutatorCert<Quat>;
using MatCert = CommutatorCert<MatD>;

// ---- bound formulas ---------------------------------------------------------

// d (8n^2 - 13n + 8) - 2n^2 + 3n - 1, the closed form printed for the
// length of tau. The budget actually computed from the definitions,
// s_of(kappa_p(d, n)), is one smaller.
std::int64_t lower_bound_length(std::int64_t n, std::int64_t d);

// (c + 2n^2 - 3n + 1) / (8n^2 - 13n + 8). Throws PreconditionError if c < 1.
Rat width_lower_bound(std::int64_t n, std::int64_t c);

struct UpperBounds {
  std::int64_t gl;                 // ceil(c / n)
  std::optional<std::int64_t> e;   // ceil(c / (n - 2)), only for n >= 3
};
UpperBounds width_upper_bounds(std::int64_t n, std::int64_t c);

// 6n^2 - 10n + 7: the largest c for which the lower bound still allows
// every noncentral elementary matrix to be a single commutator.
std::int64_t single_commutator_threshold(std::int64_t n);

std::int64_t ceil_div(std::int64_t a, std::int64_t b);

// ---- instances ---------------------------------------------------------------

struct Partition {
  std::vector<std::int64_t> d;

  std::int64_t total() const;
};

// n parts differing by at most one, heavier parts last.
Partition balanced_partition(std::size_t n, std::int64_t c);
// Balanced over positions first..n-1, zero before.
Partition balanced_tail_partition(std::size_t n, std::size_t first,
                                  std::int64_t c);

// Represents gamma^-1 * v * diag(1, ..., 1, delta) * u * gamma.
struct BasedInstance {
  std::size_t n;
  MatD v;
  MatD u;
  Quat delta;
  QuatCert delta_cert;
  MatD gamma;

  MatD element() const;
  // Shapes, sizes and the delta certificate. Throws PreconditionError.
  void validate() const;
};

struct InstanceOptions {
  // Random unitriangular v and u; identity otherwise.
  bool unipotent = true;
  // Random elementary gamma; identity otherwise.
  bool conjugate = true;
};

struct GeneratedInstance {
  MatD g;
  BasedInstance inst;
};

// Deterministic per (seed, n, c, options). delta is a product of c random
// quaternion commutators; the element is never central.
GeneratedInstance make_instance(std::uint64_t seed, std::size_t n,
                                std::int64_t c, const Algebra& alg = {},
                                const InstanceOptions& opts = {});

// ---- lower direction ---------------------------------------------------------

// For an h-factor list evaluating to diag(1, ..., 1, tau), a verified
// certificate for tau with at most s_of(kappa_of(hf)) pairs.
QuatCert extract_corner_cert(const HFactorList& hf, std::size_t n,
                             const Quat& tau);

struct LowerResult {
  QuatCert cert;
  KappaVec kappa;  // tracked generator counts of the normal form
};

// pairs multiply (as commutators) to diag(1, ..., 1, tau). Goes through the
// commutator normal form and extract_corner_cert.
LowerResult lower_extract(const std::vector<std::pair<MatD, MatD>>& pairs,
                          const Quat& tau);

// ---- upper direction ---------------------------------------------------------

struct BaseDecomposition {
  MatD gamma;  // gamma^-1 g gamma = v * diag(1, ..., 1, delta) * u
  MatD v;
  Quat delta;
  MatD u;
};

// g must be elementary and noncentral. Tries gamma = identity first and then
// up to 64 seeded random elementary conjugators.
BaseDecomposition prescribed_gauss_base(const MatD& g,
                                        std::uint64_t seed = 0);

struct PrescribedGauss {
  MatD gamma;  // gamma^-1 * inst.element() * gamma = v * diag(eps) * u
  MatD v;
  MatD u;
  std::vector<QuatCert> certs;  // certs[i].target = eps_i, length <= d_i
};

PrescribedGauss prescribed_gauss(const BasedInstance& inst,
                                 const Partition& part);

enum class Mode { GL, E };

struct CommutatorPair {
  MatD p;
  MatD q;
};

// [P, Q] = v * diag(eps) * u, each eps_i given by a certificate of length at
// most one. In E mode eps_0 = eps_1 = 1 is required and P, Q are elementary.
CommutatorPair single_commutator(const MatD& v, const MatD& u,
                                 const std::vector<QuatCert>& eps, Mode mode);

// At most ceil(c/n) pairs with target inst.element(); c = |delta_cert|.
MatCert factor_commutators_gl(const BasedInstance& inst);
// n >= 3; at most ceil(c/(n-2)) pairs, all witnesses elementary.
MatCert factor_commutators_e(const BasedInstance& inst);

struct StableResult {
  std::size_t n;  // padded size
  MatD p;
  MatD q;
  MatD padded;  // the input element embedded in GL(n, D)
};

// Embeds the element into size max(n, |delta_cert| + 2) and returns a single
// elementary commutator equal to the embedded element.
StableResult stable_single_commutator(const BasedInstance& inst);

// Conjugation that moves index n-1 of an n-block to index m-1 and the padding
// indices to n-1..m-2, preserving the order of the others.
std::vector<std::size_t> stable_permutation(std::size_t n, std::size_t m);

}  // namespace commlen
