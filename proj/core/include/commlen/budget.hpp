#pragma once

// Budget accounting for products of the diagonal generators
// h_{i,i+1}(e) = diag(..., e, e^-1, ...).
//
// A KappaVec of length n-1 bounds how many generators with each index a
// product may use; all comparisons are componentwise.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "commlen/matrix.hpp"

namespace commlen {

using KappaVec = std::vector<std::int64_t>;

// One generator h_{index,index+1}(eps); index is 0-based in [0, n-2].
struct HFactor {
  std::size_t index;
  Quat eps;

  friend bool operator==(const HFactor&, const HFactor&) = default;
};

using HFactorList = std::vector<HFactor>;

KappaVec kappa_of(const HFactorList& list, std::size_t n);

// Componentwise a <= b. Throws PreconditionError on length mismatch.
bool kappa_leq(const KappaVec& a, const KappaVec& b);
KappaVec kappa_add(const KappaVec& a, const KappaVec& b);

// Diagonal entries of the ordered product of the list.
std::vector<Quat> eval_diagonal(const HFactorList& list, std::size_t n,
                                const Algebra& alg);
MatD eval_hfactors(const HFactorList& list, std::size_t n, const Algebra& alg);

// (2(n-1), 4(n-2), 4(n-3), ..., 4): generator budget to absorb one lower
// unitriangular matrix into a UVU form.
KappaVec lambda_vec(std::size_t n);
// (6, 3, ..., 3): budget of one commutator of diagonal matrices.
KappaVec mu_vec(std::size_t n);
// p * mu + (4p - 1) * lambda: budget of a product of p commutators.
KappaVec kappa_p(std::int64_t p, std::size_t n);

// max(0, k_1 - 2) + sum_{i >= 2} max(0, k_i - 1).
std::int64_t s_of(const KappaVec& kappa);

// Factor list evaluating exactly to [h1, h2] for diagonal h1, h2, using at
// most mu_vec(n) generators. Slot 0 uses diag([x, y], 1) =
// h(x) h(y) h(x^-1 y^-1) at index 0; slot s >= 1 uses
// h(x^-1) h(y^-1) h(y x) at index s-1, which puts [x, y] in slot s and
// leaves slot s-1 untouched. Trivial slot commutators emit nothing.
HFactorList h_commutator_factors(const MatD& h1, const MatD& h2);

}  // namespace commlen
