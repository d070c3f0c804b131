#pragma once

// Budgeted rewriting into the form h * u1 * v * u2, where h is a tracked
// product of h_{i,i+1} generators, u1 and u2 are upper unitriangular and v is
// lower unitriangular.
//
// Every operation returns a new form and keeps the represented element
// exact; generator counts only grow by the documented budgets.

#include <cstddef>
#include <utility>
#include <vector>

#include "commlen/budget.hpp"
#include "commlen/matrix.hpp"

namespace commlen {

struct UVUForm {
  std::size_t n;
  HFactorList hfactors;
  MatD u1;
  MatD v;
  MatD u2;

  static UVUForm identity(std::size_t n, const Algebra& alg);

  const Algebra& algebra() const { return u1.algebra(); }
  MatD eval() const;
  // u1 * v * u2 without the diagonal head.
  MatD unipotent_part() const;
  // Shapes of u1, v, u2 are as documented.
  bool well_formed() const;
};

// A subdiagonal transvection t_{k+1,k}(xi); k is 0-based.
struct LowerStep {
  std::size_t k;
  Quat xi;
};

// Ordered product of the steps.
MatD eval_lower_steps(std::size_t n, const Algebra& alg,
                      const std::vector<LowerStep>& steps);

// Result evaluates to eval(form) * t_{k+1,k}(xi) and uses at most two new
// generators, both with index k.
UVUForm absorb_lower_transvection(const UVUForm& form, std::size_t k,
                                  const Quat& xi);

// Writes a lower unitriangular v as an ordered product of subdiagonal
// transvections t_{k+1,k}. Index 0 occurs at most n-1 times and index k >= 1
// at most 2(n-1-k) times; the counts are asserted before returning.
std::vector<LowerStep> factor_lower_unitriangular(const MatD& v);

// Result evaluates to eval(form) * v, adding at most lambda_vec(n).
UVUForm absorb_V(const UVUForm& form, const MatD& v);

// g = head * eval(form) with head diagonal and form.hfactors empty.
// Throws SingularError.
struct HUVU {
  MatD head;
  UVUForm form;
};
HUVU decompose_HUVU(const MatD& g);

// Normal form of the ordered product of the commutators [x_i, y_i], with
// generator counts bounded by kappa_p(pairs.size(), n).
UVUForm commutator_normal_form(
    const std::vector<std::pair<MatD, MatD>>& pairs);

// For a form whose value is diagonal, the unipotent part must be trivial and
// the tracked generators are the whole element. Throws InvariantError
// otherwise.
HFactorList extract_H(const UVUForm& form);

}  // namespace commlen
