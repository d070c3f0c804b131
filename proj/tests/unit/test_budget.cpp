#include <gtest/gtest.h>

#include "commlen/budget.hpp"
#include "commlen/errors.hpp"
#include "commlen/random.hpp"

using namespace commlen;

namespace {

const Algebra H;

}  // namespace

TEST(Kappa, CountsPerIndex) {
  EXPECT_EQ(kappa_of({}, 3), (KappaVec{0, 0}));
  const HFactorList hf{{0, Quat(H, 2)}, {0, Quat(H, 3)}};
  EXPECT_EQ(kappa_of(hf, 3), (KappaVec{2, 0}));
  const HFactorList more{{1, Quat(H, 0, 1)}};
  HFactorList both = hf;
  both.insert(both.end(), more.begin(), more.end());
  EXPECT_EQ(kappa_of(both, 3), kappa_add(kappa_of(hf, 3), kappa_of(more, 3)));
  EXPECT_THROW(kappa_of({{2, Quat(H, 1)}}, 3), PreconditionError);
}

TEST(Kappa, Order) {
  EXPECT_TRUE(kappa_leq({1, 2}, {1, 3}));
  EXPECT_FALSE(kappa_leq({2, 2}, {1, 3}));
  EXPECT_THROW(kappa_leq({1}, {1, 2}), PreconditionError);
}

TEST(BudgetVectors, PublishedValues) {
  EXPECT_EQ(lambda_vec(4), (KappaVec{6, 8, 4}));
  EXPECT_EQ(mu_vec(4), (KappaVec{6, 3, 3}));
  EXPECT_EQ(kappa_p(1, 4), (KappaVec{24, 27, 15}));
  EXPECT_EQ(lambda_vec(2), (KappaVec{2}));
  EXPECT_EQ(kappa_p(1, 2), (KappaVec{12}));
}

TEST(BudgetVectors, LengthOfKappa) {
  EXPECT_EQ(s_of({0, 0, 0}), 0);
  EXPECT_EQ(s_of({12}), 10);
  EXPECT_EQ(s_of({24, 27, 15}), 62);
  EXPECT_EQ(s_of({1, 1}), 0);
}

TEST(EvalHFactors, AppliesEpsAndInverse) {
  const Quat e(H, 1, 1);
  const MatD m = eval_hfactors({{1, e}}, 3, H);
  EXPECT_EQ(m, h_elem(3, 1, 2, e));
}

TEST(HCommutatorFactors, TrivialWhenCommuting) {
  Rng rng(1, H);
  const MatD h1 = rng.diagonal(3);
  EXPECT_TRUE(h_commutator_factors(h1, MatD::identity(3, H)).empty());
}

TEST(HCommutatorFactors, TwoByTwoIdentity) {
  const Quat x(H, 1, 2, 0, 0), z(H, 0, 1, 1, 3);
  const MatD h1 = MatD::diagonal(std::vector<Quat>{x, Quat::one(H)});
  const MatD h2 = MatD::diagonal(std::vector<Quat>{z, Quat::one(H)});
  const HFactorList hf = h_commutator_factors(h1, h2);
  ASSERT_EQ(hf.size(), 3u);
  EXPECT_EQ(hf[0], (HFactor{0, x}));
  EXPECT_EQ(hf[1], (HFactor{0, z}));
  EXPECT_EQ(eval_hfactors(hf, 2, H), commutator(h1, h2));
}

TEST(HCommutatorFactors, RandomWithinMu) {
  Rng rng(2, H);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int t = 0; t < 50; ++t) {
      const MatD h1 = rng.diagonal(n), h2 = rng.diagonal(n);
      const HFactorList hf = h_commutator_factors(h1, h2);
      ASSERT_TRUE(kappa_leq(kappa_of(hf, n), mu_vec(n)));
      ASSERT_EQ(eval_hfactors(hf, n, H), commutator(h1, h2));
    }
  }
}

TEST(HCommutatorFactors, RejectsNonDiagonal) {
  EXPECT_THROW(h_commutator_factors(transvection(2, 0, 1, Quat(H, 1)),
                                    MatD::identity(2, H)),
               PreconditionError);
}
