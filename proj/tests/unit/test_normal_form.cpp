#include <gtest/gtest.h>

#include "commlen/errors.hpp"
#include "commlen/normal_form.hpp"
#include "commlen/random.hpp"

using namespace commlen;

namespace {

const Algebra H;

Quat s(int w) { return Quat(H, w); }

KappaVec kappa_delta(const UVUForm& after, const UVUForm& before) {
  KappaVec a = kappa_of(after.hfactors, after.n);
  const KappaVec b = kappa_of(before.hfactors, before.n);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

TEST(AbsorbLower, ZeroIsNoOp) {
  Rng rng(1, H);
  const UVUForm f{3, {}, rng.upper_unitriangular(3), rng.lower_unitriangular(3),
                  rng.upper_unitriangular(3)};
  const UVUForm r = absorb_lower_transvection(f, 1, Quat::zero(H));
  EXPECT_EQ(r.eval(), f.eval());
  EXPECT_TRUE(r.hfactors.empty());
}

TEST(AbsorbLower, IdentityFormGainsOnlyV) {
  const Quat xi(H, 1, 0, 2, 0);
  const UVUForm r = absorb_lower_transvection(UVUForm::identity(3, H), 1, xi);
  EXPECT_TRUE(r.hfactors.empty());
  EXPECT_EQ(r.v, transvection(3, 2, 1, xi));
  EXPECT_TRUE(r.u1.is_identity());
  EXPECT_TRUE(r.u2.is_identity());
}

TEST(AbsorbLower, CancellingPivotUsesRelationThree) {
  UVUForm f = UVUForm::identity(2, H);
  f.u2 = transvection(2, 0, 1, s(1));
  const UVUForm r = absorb_lower_transvection(f, 0, s(1));
  EXPECT_EQ(r.hfactors, (HFactorList{{0, s(1)}, {0, s(2)}}));
  EXPECT_EQ(r.eval(), f.eval() * transvection(2, 1, 0, s(1)));
}

TEST(AbsorbLower, RandomIncrementAtMostTwo) {
  Rng rng(2, H);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int t = 0; t < 60; ++t) {
      UVUForm f{n, {}, rng.upper_unitriangular(n, true),
                rng.lower_unitriangular(n, true), rng.upper_unitriangular(n, true)};
      const auto k = static_cast<std::size_t>(rng.uniform(0, n - 2));
      const Quat xi = rng.nonzero_quat();
      if (t % 2 == 0) f.u2(k, k + 1) = -inverse(xi);
      if (t % 4 == 0) f.v(k + 1, k) = xi;
      const UVUForm r = absorb_lower_transvection(f, k, xi);
      ASSERT_EQ(r.eval(), f.eval() * transvection(n, k + 1, k, xi));
      ASSERT_TRUE(r.well_formed());
      const KappaVec d = kappa_delta(r, f);
      for (std::size_t i = 0; i < d.size(); ++i) ASSERT_LE(d[i], i == k ? 2 : 0);
    }
  }
}

TEST(AbsorbLower, RejectsBadIndex) {
  EXPECT_THROW(absorb_lower_transvection(UVUForm::identity(3, H), 2, s(1)),
               PreconditionError);
}

TEST(FactorLower, IdentityAndBidiagonal) {
  EXPECT_TRUE(factor_lower_unitriangular(MatD::identity(4, H)).empty());
  MatD v = MatD::identity(4, H);
  const std::vector<Quat> x{Quat(H, 1, 1), Quat(H, 0, 0, 2), Quat(H, 3)};
  for (std::size_t k = 0; k < 3; ++k) v(k + 1, k) = x[k];
  const auto steps = factor_lower_unitriangular(v);
  ASSERT_EQ(steps.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(steps[k].k, k);
    EXPECT_EQ(steps[k].xi, x[k]);
  }
}

TEST(FactorLower, ThreeByThreeRowSetter) {
  const Quat x(H, 2, 1), y(H, 0, 1, 1), z(H, 1, 0, 0, 5);
  MatD v = MatD::identity(3, H);
  v(1, 0) = x;
  v(2, 0) = y;
  v(2, 1) = z;
  const auto steps = factor_lower_unitriangular(v);
  ASSERT_EQ(steps.size(), 4u);
  const Quat one = Quat::one(H);
  const std::vector<std::pair<std::size_t, Quat>> expect{
      {0, x - one}, {1, y}, {0, one}, {1, z - y}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(steps[i].k, expect[i].first);
    EXPECT_EQ(steps[i].xi, expect[i].second);
  }
  EXPECT_EQ(eval_lower_steps(3, H, steps), v);
}

TEST(FactorLower, ExhaustiveSmallEntriesAtThree) {
  // Entries in {0, 1, -1, i} at the three subdiagonal positions.
  const std::vector<Quat> vals{s(0), s(1), s(-1), Quat(H, 0, 1)};
  for (const auto& a : vals) {
    for (const auto& b : vals) {
      for (const auto& c : vals) {
        MatD v = MatD::identity(3, H);
        v(1, 0) = a;
        v(2, 0) = b;
        v(2, 1) = c;
        const auto steps = factor_lower_unitriangular(v);
        std::size_t c0 = 0, c1 = 0;
        for (const auto& st : steps) (st.k == 0 ? c0 : c1)++;
        ASSERT_LE(c0, 2u);
        ASSERT_LE(c1, 2u);
        ASSERT_EQ(eval_lower_steps(3, H, steps), v);
      }
    }
  }
}

TEST(FactorLower, RejectsNonUnitriangular) {
  EXPECT_THROW(factor_lower_unitriangular(transvection(3, 0, 2, s(1))),
               PreconditionError);
}

TEST(AbsorbV, Examples) {
  Rng rng(3, H);
  const UVUForm f{3, {}, rng.upper_unitriangular(3), rng.lower_unitriangular(3),
                  rng.upper_unitriangular(3)};
  EXPECT_EQ(absorb_V(f, MatD::identity(3, H)).eval(), f.eval());
  const MatD v = rng.lower_unitriangular(3);
  const UVUForm r = absorb_V(UVUForm::identity(3, H), v);
  EXPECT_TRUE(r.hfactors.empty());
  EXPECT_EQ(r.v, v);
}

TEST(AbsorbV, RandomWithinLambda) {
  Rng rng(4, H);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int t = 0; t < 30; ++t) {
      const UVUForm f{n, {}, rng.upper_unitriangular(n, true),
                      rng.lower_unitriangular(n, true),
                      rng.upper_unitriangular(n, true)};
      const MatD v = rng.lower_unitriangular(n, true);
      const UVUForm r = absorb_V(f, v);
      ASSERT_EQ(r.eval(), f.eval() * v);
      ASSERT_TRUE(kappa_leq(kappa_delta(r, f), lambda_vec(n)));
    }
  }
}

TEST(DecomposeHUVU, Examples) {
  const std::vector<Quat> d{Quat(H, 1, 1), s(3), Quat(H, 0, 0, 1)};
  const MatD g = MatD::diagonal(d);
  const HUVU r = decompose_HUVU(g);
  EXPECT_EQ(r.head, g);
  EXPECT_TRUE(r.form.eval().is_identity());

  const Quat xi(H, 2, 0, 1);
  const HUVU t = decompose_HUVU(transvection(2, 1, 0, xi));
  EXPECT_TRUE(t.head.is_identity());
  EXPECT_EQ(t.form.v, transvection(2, 1, 0, xi));
}

TEST(DecomposeHUVU, NeedsPivotRepair) {
  const MatD swap = MatD::from_rows({{s(0), s(1)}, {s(1), s(0)}});
  const HUVU r = decompose_HUVU(swap);
  EXPECT_EQ(r.head * r.form.eval(), swap);
  EXPECT_THROW(decompose_HUVU(MatD(2, H)), SingularError);
}

TEST(CommutatorNormalForm, Examples) {
  const MatD e = MatD::identity(3, H);
  const UVUForm id = commutator_normal_form({{e, e}});
  EXPECT_TRUE(id.hfactors.empty());
  EXPECT_TRUE(id.eval().is_identity());

  const Quat a(H, 1, 1), b(H, 0, 1, 1);
  const MatD x = MatD::diagonal(std::vector<Quat>{a, s(1), s(1)});
  const MatD y = MatD::diagonal(std::vector<Quat>{b, s(1), s(1)});
  const UVUForm f = commutator_normal_form({{x, y}});
  EXPECT_EQ(f.eval(), MatD::diagonal(std::vector<Quat>{commutator(a, b), s(1), s(1)}));
  EXPECT_TRUE(kappa_leq(kappa_of(f.hfactors, 3), kappa_p(1, 3)));
  EXPECT_EQ(eval_hfactors(extract_H(f), 3, H), f.eval());

  EXPECT_THROW(commutator_normal_form({}), PreconditionError);
}

TEST(CommutatorNormalForm, RandomPairsWithinBudget) {
  Rng rng(5, H);
  for (int p = 1; p <= 3; ++p) {
    for (std::size_t n = 2; n <= 3; ++n) {
      for (int t = 0; t < 4; ++t) {
        std::vector<std::pair<MatD, MatD>> pairs;
        MatD prod = MatD::identity(n, H);
        for (int i = 0; i < p; ++i) {
          pairs.emplace_back(rng.invertible(n), rng.invertible(n));
          prod = prod * commutator(pairs.back().first, pairs.back().second);
        }
        const UVUForm f = commutator_normal_form(pairs);
        ASSERT_EQ(f.eval(), prod);
        ASSERT_TRUE(kappa_leq(kappa_of(f.hfactors, n), kappa_p(p, n)));
      }
    }
  }
}

TEST(ExtractH, IdentityAndCorrupted) {
  EXPECT_TRUE(extract_H(UVUForm::identity(3, H)).empty());
  UVUForm bad = UVUForm::identity(3, H);
  bad.u1 = transvection(3, 0, 1, s(1));
  EXPECT_THROW(extract_H(bad), InvariantError);
}
