#include <gtest/gtest.h>

#include "commlen/errors.hpp"
#include "commlen/random.hpp"
#include "oracle.hpp"

using namespace commlen;

namespace {

const Algebra H;

Quat q(int w, int x, int y, int z) { return Quat(H, w, x, y, z); }

}  // namespace

TEST(Rat, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rat("6/4"), Rat(3, 2));
  EXPECT_EQ(parse_rat("-2"), Rat(-2));
  EXPECT_EQ(parse_rat("+0/7"), Rat(0));
  EXPECT_EQ(to_string(parse_rat("-10/4")), "-5/2");
}

TEST(Rat, RejectsMalformedText) {
  EXPECT_THROW(parse_rat("1/0"), PreconditionError);
  EXPECT_THROW(parse_rat("1.5"), PreconditionError);
  EXPECT_THROW(parse_rat(""), PreconditionError);
  EXPECT_THROW(parse_rat("3/-"), PreconditionError);
  EXPECT_THROW(parse_rat("10/-1"), PreconditionError);
}

TEST(Quat, InverseExamples) {
  EXPECT_EQ(inverse(q(0, 1, 0, 0)), q(0, -1, 0, 0));
  EXPECT_EQ(inverse(q(1, 1, 0, 0)), Quat(H, Rat(1, 2), Rat(-1, 2), 0, 0));
  EXPECT_THROW(inverse(Quat::zero(H)), PreconditionError);
}

TEST(Quat, ReducedNormAndTrace) {
  EXPECT_EQ(nrd(Quat::one(H)), 1);
  EXPECT_EQ(nrd(q(1, 1, 1, 1)), 4);
  EXPECT_EQ(nrd(Rat(3) * q(1, 2, 0, -1)), 9 * nrd(q(1, 2, 0, -1)));
  EXPECT_EQ(trd(q(5, 1, 1, 1)), 10);
}

TEST(Quat, CommutatorExamples) {
  const Quat i = q(0, 1, 0, 0), j = q(0, 0, 1, 0);
  EXPECT_TRUE(commutator(i, i).is_one());
  EXPECT_EQ(commutator(i, j), q(-1, 0, 0, 0));
  EXPECT_THROW(commutator(i, Quat::zero(H)), PreconditionError);
}

TEST(Quat, SplitAlgebraRaisesOnZeroDivisor) {
  const Algebra split(1, 1);
  const Quat x(split, 1, 1, 0, 0);
  EXPECT_EQ(nrd(x), 0);
  EXPECT_THROW(inverse(x), NotDivisionAlgebra);
  EXPECT_THROW(Algebra(0, 1), PreconditionError);
}

TEST(Quat, MixingAlgebrasIsRejected) {
  const Algebra other(-1, -3);
  EXPECT_THROW(Quat(H, 1) * Quat(other, 0, 1), PreconditionError);
}

TEST(Quat, ProductMatchesMultiplicationTable) {
  for (const Algebra& alg : {H, Algebra(-2, -5), Algebra(Rat(-1, 3), 7)}) {
    Rng rng(11, alg);
    for (int t = 0; t < 300; ++t) {
      const Quat x = rng.quat(), y = rng.quat();
      ASSERT_EQ(x * y, oracle::mul(x, y));
    }
  }
}

TEST(Quat, PrimitivePartIsAnIntegerRescaling) {
  const Quat x(H, Rat(2, 3), Rat(-4, 9), 0, Rat(8, 3));
  const Quat p = primitive_part(x);
  EXPECT_EQ(p, Quat(H, 3, -2, 0, 12));
  EXPECT_TRUE(primitive_part(Quat::zero(H)).is_zero());
}

TEST(SolveTwisted, Examples) {
  const Quat zero = Quat::zero(H), r = q(1, -2, 3, 5);
  EXPECT_EQ(solve_twisted(zero, Quat::one(H), r), r);
  const Quat p = q(2, 1, 0, 0), s = q(0, 1, 1, 0);
  EXPECT_TRUE(solve_twisted(p, s, zero).is_zero());
  const Quat x = solve_twisted(p, s, r);
  EXPECT_EQ(x - p * x * s, r);
}

TEST(SolveTwisted, SingularWhenMapHasKernel) {
  // x - 1 x 1 = 0 for every x.
  const Quat one = Quat::one(H);
  EXPECT_THROW(solve_twisted(one, one, one), SingularError);
}
