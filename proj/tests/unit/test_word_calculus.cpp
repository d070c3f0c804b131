#include <gtest/gtest.h>

#include <algorithm>

#include "commlen/errors.hpp"
#include "commlen/matrix.hpp"
#include "commlen/random.hpp"
#include "commlen/word_calculus.hpp"
#include "oracle.hpp"

using namespace commlen;

namespace {

const Algebra H;
const Quat kOne = Quat::one(H);

Word<Quat> letters(const std::vector<Quat>& xs) {
  Word<Quat> w;
  for (std::size_t i = 0; i < xs.size(); ++i) w.push_back({Role::A, i, xs[i]});
  return w;
}

// k values with product e: k - 1 random, the last closes the product.
std::vector<Quat> closed_sequence(Rng& rng, std::size_t k) {
  std::vector<Quat> a;
  Quat prod = kOne;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    a.push_back(rng.nonzero_quat());
    prod = prod * a.back();
  }
  if (k > 0) a.push_back(inverse(prod));
  return a;
}

}  // namespace

TEST(CertVerify, Examples) {
  EXPECT_TRUE(cert_verify(CommutatorCert<Quat>{{}, kOne}));
  const Quat x(H, 1, 2), y(H, 0, 1, 1, 1);
  EXPECT_TRUE(cert_verify(CommutatorCert<Quat>{{{x, y}}, commutator(x, y)}));
  EXPECT_FALSE(cert_verify(CommutatorCert<Quat>{{{x, y}}, kOne}));
  EXPECT_FALSE(cert_verify(CommutatorCert<Quat>{{{x, Quat::zero(H)}}, kOne}));
}

TEST(CertVerify, QuaternionFastPathAgreesWithGeneric) {
  Rng rng(1, H);
  for (int t = 0; t < 200; ++t) {
    CommutatorCert<Quat> cert{{}, kOne};
    const auto len = rng.uniform(0, 4);
    for (int i = 0; i < len; ++i) {
      cert.pairs.emplace_back(rng.nonzero_quat(), rng.nonzero_quat());
    }
    cert.target = commutator_product(cert.pairs, kOne);
    if (t % 3 == 0) cert.target = cert.target * Quat(H, 1, 0, 1);
    const bool generic =
        commutator_product(cert.pairs, kOne) == cert.target;
    ASSERT_EQ(cert_verify(cert), generic);
    ASSERT_EQ(oracle::certifies(cert.pairs, cert.target), generic);
  }
}

TEST(CertVerify, MatrixCertificateConjugationInvariance) {
  Rng rng(2, H);
  for (int t = 0; t < 10; ++t) {
    CommutatorCert<MatD> cert{{}, MatD::identity(3, H)};
    for (int i = 0; i < 2; ++i) {
      cert.pairs.emplace_back(rng.invertible(3), rng.invertible(3));
    }
    cert.target = commutator_product(cert.pairs, MatD::identity(3, H));
    const MatD c = rng.invertible(3);
    const auto conj = conjugate_cert(cert, c, inverse(c));
    ASSERT_TRUE(cert_verify(conj));
    ASSERT_TRUE(oracle::certifies(conj.pairs, conj.target));
  }
}

TEST(MoveLetter, FrontExamples) {
  const Quat u(H, 1, 1), x(H, 0, 2, 1);
  const auto same = move_letter_front(letters({x, u}), 0, kOne);
  EXPECT_TRUE(commutator(same.pair.first, same.pair.second).is_one());
  EXPECT_EQ(same.word[0].value, x);

  const auto moved = move_letter_front(letters({u, x}), 1, kOne);
  EXPECT_EQ(moved.word[0].value, x);
  EXPECT_EQ(moved.word[1].value, u);
  EXPECT_EQ(x * u * commutator(moved.pair.first, moved.pair.second), u * x);
}

TEST(MoveLetter, RandomWordsKeepValue) {
  Rng rng(3, H);
  for (int t = 0; t < 100; ++t) {
    std::vector<Quat> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(rng.nonzero_quat());
    const Word<Quat> w = letters(xs);
    const auto idx = static_cast<std::size_t>(rng.uniform(0, 4));
    for (const auto& r : {move_letter_front(w, idx, kOne),
                          move_letter_end(w, idx, kOne)}) {
      ASSERT_EQ(eval_word(r.word, kOne) * commutator(r.pair.first, r.pair.second),
                eval_word(w, kOne));
    }
  }
  EXPECT_THROW(move_letter_end(letters({kOne}), 3, kOne), PreconditionError);
}

TEST(CyclicProductCert, Examples) {
  const Quat x(H, 1, 3, 0, 1);
  EXPECT_EQ(cyclic_product_cert<Quat>({}, kOne).length(), 0u);
  EXPECT_EQ(cyclic_product_cert<Quat>({kOne}, kOne).length(), 0u);
  const auto two = cyclic_product_cert<Quat>({x, inverse(x)}, kOne);
  EXPECT_EQ(two.length(), 0u);
  EXPECT_TRUE(two.target.is_one());
  EXPECT_THROW(cyclic_product_cert<Quat>({x}, kOne), PreconditionError);
}

TEST(CyclicProductCert, RandomWithinBound) {
  Rng rng(4, H);
  for (int t = 0; t < 300; ++t) {
    const auto k = static_cast<std::size_t>(rng.uniform(0, 8));
    const auto a = closed_sequence(rng, k);
    const auto cert = cyclic_product_cert(a, kOne);
    Quat target = kOne;
    for (const auto& x : a) target = target * inverse(x);
    ASSERT_EQ(cert.target, target);
    ASSERT_LE(cert.length(), k > 2 ? k - 2 : 0);
    ASSERT_TRUE(oracle::certifies(cert.pairs, cert.target));
  }
}

TEST(CyclicProductCert, WorksOverMatrices) {
  Rng rng(5, H);
  const MatD e = MatD::identity(3, H);
  std::vector<MatD> a;
  MatD prod = e;
  for (int i = 0; i < 4; ++i) {
    a.push_back(rng.invertible(3));
    prod = prod * a.back();
  }
  a.push_back(inverse(prod));
  const auto cert = cyclic_product_cert(a, e);
  EXPECT_LE(cert.length(), 3u);
  EXPECT_TRUE(oracle::certifies(cert.pairs, cert.target));
}

TEST(InterleavedWordCert, SingleBLetter) {
  // a_1 = [x, y]; w = (b_1, a_1^-1) with b_1 = a_1, and cert_a = [y, x].
  const Quat x(H, 1, 2, 0, 1), y(H, 0, 1, -1, 2);
  const Quat a1 = commutator(x, y);
  const CommutatorCert<Quat> cert_a{{{y, x}}, inverse(a1)};
  Word<Quat> w{{Role::B, 0, a1}, {Role::A, 0, inverse(a1)}};
  const auto cert = interleaved_word_cert(w, cert_a, kOne);
  EXPECT_EQ(cert.target, inverse(a1));
  EXPECT_EQ(cert.length(), 1u);
  EXPECT_TRUE(oracle::certifies(cert.pairs, cert.target));

  const CommutatorCert<Quat> wrong{{{x, y}}, inverse(a1)};
  EXPECT_THROW(interleaved_word_cert(w, wrong, kOne), PreconditionError);
}

TEST(InterleavedWordCert, OnlyBLetters) {
  Rng rng(7, H);
  const auto b = closed_sequence(rng, 3);
  Word<Quat> w;
  for (std::size_t i = 0; i < 3; ++i) w.push_back({Role::B, i, b[i]});
  const auto cert = interleaved_word_cert(w, CommutatorCert<Quat>{{}, kOne}, kOne);
  EXPECT_LE(cert.length(), 2u);
  EXPECT_EQ(cert.target, inverse(b[0]) * inverse(b[1]) * inverse(b[2]));
  EXPECT_TRUE(oracle::certifies(cert.pairs, cert.target));
}

TEST(InterleavedWordCert, RandomInterleavings) {
  Rng rng(8, H);
  for (int t = 0; t < 150; ++t) {
    const auto p = static_cast<std::size_t>(rng.uniform(0, 4));
    const auto q = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto a = closed_sequence(rng, p);
    const auto cert_a = cyclic_product_cert(a, kOne);
    std::vector<Role> roles(p, Role::A);
    roles.insert(roles.end(), q, Role::B);
    std::shuffle(roles.begin(), roles.end(), rng.engine());
    Word<Quat> w;
    std::size_t na = 0, nb = 0, hole = 0;
    for (Role r : roles) {
      if (r == Role::A) {
        w.push_back({Role::A, na, inverse(a[na])});
        ++na;
      } else {
        if (nb + 1 == q) hole = w.size();
        w.push_back({Role::B, nb++, rng.nonzero_quat()});
      }
    }
    w[hole].value = inverse(eval_range(w, 0, hole, kOne)) *
                    inverse(eval_range(w, hole + 1, w.size(), kOne));
    const auto cert = interleaved_word_cert(w, cert_a, kOne);
    Quat target = kOne;
    std::vector<Quat> bs(q, kOne);
    for (const auto& l : w) {
      if (l.role == Role::B) bs[l.index] = l.value;
    }
    for (const auto& x : bs) target = target * inverse(x);
    ASSERT_EQ(cert.target, target);
    ASSERT_LE(cert.length(), cert_a.length() + q - 1);
    ASSERT_TRUE(oracle::certifies(cert.pairs, cert.target));
  }
}

TEST(InterleavedWordCert, RejectsMalformedWords) {
  const Quat x(H, 1, 1);
  Word<Quat> not_identity{{Role::B, 0, x}};
  EXPECT_THROW(interleaved_word_cert(not_identity, CommutatorCert<Quat>{{}, kOne}, kOne),
               PreconditionError);
  Word<Quat> repeated{{Role::B, 0, x}, {Role::B, 0, inverse(x)}};
  EXPECT_THROW(interleaved_word_cert(repeated, CommutatorCert<Quat>{{}, kOne}, kOne),
               PreconditionError);
  Word<Quat> no_b{{Role::A, 0, kOne}};
  EXPECT_THROW(interleaved_word_cert(no_b, CommutatorCert<Quat>{{}, kOne}, kOne),
               PreconditionError);
}
