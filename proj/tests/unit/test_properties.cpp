// Seeded property tests. The generator here is a self-contained SplitMix64
// so that inputs do not depend on the library's own sampling code.

#include <gtest/gtest.h>

#include <cstdint>

#include "commlen/certify.hpp"
#include "oracle.hpp"

using namespace commlen;

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rat rat() { return Rat(range(-4, 4), range(1, 3)); }
  Quat quat(const Algebra& alg) { return Quat(alg, rat(), rat(), rat(), rat()); }
  Quat nonzero(const Algebra& alg) {
    for (;;) {
      Quat q = quat(alg);
      if (!q.is_zero()) return q;
    }
  }
  // Definite algebras (a, b < 0) are division algebras.
  Algebra algebra() { return Algebra(-range(1, 5), Rat(-range(1, 7), range(1, 2))); }
  MatD matrix(std::size_t n, const Algebra& alg) {
    MatD m(n, alg);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = range(0, 2) == 0 ? Quat::zero(alg) : quat(alg);
    }
    return m;
  }
  MatD invertible(std::size_t n, const Algebra& alg) {
    for (;;) {
      MatD m = matrix(n, alg);
      if (oracle::nrd_squared(m) != 0) return m;
    }
  }

 private:
  std::uint64_t s_;
};

}  // namespace

TEST(Property, QuaternionIdentitiesOverRandomAlgebras) {
  Gen g(101);
  for (int t = 0; t < 500; ++t) {
    const Algebra alg = g.algebra();
    const Quat p = g.nonzero(alg), q = g.nonzero(alg);
    ASSERT_EQ(p * q, oracle::mul(p, q));
    ASSERT_EQ(nrd(p * q), nrd(p) * nrd(q));
    ASSERT_EQ(conj(p * q), conj(q) * conj(p));
    ASSERT_TRUE((p * inverse(p)).is_one());
    ASSERT_EQ(nrd(commutator(p, q)), 1);
    ASSERT_EQ(Quat(alg, trd(p)), p + conj(p));
    // nrd is the determinant of left multiplication, up to a square.
    ASSERT_EQ(oracle::det(oracle::left_regular(p)), nrd(p) * nrd(p));
  }
}

TEST(Property, TwistedSolveSatisfiesEquation) {
  Gen g(102);
  for (int t = 0; t < 300; ++t) {
    const Algebra alg = g.algebra();
    const Quat p = g.nonzero(alg), q = g.nonzero(alg), r = g.quat(alg);
    if (nrd(p) * nrd(q) == 1) continue;
    const Quat x = solve_twisted(p, q, r);
    ASSERT_EQ(x - p * x * q, r);
  }
}

TEST(Property, MatrixInverseAndDeterminant) {
  Gen g(103);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int t = 0; t < 25; ++t) {
      const Algebra alg = g.algebra();
      const MatD a = g.invertible(n, alg), b = g.invertible(n, alg);
      ASSERT_EQ(inverse(a * b), inverse(b) * inverse(a));
      const Rat inv = dieudonne_det(a).invariant;
      ASSERT_EQ(inv * inv, oracle::nrd_squared(a));
      ASSERT_EQ(is_elementary(a), inv == 1);
    }
  }
}

TEST(Property, TransvectionCommutatorRelation) {
  Gen g(104);
  for (int t = 0; t < 200; ++t) {
    const Algebra alg = g.algebra();
    const std::size_t n = static_cast<std::size_t>(g.range(3, 5));
    std::size_t i = g.range(0, n - 1), j, q;
    do j = g.range(0, n - 1); while (j == i);
    do q = g.range(0, n - 1); while (q == i || q == j);
    const Quat xi = g.quat(alg), zeta = g.quat(alg);
    ASSERT_EQ(commutator(transvection(n, i, j, xi), transvection(n, j, q, zeta)),
              transvection(n, i, q, xi * zeta));
  }
}

TEST(Property, ConjugatedQuaternionCertificatesStayValid) {
  Gen g(105);
  for (int t = 0; t < 200; ++t) {
    const Algebra alg = g.algebra();
    CommutatorCert<Quat> cert{{}, Quat::one(alg)};
    for (int i = 0, k = static_cast<int>(g.range(0, 4)); i < k; ++i) {
      cert.pairs.emplace_back(g.nonzero(alg), g.nonzero(alg));
    }
    cert.target = commutator_product(cert.pairs, Quat::one(alg));
    const Quat c = g.nonzero(alg);
    const auto conj = conjugate_cert(cert, c, inverse(c));
    ASSERT_TRUE(cert_verify(conj));
    ASSERT_TRUE(oracle::certifies(conj.pairs, conj.target));
  }
}

TEST(Property, HUVUReassemblesOverOtherAlgebras) {
  Gen g(106);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int t = 0; t < 40; ++t) {
      const Algebra alg = g.algebra();
      const MatD m = g.invertible(n, alg);
      const HUVU d = decompose_HUVU(m);
      ASSERT_TRUE(d.head.is_diagonal());
      ASSERT_EQ(d.head * d.form.eval(), m);
    }
  }
}

TEST(Property, FactorizationOverOtherAlgebras) {
  Gen g(107);
  for (std::size_t n = 2; n <= 3; ++n) {
    for (std::int64_t c = 1; c <= 2 * static_cast<std::int64_t>(n); ++c) {
      const Algebra alg = g.algebra();
      const auto gi = make_instance(g.next(), n, c, alg);
      const MatCert cert = factor_commutators_gl(gi.inst);
      ASSERT_LE(static_cast<std::int64_t>(cert.length()),
                ceil_div(c, static_cast<std::int64_t>(n)));
      ASSERT_EQ(cert.target, gi.g);
      ASSERT_TRUE(oracle::certifies(cert.pairs, cert.target));
    }
  }
}
