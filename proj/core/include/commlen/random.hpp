#pragma once

// Seeded generators for test data and instances. Output depends only on the
// seed (mt19937_64 with libstdc++ distributions).

#include <cstddef>
#include <cstdint>
#include <random>

#include "commlen/matrix.hpp"

namespace commlen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, Algebra alg = {}) : eng_(seed), alg_(std::move(alg)) {}

  const Algebra& algebra() const { return alg_; }
  std::mt19937_64& engine() { return eng_; }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

  // p/q with |p| <= max_num and 1 <= q <= max_den.
  Rat rat(int max_num = 3, int max_den = 3);
  Rat nonzero_rat(int max_num = 3, int max_den = 3);
  Quat quat(int max_num = 3, int max_den = 3);
  Quat nonzero_quat(int max_num = 3, int max_den = 3);

  // Random quaternion with some coordinates zeroed, to reach the degenerate
  // branches of case analyses more often.
  Quat sparse_quat(int max_num = 2, int max_den = 2);

  MatD lower_unitriangular(std::size_t n, bool sparse = false);
  MatD upper_unitriangular(std::size_t n, bool sparse = false);
  MatD diagonal(std::size_t n);
  // Product of `count` random transvections.
  MatD elementary(std::size_t n, std::size_t count);
  // Random entries, resampled until invertible.
  MatD invertible(std::size_t n);

 private:
  std::mt19937_64 eng_;
  Algebra alg_;
};

}  // namespace commlen
