#include "commlen/random.hpp"

#include "commlen/errors.hpp"

namespace commlen {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
}

Rat Rng::rat(int max_num, int max_den) {
  Rat r(static_cast<long>(uniform(-max_num, max_num)),
        static_cast<long>(uniform(1, max_den)));
  r.canonicalize();
  return r;
}

Rat Rng::nonzero_rat(int max_num, int max_den) {
  for (;;) {
    Rat r = rat(max_num, max_den);
    if (sgn(r) != 0) return r;
  }
}

Quat Rng::quat(int max_num, int max_den) {
  Rat w = rat(max_num, max_den);
  Rat x = rat(max_num, max_den);
  Rat y = rat(max_num, max_den);
  Rat z = rat(max_num, max_den);
  return Quat(alg_, w, x, y, z);
}

Quat Rng::nonzero_quat(int max_num, int max_den) {
  for (;;) {
    Quat q = quat(max_num, max_den);
    if (!q.is_zero()) return q;
  }
}

Quat Rng::sparse_quat(int max_num, int max_den) {
  Rat c[4];
  for (auto& x : c) x = coin() ? rat(max_num, max_den) : Rat(0);
  return Quat(alg_, c[0], c[1], c[2], c[3]);
}

MatD Rng::lower_unitriangular(std::size_t n, bool sparse) {
  MatD m = MatD::identity(n, alg_);
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t c = 0; c < r; ++c) m(r, c) = sparse ? sparse_quat() : quat();
  }
  return m;
}

MatD Rng::upper_unitriangular(std::size_t n, bool sparse) {
  MatD m = MatD::identity(n, alg_);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) m(r, c) = sparse ? sparse_quat() : quat();
  }
  return m;
}

MatD Rng::diagonal(std::size_t n) {
  std::vector<Quat> d;
  d.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.push_back(nonzero_quat());
  return MatD::diagonal(d);
}

MatD Rng::elementary(std::size_t n, std::size_t count) {
  MatD m = MatD::identity(n, alg_);
  for (std::size_t s = 0; s < count; ++s) {
    const auto i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 2));
    if (j >= i) ++j;
    m.right_transvect(i, j, quat(2, 2));
  }
  return m;
}

MatD Rng::invertible(std::size_t n) {
  for (;;) {
    MatD m(n, alg_);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = coin() ? sparse_quat() : quat();
    }
    try {
      (void)dieudonne_det(m);
      return m;
    } catch (const SingularError&) {
    }
  }
}

}  // namespace commlen
