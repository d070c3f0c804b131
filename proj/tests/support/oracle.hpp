#pragma once

// Reference implementations that share no code with the library beyond the
// Quat and MatD containers: quaternion products from the multiplication
// table of the basis 1, i, j, k, and matrices over D realised as 4n x 4n
// rational matrices through the left regular representation.

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "commlen/matrix.hpp"

namespace oracle {

using commlen::Algebra;
using commlen::MatD;
using commlen::Quat;
using commlen::Rat;

// e_r * e_s = coef * e_idx for the basis (1, i, j, k) of (a, b | Q).
struct BasisProduct {
  Rat coef;
  std::size_t idx;
};

inline BasisProduct basis_product(const Algebra& alg, std::size_t r,
                                  std::size_t s) {
  const Rat& a = alg.a();
  const Rat& b = alg.b();
  if (r == 0) return {1, s};
  if (s == 0) return {1, r};
  static constexpr std::size_t kIdx[3][3] = {{0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
  const Rat coef[3][3] = {{a, 1, a}, {-1, b, -b}, {-a, b, -a * b}};
  return {coef[r - 1][s - 1], kIdx[r - 1][s - 1]};
}

inline Quat mul(const Quat& p, const Quat& q) {
  std::array<Rat, 4> out{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t s = 0; s < 4; ++s) {
      const auto bp = basis_product(p.algebra(), r, s);
      out[bp.idx] += bp.coef * p.coord(r) * q.coord(s);
    }
  }
  return Quat(p.algebra(), out[0], out[1], out[2], out[3]);
}

using RMat = std::vector<std::vector<Rat>>;

inline RMat zeros(std::size_t n) { return RMat(n, std::vector<Rat>(n)); }

inline RMat rmul(const RMat& x, const RMat& y) {
  const std::size_t n = x.size();
  RMat z = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(x[i][k]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    }
  }
  return z;
}

// Column s holds the coordinates of q * e_s.
inline RMat left_regular(const Quat& q) {
  RMat m = zeros(4);
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t r = 0; r < 4; ++r) {
      const auto bp = basis_product(q.algebra(), r, s);
      m[bp.idx][s] += bp.coef * q.coord(r);
    }
  }
  return m;
}

// Block (r, c) is left_regular(g(r, c)); the map is a ring homomorphism.
inline RMat realise(const MatD& g) {
  const std::size_t n = g.size();
  RMat m = zeros(4 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const RMat block = left_regular(g(r, c));
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) m[4 * r + i][4 * c + j] = block[i][j];
      }
    }
  }
  return m;
}

inline Rat det(RMat m) {
  const std::size_t n = m.size();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      const Rat f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return d;
}

inline std::optional<RMat> inv(RMat m) {
  const std::size_t n = m.size();
  RMat id = zeros(n);
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(id[p], id[c]);
    const Rat s = 1 / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      id[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rat f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        id[r][j] -= f * id[c][j];
      }
    }
  }
  return id;
}

inline RMat commutator(const RMat& x, const RMat& y) {
  return rmul(rmul(x, y), rmul(*inv(x), *inv(y)));
}

// Product of commutators of the realised pairs equals the realised target.
inline bool certifies(const std::vector<std::pair<MatD, MatD>>& pairs,
                      const MatD& target) {
  RMat acc = realise(MatD::identity(target.size(), target.algebra()));
  for (const auto& [g, h] : pairs) {
    acc = rmul(acc, commutator(realise(g), realise(h)));
  }
  return acc == realise(target);
}

inline bool certifies(const std::vector<std::pair<Quat, Quat>>& pairs,
                      const Quat& target) {
  RMat acc = left_regular(Quat::one(target.algebra()));
  for (const auto& [g, h] : pairs) {
    acc = rmul(acc, commutator(left_regular(g), left_regular(h)));
  }
  return acc == left_regular(target);
}

// The left regular representation of M_n(D) has determinant Nrd(g)^2.
inline Rat nrd_squared(const MatD& g) { return det(realise(g)); }

}  // namespace oracle
