#pragma once

// Exact arithmetic in a rational quaternion algebra (a, b | Q).
//
// The algebra has basis 1, i, j, k with i^2 = a, j^2 = b and ij = -ji = k.
// For a, b < 0 the reduced norm w^2 - a x^2 - b y^2 + ab z^2 is positive
// definite and the algebra is a skew-field; this is the scalar domain for
// every matrix in the library.

#include <array>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace commlen {

// Arbitrary-precision rational, always kept in lowest terms.
using Rat = mpq_class;

// Parses "p" or "p/q" into a canonical rational. Throws PreconditionError.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);

// Shared, immutable parameter pair (a, b) of a quaternion algebra.
class Algebra {
 public:
  // The Hamilton quaternions (-1, -1 | Q).
  Algebra();
  // Throws PreconditionError if a or b is zero.
  Algebra(Rat a, Rat b);

  const Rat& a() const { return params_->a; }
  const Rat& b() const { return params_->b; }
  const Rat& ab() const { return params_->ab; }

  // Negative a and b guarantee a division algebra.
  bool is_definite() const { return sgn(a()) < 0 && sgn(b()) < 0; }

  friend bool operator==(const Algebra& x, const Algebra& y) {
    return x.params_ == y.params_ ||
           (x.a() == y.a() && x.b() == y.b());
  }

 private:
  struct Params {
    Rat a, b, ab;
  };
  std::shared_ptr<const Params> params_;
};

class Quat {
 public:
  // Zero of the Hamilton algebra.
  Quat() = default;
  Quat(Algebra alg, Rat w, Rat x = 0, Rat y = 0, Rat z = 0);

  static Quat zero(const Algebra& alg) { return Quat(alg, 0); }
  static Quat one(const Algebra& alg) { return Quat(alg, 1); }

  const Algebra& algebra() const { return alg_; }
  const Rat& w() const { return c_[0]; }
  const Rat& x() const { return c_[1]; }
  const Rat& y() const { return c_[2]; }
  const Rat& z() const { return c_[3]; }
  const Rat& coord(std::size_t i) const { return c_[i]; }

  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in the centre Q.
  bool is_central() const;

  Quat& operator+=(const Quat& q);
  Quat& operator-=(const Quat& q);

  friend Quat operator+(Quat p, const Quat& q) { return p += q; }
  friend Quat operator-(Quat p, const Quat& q) { return p -= q; }
  friend Quat operator-(const Quat& q);
  friend Quat operator*(const Quat& p, const Quat& q);
  friend Quat operator*(const Rat& t, const Quat& q);
  friend bool operator==(const Quat& p, const Quat& q);

 private:
  Algebra alg_;
  std::array<Rat, 4> c_{};
};

std::ostream& operator<<(std::ostream& os, const Quat& q);

Quat conj(const Quat& q);
// Reduced norm q * conj(q).
Rat nrd(const Quat& q);
// Reduced trace q + conj(q).
Rat trd(const Quat& q);

// conj(q) / nrd(q). Throws PreconditionError on zero, NotDivisionAlgebra if a
// nonzero element has vanishing norm.
Quat inverse(const Quat& q);

inline Quat identity_like(const Quat& q) { return Quat::one(q.algebra()); }

// x y x^-1 y^-1.
Quat commutator(const Quat& x, const Quat& y);

// The positive rational multiple of q with coprime integer coordinates; zero
// stays zero. Central rescaling leaves commutators unchanged, so this keeps
// commutator witnesses small.
Quat primitive_part(const Quat& q);

// Solves x - p x q = r for x by a 4x4 exact linear solve over Q.
// Throws SingularError when x -> x - p x q is not invertible, which happens
// exactly when some nonzero x satisfies x = p x q (forcing nrd(p) nrd(q) = 1).
Quat solve_twisted(const Quat& p, const Quat& q, const Quat& r);

}  // namespace commlen
