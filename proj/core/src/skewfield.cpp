#include "commlen/skewfield.hpp"

#include <array>
#include <cctype>
#include <utility>

#include "commlen/errors.hpp"

namespace commlen {

namespace {

void check_same(const Quat& p, const Quat& q) {
  if (!(p.algebra() == q.algebra())) {
    throw PreconditionError("quaternions belong to different algebras");
  }
}

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1")
                                                   : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' ||
      den.front() == '+') {
    throw PreconditionError("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Algebra::Algebra() {
  static const auto hamilton =
      std::make_shared<const Params>(Params{Rat(-1), Rat(-1), Rat(1)});
  params_ = hamilton;
}

Algebra::Algebra(Rat a, Rat b) {
  if (sgn(a) == 0 || sgn(b) == 0) {
    throw PreconditionError("algebra parameters must be nonzero");
  }
  a.canonicalize();
  b.canonicalize();
  Rat ab = a * b;
  params_ = std::make_shared<const Params>(
      Params{std::move(a), std::move(b), std::move(ab)});
}

Quat::Quat(Algebra alg, Rat w, Rat x, Rat y, Rat z)
    : alg_(std::move(alg)),
      c_{std::move(w), std::move(x), std::move(y), std::move(z)} {
  for (auto& c : c_) c.canonicalize();
}

bool Quat::is_zero() const {
  return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 &&
         sgn(c_[3]) == 0;
}

bool Quat::is_one() const { return c_[0] == 1 && is_central(); }

bool Quat::is_central() const {
  return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

Quat& Quat::operator+=(const Quat& q) {
  check_same(*this, q);
  for (std::size_t i = 0; i < 4; ++i) c_[i] += q.c_[i];
  return *this;
}

Quat& Quat::operator-=(const Quat& q) {
  check_same(*this, q);
  for (std::size_t i = 0; i < 4; ++i) c_[i] -= q.c_[i];
  return *this;
}

Quat operator-(const Quat& q) {
  Quat r = q;
  for (auto& c : r.c_) c = -c;
  return r;
}

Quat operator*(const Quat& p, const Quat& q) {
  check_same(p, q);
  const auto& [w1, x1, y1, z1] = p.c_;
  const auto& [w2, x2, y2, z2] = q.c_;
  const Algebra& alg = p.alg_;
  Quat r;
  r.alg_ = alg;
  if (q.is_central()) {
    for (std::size_t i = 0; i < 4; ++i) r.c_[i] = p.c_[i] * w2;
    return r;
  }
  if (p.is_central()) {
    for (std::size_t i = 0; i < 4; ++i) r.c_[i] = w1 * q.c_[i];
    return r;
  }
  r.c_[0] = w1 * w2 + alg.a() * (x1 * x2) + alg.b() * (y1 * y2) -
            alg.ab() * (z1 * z2);
  r.c_[1] = w1 * x2 + x1 * w2 + alg.b() * (z1 * y2 - y1 * z2);
  r.c_[2] = w1 * y2 + y1 * w2 + alg.a() * (x1 * z2 - z1 * x2);
  r.c_[3] = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2;
  return r;
}

Quat operator*(const Rat& t, const Quat& q) {
  Quat r = q;
  for (auto& c : r.c_) c *= t;
  return r;
}

bool operator==(const Quat& p, const Quat& q) {
  return p.c_ == q.c_ && p.alg_ == q.alg_;
}

std::ostream& operator<<(std::ostream& os, const Quat& q) {
  return os << '(' << q.w() << ", " << q.x() << ", " << q.y() << ", " << q.z()
            << ')';
}

Quat conj(const Quat& q) {
  return Quat(q.algebra(), q.w(), -q.x(), -q.y(), -q.z());
}

Rat nrd(const Quat& q) {
  const Algebra& alg = q.algebra();
  Rat r = q.w() * q.w() - alg.a() * (q.x() * q.x()) -
          alg.b() * (q.y() * q.y()) + alg.ab() * (q.z() * q.z());
  return r;
}

Rat trd(const Quat& q) { return Rat(2 * q.w()); }

Quat inverse(const Quat& q) {
  if (q.is_zero()) throw PreconditionError("inverse of zero quaternion");
  const Rat n = nrd(q);
  if (sgn(n) == 0) {
    throw NotDivisionAlgebra(
        "nonzero quaternion with zero reduced norm: not a division algebra");
  }
  return Rat(1 / n) * conj(q);
}

Quat commutator(const Quat& x, const Quat& y) {
  if (x.is_zero() || y.is_zero()) {
    throw PreconditionError("commutator of a zero quaternion");
  }
  return x * y * inverse(x) * inverse(y);
}

Quat primitive_part(const Quat& q) {
  if (q.is_zero()) return q;
  mpz_class lcm = 1;
  for (std::size_t i = 0; i < 4; ++i) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.coord(i).get_den_mpz_t());
  }
  mpz_class g = 0;
  std::array<mpz_class, 4> ints;
  for (std::size_t i = 0; i < 4; ++i) {
    const Rat& c = q.coord(i);
    ints[i] = c.get_num() * (lcm / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  for (auto& x : ints) x /= g;
  return Quat(q.algebra(), Rat(ints[0]), Rat(ints[1]), Rat(ints[2]),
              Rat(ints[3]));
}

Quat solve_twisted(const Quat& p, const Quat& q, const Quat& r) {
  check_same(p, q);
  check_same(p, r);
  const Algebra& alg = p.algebra();

  // Column j holds the coordinates of L(e_j), L(x) = x - p x q.
  std::array<std::array<Rat, 5>, 4> m;
  for (std::size_t j = 0; j < 4; ++j) {
    std::array<Rat, 4> e{};
    e[j] = 1;
    const Quat basis(alg, e[0], e[1], e[2], e[3]);
    const Quat image = basis - p * basis * q;
    for (std::size_t i = 0; i < 4; ++i) m[i][j] = image.coord(i);
  }
  for (std::size_t i = 0; i < 4; ++i) m[i][4] = r.coord(i);

  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    while (pivot < 4 && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == 4) {
      throw SingularError("twisted equation x - p x q = r is singular");
    }
    std::swap(m[pivot], m[col]);
    const Rat inv = 1 / m[col][col];
    for (std::size_t j = col; j < 5; ++j) m[col][j] *= inv;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == col || sgn(m[i][col]) == 0) continue;
      const Rat f = m[i][col];
      for (std::size_t j = col; j < 5; ++j) m[i][j] -= f * m[col][j];
    }
  }
  Quat x(alg, m[0][4], m[1][4], m[2][4], m[3][4]);
  if (!(x - p * x * q == r)) {
    throw InvariantError("twisted solve failed substitution check");
  }
  return x;
}

}  // namespace commlen
