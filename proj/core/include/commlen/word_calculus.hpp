#pragma once

// Commutator certificates and the letter-moving calculus that produces them.
//
// Everything here is generic over a group type with exact equality; the
// library instantiates it with Quat (the multiplicative group D*) and MatD.
// Each move emits one explicit commutator pair, and every certificate is
// checked by multiplication before it is returned.

#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "commlen/errors.hpp"
#include "commlen/skewfield.hpp"

namespace commlen {

template <class G>
concept Group = std::copyable<G> && requires(const G& a, const G& b) {
  { a * b } -> std::convertible_to<G>;
  { inverse(a) } -> std::convertible_to<G>;
  { identity_like(a) } -> std::convertible_to<G>;
  { commutator(a, b) } -> std::convertible_to<G>;
  { a == b } -> std::convertible_to<bool>;
};

// Claims that the ordered product of [g_i, h_i] equals target.
template <Group G>
struct CommutatorCert {
  std::vector<std::pair<G, G>> pairs;
  G target;

  std::size_t length() const { return pairs.size(); }
};

// Ordered product of xs[begin..end) as a balanced tree, so operand sizes
// stay matched when entries grow.
template <Group G>
G tree_product(const std::vector<G>& xs, std::size_t begin, std::size_t end,
               const G& identity) {
  if (begin >= end) return identity;
  if (end - begin == 1) return xs[begin];
  const std::size_t mid = begin + (end - begin) / 2;
  return tree_product(xs, begin, mid, identity) *
         tree_product(xs, mid, end, identity);
}

template <Group G>
G commutator_product(const std::vector<std::pair<G, G>>& pairs,
                     const G& identity) {
  G acc = identity;
  for (const auto& [g, h] : pairs) acc = acc * commutator(g, h);
  return acc;
}

template <Group G>
bool cert_verify(const CommutatorCert<G>& cert) {
  return commutator_product(cert.pairs, identity_like(cert.target)) ==
         cert.target;
}

// Quaternion certificates are checked in integer arithmetic. With primitive
// integer witnesses, prod g h conj(g) conj(h) = (prod nrd(g) nrd(h)) * target
// is an identity of integer vectors after clearing the target's denominators.
inline bool cert_verify(const CommutatorCert<Quat>& cert) {
  const Algebra& alg = cert.target.algebra();
  std::vector<Quat> comms;
  std::vector<Rat> norms;
  comms.reserve(cert.pairs.size());
  norms.reserve(cert.pairs.size());
  for (const auto& [g0, h0] : cert.pairs) {
    if (g0.is_zero() || h0.is_zero()) return false;
    const Quat g = primitive_part(g0);
    const Quat h = primitive_part(h0);
    comms.push_back((g * h) * (conj(g) * conj(h)));
    norms.push_back(nrd(g) * nrd(h));
  }
  std::vector<Quat> scalars;
  scalars.reserve(norms.size());
  for (auto& r : norms) scalars.emplace_back(alg, std::move(r), 0, 0, 0);
  const Quat one = Quat::one(alg);
  return tree_product(comms, 0, comms.size(), one) ==
         tree_product(scalars, 0, scalars.size(), one) * cert.target;
}

// Commutator witnesses only matter up to central scalars, so the builders
// compute them with these hooks. For quaternions the representative is a
// primitive integer vector and conj stands in for the inverse.
template <Group G>
G normalize_witness(const G& x) {
  return x;
}
inline Quat normalize_witness(const Quat& q) { return primitive_part(q); }

template <Group G>
G witness_inverse(const G& x) {
  return inverse(x);
}
inline Quat witness_inverse(const Quat& q) { return conj(q); }

template <Group G>
void require_verified(const CommutatorCert<G>& cert, const char* what) {
  if (!cert_verify(cert)) {
    throw InvariantError(std::string(what) + ": certificate failed to verify");
  }
}

// Applies x -> c x c_inv to the target and every pair component. Commutators
// commute with conjugation, so validity and length are preserved.
template <Group G>
CommutatorCert<G> conjugate_cert(const CommutatorCert<G>& cert, const G& c,
                                 const G& c_inv) {
  CommutatorCert<G> out{{}, c * cert.target * c_inv};
  out.pairs.reserve(cert.pairs.size());
  for (const auto& [g, h] : cert.pairs) {
    out.pairs.emplace_back(c * g * c_inv, c * h * c_inv);
  }
  return out;
}

// Concatenation certifies the product of the targets.
template <Group G>
CommutatorCert<G> concat_certs(const CommutatorCert<G>& x,
                               const CommutatorCert<G>& y) {
  CommutatorCert<G> out{x.pairs, x.target * y.target};
  out.pairs.insert(out.pairs.end(), y.pairs.begin(), y.pairs.end());
  return out;
}

enum class Role { A, B };

// A letter carries its value together with a formal role marker; index is
// the letter's position within its role (0-based).
template <Group G>
struct Letter {
  Role role;
  std::size_t index;
  G value;
};

template <Group G>
using Word = std::vector<Letter<G>>;

template <Group G>
G eval_range(const Word<G>& w, std::size_t begin, std::size_t end,
             const G& identity) {
  if (begin >= end) return identity;
  if (end - begin == 1) return w[begin].value;
  const std::size_t mid = begin + (end - begin) / 2;
  return eval_range(w, begin, mid, identity) *
         eval_range(w, mid, end, identity);
}

template <Group G>
G eval_word(const Word<G>& w, const G& identity) {
  return eval_range(w, 0, w.size(), identity);
}

template <Group G>
struct MoveResult {
  Word<G> word;
  std::pair<G, G> pair;
};

namespace detail {

template <Group G>
MoveResult<G> move_front_unchecked(const Word<G>& w, std::size_t idx,
                                   const G& identity) {
  if (idx >= w.size()) throw PreconditionError("letter index out of range");
  const G u = normalize_witness(eval_range(w, 0, idx, identity));
  const G& x = w[idx].value;
  const G v = normalize_witness(eval_range(w, idx + 1, w.size(), identity));
  const G v_inv = witness_inverse(v);
  MoveResult<G> r{{},
                  {normalize_witness(G(v_inv * witness_inverse(u) * v)),
                   normalize_witness(G(v_inv * witness_inverse(x) * v))}};
  r.word.reserve(w.size());
  r.word.push_back(w[idx]);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != idx) r.word.push_back(w[i]);
  }
  return r;
}

template <Group G>
MoveResult<G> move_end_unchecked(const Word<G>& w, std::size_t idx,
                                 const G& identity) {
  if (idx >= w.size()) throw PreconditionError("letter index out of range");
  const G& x = w[idx].value;
  const G v = eval_range(w, idx + 1, w.size(), identity);
  MoveResult<G> r{{},
                  {normalize_witness(witness_inverse(x)),
                   normalize_witness(witness_inverse(v))}};
  r.word.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != idx) r.word.push_back(w[i]);
  }
  r.word.push_back(w[idx]);
  return r;
}

template <Group G>
void check_move(const Word<G>& before, const MoveResult<G>& r,
                const G& identity) {
  if (!(eval_word(r.word, identity) * commutator(r.pair.first, r.pair.second) ==
        eval_word(before, identity))) {
    throw InvariantError("letter move changed the word value");
  }
}

}  // namespace detail

// For w = u x v with x at idx: u x v = (x u v) [v^-1 u^-1 v, v^-1 x^-1 v].
// Pair components may be rescaled by central elements.
template <Group G>
MoveResult<G> move_letter_front(const Word<G>& w, std::size_t idx,
                                const G& identity) {
  auto r = detail::move_front_unchecked(w, idx, identity);
  detail::check_move(w, r, identity);
  return r;
}

// For w = u x v with x at idx: u x v = (u v x) [x^-1, v^-1].
template <Group G>
MoveResult<G> move_letter_end(const Word<G>& w, std::size_t idx,
                              const G& identity) {
  auto r = detail::move_end_unchecked(w, idx, identity);
  detail::check_move(w, r, identity);
  return r;
}

namespace detail {

template <Group G>
std::size_t find_letter(const Word<G>& w, Role role, std::size_t index) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].role == role && w[i].index == index) return i;
  }
  throw InvariantError("letter missing from word");
}

// Builds the certificate without the final verification.
template <Group G>
CommutatorCert<G> cyclic_product_cert_unchecked(const std::vector<G>& a,
                                                const G& identity) {
  const std::size_t k = a.size();
  G prod = identity;
  G target = identity;
  for (const auto& x : a) {
    prod = prod * x;
    target = target * inverse(x);
  }
  if (!(prod == identity)) {
    throw PreconditionError("cyclic_product_cert: product is not the identity");
  }
  CommutatorCert<G> cert{{}, target};
  if (k <= 2) return cert;

  // a_1 ... a_k -> a_1 a_k ... a_2 by moving a_{k-1}, ..., a_2 to the end.
  // Then a_1 a_k ... a_2 = ([c_{k-2}] ... [c_1])^-1 and the target is its
  // inverse conjugated by a_1.
  Word<G> w;
  w.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    w.push_back({Role::A, i, normalize_witness(a[i])});
  }
  std::vector<std::pair<G, G>> emitted;
  emitted.reserve(k - 2);
  for (std::size_t step = 1; step + 2 <= k; ++step) {
    const std::size_t letter = k - 1 - step;  // 0-based a_{k-step}
    auto moved = detail::move_end_unchecked(
        w, detail::find_letter(w, Role::A, letter), identity);
    w = std::move(moved.word);
    emitted.push_back(std::move(moved.pair));
  }
  const G& c_inv = w.front().value;
  const G c = witness_inverse(c_inv);
  for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) {
    cert.pairs.emplace_back(normalize_witness(G(c * it->first * c_inv)),
                            normalize_witness(G(c * it->second * c_inv)));
  }
  return cert;
}

}  // namespace detail

// For a_1 ... a_k = e, certifies a_1^-1 ... a_k^-1 with at most
// max(0, k - 2) pairs. Needs the identity for k = 0.
template <Group G>
CommutatorCert<G> cyclic_product_cert(const std::vector<G>& a,
                                      const G& identity) {
  auto cert = detail::cyclic_product_cert_unchecked(a, identity);
  require_verified(cert, "cyclic_product_cert");
  if (a.size() > 2 && cert.length() > a.size() - 2) {
    throw InvariantError("cyclic_product_cert length");
  }
  return cert;
}

namespace detail {

// Checks the word and the target of cert_a but verifies neither
// certificate.
template <Group G>
CommutatorCert<G> interleaved_word_cert_unchecked(
    const Word<G>& w, const CommutatorCert<G>& cert_a, const G& identity) {
  std::vector<const G*> b_vals;
  std::size_t next_a = 0;
  G a_prod = identity;
  for (const auto& l : w) {
    if (l.role == Role::A) {
      if (l.index != next_a) {
        throw PreconditionError("interleaved_word_cert: a-letters out of order");
      }
      ++next_a;
      a_prod = a_prod * l.value;
    } else {
      if (l.index >= w.size()) {
        throw PreconditionError("interleaved_word_cert: b index out of range");
      }
      if (b_vals.size() <= l.index) b_vals.resize(l.index + 1, nullptr);
      if (b_vals[l.index] != nullptr) {
        throw PreconditionError("interleaved_word_cert: repeated b-letter");
      }
      b_vals[l.index] = &l.value;
    }
  }
  const std::size_t q = b_vals.size();
  if (q == 0) throw PreconditionError("interleaved_word_cert: no b-letters");
  G target = identity;
  for (const G* b : b_vals) {
    if (b == nullptr) throw PreconditionError("interleaved_word_cert: b gap");
    target = target * inverse(*b);
  }
  if (!(eval_word(w, identity) == identity)) {
    throw PreconditionError("interleaved_word_cert: word is not the identity");
  }
  if (!(cert_a.target == a_prod)) {
    throw PreconditionError("interleaved_word_cert: bad certificate for a");
  }

  // Rotate b_1 to the front; the a-product becomes P^-1 a P where P is the
  // product of the a-letters that were in front of b_1.
  const std::size_t start = detail::find_letter(w, Role::B, 0);
  Word<G> cur;
  cur.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto l = w[(start + i) % w.size()];
    l.value = normalize_witness(l.value);
    cur.push_back(std::move(l));
  }
  G p = identity;
  for (std::size_t i = 0; i < start; ++i) {
    if (w[i].role == Role::A) p = normalize_witness(G(p * w[i].value));
  }

  std::vector<std::pair<G, G>> emitted;
  emitted.reserve(q - 1);
  for (std::size_t j = 1; j < q; ++j) {
    auto moved = detail::move_front_unchecked(
        cur, detail::find_letter(cur, Role::B, j), identity);
    cur = std::move(moved.word);
    emitted.push_back(std::move(moved.pair));
  }

  CommutatorCert<G> cert{{}, target};
  cert.pairs.reserve(cert_a.length() + emitted.size());
  const G p_inv = witness_inverse(p);
  for (const auto& [g, h] : cert_a.pairs) {
    cert.pairs.emplace_back(normalize_witness(G(p_inv * g * p)),
                            normalize_witness(G(p_inv * h * p)));
  }
  for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) {
    cert.pairs.push_back(std::move(*it));
  }
  return cert;
}

}  // namespace detail

// w has letters a_j^-1 (Role::A, ascending index) and b_j (Role::B), each
// once, with eval(w) = e; cert_a certifies a = a_1^-1 ... a_p^-1. Returns a
// certificate for b = b_1^-1 ... b_q^-1 with at most |cert_a| + q - 1 pairs.
// Role::A letter values are the inverses a_j^-1 as they appear in the word.
template <Group G>
CommutatorCert<G> interleaved_word_cert(const Word<G>& w,
                                        const CommutatorCert<G>& cert_a,
                                        const G& identity) {
  if (!cert_verify(cert_a)) {
    throw PreconditionError("interleaved_word_cert: bad certificate for a");
  }
  auto cert = detail::interleaved_word_cert_unchecked(w, cert_a, identity);
  require_verified(cert, "interleaved_word_cert");
  std::size_t q = 0;
  for (const auto& l : w) q += l.role == Role::B ? 1 : 0;
  if (cert.length() > cert_a.length() + q - 1) {
    throw InvariantError("interleaved_word_cert length");
  }
  return cert;
}

}  // namespace commlen
