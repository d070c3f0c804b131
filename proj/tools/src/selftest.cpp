#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "commlen/errors.hpp"
#include "commlen/random.hpp"
#include "commlen_cli/commands.hpp"

namespace commlen::cli {

namespace {

using Body = std::function<bool(Rng&, std::size_t n, int t)>;

struct CheckSpec {
  std::string name;
  int min_n;
  int max_n;
  // Caps the case count for the expensive checks.
  int max_cases;
  Body body;
};

Json run_check(const CheckSpec& spec, std::size_t n, int cases,
               std::uint64_t seed) {
  Rng rng(seed, Algebra());
  int failures = 0;
  std::string first;
  for (int t = 0; t < cases; ++t) {
    bool ok = false;
    std::string why = "property violated";
    try {
      ok = spec.body(rng, n, t);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!ok) {
      if (failures == 0) first = "case " + std::to_string(t) + ": " + why;
      ++failures;
    }
  }
  Json line{{"check", spec.name},
            {"n", n},
            {"cases", cases},
            {"failures", failures},
            {"passed", failures == 0}};
  if (failures > 0) line["first_failure"] = first;
  return line;
}

// Distinct indices i != j.
std::pair<std::size_t, std::size_t> index_pair(Rng& rng, std::size_t n) {
  const auto i = static_cast<std::size_t>(rng.uniform(0, n - 1));
  auto j = static_cast<std::size_t>(rng.uniform(0, n - 2));
  if (j >= i) ++j;
  return {i, j};
}

bool relation_case(int relation, Rng& rng, std::size_t n) {
  RelationParams p;
  p.n = n;
  std::tie(p.i, p.j) = index_pair(rng, n);
  p.xi = rng.nonzero_quat();
  p.zeta = rng.nonzero_quat();
  if (relation == 2) {
    // Needs p != q and i != q; j == p is the interesting case when n >= 3.
    do {
      std::tie(p.p, p.q) = index_pair(rng, n);
      if (n >= 3 && rng.coin()) {
        p.p = p.j;
        p.q = static_cast<std::size_t>(rng.uniform(0, n - 1));
      }
    } while (p.p == p.q || p.i == p.q);
  }
  if (relation == 3) {
    const Quat one = Quat::one(p.xi.algebra());
    if ((one + p.zeta * p.xi).is_zero()) p.xi = p.xi + one;
  }
  return verify_relation(relation, p);
}

std::vector<CheckSpec> suite() {
  std::vector<CheckSpec> s;
  for (int r = 1; r <= 4; ++r) {
    s.push_back({"relation" + std::to_string(r), 2, 4, 1 << 30,
                 [r](Rng& rng, std::size_t n, int) {
                   return relation_case(r, rng, n);
                 }});
  }
  s.push_back({"reduced_norm", 2, 2, 1 << 30, [](Rng& rng, std::size_t, int) {
                 const Quat p = rng.nonzero_quat(), q = rng.nonzero_quat();
                 return nrd(p * q) == nrd(p) * nrd(q) &&
                        (p * inverse(p)).is_one() &&
                        conj(p * q) == conj(q) * conj(p) &&
                        nrd(commutator(p, q)) == 1;
               }});
  s.push_back({"solve_twisted", 2, 2, 1 << 30, [](Rng& rng, std::size_t, int) {
                 const Quat p = rng.nonzero_quat(), q = rng.nonzero_quat();
                 if (nrd(p) * nrd(q) == 1) return true;
                 const Quat r = rng.quat();
                 const Quat x = solve_twisted(p, q, r);
                 return x - p * x * q == r;
               }});
  s.push_back({"decompose_huvu", 2, 4, 1 << 30,
               [](Rng& rng, std::size_t n, int) {
                 const MatD g = rng.invertible(n);
                 const HUVU d = decompose_HUVU(g);
                 return d.form.well_formed() && d.head.is_diagonal() &&
                        d.head * d.form.eval() == g;
               }});
  s.push_back({"absorb_lower_transvection", 2, 4, 1 << 30,
               [](Rng& rng, std::size_t n, int t) {
                 UVUForm f{n, {}, rng.upper_unitriangular(n, true),
                           rng.lower_unitriangular(n, true),
                           rng.upper_unitriangular(n, true)};
                 const auto k = static_cast<std::size_t>(rng.uniform(0, n - 2));
                 const Quat xi = rng.sparse_quat();
                 // Force the cases where the pivot entry of u2 cancels.
                 if (t % 3 == 0 && !xi.is_zero()) {
                   f.u2(k, k + 1) = -inverse(xi);
                   if (t % 2 == 0) f.v(k + 1, k) = xi;
                 }
                 const UVUForm r = absorb_lower_transvection(f, k, xi);
                 const KappaVec kap = kappa_of(r.hfactors, n);
                 for (std::size_t i = 0; i < kap.size(); ++i) {
                   if (kap[i] > (i == k ? 2 : 0)) return false;
                 }
                 return r.eval() == f.eval() * transvection(n, k + 1, k, xi);
               }});
  s.push_back({"factor_lower_unitriangular", 2, 5, 1 << 30,
               [](Rng& rng, std::size_t n, int) {
                 const MatD v = rng.lower_unitriangular(n, true);
                 const auto steps = factor_lower_unitriangular(v);
                 std::vector<std::size_t> counts(n - 1, 0);
                 for (const auto& st : steps) ++counts[st.k];
                 for (std::size_t k = 0; k < counts.size(); ++k) {
                   const std::size_t cap = k == 0 ? n - 1 : 2 * (n - 1 - k);
                   if (counts[k] > cap) return false;
                 }
                 return eval_lower_steps(n, v.algebra(), steps) == v;
               }});
  s.push_back({"h_commutator_factors", 2, 4, 1 << 30,
               [](Rng& rng, std::size_t n, int) {
                 const MatD h1 = rng.diagonal(n), h2 = rng.diagonal(n);
                 const HFactorList hf = h_commutator_factors(h1, h2);
                 return kappa_leq(kappa_of(hf, n), mu_vec(n)) &&
                        eval_hfactors(hf, n, h1.algebra()) == commutator(h1, h2);
               }});
  s.push_back({"commutator_normal_form", 2, 4, 8,
               [](Rng& rng, std::size_t n, int t) {
                 const int p = 1 + t % 2;
                 std::vector<std::pair<MatD, MatD>> pairs;
                 MatD prod = MatD::identity(n, rng.algebra());
                 for (int i = 0; i < p; ++i) {
                   pairs.emplace_back(rng.invertible(n), rng.invertible(n));
                   prod = prod * commutator(pairs.back().first,
                                            pairs.back().second);
                 }
                 const UVUForm f = commutator_normal_form(pairs);
                 return kappa_leq(kappa_of(f.hfactors, n), kappa_p(p, n)) &&
                        f.eval() == prod;
               }});
  s.push_back({"cyclic_product_cert", 2, 2, 1 << 30,
               [](Rng& rng, std::size_t, int) {
                 const auto k = static_cast<std::size_t>(rng.uniform(0, 7));
                 const Quat one = Quat::one(rng.algebra());
                 std::vector<Quat> a;
                 Quat prod = one;
                 for (std::size_t i = 0; i + 1 < k; ++i) {
                   a.push_back(rng.nonzero_quat());
                   prod = prod * a.back();
                 }
                 if (k > 0) a.push_back(inverse(prod));
                 const QuatCert cert = cyclic_product_cert(a, one);
                 Quat target = one;
                 for (const auto& x : a) target = target * inverse(x);
                 return cert.target == target && cert_verify(cert) &&
                        cert.length() <= (k > 2 ? k - 2 : 0);
               }});
  s.push_back({"interleaved_word_cert", 2, 2, 1 << 30,
               [](Rng& rng, std::size_t, int) {
                 const Quat one = Quat::one(rng.algebra());
                 const auto p = static_cast<std::size_t>(rng.uniform(0, 4));
                 const auto q = static_cast<std::size_t>(rng.uniform(1, 4));
                 // a_1 ... a_p = e, so a_1^-1 ... a_p^-1 has a cyclic cert.
                 std::vector<Quat> a;
                 Quat prod = one;
                 for (std::size_t i = 0; i + 1 < p; ++i) {
                   a.push_back(rng.nonzero_quat());
                   prod = prod * a.back();
                 }
                 if (p > 0) a.push_back(inverse(prod));
                 const QuatCert cert_a = cyclic_product_cert(a, one);
                 // Random interleaving; the last b-letter closes the word.
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
                 w[hole].value = inverse(eval_range(w, 0, hole, one)) *
                                 inverse(eval_range(w, hole + 1, w.size(), one));
                 const QuatCert cert = interleaved_word_cert(w, cert_a, one);
                 return cert_verify(cert) &&
                        cert.length() <= cert_a.length() + q - 1;
               }});
  s.push_back({"dieudonne_det", 2, 4, 1 << 30,
               [](Rng& rng, std::size_t n, int) {
                 const MatD g = rng.invertible(n), h = rng.invertible(n);
                 const auto [i, j] = index_pair(rng, n);
                 return dieudonne_det(g * h).invariant ==
                            dieudonne_det(g).invariant *
                                dieudonne_det(h).invariant &&
                        dieudonne_det(transvection(n, i, j, rng.quat()))
                                .invariant == 1;
               }});
  s.push_back({"factor_gl", 2, 4, 4, [](Rng& rng, std::size_t n, int t) {
                 const auto c = static_cast<std::int64_t>(1 + t % n);
                 const auto gi = make_instance(rng.engine()(), n, c, rng.algebra());
                 const MatCert cert = factor_commutators_gl(gi.inst);
                 return cert_verify(cert) && cert.target == gi.g &&
                        static_cast<std::int64_t>(cert.length()) <=
                            width_upper_bounds(static_cast<std::int64_t>(n), c).gl;
               }});
  s.push_back({"factor_e", 3, 4, 4, [](Rng& rng, std::size_t n, int t) {
                 const auto c = static_cast<std::int64_t>(1 + t % n);
                 const auto gi = make_instance(rng.engine()(), n, c, rng.algebra());
                 const MatCert cert = factor_commutators_e(gi.inst);
                 for (const auto& [p, q] : cert.pairs) {
                   if (!is_elementary(p) || !is_elementary(q)) return false;
                 }
                 return cert_verify(cert) && cert.target == gi.g &&
                        static_cast<std::int64_t>(cert.length()) <=
                            *width_upper_bounds(static_cast<std::int64_t>(n), c).e;
               }});
  s.push_back({"round_trip", 2, 3, 2, [](Rng& rng, std::size_t n, int t) {
                 const auto c = static_cast<std::int64_t>(1 + t % n);
                 InstanceOptions plain;
                 plain.unipotent = false;
                 plain.conjugate = false;
                 const auto gi =
                     make_instance(rng.engine()(), n, c, rng.algebra(), plain);
                 const MatCert mc = factor_commutators_gl(gi.inst);
                 const LowerResult lr = lower_extract(mc.pairs, gi.inst.delta);
                 const auto d = static_cast<std::int64_t>(mc.length());
                 return lr.cert.target == gi.inst.delta && cert_verify(lr.cert) &&
                        static_cast<std::int64_t>(lr.cert.length()) <=
                            s_of(kappa_p(d, n));
               }});
  return s;
}

}  // namespace

Report cmd_selftest(const SelftestOptions& opts) {
  if (opts.cases < 1) throw PreconditionError("selftest needs at least one case");
  Report report;
  std::uint64_t stream = 0;
  int checks = 0, failed = 0;
  for (const auto& spec : suite()) {
    for (int n = spec.min_n; n <= spec.max_n; ++n) {
      const int cases = std::min(opts.cases, spec.max_cases);
      Json line = run_check(spec, static_cast<std::size_t>(n), cases,
                            opts.seed * 1000003 + stream++);
      ++checks;
      if (!line.at("passed").get<bool>()) {
        ++failed;
        report.ok = false;
      }
      report.lines.push_back(std::move(line));
    }
  }
  report.lines.push_back(Json{{"summary", "selftest"},
                              {"seed", opts.seed},
                              {"checks", checks},
                              {"failed", failed},
                              {"passed", failed == 0}});
  return report;
}

}  // namespace commlen::cli
