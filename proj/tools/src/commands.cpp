#include "commlen_cli/commands.hpp"

#include <sstream>
#include <utility>

#include "commlen/errors.hpp"

namespace commlen::cli {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw PreconditionError(std::string("missing JSON field \"") + key + "\"");
  }
  return j.at(key);
}

Algebra algebra_of(const Json& j, const Algebra& fallback) {
  if (j.is_object() && j.contains("algebra")) {
    return algebra_from_json(j.at("algebra"));
  }
  return fallback;
}

// A quaternion is an array of four scalars; a matrix is an array of arrays.
bool looks_like_quat(const Json& j) {
  return j.is_array() && j.size() == 4 && !j[0].is_array();
}

bool cert_is_quat(const Json& cert) {
  const Json& pairs = require(cert, "pairs");
  if (pairs.is_array() && !pairs.empty() && pairs[0].is_array() &&
      !pairs[0].empty()) {
    return looks_like_quat(pairs[0][0]);
  }
  return looks_like_quat(require(cert, "target"));
}

// diag(1, ..., 1, tau) -> tau.
std::optional<Quat> corner_of(const MatD& m) {
  if (!m.is_diagonal()) return std::nullopt;
  const auto d = m.diagonal_entries();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (!d[i].is_one()) return std::nullopt;
  }
  return d.back();
}

std::string mode_name(FactorMode mode) {
  switch (mode) {
    case FactorMode::GL:
      return "gl";
    case FactorMode::E:
      return "e";
    case FactorMode::Stable:
      return "stable";
  }
  return "";
}

bool all_elementary(const MatCert& cert) {
  for (const auto& [p, q] : cert.pairs) {
    if (!is_elementary(p) || !is_elementary(q)) return false;
  }
  return true;
}

struct LineCheck {
  std::string kind;
  bool verified = false;
  std::string detail;
};

LineCheck check_factor_line(const Json& line) {
  const Algebra alg = algebra_of(line, Algebra());
  const MatCert cert = mat_cert_from_json(require(line, "cert"), alg);
  LineCheck r{"factor", cert_verify(cert), ""};
  if (!r.verified) {
    r.detail = "commutator product differs from target";
  } else if (line.contains("bound") &&
             static_cast<std::int64_t>(cert.length()) >
                 line.at("bound").get<std::int64_t>()) {
    r.verified = false;
    r.detail = "pair count exceeds the recorded bound";
  } else if (line.value("mode", "") != "gl" && !all_elementary(cert)) {
    r.verified = false;
    r.detail = "witness outside E(n, D)";
  }
  return r;
}

LineCheck check_lower_line(const Json& line) {
  const Algebra alg = algebra_of(line, Algebra());
  const QuatCert cert = quat_cert_from_json(require(line, "cert"), alg);
  LineCheck r{"certify-lower", cert_verify(cert), ""};
  if (!r.verified) {
    r.detail = "commutator product differs from target";
  } else if (line.contains("tau") &&
             !(quat_from_json(line.at("tau"), alg) == cert.target)) {
    r.verified = false;
    r.detail = "certificate target differs from tau";
  } else if (line.contains("bound") &&
             static_cast<std::int64_t>(cert.length()) >
                 line.at("bound").get<std::int64_t>()) {
    r.verified = false;
    r.detail = "length exceeds the recorded bound";
  }
  return r;
}

LineCheck check_decompose_line(const Json& line) {
  const Algebra alg = algebra_of(line, Algebra());
  const MatD g = mat_from_json(require(line, "matrix"), alg);
  const MatD head = mat_from_json(require(line, "head"), alg);
  const UVUForm form = form_from_json(require(line, "form"), alg);
  LineCheck r{"decompose", false, ""};
  if (!head.is_diagonal() || !form.hfactors.empty()) {
    r.detail = "head is not diagonal";
  } else if (!(head * form.eval() == g)) {
    r.detail = "head * u1 * v * u2 differs from the matrix";
  } else {
    r.verified = true;
  }
  return r;
}

LineCheck check_bare_cert(const Json& line) {
  const Algebra alg = algebra_of(line, Algebra());
  if (cert_is_quat(line)) {
    return {"quat-cert", cert_verify(quat_cert_from_json(line, alg)), ""};
  }
  return {"matrix-cert", cert_verify(mat_cert_from_json(line, alg)), ""};
}

LineCheck check_line(const Json& line) {
  if (!line.is_object()) throw PreconditionError("line is not a JSON object");
  const std::string command = line.value("command", "");
  if (command == "factor") return check_factor_line(line);
  if (command == "certify-lower") return check_lower_line(line);
  if (command == "decompose") return check_decompose_line(line);
  if (line.contains("delta_cert")) {
    (void)instance_from_json(line);  // validates the delta certificate
    return {"instance", true, ""};
  }
  if (line.contains("cert")) {
    const Json& cert = line.at("cert");
    Json bare = cert;
    if (line.contains("algebra")) bare["algebra"] = line.at("algebra");
    return check_bare_cert(bare);
  }
  if (line.contains("pairs") && line.contains("target")) {
    return check_bare_cert(line);
  }
  throw PreconditionError("line carries no certificate");
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const VerificationError*>(&e)) return kVerificationFailed;
  if (dynamic_cast<const PreconditionError*>(&e)) return kPrecondition;
  if (dynamic_cast<const Json::exception*>(&e)) return kPrecondition;
  return kInvariant;
}

Json cmd_gen(const GenOptions& opts) {
  InstanceOptions io;
  io.unipotent = !opts.diagonal;
  io.conjugate = !opts.diagonal;
  const auto gi = make_instance(opts.seed, opts.n, opts.c, opts.algebra, io);
  Json out = to_json(gi.inst);
  out["c"] = opts.c;
  out["seed"] = opts.seed;
  return out;
}

Json cmd_decompose(const Json& input, const Algebra& fallback) {
  const Algebra alg = algebra_of(input, fallback);
  const Json& mj = input.is_array() ? input : require(input, "matrix");
  const MatD g = mat_from_json(mj, alg);
  const HUVU d = decompose_HUVU(g);
  const bool verified = d.head * d.form.eval() == g;
  if (!verified) throw InvariantError("decomposition does not reassemble");
  return Json{{"command", "decompose"},
              {"algebra", to_json(alg)},
              {"n", g.size()},
              {"matrix", to_json(g)},
              {"head", to_json(d.head)},
              {"form", to_json(d.form)},
              {"verified", verified}};
}

Json cmd_certify_lower(const Json& input) {
  const Algebra alg = algebra_of(input, Algebra());
  std::vector<std::pair<MatD, MatD>> pairs;
  Quat tau = Quat::one(alg);
  if (input.is_object() && input.contains("cert")) {
    const MatCert mc = mat_cert_from_json(input.at("cert"), alg);
    const auto corner = corner_of(mc.target);
    if (!corner) {
      throw PreconditionError("certificate target is not diag(1, ..., 1, tau)");
    }
    pairs = mc.pairs;
    tau = *corner;
  } else {
    tau = quat_from_json(require(input, "tau"), alg);
    const Json& pj = require(input, "pairs");
    if (!pj.is_array()) throw PreconditionError("pairs must be a JSON array");
    for (const auto& p : pj) {
      if (!p.is_array() || p.size() != 2) {
        throw PreconditionError("a pair must have two matrices");
      }
      pairs.emplace_back(mat_from_json(p[0], alg), mat_from_json(p[1], alg));
    }
  }
  if (pairs.empty()) {
    if (!tau.is_one()) throw PreconditionError("no pairs but tau != 1");
    const QuatCert empty{{}, tau};
    return Json{{"command", "certify-lower"}, {"algebra", to_json(alg)},
                {"n", nullptr}, {"d", 0}, {"tau", to_json(tau)},
                {"cert", to_json(empty)}, {"verified", true}, {"bound", 0},
                {"printed_bound", 0}, {"achieved", 0}};
  }
  const std::size_t n = pairs.front().first.size();
  for (const auto& [p, q] : pairs) {
    if (p.size() != n || q.size() != n) {
      throw PreconditionError("pairs have mismatched sizes");
    }
  }
  MatD target = MatD::identity(n, alg);
  target(n - 1, n - 1) = tau;
  if (!(commutator_product(pairs, MatD::identity(n, alg)) == target)) {
    throw PreconditionError("pairs do not multiply to diag(1, ..., 1, tau)");
  }
  const auto d = static_cast<std::int64_t>(pairs.size());
  const LowerResult lr = lower_extract(pairs, tau);
  const bool verified = lr.cert.target == tau && cert_verify(lr.cert);
  if (!verified) throw VerificationError("corner certificate failed to verify");
  const std::int64_t bound = s_of(kappa_p(d, n));
  const auto achieved = static_cast<std::int64_t>(lr.cert.length());
  if (achieved > bound) throw InvariantError("corner certificate over budget");
  return Json{{"command", "certify-lower"},
              {"algebra", to_json(alg)},
              {"n", n},
              {"d", d},
              {"tau", to_json(tau)},
              {"cert", to_json(lr.cert)},
              {"kappa", lr.kappa},
              {"verified", verified},
              {"bound", bound},
              {"printed_bound", lower_bound_length(static_cast<std::int64_t>(n), d)},
              {"achieved", achieved}};
}

std::optional<FactorMode> parse_factor_mode(const std::string& text) {
  if (text == "gl") return FactorMode::GL;
  if (text == "e") return FactorMode::E;
  if (text == "stable") return FactorMode::Stable;
  return std::nullopt;
}

Json cmd_factor(const Json& instance, FactorMode mode) {
  const BasedInstance inst = instance_from_json(instance);
  const auto n = static_cast<std::int64_t>(inst.n);
  const auto c = static_cast<std::int64_t>(inst.delta_cert.length());
  std::int64_t bound = 1;
  const MatCert cert = [&] {
    switch (mode) {
      case FactorMode::GL:
        bound = width_upper_bounds(n, c).gl;
        return factor_commutators_gl(inst);
      case FactorMode::E: {
        const auto ub = width_upper_bounds(n, c);
        if (!ub.e) throw PreconditionError("mode e needs n >= 3");
        bound = *ub.e;
        return factor_commutators_e(inst);
      }
      case FactorMode::Stable:
        break;
    }
    const StableResult st = stable_single_commutator(inst);
    return MatCert{{{st.p, st.q}}, st.padded};
  }();
  const bool verified = cert_verify(cert);
  if (!verified) throw VerificationError("factorization failed to verify");
  const auto achieved = static_cast<std::int64_t>(cert.length());
  if (achieved > bound) throw InvariantError("factorization over budget");
  Json out{{"command", "factor"},
           {"mode", mode_name(mode)},
           {"algebra", to_json(inst.delta.algebra())},
           {"n", cert.target.size()},
           {"c", c},
           {"cert", to_json(cert)},
           {"verified", verified},
           {"bound", bound},
           {"achieved", achieved}};
  if (mode != FactorMode::GL) out["elementary"] = all_elementary(cert);
  return out;
}

Json cmd_bounds(const BoundsOptions& opts) {
  const auto n = static_cast<std::int64_t>(opts.n);
  if (n < 2) throw PreconditionError("bounds need n >= 2");
  if (opts.d < 1) throw PreconditionError("bounds need d >= 1");
  const auto ub = width_upper_bounds(n, opts.c);
  return Json{{"n", n},
              {"d", opts.d},
              {"c", opts.c},
              {"lower_bound_length", lower_bound_length(n, opts.d)},
              {"computed_length", s_of(kappa_p(opts.d, opts.n))},
              {"width_lower_bound", to_json(width_lower_bound(n, opts.c))},
              {"upper_gl", ub.gl},
              {"upper_e", ub.e ? Json(*ub.e) : Json(nullptr)},
              {"single_commutator_threshold", single_commutator_threshold(n)}};
}

Report verify_lines(const std::vector<Json>& lines) {
  Report report;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Json out{{"line", i + 1}};
    try {
      const LineCheck r = check_line(lines[i]);
      out["kind"] = r.kind;
      out["verified"] = r.verified;
      if (!r.detail.empty()) out["error"] = r.detail;
      report.ok = report.ok && r.verified;
    } catch (const std::exception& e) {
      out["verified"] = false;
      out["error"] = e.what();
      report.ok = false;
    }
    report.lines.push_back(std::move(out));
  }
  if (lines.empty()) {
    report.ok = false;
    report.lines.push_back(Json{{"error", "no lines to verify"}});
  }
  return report;
}

std::vector<Json> parse_lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw PreconditionError(std::string("malformed JSON line: ") + e.what());
    }
  }
  return out;
}

}  // namespace commlen::cli
