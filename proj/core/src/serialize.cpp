#include "commlen/serialize.hpp"

#include <string>

#include "commlen/errors.hpp"

namespace commlen {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw PreconditionError(std::string("missing JSON field \"") + key + "\"");
  }
  return j.at(key);
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) throw PreconditionError(std::string(what) + " must be a JSON array");
  return j;
}

template <class Cert, class ElemToJson>
Json cert_json(const Cert& cert, ElemToJson f) {
  Json pairs = Json::array();
  for (const auto& [g, h] : cert.pairs) pairs.push_back(Json::array({f(g), f(h)}));
  return Json{{"pairs", std::move(pairs)}, {"target", f(cert.target)}};
}

template <class Cert, class ElemFromJson>
Cert cert_from(const Json& j, ElemFromJson f) {
  Cert cert{{}, f(field(j, "target"))};
  for (const auto& p : array_of(field(j, "pairs"), "pairs")) {
    if (!p.is_array() || p.size() != 2) {
      throw PreconditionError("a certificate pair must have two elements");
    }
    cert.pairs.emplace_back(f(p[0]), f(p[1]));
  }
  return cert;
}

}  // namespace

Json to_json(const Rat& r) { return to_string(r); }

Json to_json(const Algebra& alg) {
  return Json{{"a", to_string(alg.a())}, {"b", to_string(alg.b())}};
}

Json to_json(const Quat& q) {
  return Json::array({to_string(q.w()), to_string(q.x()), to_string(q.y()),
                      to_string(q.z())});
}

Json to_json(const MatD& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const HFactorList& hf) {
  Json out = Json::array();
  for (const auto& f : hf) out.push_back(Json{{"i", f.index + 1}, {"eps", to_json(f.eps)}});
  return out;
}

Json to_json(const UVUForm& form) {
  return Json{{"h", to_json(form.hfactors)},
              {"u1", to_json(form.u1)},
              {"v", to_json(form.v)},
              {"u2", to_json(form.u2)}};
}

Json to_json(const QuatCert& cert) {
  return cert_json(cert, [](const Quat& q) { return to_json(q); });
}

Json to_json(const MatCert& cert) {
  return cert_json(cert, [](const MatD& m) { return to_json(m); });
}

Json to_json(const BasedInstance& inst) {
  return Json{{"algebra", to_json(inst.delta.algebra())},
              {"n", inst.n},
              {"v", to_json(inst.v)},
              {"u", to_json(inst.u)},
              {"delta", to_json(inst.delta)},
              {"delta_cert", to_json(inst.delta_cert)},
              {"gamma", to_json(inst.gamma)}};
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return parse_rat(j.dump());
  throw PreconditionError("a rational must be a string \"p\" or \"p/q\"");
}

Algebra algebra_from_json(const Json& j) {
  if (j.is_null()) return Algebra();
  return Algebra(rat_from_json(field(j, "a")), rat_from_json(field(j, "b")));
}

Quat quat_from_json(const Json& j, const Algebra& alg) {
  if (!j.is_array() || j.size() != 4) {
    throw PreconditionError("a quaternion must be an array of four rationals");
  }
  return Quat(alg, rat_from_json(j[0]), rat_from_json(j[1]), rat_from_json(j[2]),
              rat_from_json(j[3]));
}

MatD mat_from_json(const Json& j, const Algebra& alg) {
  const auto& rows = array_of(j, "matrix");
  const std::size_t n = rows.size();
  if (n == 0) throw PreconditionError("empty matrix");
  MatD m(n, alg);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = array_of(rows[r], "matrix row");
    if (row.size() != n) throw PreconditionError("matrix is not square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = quat_from_json(row[c], alg);
  }
  return m;
}

HFactorList hfactors_from_json(const Json& j, const Algebra& alg) {
  HFactorList out;
  for (const auto& f : array_of(j, "h-factor list")) {
    const auto& i = field(f, "i");
    if (!i.is_number_integer() || i.get<long long>() < 1) {
      throw PreconditionError("h-factor index must be a positive integer");
    }
    out.push_back({static_cast<std::size_t>(i.get<long long>() - 1),
                   quat_from_json(field(f, "eps"), alg)});
  }
  return out;
}

UVUForm form_from_json(const Json& j, const Algebra& alg) {
  UVUForm f{0, hfactors_from_json(field(j, "h"), alg), mat_from_json(field(j, "u1"), alg),
            mat_from_json(field(j, "v"), alg), mat_from_json(field(j, "u2"), alg)};
  f.n = f.u1.size();
  if (!f.well_formed()) throw PreconditionError("malformed UVU form");
  return f;
}

QuatCert quat_cert_from_json(const Json& j, const Algebra& alg) {
  return cert_from<QuatCert>(j, [&](const Json& e) { return quat_from_json(e, alg); });
}

MatCert mat_cert_from_json(const Json& j, const Algebra& alg) {
  return cert_from<MatCert>(j, [&](const Json& e) { return mat_from_json(e, alg); });
}

BasedInstance instance_from_json(const Json& j) {
  const Algebra alg = algebra_from_json(j.is_object() && j.contains("algebra")
                                            ? j.at("algebra")
                                            : Json());
  MatD v = mat_from_json(field(j, "v"), alg);
  const std::size_t n = v.size();
  if (j.contains("n") && (!j.at("n").is_number_integer() ||
                          j.at("n").get<long long>() != static_cast<long long>(n))) {
    throw PreconditionError("instance \"n\" does not match its matrices");
  }
  BasedInstance inst{n,
                     std::move(v),
                     mat_from_json(field(j, "u"), alg),
                     quat_from_json(field(j, "delta"), alg),
                     quat_cert_from_json(field(j, "delta_cert"), alg),
                     j.contains("gamma") ? mat_from_json(j.at("gamma"), alg)
                                         : MatD::identity(n, alg)};
  inst.validate();
  return inst;
}

Algebra parse_algebra(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw PreconditionError("algebra must be given as \"a,b\"");
  }
  return Algebra(parse_rat(text.substr(0, comma)), parse_rat(text.substr(comma + 1)));
}

}  // namespace commlen
