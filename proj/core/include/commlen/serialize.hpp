#pragma once

// JSON encodings. Rationals are strings "p" or "p/q"; a quaternion is
// ["w", "x", "y", "z"]; a matrix is an array of rows of quaternions.
// H-factor indices are 1-based in JSON and 0-based in memory.
//
// Every decoder throws PreconditionError on malformed input.

#include <nlohmann/json.hpp>

#include "commlen/certify.hpp"

namespace commlen {

using Json = nlohmann::json;

Json to_json(const Rat& r);
Json to_json(const Algebra& alg);
Json to_json(const Quat& q);
Json to_json(const MatD& m);
Json to_json(const HFactorList& hf);
Json to_json(const UVUForm& form);
Json to_json(const QuatCert& cert);
Json to_json(const MatCert& cert);
Json to_json(const BasedInstance& inst);

Rat rat_from_json(const Json& j);
// Missing algebra means the Hamilton quaternions.
Algebra algebra_from_json(const Json& j);
Quat quat_from_json(const Json& j, const Algebra& alg);
MatD mat_from_json(const Json& j, const Algebra& alg);
HFactorList hfactors_from_json(const Json& j, const Algebra& alg);
UVUForm form_from_json(const Json& j, const Algebra& alg);
QuatCert quat_cert_from_json(const Json& j, const Algebra& alg);
MatCert mat_cert_from_json(const Json& j, const Algebra& alg);
// Reads "algebra" from the object itself.
BasedInstance instance_from_json(const Json& j);

// Parses "a,b" as used on the command line.
Algebra parse_algebra(std::string_view text);

}  // namespace commlen
