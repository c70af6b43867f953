#pragma once

// JSON encodings shared by the CLI and the tests.
//
//   scalar   rational "a/b"; tower {"level": L, "coeffs": ["c0", ...]}
//   laurent  {"<degree>": scalar, ...} in increasing degree
//   matrix   {"rows": R, "cols": C, "entries": [[...], ...]} or bare [[...], ...]
//   field    {"kind": "rational"} or {"kind": "tower", "p": P, "adjoined": [...]}
//
// Every decoder throws Error(MalformedInput) on bad input.

#include <nlohmann/json.hpp>

#include "congruence/orbit_witness.hpp"

namespace congruence::json {

using Json = nlohmann::ordered_json;

Json encode(const Field& f);
Field decode_field(const Json& j);

Json encode(const Scalar& x);
Scalar decode_scalar(const Field& f, const Json& j);

Json encode(const Laurent& x);
Laurent decode_laurent(const Field& f, const Json& j);

Json encode(const ScalarMatrix& m);
ScalarMatrix decode_matrix(const Field& f, const Json& j);

Json encode(const LaurentMatrix& m);
LaurentMatrix decode_laurent_matrix(const Field& f, const Json& j);

Json encode(const MatrixTuple& t);
MatrixTuple decode_tuple(const Field& f, const Json& j);

Json encode(const ConfigPoint& x);
ConfigPoint decode_config(const Field& f, const Json& j);

Json encode(const TargetCorner& t);
TargetCorner decode_target(const Field& f, const Json& j);

Json encode(const RankCertificate& c);
Json encode(const VerificationReport& r);
Json encode(const StageCheck& s);

/// Curve, determinant certificate, stage log and report.
Json encode(const WitnessCurve& w);
/// Reads back the curve and its certificate; stages and report are not
/// needed for verification and are ignored.
WitnessCurve decode_curve(const Field& f, const Json& j);

}  // namespace congruence::json
