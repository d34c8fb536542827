#pragma once

// JSON encodings of the core types, used by the CLI and the tests.

#include <json.hpp>

#include "weil/descent.hpp"
#include "weil/local_symbols.hpp"
#include "weil/rationality.hpp"
#include "weil/theta.hpp"
#include "weil/weil_model.hpp"

namespace weil::io {

using nlohmann::json;

json field_json(const CoeffField& K);
CoeffField field_from_json(const json& j);

// {"n": n, "char": 0|l, "coeffs": ["a/b", ...]}
json to_json(const CycloNum& x);
CycloNum cyclo_from_json(const json& j);

// {"n": n, "char": c, "stabilizer_gens": [...], "degree": d, "name": "..."}
json to_json(const SubfieldTag& t);
SubfieldTag tag_from_json(const json& j);

// {"rows": r, "cols": c, "entries": [CycloNum, ...]} row-major
json to_json(const Mat& m);
Mat mat_from_json(const json& j);

json to_json(const FqField& F, const FqMat& m); // entries as coefficient vectors over F_p
json to_json(const FqField& F, const SpToken& t);

json to_json(const MarkedRep& r);
MarkedRep rep_from_json(const json& j);

json to_json(const CheckList& c);
bool all_passed(const json& transcript);

json to_json(const PartDecision& d);
json to_json(const Place& v);

json to_json(const DescentResult& r);
json to_json(const NormSearch& s);
json to_json(const ObstructionReport& r);
json to_json(const EndAlgebra& a);
json to_json(const OrbitDecomposition& o);
json to_json(const ThetaLift& t);
json to_json(const ScalarExtensionReport& r);

// {"field": ..., "dim": d, "h1": [{"name": ..., "matrix": ...}], "h2": [...]}
json to_json(const CommutingPair& p);
CommutingPair pair_from_json(const json& j);

} // namespace weil::io
