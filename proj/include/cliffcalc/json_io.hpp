#pragma once

#include <json.hpp>
#include <string>

#include "cliffcalc/calculus.hpp"

namespace cliffcalc {

using Json = nlohmann::json;

// {"n": int, "coeffs": [2^n doubles]} in ascending bitmask order.
Json clifford_to_json(const CliffordNumber& a);
CliffordNumber clifford_from_json(const Json& j);

// {"n": int, "d": int, "entries": [[coeffs ...] ...]} row-major.
Json operator_to_json(const CliffordMatrix& t);
CliffordMatrix operator_from_json(const Json& j);

// {"type":"rational","p":[...],"q":[...]} | {"type":"builtin","name":...,"params":{...}}
// | {"type":"sum","terms":[{<stem>, "coeff": <clifford>} ...]}
Json function_to_json(const LeftSliceFunction& f);
LeftSliceFunction function_from_json(const Json& j, int n);

Json sphere_to_json(const EigenSphere& s);
Json spectrum_report_to_json(const SpectrumReport& r);
Json bisectoriality_report_to_json(const BisectorialityReport& r);
Json suite_report_to_json(const SuiteReport& r);
Json mapping_report_to_json(const SpectralMappingReport& r);
Json diagnostics_to_json(const QuadratureDiagnostics& d);

Json load_json_file(const std::string& path);  // throws ParseError with context

}  // namespace cliffcalc
