#pragma once

// JSON serialization for results.  Non-finite doubles are encoded as the
// strings "inf" / "-inf" / "nan" so reports stay valid JSON and byte-stable.

#include <json.hpp>

#include "mustar/bv.hpp"
#include "mustar/inequalities.hpp"
#include "mustar/norms.hpp"
#include "mustar/transforms.hpp"
#include "mustar/uncertainty.hpp"

namespace mustar {

nlohmann::json json_num(double x);

nlohmann::json to_json(const NormResult& r);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const TransformResult& r);
nlohmann::json to_json(const SincConstants& s);
nlohmann::json to_json(const LimitingOperator& op);
nlohmann::json to_json(const NoDoubleSupportReport& r);
nlohmann::json to_json(const TheoremMainReport& r);

std::string transform_csv(const TransformResult& r);

}  // namespace mustar
