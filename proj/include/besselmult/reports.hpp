#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "besselmult/duality.hpp"
#include "besselmult/multiplier.hpp"
#include "besselmult/norms.hpp"
#include "besselmult/perturbation.hpp"

namespace besselmult {

using Json = nlohmann::json;

Json to_json(const NormEstimate& est, Field field);
Json to_json(const BoundsCertificate& cert, Field field);
Json to_json(const CheckReport& report);
Json to_json(const NuclearCertificate& cert);
Json to_json(const ConvergenceTable& table);
Json to_json(const SymbolClassification& c);

/// CSV with the fixed column set l,distance,lhs_lower,lhs_upper,rhs,ratio,pass.
void write_table_csv(const std::string& path, const ConvergenceTable& table);

void write_json(const std::string& path, const Json& j);

}  // namespace besselmult
