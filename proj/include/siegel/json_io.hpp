#pragma once

// JSON serialization for the value types and tables. All numeric output is
// exact strings; object key order is deterministic.

#include <json.hpp>

#include "siegel/eisenstein.hpp"
#include "siegel/lambda_adic.hpp"

namespace siegel {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);                 // "num/den" string
Json to_json(const CyclotomicNumber& z);         // string when rational, object otherwise
Json to_json(const DirichletCharacter& chi);
DirichletCharacter character_from_json(const Json& j);
Json to_json(const SiegelSeriesPoly& f);
Json to_json(const FourierTable& table);
Json to_json(const LambdaElement& e);
Json to_json(const LambdaFraction& f);

} // namespace siegel
