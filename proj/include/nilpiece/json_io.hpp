#pragma once

#include <json.hpp>
#include <string>
#include <utility>

#include "nilpiece/census.hpp"
#include "nilpiece/classifier.hpp"
#include "nilpiece/group_oracle.hpp"
#include "nilpiece/nilcone.hpp"
#include "nilpiece/verification.hpp"

namespace nilpiece {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "nilpiece/1";

Json field_to_json(const Field& f);
/// Throws ParseError on malformed input.
Field field_from_json(const Json& j);

/// Coefficient array, low to high.
Json element_to_json(const Field& f, Elem e);
/// Accepts a coefficient array or the integer encoding sum c_i p^i.
Elem element_from_json(const Field& f, const Json& j);

Json vector_to_json(const Field& f, std::span<const Elem> v);
Json matrix_to_json(const Matrix& m);
Json subspace_to_json(const Subspace& s);

/// {"schema", "space": {"field", "N"}, "form": [lower triangle]}
Json form_document(const QuadraticSpace& space, const AlternatingForm& b);
std::pair<QuadraticSpace, AlternatingForm> parse_form_document(const Json& j);

/// The dim-3 form with beta_xi(e_{-1}, e_0) = 1.
AlternatingForm demo_form(const Field& f);

Json profile_to_json(const Profile& p);
Json filtration_to_json(const QFiltration& f);
Json chain_to_json(const ChainData& c);
Json classification_to_json(const QuadraticSpace& space, const AlternatingForm& b, const ClassificationResult& r,
                            bool explain);

Json census_to_json(const CensusReport& r, bool timing);
std::string census_table(const CensusReport& r, bool timing);
std::string census_csv(const CensusReport& r);

Json check_to_json(const FormulaCheck& c);
Json check_to_json(const CheckResult& c);

}  // namespace nilpiece
