#pragma once

// JSON forms of fields, matrices, codes, reports and received words.

#include <json.hpp>
#include <optional>

#include "hmrc/constructions.hpp"
#include "hmrc/decode.hpp"

namespace hmrc {

using nlohmann::json;

json field_spec_to_json(const FieldSpec& s);
FieldSpec field_spec_from_json(const json& j);

/// Base-p digit list of x (little-endian, length = prime degree of `level`).
json element_to_json(const FieldTower& t, std::size_t level, Elem x);
/// Digit list or plain integer encoding.
Elem element_from_json(const FieldTower& t, std::size_t level, const json& j);

/// {"field", "level", "rows", "cols", "entries"} with entries flat row-major.
json matrix_to_json(const FieldTower& t, std::size_t level, const FMatrix& m);
/// Parses a matrix and its tower.
FMatrix matrix_from_json(const json& j, FieldTower& tower, std::size_t& level);

json profile_to_json(const CodeProfile& p);
CodeProfile profile_from_json(const json& j);

json pattern_to_json(const ErasurePattern& p);
ErasurePattern pattern_from_json(const json& j);

json params_to_json(const FieldTower& t, const ConstructionParams& p);
json certificate_to_json(const ConstructionCertificate& c);

struct CodeFile {
    ParityCheck code;
    json params;       // null when absent
    json certificate;  // null when absent
};

json code_to_json(const ParityCheck& code, const ConstructionParams* params = nullptr,
                  const ConstructionCertificate* cert = nullptr);
/// Throws ParseError on malformed input and ShapeMismatch when the matrix
/// does not fit the profile or the bands.
CodeFile code_from_json(const json& j);

json report_to_json(const VerificationReport& r, const std::string& mode);

/// JSON list with null for erasures.
Received received_from_json(const json& j, const FieldTower& t, std::size_t level);
json word_to_json(const FieldTower& t, std::size_t level, const std::vector<Elem>& w);
json received_to_json(const FieldTower& t, std::size_t level, const Received& w);

}  // namespace hmrc
