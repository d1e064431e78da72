#pragma once

#include <string>

#include <json.hpp>

#include "remez/arcset.hpp"
#include "remez/closed_form.hpp"
#include "remez/comb.hpp"
#include "remez/oracle.hpp"
#include "remez/polynomial.hpp"
#include "remez/regularity.hpp"

namespace remez {

// ADL converters so domain types compose into larger nlohmann documents.
// Readers exist only for the types the CLI accepts as input files.

// {"gaps": [[start, end], ...]}; no gaps means the full circle, and the
// degenerate empty set round-trips through an extra "empty": true.
void to_json(nlohmann::json& j, const ArcSet& set);
void from_json(const nlohmann::json& j, ArcSet& set);

// {"n": degree, "coeffs": [[re, im], ...]} with exactly n + 1 pairs; a zero
// leading pair is kept so the stored degree survives the round trip.
void to_json(nlohmann::json& j, const CirclePolynomial& p);
void from_json(const nlohmann::json& j, CirclePolynomial& p);

// {"n": int, "slits": [{"base": b, "height": h}, ...]}
void to_json(nlohmann::json& j, const CombDomain& comb);
void from_json(const nlohmann::json& j, CombDomain& comb);

// Output-only records.
void to_json(nlohmann::json& j, const OracleSolution& sol);
void to_json(nlohmann::json& j, const VerificationReport& report);
void to_json(nlohmann::json& j, const SharpConstant& constant);
void to_json(nlohmann::json& j, const Envelopes& env);

/// Parse one JSON document into T (ArcSet, CirclePolynomial, or CombDomain).
/// All nlohmann failures resurface as remez::error naming `what` (e.g. the
/// file the text came from); schema violations already throw remez::error.
template <typename T>
T parse_json(const std::string& text, const std::string& what);

/// Whole file as a string; throws io_error.
std::string read_text_file(const std::string& path);

/// Overwrite path with text; throws io_error.
void write_text_file(const std::string& path, const std::string& text);

} // namespace remez
