#pragma once

#include <json.hpp>

#include "core/witness.hpp"

namespace divr {

using ordered_json = nlohmann::ordered_json;

// Serialization conventions: integers that can be large (values, exponents,
// witness numbers, divisor counts) are decimal strings; C and element counts
// are plain JSON integers; absent quantities are null.

ordered_json decompose_document(const Rational& target, const GenWord& word);

// The instance subdocument: {"a": ..., "r": [...], "C": ..., "factors": {...}}.
ordered_json params_to_json(const SieveParams& params);

// Inverse of params_to_json (reads only the keys it writes).  Structural
// errors raise domain errors; hypothesis checking stays with validate_params.
SieveParams params_from_json(const ordered_json& doc);

// Full build report: instance, predicted ratios, group value, balance
// exponents, augmented instance.  Ratio/balance sections are null when the
// instance is not fully factored.
ordered_json build_document(const BuildResult& build, const Sieve& sieve);

ordered_json hit_to_json(const WitnessHit& hit);
ordered_json scan_summary_to_json(const Rational& target,
                                  const ScanSummary& summary);

extern const char* const kHitCsvHeader;  // "x,pair,n,d_n,d_n1,ratio,predicted,matched"
std::string hit_to_csv(const WitnessHit& hit);

ordered_json census_to_json(const RatioCensus& census);

}  // namespace divr
