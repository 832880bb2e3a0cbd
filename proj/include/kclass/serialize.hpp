#pragma once

// JSON formats for bundles, reports and synthetic field specs. Every big
// integer is written as a decimal string; labels are written as plain numbers.
// Output is deterministic: labels ascending, factors in canonical order.

#include "kclass/reconstruct.hpp"

#include <string>
#include <string_view>

namespace kclass {

inline constexpr std::string_view kBundleVersion = "kclass-bundle/1";
inline constexpr std::string_view kReportVersion = "kclass-report/1";

std::string bundle_to_json(const InvariantBundle& b);
// Throws CorruptBundle on malformed text, a wrong version tag, or entries that
// fail InvariantBundle::validate.
InvariantBundle bundle_from_json(std::string_view text);

std::string report_to_json(const ReconstructionReport& r);
std::string comparison_to_json(const FieldComparison& c);

// {"invariant_factors": [...], "primes": [{"norm", "class", "residue_char"}],
//  "quadratic_like": bool}. Integers may be numbers or decimal strings;
// residue_char may be omitted. Throws InvalidArgument on malformed text and
// ValidationError on arithmetic violations.
SyntheticSpec synthetic_spec_from_json(std::string_view text);
std::string synthetic_spec_to_json(const SyntheticSpec& s);

}  // namespace kclass
