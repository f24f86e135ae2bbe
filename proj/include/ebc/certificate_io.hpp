#pragma once

#include "ebc/construction.hpp"

#include <string>
#include <string_view>

namespace ebc {

// Flat JSON object; big integers as decimal strings, dyadics as "num/2^exp".
std::string certificate_to_json(const WitnessCertificate& cert);

// One "field<TAB>value" line per JSON field; checks as check.<name>.
std::string certificate_to_tsv(const WitnessCertificate& cert);

// Throws PreconditionError on malformed input or missing fields.
WitnessCertificate certificate_from_json(std::string_view text);

std::string report_to_json(const VerificationReport& report);
// One line per check: name, status, relation, detail.
std::string report_to_tsv(const VerificationReport& report);

} // namespace ebc
