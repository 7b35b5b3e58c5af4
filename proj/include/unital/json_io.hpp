#pragma once

// Repo-wide JSON encoding. A matrix is
//   {"rows": n, "cols": m, "data": [[re, im], ...]}
// with exactly rows*cols row-major pairs. Doubles are written in their
// shortest round-trip form, so parse(dump(m)) == m bit for bit.

#include <string>
#include <vector>

#include <json.hpp>

#include "unital/channels.hpp"
#include "unital/harness.hpp"
#include "unital/linalg.hpp"
#include "unital/quantumness.hpp"
#include "unital/states.hpp"

namespace unital::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexMatrix& m);
Json to_json(const DensityMatrix& rho);
Json to_json(const Basis& b);
Json to_json(const ChannelReport& r);
Json to_json(const KrausSet& k);
Json to_json(const ReqResult& r);
Json to_json(const Partition& p);
Json to_json(const LabeledState& s);
Json to_json(const TrialConfig& c);
Json to_json(const TrialRecord& r);
/// Records are included when `include_records` is set or trials == 1.
Json to_json(const CampaignReport& r, bool include_records = false);

/// Strict matrix decoding; throws ParseError on any schema violation or
/// non-finite component.
ComplexMatrix matrix_from_json(const Json& j);
/// Accepts a square density matrix or a normalized column vector (ket).
DensityMatrix density_from_json(const Json& j);
Basis basis_from_json(const Json& j);
/// Accepts a bare array of matrices or an object with an "operators" array.
KrausSet kraus_from_json(const Json& j);

/// Reads and parses a JSON file; throws ParseError with the path on failure.
Json read_file(const std::string& path);

}  // namespace unital::json_io
