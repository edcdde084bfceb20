#pragma once

#include <string>

#include "caracomm/geometry.hpp"
#include "caracomm/newman.hpp"
#include "caracomm/protocol.hpp"

namespace caracomm {

/// Raised on malformed documents; carries a message for the CLI.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All reals are written as decimal with 17 significant digits so values
// round-trip exactly.

/// {"dimension": d, "points": [[...], ...]}
std::string point_set_to_json(const PointSet& ps);

/// Same document with "weights": [{"index": i, "weight": w}, ...] appended.
std::string combination_to_json(const ConvexCombination& c);

PointSet point_set_from_json(const std::string& text);

/// Accepts documents with or without "weights"; when absent, a point mass on
/// index 0 is NOT assumed and an error is raised.
ConvexCombination combination_from_json(const std::string& text);

/// {"n": n, "bits_hex": "..."} with little-endian bit order within bytes,
/// bytes in ascending address order, two lowercase hex digits each.
std::string truth_table_to_json(const TruthTable& t);
TruthTable truth_table_from_json(const std::string& text);

/// {"n": n, "values": [...]}
std::string probability_table_to_json(const ProbabilityTable& t);
ProbabilityTable probability_table_from_json(const std::string& text);

std::string report_to_json(const CompilationReport& r);

}  // namespace caracomm
