#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptlab/boundary.hpp"
#include "ptlab/sweep.hpp"

namespace ptlab {

/// JSON model description:
///   {"n": 4, "z": {"re": 0, "im": 0.5}, "a": 0, "b": 0,
///    "alpha": [{"re": 0, "im": 0}, ...], "beta": [...]}
/// Errors are configuration_error and name the offending field path (e.g. "alpha[2].im").
EndpointModel parse_model_json(const std::string& text);
EndpointModel parse_model_file(const std::string& path);

/// Canonical JSON: fixed key order, two-space indent, shortest round-trip numbers.
std::string serialize_model(const EndpointModel& model);

/// 17 significant digits; parsing the text back yields the same double.
std::string format_number(double v);

void write_spectrum_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_positivity_csv(std::ostream& os, const PositivityScan& scan);
void write_pseudometric_csv(std::ostream& os, const std::vector<PseudometricRecord>& records);
void write_bound_states_csv(std::ostream& os, const BoundStateScan& scan);
void write_matrix_csv(std::ostream& os, const CMatrix& m);

}  // namespace ptlab
