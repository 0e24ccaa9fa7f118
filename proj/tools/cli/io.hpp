#pragma once

// JSON file formats used by the command-line tool.
//
// States:   {"kind": "pure"|"mixed", "dims": [..], "data": ...}
//           pure data is a list of [re, im] pairs, mixed data a list of rows.
// Witness:  {"kind": "witness", "dims": [..], "data": rows}
// MPS:      {"kind": "mps", "dims": [..], "tensors": [site][s] = rows}
// Bell:     {"N":, "J":, "M":, "k": [[..]], "q": [[..]], "values": [..]?}
// Settings: [[obs_{party 1, setting 1}, ..], ..] or {"observables": ...}
// Numbers may be given as plain reals wherever [re, im] is accepted.

#include <string>
#include <vector>

#include "json.hpp"

#include "entkit/bell.hpp"
#include "entkit/linalg.hpp"
#include "entkit/maps.hpp"
#include "entkit/mps.hpp"

namespace entkit::cli {

using json = nlohmann::json;

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json state_to_json(const QState& s);
QState state_from_json(const json& j, double psd_tol = kPsdTol);

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

json mps_to_json(const MPSState& m);
MPSState mps_from_json(const json& j);

json bell_to_json(const BellProblem& p);
BellProblem bell_from_json(const json& j);

std::vector<std::vector<Mat>> settings_from_json(const json& j);
std::vector<double> real_vector_from_json(const json& j);

}  // namespace entkit::cli
