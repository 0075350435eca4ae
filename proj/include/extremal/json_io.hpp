#pragma once

#include <nlohmann/json.hpp>

#include "extremal/applications.hpp"
#include "extremal/batch.hpp"
#include "extremal/elliptope.hpp"

namespace extremal {

using json = nlohmann::json;

// Corpus-wide matrix format:
//   {"field":"real"|"complex","n":N,"rows":[[...]]}
// with complex entries as [re, im] pairs, row-major.
json matrix_to_json(const HermitianMatrix& m);
HermitianMatrix matrix_from_json(const json& j);

// {"field":...,"n":...,"constraints":[{"label":...,"A":<matrix>,"c":<real>}]}
json spectrahedron_to_json(const Spectrahedron& c);
Spectrahedron spectrahedron_from_json(const json& j);

json membership_to_json(const MembershipReport& r);
json extremality_report_to_json(const ExtremalityReport& r);
json witness_to_json(const PerturbationWitness& w);
json solve_result_to_json(const SolveResult& r);
json oracle_compare_to_json(const OracleCompareResult& r);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace extremal
