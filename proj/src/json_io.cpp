#include "extremal/json_io.hpp"

#include <fstream>

namespace extremal {

namespace {

Field field_from_string(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw std::invalid_argument("unknown field '" + s + "' (expected real|complex)");
}

}  // namespace

json matrix_to_json(const HermitianMatrix& m) {
  json rows = json::array();
  const Matrix& e = m.entries();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) {
      if (m.field() == Field::Real)
        row.push_back(e(i, j).real());
      else
        row.push_back(json::array({e(i, j).real(), e(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return json{{"field", field_name(m.field())}, {"n", m.dim()}, {"rows", std::move(rows)}};
}

HermitianMatrix matrix_from_json(const json& j) {
  const Field field = field_from_string(j.at("field").get<std::string>());
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("matrix json: row count != n");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix json: row length != n");
    for (int k = 0; k < n; ++k) {
      const auto& cell = row.at(k);
      if (cell.is_array()) {
        if (cell.size() != 2)
          throw std::invalid_argument("matrix json: complex entry must be [re, im]");
        m(i, k) = Cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
      } else {
        m(i, k) = Cplx(cell.get<double>(), 0.0);
      }
    }
  }
  return HermitianMatrix(field, std::move(m));
}

json spectrahedron_to_json(const Spectrahedron& c) {
  json ks = json::array();
  for (const auto& k : c.constraints())
    ks.push_back(json{{"label", k.label}, {"A", matrix_to_json(k.A)}, {"c", k.c}});
  return json{{"field", field_name(c.field())}, {"n", c.dim()}, {"constraints", std::move(ks)}};
}

Spectrahedron spectrahedron_from_json(const json& j) {
  const Field field = field_from_string(j.at("field").get<std::string>());
  const int n = j.at("n").get<int>();
  std::vector<Constraint> ks;
  for (const auto& kj : j.at("constraints")) {
    const auto& cj = kj.at("c");
    if (cj.is_array())
      throw std::invalid_argument("spectrahedron json: target c must be real");
    HermitianMatrix a = matrix_from_json(kj.at("A"));
    if (a.field() != field)
      a = HermitianMatrix(field, Matrix(a.entries()));
    std::string label = kj.contains("label") ? kj.at("label").get<std::string>() : "";
    ks.push_back({std::move(label), std::move(a), cj.get<double>()});
  }
  return Spectrahedron(field, n, std::move(ks));
}

json membership_to_json(const MembershipReport& r) {
  return json{{"psd_violation", r.psd_violation},
              {"constraint_residuals", r.constraint_residuals},
              {"feasible", r.feasible},
              {"tol", r.tol}};
}

json extremality_report_to_json(const ExtremalityReport& r) {
  return json{{"rank_P", r.rank_p},
              {"gram_rank", r.gram_rank},
              {"dim_X", r.dim_x},
              {"is_extreme", r.is_extreme},
              {"facial_dimension", r.facial_dimension},
              {"rank_threshold_P", r.rank_threshold_p},
              {"rank_threshold_gram", r.rank_threshold_gram}};
}

json witness_to_json(const PerturbationWitness& w) {
  return json{{"X", matrix_to_json(w.X)},
              {"H", matrix_to_json(w.H)},
              {"norm_X", w.norm_x},
              {"feasibility_plus", membership_to_json(w.feasibility_plus)},
              {"feasibility_minus", membership_to_json(w.feasibility_minus)}};
}

json solve_result_to_json(const SolveResult& r) {
  return json{{"P_opt", matrix_to_json(r.p_opt)},
              {"objective", r.objective},
              {"rank_bound_used", r.rank_bound_used},
              {"restarts", r.restarts},
              {"converged", r.converged},
              {"restart_objectives", r.restart_objectives},
              {"feasibility", membership_to_json(r.feasibility)}};
}

json oracle_compare_to_json(const OracleCompareResult& r) {
  return json{{"instances", r.instances},
              {"disagreements", r.disagreements},
              {"extreme_count", r.extreme_count},
              {"witness_count", r.witness_count},
              {"witness_failures", r.witness_failures},
              {"bp_violations", r.bp_violations},
              {"max_witness_roundtrip_err", r.max_witness_roundtrip_err},
              {"max_witness_norm_X", r.max_witness_norm_x},
              {"seconds", r.seconds},
              {"disagree_seeds", r.disagree_seeds}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace extremal
