#include "besselmult/reports.hpp"

#include <cstdio>
#include <fstream>

namespace besselmult {

namespace {

Json witness_json(const Vec& w, Field field) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (field == Field::real)
      arr.push_back(w[i].real());
    else
      arr.push_back(Json::array({w[i].real(), w[i].imag()}));
  }
  return arr;
}

}  // namespace

Json to_json(const NormEstimate& est, Field field) {
  return Json{{"lower", est.lower},
              {"upper", est.upper},
              {"method", to_string(est.method)},
              {"iterations", est.iterations},
              {"seed", est.seed},
              {"witness", witness_json(est.witness, field)},
              {"stationary", est.stationary}};
}

Json to_json(const BoundsCertificate& cert, Field field) {
  return Json{{"A", to_json(cert.A_est, field)},
              {"B", to_json(cert.B_est, field)},
              {"kind", to_string(cert.kind)}};
}

Json to_json(const CheckReport& report) {
  Json j{{"claim", report.claim},
         {"lhs", report.lhs},
         {"rhs", report.rhs},
         {"slack", report.slack},
         {"pass", report.pass}};
  if (!report.details.empty()) j["details"] = report.details;
  return j;
}

Json to_json(const NuclearCertificate& cert) {
  return Json{{"r", cert.r},
              {"sigma_norm", cert.sigma_norm},
              {"analysis_weak_norm", cert.analysis_weak_norm},
              {"synthesis_weak_norm", cert.synthesis_weak_norm},
              {"upper", cert.upper}};
}

Json to_json(const ConvergenceTable& table) {
  Json rows = Json::array();
  for (const ConvergenceRow& r : table.rows)
    rows.push_back(Json{{"l", r.l},
                        {"distance", r.distance},
                        {"lhs_lower", r.lhs_lower},
                        {"lhs_upper", r.lhs_upper},
                        {"rhs", r.rhs},
                        {"rhs_sqrt_variant", r.rhs_sqrt_variant},
                        {"ratio", r.ratio},
                        {"pass", r.pass}});
  return Json{{"claim", table.claim}, {"rows", rows}, {"all_pass", table.all_pass()}};
}

Json to_json(const SymbolClassification& c) {
  Json r_norms = Json::array();
  for (const auto& [r, value] : c.r_norms) r_norms.push_back(Json{{"r", r}, {"norm", value}});
  return Json{{"bounded", c.bounded},
              {"semi_normalized", c.semi_normalized},
              {"sup_norm", c.sup_norm},
              {"min_abs", c.min_abs},
              {"r_norms", r_norms}};
}

void write_table_csv(const std::string& path, const ConvergenceTable& table) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file " + path);
  out << "l,distance,lhs_lower,lhs_upper,rhs,ratio,pass\n";
  char buf[256];
  for (const ConvergenceRow& r : table.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.l, r.distance,
                  r.lhs_lower, r.lhs_upper, r.rhs, r.ratio, r.pass ? 1 : 0);
    out << buf;
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file " + path);
  out << j.dump(2) << '\n';
}

}  // namespace besselmult
