#include "misc/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace misc::study {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw std::runtime_error("config: unknown key '" + item.key() + "' in " + where);
  }
}

}  // namespace

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json root = json::parse(in);

  check_keys(root, {"schema_version", "problem", "rates", "method", "thresholds",
                    "reference", "sgsc", "aposteriori_buffer_margin", "output"},
             "top level");
  if (root.value("schema_version", 0) != 1)
    throw std::runtime_error("config: unsupported schema_version (expected 1)");

  LoadedConfig out;
  StudyConfig& study = out.study;

  const json& prob = root.at("problem");
  check_keys(prob, {"d", "N", "inv_h0", "sigma", "x0", "rhs_const", "dof_cap",
                    "solver_tol", "mode_table"},
             "problem");
  study.problem.d = prob.at("d").get<int>();
  study.problem.N = prob.at("N").get<int>();
  study.problem.inv_h0 = prob.value("inv_h0", 3);
  study.problem.sigma = prob.value("sigma", 0.16);
  if (prob.contains("x0")) study.problem.x0 = prob["x0"].get<std::vector<double>>();
  study.problem.rhs_const = prob.value("rhs_const", 1.0);
  study.problem.dof_cap = prob.value("dof_cap", std::size_t{1} << 17);
  study.problem.solver_tol = prob.value("solver_tol", 1e-10);
  if (prob.contains("mode_table")) {
    for (const auto& row : prob["mode_table"]) {
      if (row.size() != 3) throw std::runtime_error("config: mode_table rows need 3 entries");
      study.problem.mode_table.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
    }
  }

  if (root.contains("rates")) {
    const json& rates = root["rates"];
    check_keys(rates, {"source", "gamma_tilde", "r_tilde", "g", "theta", "eps_E",
                       "spatial_j_max", "stochastic_j_max", "alpha_fine", "noise_floor"},
               "rates");
    out.rate_source.kind = rates.value("source", std::string("table"));
    if (rates.contains("gamma_tilde"))
      out.rate_source.gamma_tilde = rates["gamma_tilde"].get<std::vector<double>>();
    if (rates.contains("r_tilde"))
      out.rate_source.r_tilde = rates["r_tilde"].get<std::vector<double>>();
    if (rates.contains("g")) out.rate_source.g = rates["g"].get<std::vector<double>>();
    out.rate_source.theta = rates.value("theta", 1.0);
    out.rate_source.eps_E = rates.value("eps_E", 0.0);
    out.rate_source.spatial_j_max = rates.value("spatial_j_max", 3);
    out.rate_source.stochastic_j_max = rates.value("stochastic_j_max", 3);
    if (rates.contains("alpha_fine"))
      out.rate_source.alpha_fine = rates["alpha_fine"].get<std::vector<int>>();
    out.rate_source.noise_floor = rates.value("noise_floor", 1e-13);
  }

  study.method = parse_method(root.value("method", std::string("misc-apriori")));
  if (root.contains("thresholds"))
    study.thresholds = root["thresholds"].get<std::vector<double>>();
  if (root.contains("aposteriori_buffer_margin"))
    study.aposteriori_buffer_margin = root["aposteriori_buffer_margin"].get<double>();

  if (root.contains("reference")) {
    const json& ref = root["reference"];
    check_keys(ref, {"L", "margin"}, "reference");
    if (ref.contains("L")) out.reference_L = ref["L"].get<double>();
    if (ref.contains("margin")) out.reference_margin = ref["margin"].get<double>();
  }

  if (root.contains("sgsc")) {
    const json& sgsc = root["sgsc"];
    check_keys(sgsc, {"alpha_levels"}, "sgsc");
    if (sgsc.contains("alpha_levels"))
      study.sgsc_alpha_levels = sgsc["alpha_levels"].get<std::vector<int>>();
  }

  if (root.contains("output")) {
    const json& outp = root["output"];
    check_keys(outp, {"csv"}, "output");
    out.csv_path = outp.value("csv", std::string());
  }
  return out;
}

std::string rates_to_json(const RateModel& rates) {
  json j;
  j["schema_version"] = 1;
  json r;
  r["source"] = "explicit";
  std::vector<double> gamma_tilde(rates.gammas.size()), r_tilde(rates.rs.size());
  for (std::size_t i = 0; i < rates.gammas.size(); ++i)
    gamma_tilde[i] = rates.gammas[i] / std::numbers::ln2;
  for (std::size_t i = 0; i < rates.rs.size(); ++i) r_tilde[i] = rates.rs[i] / std::numbers::ln2;
  r["gamma_tilde"] = gamma_tilde;
  r["r_tilde"] = r_tilde;
  r["g"] = rates.gs;
  j["rates"] = r;
  return j.dump(2);
}

RateModel rates_from_json(const std::string& text) {
  json j = json::parse(text);
  const json& r = j.contains("rates") ? j["rates"] : j;
  return RateModel::from_tilde(r.at("gamma_tilde").get<std::vector<double>>(),
                               r.at("r_tilde").get<std::vector<double>>(),
                               r.at("g").get<std::vector<double>>());
}

}  // namespace misc::study
