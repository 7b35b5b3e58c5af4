#include "unital/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "unital/errors.hpp"

namespace unital::json_io {

namespace {

std::size_t positive_size(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(std::string("matrix field '") + key + "' must be an integer");
  }
  const auto v = j[key].get<long long>();
  if (v <= 0) throw ParseError(std::string("matrix field '") + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

double finite_number(const Json& j) {
  if (!j.is_number()) throw ParseError("matrix entry component is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError("matrix entry component is not finite");
  return v;
}

Json weights_json(const std::vector<double>& w) {
  Json arr = Json::array();
  for (double x : w) arr.push_back(x);
  return arr;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (const auto& z : m.entries()) data.push_back(Json::array({z.real(), z.imag()}));
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

Json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }
Json to_json(const Basis& b) { return to_json(b.matrix()); }

Json to_json(const ChannelReport& r) {
  Json j;
  j["completeness_defect"] = r.completeness_defect;
  j["unitality_defect"] = r.unitality_defect;
  j["tolerance"] = r.tolerance;
  j["is_cptp"] = r.is_cptp;
  j["is_unital"] = r.is_unital;
  return j;
}

Json to_json(const KrausSet& k) {
  Json ops = Json::array();
  for (const auto& op : k.operators()) ops.push_back(to_json(op));
  Json source;
  source["traced"] = std::string(to_string(k.source().traced));
  source["dim_s"] = k.source().dim_s;
  source["dim_e"] = k.source().dim_e;
  source["mode"] = std::string(to_string(k.source().mode));
  source["weights"] = weights_json(k.source().weights);
  Json j;
  j["operators"] = std::move(ops);
  j["extraction_basis"] = to_json(k.extraction_basis());
  j["source"] = std::move(source);
  return j;
}

Json to_json(const ReqResult& r) {
  Json j;
  j["value"] = r.value;
  j["rule_applied"] = std::string(to_string(r.rule_applied));
  j["reference_state"] = to_json(r.reference_state);
  return j;
}

Json to_json(const Partition& p) {
  Json j;
  j["dims"] = p.dims;
  j["system"] = p.system;
  j["environment"] = p.environment;
  return j;
}

Json to_json(const LabeledState& s) {
  Json j;
  j["name"] = s.name;
  j["initial_ket_label"] = s.initial_ket_label;
  j["partition"] = to_json(s.partition);
  j["preparation_unitary"] = to_json(s.preparation_unitary);
  j["state"] = to_json(s.state);
  return j;
}

Json to_json(const TrialConfig& c) {
  Json j;
  j["family"] = std::string(to_string(c.family));
  j["dims"] = Json::array({c.dim_s, c.dim_e});
  j["seed"] = c.seed;
  j["env_state_spec"] = std::string(to_string(c.env_state_spec));
  j["sys_state_spec"] = std::string(to_string(c.sys_state_spec));
  j["unitality_tol"] = c.unitality_tol;
  if (c.family == Family::paper_fixture) j["fixture"] = c.fixture;
  return j;
}

Json to_json(const TrialRecord& r) {
  Json j;
  j["trial_index"] = r.trial_index;
  j["trial_seed"] = r.trial_seed;
  j["sys_unitality_defect"] = r.sys_unitality_defect;
  j["env_unitality_defect"] = r.env_unitality_defect;
  j["sys_completeness_defect"] = r.sys_completeness_defect;
  j["env_completeness_defect"] = r.env_completeness_defect;
  j["classification"] = std::string(to_string(r.classification));
  j["borderline"] = r.borderline;
  return j;
}

Json to_json(const CampaignReport& r, bool include_records) {
  Json counts;
  counts["both_unital"] = r.both_unital;
  counts["both_nonunital"] = r.both_nonunital;
  counts["mixed_anomaly"] = r.mixed_anomaly;
  counts["failed"] = r.failed;
  counts["borderline"] = r.borderline;

  Json max_defects;
  max_defects["sys_unitality"] = r.max_sys_unitality_defect;
  max_defects["env_unitality"] = r.max_env_unitality_defect;
  max_defects["sys_completeness"] = r.max_sys_completeness_defect;
  max_defects["env_completeness"] = r.max_env_completeness_defect;

  Json anomalies = Json::array();
  for (const auto& a : r.anomalies) {
    Json b;
    b["record"] = to_json(a.record);
    b["campaign_seed"] = r.config.seed;
    b["unitary"] = to_json(a.instance.unitary);
    b["dims"] = Json::array({a.instance.dim_s, a.instance.dim_e});
    b["sys_state"] = to_json(a.instance.sys_state);
    b["env_state"] = to_json(a.instance.env_state);
    anomalies.push_back(std::move(b));
  }

  Json borderline = Json::array();
  for (const auto& rec : r.records)
    if (rec.borderline) borderline.push_back(rec.trial_index);

  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json fj;
    fj["trial_index"] = f.trial_index;
    fj["trial_seed"] = f.trial_seed;
    fj["message"] = f.message;
    failures.push_back(std::move(fj));
  }

  Json j;
  j["config"] = to_json(r.config);
  j["trials"] = r.trials;
  j["counts"] = std::move(counts);
  j["max_defects"] = std::move(max_defects);
  j["borderline_trials"] = std::move(borderline);
  j["anomalies"] = std::move(anomalies);
  j["failures"] = std::move(failures);
  if (include_records || r.trials == 1) {
    Json recs = Json::array();
    for (const auto& rec : r.records) recs.push_back(to_json(rec));
    j["records"] = std::move(recs);
  }
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const std::size_t rows = positive_size(j, "rows");
  const std::size_t cols = positive_size(j, "cols");
  if (!j.contains("data") || !j["data"].is_array()) throw ParseError("matrix field 'data' must be an array");
  const auto& data = j["data"];
  if (data.size() != rows * cols) {
    throw ParseError("matrix data has " + std::to_string(data.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  }
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("matrix entry must be a [re, im] pair");
    entries.emplace_back(finite_number(pair[0]), finite_number(pair[1]));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

DensityMatrix density_from_json(const Json& j) {
  ComplexMatrix m = matrix_from_json(j);
  if (m.cols() == 1) return DensityMatrix::from_ket(m);
  return DensityMatrix(std::move(m));
}

Basis basis_from_json(const Json& j) { return Basis(matrix_from_json(j)); }

KrausSet kraus_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("operators")) throw ParseError("Kraus document has no 'operators' array");
    arr = &j["operators"];
  }
  if (!arr->is_array() || arr->empty()) throw ParseError("Kraus operators must be a non-empty array");
  std::vector<ComplexMatrix> ops;
  for (const auto& m : *arr) ops.push_back(matrix_from_json(m));
  return KrausSet::from_operators(std::move(ops));
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace unital::json_io
