#include "fracyam/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace fracyam {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "inconclusive";
  }
}

VerificationReport VerificationReport::scalar(const std::string& id, double value,
                                              double ref, double tol) {
  VerificationReport r;
  r.check_id = id;
  r.computed = {value};
  r.reference = {ref};
  r.tolerance = tol;
  const double scale = std::max(std::fabs(ref), 1e-300);
  const bool ok = std::fabs(value - ref) <= tol * scale;
  r.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

std::string format_params(const std::map<std::string, std::string>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

namespace {

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["params"] = r.params;
  j["computed"] = r.computed;
  if (r.reference.empty())
    j["reference"] = "none";
  else
    j["reference"] = r.reference;
  j["tolerance"] = r.tolerance;
  j["status"] = to_string(r.status);
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

std::string join_values(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << '|';
    os << v[i];
  }
  return os.str();
}

}  // namespace

void emit(const std::vector<VerificationReport>& reports, EmitFormat format,
          std::ostream& os) {
  if (format == EmitFormat::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
    return;
  }
  if (format == EmitFormat::csv) {
    os << "check_id,params,computed,reference,tolerance,status,runtime_ms\n";
    for (const auto& r : reports) {
      os << r.check_id << ',' << format_params(r.params) << ',' << join_values(r.computed)
         << ',' << (r.reference.empty() ? "none" : join_values(r.reference)) << ','
         << std::setprecision(17) << r.tolerance << ',' << to_string(r.status) << ','
         << r.runtime_ms << '\n';
    }
    return;
  }
  // aligned text table
  size_t idw = 8;
  for (const auto& r : reports) idw = std::max(idw, r.check_id.size());
  os << std::left << std::setw(static_cast<int>(idw) + 2) << "check" << std::setw(14)
     << "status" << std::setw(24) << "computed" << std::setw(24) << "reference"
     << "params\n";
  for (const auto& r : reports) {
    std::ostringstream cv, rv;
    cv << std::setprecision(9) << (r.computed.empty() ? 0.0 : r.computed.front());
    if (r.computed.size() > 1) cv << " (+" << r.computed.size() - 1 << ")";
    if (r.reference.empty())
      rv << "none";
    else {
      rv << std::setprecision(9) << r.reference.front();
      if (r.reference.size() > 1) rv << " (+" << r.reference.size() - 1 << ")";
    }
    os << std::left << std::setw(static_cast<int>(idw) + 2) << r.check_id
       << std::setw(14) << to_string(r.status) << std::setw(24) << cv.str()
       << std::setw(24) << rv.str() << format_params(r.params) << '\n';
  }
}

std::vector<VerificationReport> parse_json_reports(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<VerificationReport> out;
  for (const auto& j : arr) {
    VerificationReport r;
    r.check_id = j.at("check_id").get<std::string>();
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
      r.params[it.key()] = it.value().get<std::string>();
    r.computed = j.at("computed").get<std::vector<double>>();
    if (j.at("reference").is_array())
      r.reference = j.at("reference").get<std::vector<double>>();
    r.tolerance = j.at("tolerance").get<double>();
    const std::string st = j.at("status").get<std::string>();
    r.status = st == "pass"   ? CheckStatus::pass
               : st == "fail" ? CheckStatus::fail
                              : CheckStatus::inconclusive;
    r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fracyam
