#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fracyam {

enum class CheckStatus { pass, fail, inconclusive };

std::string to_string(CheckStatus s);

/// One lemma-level check: computed values against reference values at a
/// tolerance. `reference` empty means "none" (structural checks).
struct VerificationReport {
  std::string check_id;
  std::map<std::string, std::string> params;
  std::vector<double> computed;
  std::vector<double> reference;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::inconclusive;
  std::int64_t runtime_ms = 0;

  static VerificationReport scalar(const std::string& id, double value,
                                   double ref, double tol);
  bool passed() const { return status == CheckStatus::pass; }
};

enum class EmitFormat { json, csv, text };

/// Serialize reports. JSON: array of objects with exactly the report fields;
/// CSV: one row per report with fixed columns; text: aligned table.
void emit(const std::vector<VerificationReport>& reports, EmitFormat format,
          std::ostream& os);

/// Parse back what emit(json) produced (round-trip support).
std::vector<VerificationReport> parse_json_reports(const std::string& text);

std::string format_params(const std::map<std::string, std::string>& params);

}  // namespace fracyam
