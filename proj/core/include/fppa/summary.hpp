#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fppa {

// Linear interpolation between order statistics (the "type 7" rule).
// Throws InsufficientDataError on an empty sample.
double sample_quantile(std::vector<double> values, double p);

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double iqr() const { return q75 - q25; }
};

// Non-finite values are dropped before summarizing.
SummaryStats summarize(std::vector<double> values);

struct SummaryRow {
  std::string kind;
  std::uint64_t t = 0;
  std::string metric;
  std::size_t records = 0;       // records at this (kind, t)
  std::size_t disconnected = 0;  // of which flagged disconnected
  SummaryStats stats;
};

// Numeric fields of the raw records, grouped by (kind, t, metric). d_G, d_L
// and d_H come from the top level; extras contribute scalars, booleans as 0/1
// and numeric arrays as metric[k].
std::vector<SummaryRow> summarize_records(const std::vector<nlohmann::json>& records);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
std::vector<nlohmann::json> read_jsonl(std::istream& in);

struct AuditReport {
  std::size_t records = 0;
  std::size_t rows_checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Recomputes every summary row from the raw records and compares.
AuditReport audit_summary(std::istream& jsonl, std::istream& csv, double rel_tol = 1e-12);

}  // namespace fppa
