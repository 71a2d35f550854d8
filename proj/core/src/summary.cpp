#include "fppa/summary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "fppa/config.hpp"
#include "fppa/errors.hpp"

namespace fppa {

using nlohmann::json;

namespace {

const char* const kCsvHeader =
    "schema_version,kind,t,metric,records,disconnected,count,mean,median,q25,q75,iqr";

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void collect(std::map<std::string, std::vector<double>>& out, const std::string& name, const json& v) {
  if (v.is_boolean()) {
    out[name].push_back(v.get<bool>() ? 1.0 : 0.0);
  } else if (v.is_number()) {
    out[name].push_back(v.get<double>());
  } else if (v.is_array()) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_number()) out[name + "[" + std::to_string(k) + "]"].push_back(v[k].get<double>());
    }
  }
}

bool close(double a, double b, double rel_tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= rel_tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

double sample_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InsufficientDataError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0,1]");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SummaryStats summarize(std::vector<double> values) {
  std::erase_if(values, [](double x) { return !std::isfinite(x); });
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.median = s.q25 = s.q75 = std::nan("");
    return s;
  }
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double x : values) total += x;
  s.mean = total / static_cast<double>(values.size());
  s.median = sample_quantile(values, 0.5);
  s.q25 = sample_quantile(values, 0.25);
  s.q75 = sample_quantile(values, 0.75);
  return s;
}

std::vector<SummaryRow> summarize_records(const std::vector<json>& records) {
  struct Group {
    std::size_t records = 0;
    std::size_t disconnected = 0;
    std::map<std::string, std::vector<double>> metrics;
  };
  std::map<std::pair<std::string, std::uint64_t>, Group> groups;
  for (const json& r : records) {
    Group& g = groups[{r.at("kind").get<std::string>(), r.at("t").get<std::uint64_t>()}];
    ++g.records;
    if (r.value("disconnected", false)) ++g.disconnected;
    for (const char* name : {"d_G", "d_L", "d_H"}) {
      if (r.contains(name)) collect(g.metrics, name, r.at(name));
    }
    if (r.contains("extras")) {
      for (const auto& [name, v] : r.at("extras").items()) collect(g.metrics, name, v);
    }
  }
  std::vector<SummaryRow> rows;
  for (auto& [key, g] : groups) {
    for (auto& [metric, values] : g.metrics) {
      SummaryRow row;
      row.kind = key.first;
      row.t = key.second;
      row.metric = metric;
      row.records = g.records;
      row.disconnected = g.disconnected;
      row.stats = summarize(std::move(values));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << kSchemaVersion << ',' << r.kind << ',' << r.t << ',' << r.metric << ',' << r.records << ','
        << r.disconnected << ',' << r.stats.count << ',' << fmt(r.stats.mean) << ','
        << fmt(r.stats.median) << ',' << fmt(r.stats.q25) << ',' << fmt(r.stats.q75) << ','
        << fmt(r.stats.iqr()) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("unexpected summary header", 1);
  std::vector<SummaryRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 12) throw ParseError("expected 12 columns", lineno);
    try {
      if (std::stoi(cells[0]) != kSchemaVersion) throw ParseError("unsupported schema_version", lineno);
      SummaryRow r;
      r.kind = cells[1];
      r.t = std::stoull(cells[2]);
      r.metric = cells[3];
      r.records = std::stoull(cells[4]);
      r.disconnected = std::stoull(cells[5]);
      r.stats.count = std::stoull(cells[6]);
      r.stats.mean = std::stod(cells[7]);
      r.stats.median = std::stod(cells[8]);
      r.stats.q25 = std::stod(cells[9]);
      r.stats.q75 = std::stod(cells[10]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError("malformed number", lineno);
    }
  }
  return rows;
}

std::vector<json> read_jsonl(std::istream& in) {
  std::vector<json> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::parse_error&) {
      throw ParseError("invalid JSON record", lineno);
    }
    if (records.back().value("schema_version", -1) != kSchemaVersion) {
      throw ParseError("record has an unsupported schema_version", lineno);
    }
  }
  return records;
}

AuditReport audit_summary(std::istream& jsonl, std::istream& csv, double rel_tol) {
  AuditReport report;
  const auto records = read_jsonl(jsonl);
  report.records = records.size();
  const auto expected = summarize_records(records);
  const auto actual = read_summary_csv(csv);
  std::map<std::tuple<std::string, std::uint64_t, std::string>, const SummaryRow*> by_key;
  for (const SummaryRow& r : actual) by_key[{r.kind, r.t, r.metric}] = &r;
  for (const SummaryRow& e : expected) {
    const std::string label = e.kind + " t=" + std::to_string(e.t) + " " + e.metric;
    auto it = by_key.find({e.kind, e.t, e.metric});
    if (it == by_key.end()) {
      report.mismatches.push_back(label + ": missing from summary");
      continue;
    }
    const SummaryRow& a = *it->second;
    by_key.erase(it);
    ++report.rows_checked;
    const bool same_counts =
        a.records == e.records && a.disconnected == e.disconnected && a.stats.count == e.stats.count;
    const bool both_empty = e.stats.count == 0 && a.stats.count == 0;
    const bool same_values = both_empty || (close(a.stats.mean, e.stats.mean, rel_tol) &&
                                            close(a.stats.median, e.stats.median, rel_tol) &&
                                            close(a.stats.q25, e.stats.q25, rel_tol) &&
                                            close(a.stats.q75, e.stats.q75, rel_tol));
    if (!same_counts || !same_values) report.mismatches.push_back(label + ": values differ");
  }
  for (const auto& [key, row] : by_key) {
    report.mismatches.push_back(std::get<0>(key) + " t=" + std::to_string(std::get<1>(key)) + " " +
                                std::get<2>(key) + ": not backed by any record");
  }
  return report;
}

}  // namespace fppa
