#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quillen/error.hpp"
#include "quillen/homology/complex.hpp"

namespace quillen {

inline constexpr int kReportSchema = 1;

enum class QcVerdict { OpNontrivial, NonzeroHomology, Violation };

inline const char* to_string(QcVerdict v) {
  switch (v) {
    case QcVerdict::OpNontrivial: return "op-nontrivial";
    case QcVerdict::NonzeroHomology: return "nonzero-homology";
    case QcVerdict::Violation: return "VIOLATION";
  }
  return "?";
}

inline QcVerdict qc_verdict_from_string(const std::string& s) {
  if (s == "op-nontrivial") return QcVerdict::OpNontrivial;
  if (s == "nonzero-homology") return QcVerdict::NonzeroHomology;
  if (s == "VIOLATION") return QcVerdict::Violation;
  throw ParseError("unknown qc_verdict '" + s + "'");
}

struct CheckOutcome {
  std::string name;
  bool ok = true;
  std::string detail;
  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;
};

struct AnalysisRecord {
  std::string group;
  std::uint32_t prime = 0;
  std::uint64_t order = 0;
  std::uint64_t o_p = 0;        // |O_p(G)|
  std::uint64_t o_p_prime = 0;  // |O_p'(G)|
  std::uint32_t p_rank = 0;
  std::uint64_t components = 0;
  std::optional<std::vector<DegreeHomology>> homology_z;  // absent when only Q was asked for and sufficed
  std::vector<DegreeHomology> homology_q;
  QcVerdict qc_verdict = QcVerdict::NonzeroHomology;
  std::vector<CheckOutcome> checks;

  bool all_checks_ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  const CheckOutcome* find_check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline bool operator==(const DegreeHomology& a, const DegreeHomology& b) {
  return a.degree == b.degree && a.betti == b.betti && a.torsion == b.torsion;
}

inline bool operator==(const AnalysisRecord& a, const AnalysisRecord& b) {
  return a.group == b.group && a.prime == b.prime && a.order == b.order && a.o_p == b.o_p &&
         a.o_p_prime == b.o_p_prime && a.p_rank == b.p_rank && a.components == b.components &&
         a.homology_z == b.homology_z && a.homology_q == b.homology_q && a.qc_verdict == b.qc_verdict &&
         a.checks == b.checks;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline nlohmann::ordered_json degrees_to_json(const std::vector<DegreeHomology>& ds, bool with_torsion) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& h : ds) {
    nlohmann::ordered_json e{{"degree", h.degree}, {"betti", h.betti}};
    if (with_torsion) {
      auto t = nlohmann::ordered_json::array();
      for (const auto& v : h.torsion) t.push_back(big_to_json(v));
      e["torsion"] = t;
    }
    arr.push_back(e);
  }
  return arr;
}

inline BigInt big_from_json(const nlohmann::ordered_json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw ParseError("torsion coefficient must be an integer or a decimal string");
}

inline std::vector<DegreeHomology> degrees_from_json(const nlohmann::ordered_json& arr) {
  std::vector<DegreeHomology> out;
  for (const auto& e : arr) {
    DegreeHomology h;
    h.degree = e.at("degree").get<int>();
    h.betti = e.at("betti").get<std::uint64_t>();
    if (e.contains("torsion"))
      for (const auto& t : e.at("torsion")) h.torsion.push_back(big_from_json(t));
    out.push_back(std::move(h));
  }
  return out;
}

inline nlohmann::ordered_json checks_to_json(const std::vector<CheckOutcome>& cs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : cs) arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return arr;
}

inline std::vector<CheckOutcome> checks_from_json(const nlohmann::ordered_json& arr) {
  std::vector<CheckOutcome> out;
  for (const auto& e : arr)
    out.push_back({e.at("name").get<std::string>(), e.at("ok").get<bool>(), e.at("detail").get<std::string>()});
  return out;
}

}  // namespace detail

inline nlohmann::ordered_json record_to_json(const AnalysisRecord& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["group"] = r.group;
  j["prime"] = r.prime;
  j["order"] = r.order;
  j["o_p"] = r.o_p;
  j["o_p_prime"] = r.o_p_prime;
  j["p_rank"] = r.p_rank;
  j["components"] = r.components;
  j["homology_z"] = r.homology_z ? detail::degrees_to_json(*r.homology_z, true) : nlohmann::ordered_json(nullptr);
  j["homology_q"] = detail::degrees_to_json(r.homology_q, false);
  j["qc_verdict"] = to_string(r.qc_verdict);
  j["checks"] = detail::checks_to_json(r.checks);
  return j;
}

inline AnalysisRecord record_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchema) throw ParseError("unsupported schema");
    AnalysisRecord r;
    r.group = j.at("group").get<std::string>();
    r.prime = j.at("prime").get<std::uint32_t>();
    r.order = j.at("order").get<std::uint64_t>();
    r.o_p = j.at("o_p").get<std::uint64_t>();
    r.o_p_prime = j.at("o_p_prime").get<std::uint64_t>();
    r.p_rank = j.at("p_rank").get<std::uint32_t>();
    r.components = j.at("components").get<std::uint64_t>();
    if (!j.at("homology_z").is_null()) r.homology_z = detail::degrees_from_json(j.at("homology_z"));
    r.homology_q = detail::degrees_from_json(j.at("homology_q"));
    r.qc_verdict = qc_verdict_from_string(j.at("qc_verdict").get<std::string>());
    r.checks = detail::checks_from_json(j.at("checks"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV (RFC 4180). List-valued cells hold compact JSON.

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"schema",     "group",      "prime",      "order",
                                                "o_p",        "o_p_prime",  "p_rank",     "components",
                                                "homology_z", "homology_q", "qc_verdict", "checks"};
  return cols;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Splits CSV text into rows of fields; quoted fields may hold commas,
/// doubled quotes and line breaks.
inline std::vector<std::vector<std::string>> csv_parse(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c != '"') field += c;
      else if (i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else quoted = false;
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw ParseError("quote inside an unquoted CSV field");
      quoted = any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string records_to_csv(const std::vector<AnalysisRecord>& rs) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\r\n";
  for (const auto& r : rs) {
    const auto j = record_to_json(r);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& v = j.at(cols[i]);
      std::string cell;
      if (v.is_string()) cell = v.get<std::string>();
      else if (!v.is_null()) cell = v.dump();
      out << (i ? "," : "") << csv_quote(cell);
    }
    out << "\r\n";
  }
  return out.str();
}

inline std::vector<AnalysisRecord> records_from_csv(const std::string& text) {
  auto rows = csv_parse(text);
  if (rows.empty() || rows.front() != csv_columns()) throw ParseError("CSV header does not match schema 1");
  const auto& cols = csv_columns();
  std::vector<AnalysisRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != cols.size()) throw ParseError("CSV row " + std::to_string(r) + " has wrong width");
    nlohmann::ordered_json j;
    try {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const std::string& cell = rows[r][i];
        if (cols[i] == "group" || cols[i] == "qc_verdict") j[cols[i]] = cell;
        else if (cell.empty()) j[cols[i]] = nullptr;
        else j[cols[i]] = nlohmann::ordered_json::parse(cell);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("CSV cell: ") + e.what());
    }
    out.push_back(record_from_json(j));
  }
  return out;
}

}  // namespace quillen
