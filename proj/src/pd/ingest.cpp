#include "curator/pd/ingest.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "curator/core/error.hpp"
#include "curator/core/jsonl.hpp"
#include "curator/core/strings.hpp"
#include "curator/pd/normalize.hpp"

namespace curator {

void to_json(nlohmann::json& j, const IngestReport& v) {
  j = {{"rows_read", v.rows_read},
       {"accepted", v.accepted},
       {"rejected", v.rejected},
       {"reject_path", v.reject_path}};
}

namespace {

std::vector<std::string> parse_csv_row(std::string_view text, std::size_t& i) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  while (i < text.size()) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          i += 2;
        } else {
          quoted = false;
          ++i;
        }
      } else {
        cur += c;
        ++i;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
      ++i;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      ++i;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      break;
    } else {
      cur += c;
      ++i;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t i = 0;
  while (i < text.size()) {
    // Skip blank lines between records.
    if (text[i] == '\n' || text[i] == '\r') {
      ++i;
      continue;
    }
    rows.push_back(parse_csv_row(text, i));
  }
  return rows;
}

namespace {

// A parsed row as name -> value, from either a CSV header mapping or a
// JSONL object (scalars stringified).
using Row = std::map<std::string, std::string>;

struct RawRow {
  std::uint64_t number = 0;  // 1-based, includes the CSV header row
  Row fields;
  nlohmann::json raw;  // JSONL original, for field_confidence etc.
};

struct Reject {
  std::uint64_t row = 0;
  std::string reason;
};

bool looks_like_jsonl(const std::string& path, const std::string& content) {
  if (path.size() >= 6 && path.compare(path.size() - 6, 6, ".jsonl") == 0)
    return true;
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    return false;
  auto first = content.find_first_not_of(" \t\r\n");
  return first != std::string::npos && content[first] == '{';
}

std::string json_scalar_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return std::to_string(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  return v.dump();
}

// Loads rows from either encoding. `required` columns are enforced on the
// CSV header up front; JSONL rows missing one are per-row rejects.
std::vector<RawRow> load_rows(const std::string& path,
                              const std::vector<std::string>& required,
                              std::vector<Reject>& rejects,
                              std::uint64_t& rows_read) {
  std::string content = read_file(path);  // throws io-error
  std::vector<RawRow> rows;

  if (looks_like_jsonl(path, content)) {
    std::size_t start = 0;
    std::uint64_t line_no = 0;
    while (start < content.size()) {
      auto end = content.find('\n', start);
      if (end == std::string::npos) end = content.size();
      std::string_view line(content.data() + start, end - start);
      start = end + 1;
      ++line_no;
      if (trim(line).empty()) continue;
      ++rows_read;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        rejects.push_back({line_no, "unparseable JSON object"});
        continue;
      }
      RawRow row;
      row.number = line_no;
      row.raw = j;
      bool ok = true;
      for (const auto& col : required) {
        if (!j.contains(col)) {
          rejects.push_back({line_no, "missing field: " + col});
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_object() || it.value().is_array()) continue;
        row.fields[it.key()] = json_scalar_to_string(it.value());
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  auto table = parse_csv(content);
  if (table.empty()) {
    throw schema_error("missing required column: " + required.at(0));
  }
  std::vector<std::string> header;
  for (const auto& h : table[0]) header.push_back(to_lower_ascii(trim(h)));
  for (const auto& col : required) {
    if (std::find(header.begin(), header.end(), col) == header.end()) {
      throw schema_error("missing required column: " + col);
    }
  }
  for (std::size_t r = 1; r < table.size(); ++r) {
    ++rows_read;
    RawRow row;
    row.number = r + 1;
    if (table[r].size() > header.size()) {
      rejects.push_back({row.number, "more fields than header columns"});
      continue;
    }
    for (std::size_t c = 0; c < table[r].size(); ++c) {
      row.fields[header[c]] = table[r][c];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string field(const Row& row, const std::string& name) {
  auto it = row.find(name);
  return it == row.end() ? std::string() : it->second;
}

// Parses an integer field; empty -> nullopt; garbage -> error string.
std::optional<int> parse_int_field(const Row& row, const std::string& name,
                                   int lo, int hi, std::string& error) {
  std::string v(trim(field(row, name)));
  if (v.empty()) return std::nullopt;
  int out = 0;
  bool neg = false;
  std::size_t i = 0;
  if (v[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i == v.size()) {
    error = "invalid " + name;
    return std::nullopt;
  }
  for (; i < v.size(); ++i) {
    if (v[i] < '0' || v[i] > '9') {
      error = "invalid " + name;
      return std::nullopt;
    }
    out = out * 10 + (v[i] - '0');
    if (out > 1000000) break;
  }
  if (neg) out = -out;
  if (out < lo || out > hi) {
    error = name + " outside [" + std::to_string(lo) + ", " +
            std::to_string(hi) + "]";
    return std::nullopt;
  }
  return out;
}

std::optional<PubDate> parse_pub_date(const Row& row, std::string& error) {
  auto year = parse_int_field(row, "pub_year", 1800, 2100, error);
  if (!error.empty() || !year.has_value()) return std::nullopt;
  PubDate d;
  d.year = *year;
  d.month = parse_int_field(row, "pub_month", 1, 12, error);
  if (!error.empty()) return std::nullopt;
  d.day = parse_int_field(row, "pub_day", 1, 31, error);
  if (!error.empty()) return std::nullopt;
  return d;
}

void write_rejects(const std::string& path, const std::vector<Reject>& rejects) {
  std::string out;
  for (const auto& r : rejects) {
    out += jsonl_line({{"row", r.row}, {"reason", r.reason}});
  }
  write_file(path, out);
}

std::string default_reject_path(const std::string& path) {
  return path + ".rejects.jsonl";
}

}  // namespace

std::pair<std::vector<CopyrightRecord>, IngestReport> ingest_registrations(
    const std::string& path, const std::string& reject_path) {
  IngestReport report;
  report.reject_path =
      reject_path.empty() ? default_reject_path(path) : reject_path;
  std::vector<Reject> rejects;
  auto rows = load_rows(path, {"reg_id", "title", "author", "pub_year"},
                        rejects, report.rows_read);

  std::vector<CopyrightRecord> records;
  for (const auto& row : rows) {
    std::string error;
    CopyrightRecord rec;
    rec.reg_id = field(row.fields, "reg_id");
    rec.title = std::string(trim(field(row.fields, "title")));
    rec.author = field(row.fields, "author");
    if (rec.title.empty()) {
      rejects.push_back({row.number, "missing title"});
      continue;
    }
    rec.pub_date = parse_pub_date(row.fields, error);
    if (!error.empty()) {
      rejects.push_back({row.number, error});
      continue;
    }
    std::string src(trim(field(row.fields, "source")));
    if (!src.empty()) {
      try {
        rec.source = record_source_from_string(src);
      } catch (const Error&) {
        rejects.push_back({row.number, "invalid source"});
        continue;
      }
    }
    if (row.raw.is_object() && row.raw.contains("field_confidence") &&
        row.raw["field_confidence"].is_object()) {
      for (auto it = row.raw["field_confidence"].begin();
           it != row.raw["field_confidence"].end(); ++it) {
        if (it.value().is_number()) {
          rec.field_confidence[it.key()] = it.value().get<double>();
        }
      }
    }
    records.push_back(normalize_biblio(std::move(rec)));
  }

  report.accepted = records.size();
  report.rejected = rejects.size();
  if (!rejects.empty()) write_rejects(report.reject_path, rejects);
  return {std::move(records), report};
}

std::pair<std::vector<RenewalRecord>, IngestReport> ingest_renewals(
    const std::string& path, const std::string& reject_path) {
  IngestReport report;
  report.reject_path =
      reject_path.empty() ? default_reject_path(path) : reject_path;
  std::vector<Reject> rejects;
  auto rows = load_rows(path, {"renewal_id", "title", "author", "renewal_date"},
                        rejects, report.rows_read);

  std::vector<RenewalRecord> records;
  for (const auto& row : rows) {
    std::string error;
    RenewalRecord rec;
    rec.renewal_id = field(row.fields, "renewal_id");
    rec.original_reg_id = field(row.fields, "original_reg_id");
    rec.title = std::string(trim(field(row.fields, "title")));
    rec.author = field(row.fields, "author");
    rec.renewal_date = std::string(trim(field(row.fields, "renewal_date")));
    if (rec.renewal_date.empty()) {
      rejects.push_back({row.number, "missing renewal_date"});
      continue;
    }
    auto year = parse_int_field(row.fields, "pub_year", 1800, 2100, error);
    if (!error.empty()) {
      rejects.push_back({row.number, error});
      continue;
    }
    if (year.has_value()) rec.original_pub_date = PubDate{*year, {}, {}};
    records.push_back(normalize_biblio(std::move(rec)));
  }

  report.accepted = records.size();
  report.rejected = rejects.size();
  if (!rejects.empty()) write_rejects(report.reject_path, rejects);
  return {std::move(records), report};
}

}  // namespace curator
