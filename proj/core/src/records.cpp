#include "prefatt/records.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace prefatt {

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::prob_row: return "prob_row";
    case RecordKind::scaled_row: return "scaled_row";
    case RecordKind::empirical: return "empirical";
    case RecordKind::equivalence: return "equivalence";
    case RecordKind::stat: return "stat";
    case RecordKind::identity: return "identity";
  }
  throw std::invalid_argument("to_string: unknown RecordKind");
}

std::string format_approx(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

OutputRecord prob_row_record(unsigned m, unsigned n, unsigned k, const Rational& p) {
  OutputRecord r;
  r.kind = RecordKind::prob_row;
  r.m = m;
  r.n = n;
  r.k = k;
  r.exact = to_string(p);
  r.approx = format_approx(to_double(p));
  return r;
}

OutputRecord scaled_row_record(unsigned n, unsigned k, const Rational& a) {
  OutputRecord r;
  r.kind = RecordKind::scaled_row;
  r.n = n;
  r.k = k;
  r.exact = to_string(a);
  r.approx = format_approx(to_double(a));
  return r;
}

nlohmann::json to_json(const OutputRecord& record) {
  nlohmann::json j;
  j["kind"] = to_string(record.kind);
  if (record.m) j["m"] = *record.m;
  if (record.n) j["n"] = *record.n;
  if (record.k) j["k"] = *record.k;
  if (record.exact) j["exact"] = *record.exact;
  if (record.approx) j["approx"] = *record.approx;
  for (const auto& [key, value] : record.extra.items()) j[key] = value;
  return j;
}

nlohmann::json make_document(std::string_view command, nlohmann::json params,
                             const std::vector<OutputRecord>& records) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["params"] = std::move(params);
  auto results = nlohmann::json::array();
  for (const auto& record : records) results.push_back(to_json(record));
  doc["results"] = std::move(results);
  return doc;
}

std::string csv_row(const OutputRecord& record) {
  if (record.kind != RecordKind::prob_row && record.kind != RecordKind::scaled_row) {
    throw std::invalid_argument("csv_row: only table rows have a CSV form");
  }
  auto cell = [](const std::optional<unsigned>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  return cell(record.m) + "," + cell(record.n) + "," + cell(record.k) + "," +
         record.exact.value_or("") + "," + record.approx.value_or("");
}

std::string to_csv(const std::vector<OutputRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& record : records) {
    out += csv_row(record);
    out += '\n';
  }
  return out;
}

std::string to_json_text(const nlohmann::json& document) {
  return document.dump(2) + "\n";
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / (path.filename().string() + ".tmp");

  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }

  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() +
                             ": " + ec.message());
  }
}

}  // namespace prefatt
