// Output plumbing shared by the CLI and tests: typed result records, the
// stable CSV/JSON envelopes, and all-or-nothing file writes.
//
// Serialization contract:
//   CSV    header "m,n,k,exact,approx", UTF-8, LF line endings.
//   JSON   one top-level object per run,
//          {schema_version: "1", command, params, results: [record...]}.
// Exact rationals travel as "num/den" decimal strings so nothing downstream
// ever has to trust a float. The approx column is display-only, printed with
// 12 significant digits.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prefatt/exact.hpp"

namespace prefatt {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kCsvHeader = "m,n,k,exact,approx";

enum class RecordKind { prob_row, scaled_row, empirical, equivalence, stat, identity };

std::string_view to_string(RecordKind kind);

/// One row of machine-readable output. Coordinates that do not apply to a
/// given kind stay empty and serialize as JSON null / empty CSV cells.
/// Kind-specific payload (counts, statistics, mismatch lists) rides in
/// `extra` and is merged into the record's JSON object on serialization.
struct OutputRecord {
  RecordKind kind = RecordKind::prob_row;
  std::optional<unsigned> m;
  std::optional<unsigned> n;
  std::optional<unsigned> k;
  std::optional<std::string> exact;  // "num/den", lossless
  std::optional<std::string> approx; // 12 significant digits, display only
  nlohmann::json extra = nlohmann::json::object();
};

/// Decimal display form used everywhere a float is printed: %.12g.
std::string format_approx(double value);

OutputRecord prob_row_record(unsigned m, unsigned n, unsigned k, const Rational& p);
OutputRecord scaled_row_record(unsigned n, unsigned k, const Rational& a);

nlohmann::json to_json(const OutputRecord& record);

/// Assembles the versioned top-level document.
nlohmann::json make_document(std::string_view command, nlohmann::json params,
                             const std::vector<OutputRecord>& records);

/// CSV data row for a table record (prob_row or scaled_row); no trailing
/// newline. Throws std::invalid_argument for kinds that have no CSV form.
std::string csv_row(const OutputRecord& record);

/// Full CSV document: header plus one line per record, LF endings.
std::string to_csv(const std::vector<OutputRecord>& records);

/// Serializes the document with a stable layout (2-space indent, sorted
/// object keys as per nlohmann defaults) and a trailing newline, so equal
/// documents are byte-identical.
std::string to_json_text(const nlohmann::json& document);

/// Writes content to path atomically: a sibling temp file is written,
/// flushed, then renamed over the target. On any failure the temp file is
/// removed and std::runtime_error is thrown; the target is never left
/// half-written.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace prefatt
