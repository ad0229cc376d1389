#include "fockmz/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fockmz {

namespace {

std::string csv_cell(const ReportValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

nlohmann::ordered_json json_cell(const ReportValue& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

} // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") {
    return ReportFormat::csv;
  }
  if (text == "json") {
    return ReportFormat::json;
  }
  throw std::invalid_argument("unknown report format '" + std::string(text) + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string render_report(const ReportTable& table, ReportFormat format, const ReportMeta* meta,
                          bool allow_empty) {
  if (table.rows.empty() && !allow_empty) {
    throw std::invalid_argument("report has no rows");
  }
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("report row width does not match header");
    }
  }

  if (format == ReportFormat::csv) {
    std::ostringstream os;
    if (meta != nullptr) {
      os << "# fockmz " << meta->version << " config " << meta->config_json << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      os << (c ? "," : "") << table.columns[c];
    }
    os << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        os << (c ? "," : "") << csv_cell(row[c]);
      }
      os << "\n";
    }
    return os.str();
  }

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      obj[table.columns[c]] = json_cell(row[c]);
    }
    rows.push_back(std::move(obj));
  }
  if (meta == nullptr) {
    return rows.dump() + "\n";
  }
  nlohmann::ordered_json doc;
  doc["meta"] = {{"library", "fockmz"},
                 {"version", meta->version},
                 {"config", meta->config_json.empty() ? nlohmann::ordered_json::object()
                                                      : nlohmann::ordered_json::parse(meta->config_json)}};
  doc["rows"] = std::move(rows);
  return doc.dump() + "\n";
}

void write_report(const ReportTable& table, ReportFormat format, const std::filesystem::path& path,
                  const ReportMeta* meta, bool allow_empty) {
  const std::string text = render_report(table, format, meta, allow_empty);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ReportError("cannot open report path '" + path.string() + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw ReportError("failed writing report to '" + path.string() + "'");
  }
}

ReportTable frame_table(std::span<const FrameReport> rows) {
  ReportTable t{{"n", "count", "A", "B", "cond"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::int64_t{r.n}, static_cast<std::int64_t>(r.count), r.a, r.b, r.cond});
  }
  return t;
}

ReportTable interp_table(std::span<const InterpReport> rows) {
  ReportTable t{{"n", "count", "lmin", "lmax"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::int64_t{r.n}, static_cast<std::int64_t>(r.count), r.lambda_min, r.lambda_max});
  }
  return t;
}

ReportTable crosscheck_table(std::span<const CrosscheckReport> rows) {
  ReportTable t{{"n", "count", "max_entry_gap", "eig_gap", "lambda_min", "lambda_max"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::int64_t{r.n}, static_cast<std::int64_t>(r.count), r.max_entry_gap, r.eig_gap,
                      r.lambda_min, r.lambda_max});
  }
  return t;
}

ReportTable cardinality_table(std::span<const CardinalityRow> rows) {
  ReportTable t{{"n", "count", "ratio"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::int64_t{r.n}, static_cast<std::int64_t>(r.count), r.ratio});
  }
  return t;
}

} // namespace fockmz
