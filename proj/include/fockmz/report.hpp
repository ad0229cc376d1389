#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fockmz/gabor.hpp"
#include "fockmz/pointsets.hpp"
#include "fockmz/spectral.hpp"

namespace fockmz {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(std::string_view text);

using ReportValue = std::variant<std::int64_t, double, std::string, bool>;

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<ReportValue>> rows;
};

/// Written ahead of the rows: a "# ..." comment in CSV, an envelope
/// {"meta":..., "rows":[...]} in JSON.
struct ReportMeta {
  std::string version = kLibraryVersion;
  std::string config_json;  ///< resolved configuration, compact JSON
};

class ReportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

/// Renders rows. Numbers use shortest round-trip decimals; output ends with
/// a newline. Throws std::invalid_argument on empty rows unless allow_empty.
std::string render_report(const ReportTable& table, ReportFormat format,
                          const ReportMeta* meta = nullptr, bool allow_empty = false);

/// render_report to a file; throws ReportError when the path is unwritable.
void write_report(const ReportTable& table, ReportFormat format, const std::filesystem::path& path,
                  const ReportMeta* meta = nullptr, bool allow_empty = false);

ReportTable frame_table(std::span<const FrameReport> rows);        // n,count,A,B,cond
ReportTable interp_table(std::span<const InterpReport> rows);      // n,count,lmin,lmax
ReportTable crosscheck_table(std::span<const CrosscheckReport> rows);
ReportTable cardinality_table(std::span<const CardinalityRow> rows);

} // namespace fockmz
