#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sumsetlab/procedures.hpp"
#include "sumsetlab/search.hpp"

namespace sumsetlab {

enum class ReportFormat { csv, json };

// JSON documents carry a schema version field "v": "v1" and keep stable key
// order. CSV output is RFC 4180: header row first, quoting only where a
// field contains a comma, quote or newline.

std::string emit_report(const GrowthCertificate& cert, ReportFormat format);
std::string emit_report(const search::SearchReport& report,
                        ReportFormat format);
std::string emit_report(const std::vector<StageAuditRow>& rows,
                        ReportFormat format);
std::string emit_report(const DecompositionReport& report,
                        ReportFormat format);
std::string emit_report(const OlsonResult& result, ReportFormat format);

GrowthCertificate parse_certificate(std::string_view text);
search::SearchReport parse_search_report(std::string_view text);

std::string csv_escape(std::string_view field);

}  // namespace sumsetlab
