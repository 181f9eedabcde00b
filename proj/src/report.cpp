#include "sumsetlab/report.hpp"

#include <sstream>

#include <json.hpp>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

using json = nlohmann::ordered_json;

std::string csv_escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

const char* schedule_name(StageSchedule s) {
  return s == StageSchedule::three_stage ? "three_stage" : "doubling";
}

StageSchedule schedule_from_name(const std::string& s) {
  if (s == "three_stage") return StageSchedule::three_stage;
  if (s == "doubling") return StageSchedule::doubling;
  throw parse_error("unknown stage schedule '" + s + "'");
}

json certificate_json(const GrowthCertificate& cert) {
  json steps = json::array();
  for (const GrowthStep& s : cert.steps)
    steps.push_back({s.element, s.lambda, s.span_after});
  return json{{"v", "v1"},
              {"kind", "growth_certificate"},
              {"group", format_group(cert.group)},
              {"ground_set", cert.ground_set.to_hex()},
              {"target", cert.target},
              {"schedule", schedule_name(cert.schedule)},
              {"steps", std::move(steps)},
              {"stage_marks", cert.stage_marks},
              {"final_span", cert.final_span},
              {"reached_target", cert.reached_target},
              {"stalled", cert.stalled}};
}

json row_json(const search::SearchRow& row) {
  return json{{"group", row.group},
              {"witness", row.witness},
              {"card", row.card},
              {"sigma_size", row.sigma_size},
              {"stab_order", row.stab_order},
              {"ratio_num", row.ratio_num},
              {"ratio_den", row.ratio_den},
              {"bound", row.bound},
              {"satisfied", row.satisfied}};
}

search::SearchRow row_from_json(const json& j) {
  search::SearchRow row;
  row.group = j.at("group").get<std::string>();
  row.witness = j.at("witness").get<std::vector<std::uint64_t>>();
  row.card = j.at("card").get<std::uint64_t>();
  row.sigma_size = j.at("sigma_size").get<std::uint64_t>();
  row.stab_order = j.at("stab_order").get<std::uint64_t>();
  row.ratio_num = j.at("ratio_num").get<std::uint64_t>();
  row.ratio_den = j.at("ratio_den").get<std::uint64_t>();
  row.bound = j.at("bound").get<std::string>();
  row.satisfied = j.at("satisfied").get<bool>();
  return row;
}

std::string join_indices(const std::vector<std::uint64_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  return out.str();
}

std::string row_csv(const search::SearchRow& row) {
  std::ostringstream out;
  const double ratio =
      row.ratio_den ? double(row.ratio_num) / double(row.ratio_den) : 0.0;
  out << csv_escape(row.group) << ',' << row.card << ',' << row.sigma_size
      << ',' << ratio << ',' << row.ratio_num << ',' << row.ratio_den << ','
      << row.stab_order << ',' << csv_escape(row.bound) << ','
      << (row.satisfied ? "true" : "false") << ','
      << csv_escape(join_indices(row.witness));
  return out.str();
}

void expect_schema(const json& j, const char* kind) {
  if (!j.is_object() || j.value("v", "") != "v1")
    throw parse_error("expected a v1 report document");
  if (j.value("kind", "") != kind)
    throw parse_error(std::string("expected kind '") + kind + "'");
}

}  // namespace

std::string emit_report(const GrowthCertificate& cert, ReportFormat format) {
  if (format == ReportFormat::json) return certificate_json(cert).dump(2);
  std::ostringstream out;
  out << "step,element,lambda,span_after\n";
  for (std::size_t i = 0; i < cert.steps.size(); ++i)
    out << (i + 1) << ',' << cert.steps[i].element << ','
        << cert.steps[i].lambda << ',' << cert.steps[i].span_after << '\n';
  return out.str();
}

std::string emit_report(const search::SearchReport& report,
                        ReportFormat format) {
  if (format == ReportFormat::json) {
    json rows = json::array();
    for (const search::SearchRow& row : report.rows)
      rows.push_back(row_json(row));
    json doc{{"v", "v1"},
             {"kind", "search_report"},
             {"mode", report.mode},
             {"group", report.group},
             {"universe", report.universe},
             {"sampled", report.sampled},
             {"seed", report.seed},
             {"budget", report.budget},
             {"wall_ms", report.wall_ms},
             {"rows", std::move(rows)}};
    if (report.best) doc["best"] = row_json(*report.best);
    return doc.dump(2);
  }
  std::ostringstream out;
  out << "group,card,sigma_size,ratio,ratio_num,ratio_den,stab_order,bound,"
         "satisfied,witness\n";
  for (const search::SearchRow& row : report.rows) out << row_csv(row) << '\n';
  return out.str();
}

std::string emit_report(const std::vector<StageAuditRow>& rows,
                        ReportFormat format) {
  if (format == ReportFormat::json) {
    json arr = json::array();
    for (const StageAuditRow& row : rows)
      arr.push_back({{"stage", row.stage},
                     {"steps_in_scope", row.steps_in_scope},
                     {"steps_conforming", row.steps_conforming},
                     {"all_held", row.all_held},
                     {"note", row.note}});
    return json{{"v", "v1"}, {"kind", "stage_audit"}, {"rows", std::move(arr)}}
        .dump(2);
  }
  std::ostringstream out;
  out << "stage,steps_in_scope,steps_conforming,all_held,note\n";
  for (const StageAuditRow& row : rows)
    out << row.stage << ',' << row.steps_in_scope << ','
        << row.steps_conforming << ',' << (row.all_held ? "true" : "false")
        << ',' << csv_escape(row.note) << '\n';
  return out.str();
}

std::string emit_report(const DecompositionReport& report,
                        ReportFormat format) {
  if (format == ReportFormat::json) {
    json levels = json::array();
    for (const auto& level : report.levels) levels.push_back(level);
    json punctured = json::array();
    for (const auto& level : report.punctured_levels)
      punctured.push_back(level);
    json doc{{"v", "v1"},
             {"kind", "decomposition"},
             {"subgroup_order", report.subgroup.order()},
             {"set_size", report.set_size},
             {"set_size_outside_h", report.set_size_outside_h},
             {"levels", std::move(levels)},
             {"punctured_levels", std::move(punctured)},
             {"sigma_size", report.sigma_size},
             {"quotient_sumset", report.quotient_sumset.to_hex()},
             {"quotient_sumset_size", report.quotient_sumset_size},
             {"h_is_span_stabilizer", report.h_is_span_stabilizer}};
    if (report.factorization_ok)
      doc["factorization_ok"] = *report.factorization_ok;
    return doc.dump(2);
  }
  std::ostringstream out;
  out << "level,cosets,punctured_cosets\n";
  for (std::size_t i = 0; i < report.levels.size(); ++i)
    out << (i + 1) << ',' << csv_escape(join_indices(std::vector<std::uint64_t>(
                                  report.levels[i].begin(),
                                  report.levels[i].end())))
        << ','
        << csv_escape(join_indices(std::vector<std::uint64_t>(
               report.punctured_levels[i].begin(),
               report.punctured_levels[i].end())))
        << '\n';
  return out.str();
}

std::string emit_report(const OlsonResult& result, ReportFormat format) {
  if (format == ReportFormat::json) {
    json doc{{"v", "v1"},
             {"kind", "olson_result"},
             {"covers", result.covers},
             {"certified_by_halves", result.certified_by_halves}};
    if (result.missing_element) doc["missing"] = *result.missing_element;
    doc["half1"] = certificate_json(result.half1);
    doc["half2"] = certificate_json(result.half2);
    return doc.dump(2);
  }
  std::ostringstream out;
  out << "covers,certified_by_halves,missing\n";
  out << (result.covers ? "true" : "false") << ','
      << (result.certified_by_halves ? "true" : "false") << ',';
  if (result.missing_element) out << *result.missing_element;
  out << '\n';
  return out.str();
}

GrowthCertificate parse_certificate(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad certificate JSON: ") + e.what());
  }
  try {
    expect_schema(j, "growth_certificate");
    GrowthCertificate cert;
    cert.group = parse_group(j.at("group").get<std::string>());
    cert.ground_set = ElementSet::from_hex(
        cert.group.order, j.at("ground_set").get<std::string>());
    cert.target = j.at("target").get<std::uint64_t>();
    cert.schedule = schedule_from_name(j.at("schedule").get<std::string>());
    for (const json& s : j.at("steps")) {
      if (!s.is_array() || s.size() != 3)
        throw parse_error("bad certificate step");
      cert.steps.push_back(GrowthStep{s[0].get<std::uint64_t>(),
                                      s[1].get<std::uint64_t>(),
                                      s[2].get<std::uint64_t>()});
    }
    cert.stage_marks = j.at("stage_marks").get<std::vector<std::int64_t>>();
    cert.final_span = j.at("final_span").get<std::uint64_t>();
    cert.reached_target = j.at("reached_target").get<bool>();
    cert.stalled = j.at("stalled").get<bool>();
    return cert;
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad certificate JSON: ") + e.what());
  }
}

search::SearchReport parse_search_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad report JSON: ") + e.what());
  }
  try {
    expect_schema(j, "search_report");
    search::SearchReport report;
    report.mode = j.at("mode").get<std::string>();
    report.group = j.at("group").get<std::string>();
    report.universe = j.at("universe").get<std::uint64_t>();
    report.sampled = j.at("sampled").get<bool>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.budget = j.at("budget").get<std::uint64_t>();
    report.wall_ms = j.at("wall_ms").get<double>();
    for (const json& row : j.at("rows"))
      report.rows.push_back(row_from_json(row));
    if (j.contains("best")) report.best = row_from_json(j.at("best"));
    return report;
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad report JSON: ") + e.what());
  }
}

}  // namespace sumsetlab
