#include "sumsetlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/procedures.hpp"
#include "sumsetlab/report.hpp"
#include "sumsetlab/search.hpp"
#include "sumsetlab/set_io.hpp"
#include "sumsetlab/setops.hpp"

namespace sumsetlab::cli {

namespace {

using bounds::bigint;
using bounds::bigrat;

struct CommonOpts {
  std::string output;
  std::string format = "csv";
  std::uint64_t max_order = 0;  // resolved default applied in order_cap()

  std::uint64_t order_cap() const {
    if (max_order) return max_order;
    if (const char* env = std::getenv("SUMSETLAB_MAX_ORDER")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return v;
      throw parse_error("bad SUMSETLAB_MAX_ORDER value");
    }
    return kDefaultOrderCap;
  }

  ReportFormat report_format() const {
    return format == "json" ? ReportFormat::json : ReportFormat::csv;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("-o,--output", opts.output, "write the report to this path");
  cmd->add_option("--format", opts.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--max-order", opts.max_order,
                  "group order cap (also SUMSETLAB_MAX_ORDER)");
}

void write_out(const CommonOpts& opts, std::ostream& out,
               const std::string& text) {
  if (opts.output.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream file(opts.output);
  if (!file) throw parse_error("cannot write to '" + opts.output + "'");
  file << text;
}

SetFile load_set(const CommonOpts& opts, const std::string& path,
                 const std::string& group_flag) {
  SetFile file = read_set_file(path, opts.order_cap());
  if (!group_flag.empty()) {
    const GroupSpec g = parse_group(group_flag, opts.order_cap());
    if (!(g == file.group))
      throw parse_error("group flag " + group_flag +
                        " does not match set file header " +
                        format_group(file.group));
  }
  return file;
}

std::string rat_str(const bigrat& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

// --- subcommand bodies ------------------------------------------------------

int cmd_sigma(const CommonOpts& opts, const std::string& file,
              const std::string& group_flag, std::ostream& out) {
  SetFile in = load_set(opts, file, group_flag);
  const ElementSet span = sigma(in.group, in.set);
  if (opts.report_format() == ReportFormat::json) {
    std::ostringstream doc;
    doc << "{\n  \"v\": \"v1\",\n  \"kind\": \"set\",\n  \"group\": \""
        << format_group(in.group) << "\",\n  \"size\": " << span.count()
        << ",\n  \"hex\": \"" << span.to_hex() << "\"\n}";
    write_out(opts, out, doc.str());
  } else {
    write_out(opts, out,
              std::to_string(span.count()) + "\n" + span.to_hex() + "\n");
  }
  return 0;
}

int cmd_stab(const CommonOpts& opts, const std::string& file,
             const std::string& group_flag, std::ostream& out) {
  SetFile in = load_set(opts, file, group_flag);
  const Subgroup stab = stabilizer(in.group, in.set);
  std::ostringstream text;
  text << stab.order() << '\n';
  stab.carrier.for_each([&](std::uint64_t i) {
    text << format_element(element_from_index(in.group, i)) << '\n';
  });
  write_out(opts, out, text.str());
  return 0;
}

int cmd_lambda_rho(const CommonOpts& opts, const std::string& file,
                   const std::string& group_flag, const std::string& literal,
                   bool want_lambda, std::ostream& out) {
  SetFile in = load_set(opts, file, group_flag);
  const Element c = parse_element(in.group, literal);
  const std::uint64_t value = want_lambda ? lambda(in.group, in.set, c)
                                          : rho(in.group, in.set, c);
  write_out(opts, out, std::to_string(value) + "\n");
  return 0;
}

int cmd_sumset(const CommonOpts& opts, const std::string& file,
               const std::string& other, std::uint64_t repeat,
               std::ostream& out) {
  SetFile in = load_set(opts, file, "");
  ElementSet result(in.group.order);
  if (!other.empty()) {
    SetFile rhs = load_set(opts, other, "");
    if (!(rhs.group == in.group))
      throw parse_error("sumset operands live in different groups");
    result = sumset(in.group, in.set, rhs.set);
  } else {
    result = iterated_sumset(in.group, in.set, repeat);
  }
  write_out(opts, out,
            std::to_string(result.count()) + "\n" + result.to_hex() + "\n");
  return 0;
}

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw parse_error("bad k range '" + text + "' (want e.g. 9..12)");
  }
}

int cmd_bounds(const CommonOpts& opts, const std::string& k_range,
               const std::vector<std::string>& eval_at, std::ostream& out) {
  std::ostringstream text;
  if (!k_range.empty()) {
    const auto [lo, hi] = parse_k_range(k_range);
    if (lo < bounds::kMinIndex || hi < lo)
      throw parse_error("k range must lie within 9..");
    text << "k,n_k,alpha_k\n";
    for (int k = lo; k <= hi; ++k)
      text << k << ',' << bounds::n_seq(k).str() << ','
           << rat_str(bounds::alpha(k)) << '\n';
  }
  if (!eval_at.empty()) {
    text << "n,k,f,f_prime,f2,f3,f4,n0\n";
    for (const std::string& s : eval_at) {
      const bigint n(s);
      text << n.str() << ',' << bounds::k_of_n(n) << ','
           << rat_str(bounds::f(n)) << ',' << rat_str(bounds::f_prime(n))
           << ',' << (n >= 4 ? rat_str(bounds::f2(n)) : std::string("-"))
           << ',' << bounds::f3(n).to_double() << ','
           << bounds::f4(n).to_double() << ','
           << (bounds::n0_check(n) ? "true" : "false") << '\n';
    }
  }
  if (k_range.empty() && eval_at.empty())
    throw parse_error("bounds: nothing to do (use -k and/or --eval)");
  write_out(opts, out, text.str());
  return 0;
}

int cmd_kneser(const CommonOpts& opts, const std::vector<std::string>& files,
               std::ostream& out, std::ostream& err) {
  std::vector<SetFile> inputs;
  for (const std::string& f : files) inputs.push_back(load_set(opts, f, ""));
  for (std::size_t i = 1; i < inputs.size(); ++i)
    if (!(inputs[i].group == inputs[0].group))
      throw parse_error("kneser operands live in different groups");
  std::vector<ElementSet> sets;
  for (SetFile& f : inputs) sets.push_back(std::move(f.set));
  const bounds::KneserResult result =
      bounds::kneser_check(inputs[0].group, sets);
  std::ostringstream text;
  text << "holds,lhs,rhs,stab_order\n"
       << (result.holds ? "true" : "false") << ',' << result.lhs << ','
       << result.rhs << ',' << result.stab.order() << '\n';
  write_out(opts, out, text.str());
  if (!result.holds) {
    err << "verification failed: Kneser inequality violated\n";
    return 1;
  }
  return 0;
}

void write_audit(const std::string& path,
                 const std::vector<GrowthCertificate*>& certs,
                 std::uint64_t n) {
  std::vector<StageAuditRow> rows;
  for (const GrowthCertificate* cert : certs) {
    const auto part = stage_bound_audit(*cert, n);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::ofstream file(path);
  if (!file) throw parse_error("cannot write to '" + path + "'");
  file << emit_report(rows, ReportFormat::csv);
}

int cmd_grow(const CommonOpts& opts, const std::string& file,
             std::uint64_t target, const std::string& schedule,
             const std::string& audit_path, std::ostream& out,
             std::ostream& err) {
  SetFile in = load_set(opts, file, "");
  const StageSchedule sched = schedule == "doubling"
                                  ? StageSchedule::doubling
                                  : StageSchedule::three_stage;
  if (target == 0) target = in.group.order / 2 + 1;
  GrowthCertificate cert = greedy_grow(in.group, in.set, target, sched);
  try {
    verify_certificate(cert);
  } catch (const verification_error& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  }
  write_out(opts, out, emit_report(cert, opts.report_format()));
  if (!audit_path.empty()) write_audit(audit_path, {&cert}, in.group.order);
  return 0;
}

int cmd_olson(const CommonOpts& opts, std::uint64_t n, const std::string& file,
              const std::string& schedule, const std::string& audit_path,
              std::ostream& out, std::ostream& err) {
  SetFile in = load_set(opts, file, "");
  if (in.group.factors.size() != 1 || in.group.order != n)
    throw parse_error("set file group must be Z" + std::to_string(n));
  const StageSchedule sched = schedule == "doubling"
                                  ? StageSchedule::doubling
                                  : StageSchedule::three_stage;
  OlsonResult result = olson_pipeline(in.group, in.set, sched);
  try {
    verify_certificate(result.half1);
    verify_certificate(result.half2);
  } catch (const verification_error& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  }
  std::ostringstream text;
  text << "covers=" << (result.covers ? "true" : "false") << '\n';
  if (result.missing_element) text << "missing=" << *result.missing_element << '\n';
  out << text.str();
  if (!opts.output.empty())
    write_out(opts, out, emit_report(result, opts.report_format()));
  if (!audit_path.empty())
    write_audit(audit_path, {&result.half1, &result.half2}, n);
  return 0;
}

int cmd_decompose(const CommonOpts& opts, const std::string& file,
                  const std::string& subgroup_gens, bool use_stab,
                  std::ostream& out, std::ostream& err) {
  SetFile in = load_set(opts, file, "");
  Subgroup h = trivial_subgroup(in.group);
  if (use_stab) {
    h = stabilizer(in.group, sigma(in.group, in.set));
  } else {
    ElementSet gens(in.group.order);
    std::stringstream ss{subgroup_gens};
    std::string token;
    while (std::getline(ss, token, ';'))
      gens.insert(parse_element(in.group, token).index);
    h = generated_subgroup(in.group, gens);
  }
  const DecompositionReport report =
      multiplicity_decomposition(in.group, in.set, h);
  write_out(opts, out, emit_report(report, opts.report_format()));
  if (report.level_size_sum() != report.set_size) {
    err << "verification failed: multiplicity level sizes do not add up\n";
    return 1;
  }
  if (report.factorization_ok && !*report.factorization_ok) {
    err << "verification failed: span factorization identity\n";
    return 1;
  }
  return 0;
}

int cmd_scan_min_ratio(const CommonOpts& opts, const std::string& group_flag,
                       bool antisymmetric, std::uint64_t budget,
                       std::uint64_t seed, std::ostream& out,
                       std::ostream& err) {
  const GroupSpec g = parse_group(group_flag, opts.order_cap());
  const auto report = search::min_ratio_scan(
      g, antisymmetric,
      budget ? std::optional<std::uint64_t>(budget) : std::nullopt, seed);
  search::revalidate(report);
  if (report.sampled) {
    // The seed always rides along in the JSON body; surface it next to CSV
    // output too.
    (opts.output.empty() ? err : out)
        << "sampled: seed=" << report.seed << " budget=" << report.budget
        << '\n';
  }
  write_out(opts, out, emit_report(report, opts.report_format()));
  for (const search::SearchRow& row : report.rows)
    if (!row.satisfied) {
      err << "verification failed: quadratic bound violated at |A|="
          << row.card << '\n';
      return 1;
    }
  return 0;
}

int cmd_scan_olson(const CommonOpts& opts, std::uint64_t n_single,
                   std::uint64_t n_min, std::uint64_t n_max,
                   std::uint64_t max_phi, std::ostream& out,
                   std::ostream& err) {
  std::vector<std::uint64_t> todo;
  if (n_single) {
    todo.push_back(n_single);
  } else {
    if (n_max < n_min) throw parse_error("empty n range");
    for (std::uint64_t n = n_min; n <= n_max; ++n)
      if (search::euler_phi(n) <= max_phi) todo.push_back(n);
  }
  search::SearchReport report;
  report.mode = "max_coprime_noncovering";
  bool violation = false;
  for (std::uint64_t n : todo) {
    const search::NoncoverResult r = search::max_coprime_noncovering(n);
    search::SearchRow row;
    row.group = "Z" + std::to_string(n);
    row.witness = r.witness.indices();
    row.card = r.max_card;
    const GroupSpec g = make_group({static_cast<std::uint32_t>(n)});
    const ElementSet span = sigma(g, r.witness);
    row.sigma_size = span.count();
    row.stab_order = stabilizer(g, span).order();
    row.ratio_num = row.sigma_size;
    row.ratio_den = row.card * row.card;
    row.bound = "olson-8sqrt";
    row.satisfied = r.within_8sqrt;
    violation = violation || !r.within_8sqrt;
    report.rows.push_back(std::move(row));
    report.universe += std::uint64_t{1} << r.phi;
  }
  search::revalidate(report);
  write_out(opts, out, emit_report(report, opts.report_format()));
  if (violation) {
    err << "verification failed: 8*sqrt(n) noncovering bound violated\n";
    return 1;
  }
  return 0;
}

int cmd_witness_stab(const CommonOpts& opts, const std::string& group_flag,
                     std::ostream& out) {
  const GroupSpec g = parse_group(group_flag, opts.order_cap());
  const auto witness = search::find_nontrivial_stab_witness(g);
  std::ostringstream text;
  if (!witness) {
    text << "none\n";
  } else {
    text << "witness=";
    bool first = true;
    witness->first.for_each([&](std::uint64_t i) {
      if (!first) text << ' ';
      text << format_element(element_from_index(g, i));
      first = false;
    });
    text << "\nstab_order=" << witness->second.order() << '\n';
  }
  write_out(opts, out, text.str());
  return 0;
}

int cmd_construct(const CommonOpts& opts, const std::string& kind,
                  std::uint64_t param, std::ostream& out, std::ostream& err) {
  const search::ConstructionKind k = kind == "interval"
                                         ? search::ConstructionKind::interval
                                         : search::ConstructionKind::unit_interval_psq;
  const search::ConstructionResult result = search::construction_family(k, param);
  std::ostringstream text;
  text << "group=" << format_group(result.group) << '\n'
       << "card=" << result.set.count() << '\n'
       << "sigma_size=" << result.sigma_size << '\n';
  for (const search::NamedCheck& c : result.checks)
    text << "check[" << c.name << "]=" << (c.pass ? "pass" : "FAIL") << '\n';
  write_out(opts, out, text.str());
  if (!result.all_pass) {
    err << "verification failed: construction family predicate\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"subset-sum span toolkit for finite abelian groups"};
  app.name("sumsetlab");
  app.require_subcommand(1);

  CommonOpts opts;
  std::string file, other_file, group_flag, element_literal;
  std::string k_range, schedule = "three_stage", subgroup_gens, kind;
  std::string audit_path;
  std::vector<std::string> eval_at, set_files;
  std::uint64_t repeat = 1, target = 0, modulus = 0, budget = 0, seed = 0;
  std::uint64_t n_single = 0, n_min = 2, n_max = 0, max_phi = 16, param = 0;
  bool antisymmetric = false, use_stab = false;

  auto* sigma_cmd = app.add_subcommand("sigma", "subset-sum span of a set");
  add_common(sigma_cmd, opts);
  sigma_cmd->add_option("-f,--file", file, "set file")->required();
  sigma_cmd->add_option("-g,--group", group_flag, "expected group spec");

  auto* stab_cmd = app.add_subcommand("stab", "stabilizer of a set");
  add_common(stab_cmd, opts);
  stab_cmd->add_option("-f,--file", file, "set file")->required();
  stab_cmd->add_option("-g,--group", group_flag, "expected group spec");

  auto* lambda_cmd =
      app.add_subcommand("lambda", "increment count |(S+c) \\ S|");
  add_common(lambda_cmd, opts);
  lambda_cmd->add_option("-f,--file", file, "set file")->required();
  lambda_cmd->add_option("-g,--group", group_flag, "expected group spec");
  lambda_cmd->add_option("-c,--element", element_literal, "element literal")
      ->required();

  auto* rho_cmd =
      app.add_subcommand("rho", "difference representation count |S n (S+d)|");
  add_common(rho_cmd, opts);
  rho_cmd->add_option("-f,--file", file, "set file")->required();
  rho_cmd->add_option("-g,--group", group_flag, "expected group spec");
  rho_cmd->add_option("-c,--element", element_literal, "element literal")
      ->required();

  auto* sumset_cmd = app.add_subcommand("sumset", "sumset of two sets or rA");
  add_common(sumset_cmd, opts);
  sumset_cmd->add_option("-f,--file", file, "first set file")->required();
  auto* other_opt =
      sumset_cmd->add_option("-F,--other", other_file, "second set file");
  auto* repeat_opt =
      sumset_cmd->add_option("-r,--repeat", repeat, "fold count for rA");
  other_opt->excludes(repeat_opt);
  repeat_opt->excludes(other_opt);

  auto* bounds_cmd =
      app.add_subcommand("bounds", "numeric sequences and bound functions");
  add_common(bounds_cmd, opts);
  bounds_cmd->add_option("-k,--k-range", k_range, "index range, e.g. 9..12");
  bounds_cmd->add_option("--eval", eval_at,
                         "evaluate the f-family at these n")
      ->delimiter(',');

  auto* kneser_cmd =
      app.add_subcommand("kneser", "sumset lower-bound oracle over set files");
  add_common(kneser_cmd, opts);
  kneser_cmd->add_option("files", set_files, "two or more set files")
      ->required()
      ->expected(-2);

  auto* grow_cmd =
      app.add_subcommand("grow", "greedy span growth with a certificate");
  add_common(grow_cmd, opts);
  grow_cmd->add_option("-f,--file", file, "ground set file")->required();
  grow_cmd->add_option("--target", target,
                       "stop once the span reaches this size "
                       "(default: |G|/2 + 1)");
  grow_cmd->add_option("--stage-schedule", schedule, "stage mark schedule")
      ->check(CLI::IsMember({"three_stage", "doubling"}));
  grow_cmd->add_option("--audit", audit_path,
                       "also write per-stage growth audit rows (CSV)");

  auto* olson_cmd =
      app.add_subcommand("olson", "unit-set coverage pipeline in Z_n");
  add_common(olson_cmd, opts);
  olson_cmd->add_option("-n,--modulus", modulus, "modulus n")->required();
  olson_cmd->add_option("-f,--file", file, "unit set file")->required();
  olson_cmd->add_option("--stage-schedule", schedule, "stage mark schedule")
      ->check(CLI::IsMember({"three_stage", "doubling"}));
  olson_cmd->add_option("--audit", audit_path,
                        "also write per-stage growth audit rows (CSV)");

  auto* decompose_cmd = app.add_subcommand(
      "decompose", "multiplicity decomposition relative to a subgroup");
  add_common(decompose_cmd, opts);
  decompose_cmd->add_option("-f,--file", file, "set file")->required();
  auto* gens_opt = decompose_cmd->add_option(
      "-H,--subgroup", subgroup_gens,
      "subgroup generators, ';'-separated element literals");
  auto* stab_opt = decompose_cmd->add_flag(
      "--stab", use_stab, "use the stabilizer of sigma(A) as the subgroup");
  gens_opt->excludes(stab_opt);
  stab_opt->excludes(gens_opt);

  auto* scan_min_cmd = app.add_subcommand(
      "scan-min-ratio", "extremal scan of |sigma(A)| / |A|^2");
  add_common(scan_min_cmd, opts);
  scan_min_cmd->add_option("-g,--group", group_flag, "group spec")->required();
  scan_min_cmd->add_flag("--antisymmetric", antisymmetric,
                         "restrict to A with A n (-A) empty");
  scan_min_cmd->add_option("--budget", budget, "random sample budget");
  scan_min_cmd->add_option("--seed", seed, "sample seed (default 0)");

  auto* scan_olson_cmd = app.add_subcommand(
      "scan-olson", "exact maximum noncovering unit sets in Z_n");
  add_common(scan_olson_cmd, opts);
  auto* n_opt = scan_olson_cmd->add_option("-n,--modulus", n_single,
                                           "single modulus to scan");
  scan_olson_cmd->add_option("--n-min", n_min, "range start (default 2)")
      ->excludes(n_opt);
  scan_olson_cmd->add_option("--n-max", n_max, "range end")->excludes(n_opt);
  scan_olson_cmd->add_option("--max-phi", max_phi,
                             "skip n with phi(n) above this (default 16)");

  auto* witness_cmd = app.add_subcommand(
      "witness-stab", "first A with nontrivial proper stab(sigma(A))");
  add_common(witness_cmd, opts);
  witness_cmd->add_option("-g,--group", group_flag, "group spec")->required();

  auto* construct_cmd =
      app.add_subcommand("construct", "extremal construction families");
  add_common(construct_cmd, opts);
  construct_cmd->add_option("--kind", kind, "family")
      ->required()
      ->check(CLI::IsMember({"interval", "unit-interval-psq"}));
  construct_cmd->add_option("--param", param, "family parameter")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sigma_cmd->parsed()) return cmd_sigma(opts, file, group_flag, out);
    if (stab_cmd->parsed()) return cmd_stab(opts, file, group_flag, out);
    if (lambda_cmd->parsed())
      return cmd_lambda_rho(opts, file, group_flag, element_literal, true, out);
    if (rho_cmd->parsed())
      return cmd_lambda_rho(opts, file, group_flag, element_literal, false,
                            out);
    if (sumset_cmd->parsed())
      return cmd_sumset(opts, file, other_file, repeat, out);
    if (bounds_cmd->parsed()) return cmd_bounds(opts, k_range, eval_at, out);
    if (kneser_cmd->parsed()) return cmd_kneser(opts, set_files, out, err);
    if (grow_cmd->parsed())
      return cmd_grow(opts, file, target, schedule, audit_path, out, err);
    if (olson_cmd->parsed())
      return cmd_olson(opts, modulus, file, schedule, audit_path, out, err);
    if (decompose_cmd->parsed()) {
      if (subgroup_gens.empty() && !use_stab)
        throw parse_error("decompose needs --subgroup or --stab");
      return cmd_decompose(opts, file, subgroup_gens, use_stab, out, err);
    }
    if (scan_min_cmd->parsed())
      return cmd_scan_min_ratio(opts, group_flag, antisymmetric, budget, seed,
                                out, err);
    if (scan_olson_cmd->parsed()) {
      if (!n_single && !n_max)
        throw parse_error("scan-olson needs -n or --n-max");
      return cmd_scan_olson(opts, n_single, n_min, n_max, max_phi, out, err);
    }
    if (witness_cmd->parsed()) return cmd_witness_stab(opts, group_flag, out);
    if (construct_cmd->parsed())
      return cmd_construct(opts, kind, param, out, err);
  } catch (const verification_error& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    // parse errors, domain refusals, malformed numbers: all usage errors
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace sumsetlab::cli
