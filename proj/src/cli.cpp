#include "udc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <thread>

#include "CLI11.hpp"
#include "udc/export.hpp"

namespace udc {

namespace fs = std::filesystem;

namespace {

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.flush();
  if (!out) throw OutputError("cannot write '" + path.string() + "'");
}

fs::path prepare_out_dir(const RunConfig& config) {
  fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw OutputError("cannot create output directory '" + config.out_dir + "'");
  }
  return dir;
}

void report_progress(const IngestStats& s, std::ostream& err) {
  err << "udc: " << s.lines_read << " lines, " << s.candidates_extracted
      << " candidates, " << s.records_accepted << " accepted, "
      << s.dismissed_non_udc << " dismissed\n";
}

std::string op_file_name(ConnectorKind op) { return std::string(to_string(op)); }

std::string join_classes(const std::vector<MainClass>& classes) {
  std::string out;
  for (MainClass c : classes) {
    if (!out.empty()) out.push_back(' ');
    out.append(std::to_string(c));
  }
  return out.empty() ? "(none)" : out;
}

// Runs `body`, mapping I/O failures to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    body();
    return kExitOk;
  } catch (const InputError& e) {
    err << "udc: " << e.what() << '\n';
    return kExitIo;
  } catch (const OutputError& e) {
    err << "udc: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace

int cmd_parse(std::string_view input, const LinkPolicy& policy, std::ostream& out,
              std::ostream& err) {
  auto parsed = parse(input);
  if (!parsed) {
    const ParseError& e = parsed.error();
    err << "udc: parse error: " << to_string(e.kind) << " at offset " << e.offset
        << ": " << e.message << '\n';
    return kExitParse;
  }
  const UdcExpression& expr = *parsed;

  out << "input: " << input << '\n';
  const Classification verdict = classify(input);
  out << "classification: "
      << (verdict ? std::string("valid") : "non-udc (" + verdict.error().code() + ": " +
                                               verdict.error().detail + ")")
      << '\n';
  out << "tree:\n" << dump_tree(expr);

  const auto leading = leading_class(expr);
  out << "classes leading: " << (leading ? std::to_string(*leading) : "(none)") << '\n';
  out << "classes all: " << join_classes(all_classes(expr)) << '\n';
  out << "length chars: " << string_length(input, LengthMetric::chars) << '\n';
  out << "length digits: " << string_length(input, LengthMetric::digits) << '\n';

  const auto traces = trace_links(expr, policy);
  std::size_t link_count = 0;
  out << "links:\n";
  for (const LinkTrace& t : traces) {
    out << "  " << to_string(t.op) << " '" << symbol(t.op) << "' @" << t.offset;
    if (t.group_internal) out << " (group-internal)";
    if (t.suppressed) {
      out << " suppressed: " << to_string(*t.suppressed) << '\n';
      continue;
    }
    out << ':';
    for (const Link& l : t.links) out << ' ' << l.from << "->" << l.to;
    out << '\n';
    link_count += t.links.size();
  }
  out << "link count: " << link_count << '\n';
  return kExitOk;
}

int cmd_profile(const RunConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path dir = prepare_out_dir(config);
    const CorpusRun run = aggregate_inputs(config);
    report_progress(run.stats, err);

    const std::string header = comment_block(config.settings());
    write_file(dir / "summary.json", export_summary_json(make_report(run, config)));
    for (CountingMethod m : config.methods) {
      const ClassDistribution& d =
          m == CountingMethod::leading ? run.aggregate.leading : run.aggregate.all;
      write_file(dir / ("class_distribution_" + std::string(to_string(m)) + ".csv"),
                 header + export_class_distribution_csv(d));
    }
    write_file(dir / "length_distribution.tsv",
               header + export_distribution_tsv(run.aggregate.lengths));
  });
}

int cmd_cooccur(const RunConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path dir = prepare_out_dir(config);
    const CorpusRun run = aggregate_inputs(config);
    report_progress(run.stats, err);

    const Settings settings = config.settings();
    const std::string header = comment_block(settings);
    std::vector<OperationMatrix> matrices;
    for (const auto& [op, m] : run.aggregate.matrices.matrices) {
      matrices.push_back(m);
      const std::string name = op_file_name(op);
      write_file(dir / ("matrix_" + name + ".csv"), header + export_matrix_csv(m));
      write_file(dir / ("edges_" + name + ".tsv"),
                 header + export_edge_list(m, config.drop_class4));
      if (config.normalize) {
        write_file(dir / ("normalized_" + name + ".csv"),
                   header + export_normalized_csv(op, normalize_matrix(m, run.aggregate.all)));
      }
    }
    write_file(dir / "network.dot", export_dot(matrices, config.drop_class4, settings));
  });
}

namespace {

void add_run_options(CLI::App& cmd, RunConfig& config, std::string& format,
                     std::string& weights, std::string& method, std::string& metric,
                     std::vector<std::string>& operators, bool& no_distribute,
                     bool& no_group_internal) {
  cmd.add_option("inputs", config.inputs, "Input files")->required();
  cmd.add_option("--format", format, "Input layout: oclc | libis | plain")
      ->capture_default_str()
      ->check(CLI::IsMember({"oclc", "libis", "plain"}));
  cmd.add_option("--weights", weights, "unique (count each line once) | frequency")
      ->capture_default_str()
      ->check(CLI::IsMember({"unique", "frequency"}));
  cmd.add_option("--method", method, "Class counting: leading | all | both")
      ->capture_default_str()
      ->check(CLI::IsMember({"leading", "all", "both"}));
  cmd.add_option("--length-metric", metric, "chars | digits")
      ->capture_default_str()
      ->check(CLI::IsMember({"chars", "digits"}));
  cmd.add_option("--operators", operators, "Comma-separated: plus,stroke,colon,double-colon")
      ->delimiter(',')
      ->capture_default_str();
  cmd.add_flag("--no-distribute", no_distribute,
               "Link a group operand through its leading class only");
  cmd.add_flag("--no-group-internal", no_group_internal,
               "Ignore connectors between members of a '[...]' group");
  cmd.add_flag("--lenient", config.lenient_libis, "Recover LIBIS rows with degraded markers");
  cmd.add_flag("--drop-class4", config.drop_class4, "Leave class 4 out of edge lists and graph");
  cmd.add_flag("--normalize", config.normalize,
               "Also write matrices normalized by class occurrence");
  cmd.add_option("--out", config.out_dir, "Output directory")->required();
  cmd.add_option("--workers", config.workers, "Worker threads")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parse UDC notation and profile catalog exports", "udc"};
  app.require_subcommand(1);

  std::string parse_input;
  bool parse_no_group_internal = false;
  bool parse_no_distribute = false;
  std::vector<std::string> parse_operators{"plus", "stroke", "colon"};
  auto* parse_cmd = app.add_subcommand("parse", "Show how one UDC string is read");
  parse_cmd->add_option("string", parse_input, "UDC string")->required();
  parse_cmd->add_option("--operators", parse_operators, "Operators to link")
      ->delimiter(',')
      ->capture_default_str();
  parse_cmd->add_flag("--no-distribute", parse_no_distribute, "");
  parse_cmd->add_flag("--no-group-internal", parse_no_group_internal, "");

  RunConfig config;
  config.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "libis", weights = "unique", method = "both", metric = "chars";
  std::vector<std::string> operators{"plus", "stroke", "colon"};
  bool no_distribute = false, no_group_internal = false;

  auto* profile_cmd = app.add_subcommand("profile", "Class and string-length distributions");
  add_run_options(*profile_cmd, config, format, weights, method, metric, operators,
                  no_distribute, no_group_internal);
  auto* cooccur_cmd = app.add_subcommand("cooccur", "Per-operator class co-occurrence networks");
  add_run_options(*cooccur_cmd, config, format, weights, method, metric, operators,
                  no_distribute, no_group_internal);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto to_policy = [&err](const std::vector<std::string>& names, bool no_dist,
                          bool no_internal) -> std::optional<LinkPolicy> {
    LinkPolicy policy;
    policy.operators.clear();
    for (const std::string& n : names) {
      auto op = connector_from_name(n);
      if (!op) {
        err << "udc: unknown operator '" << n << "'\n";
        return std::nullopt;
      }
      policy.operators.insert(*op);
    }
    if (policy.operators.empty()) {
      err << "udc: --operators must name at least one operator\n";
      return std::nullopt;
    }
    policy.distribute_over_groups = !no_dist;
    policy.count_group_internal = !no_internal;
    return policy;
  };

  if (*parse_cmd) {
    auto policy = to_policy(parse_operators, parse_no_distribute, parse_no_group_internal);
    if (!policy) return kExitUsage;
    return cmd_parse(parse_input, *policy, out, err);
  }

  auto policy = to_policy(operators, no_distribute, no_group_internal);
  if (!policy) return kExitUsage;
  config.policy = *policy;
  config.format = *input_format_from_name(format);
  config.weights = *weight_mode_from_name(weights);
  config.length_metric = *length_metric_from_name(metric);
  if (method == "both") {
    config.methods = {CountingMethod::leading, CountingMethod::all};
  } else {
    config.methods = {*counting_method_from_name(method)};
  }

  if (*profile_cmd) return cmd_profile(config, err);
  return cmd_cooccur(config, err);
}

}  // namespace udc
