// Command line front end for the watermarking library.
//
// Exit codes:
//   0 success (detect: input is clean)
//   1 detect: input is watermarked
//   2 capacity failure (payload too large, no insertion point)
//   3 I/O or transport failure, missing API key
//   4 usage error (bad flags, unknown scheme, bad config)
//   5 no watermark found
//   6 corrupt or truncated watermark, config mismatch

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "stegomark/errors.hpp"
#include "stegomark/probe.hpp"
#include "stegomark/scheme.hpp"
#include "stegomark/steganalysis.hpp"
#include "stegomark/unicode.hpp"

namespace {

using namespace stegomark;

int exit_code_for(const Error &e) {
  switch (e.code()) {
    case ErrorCode::InsufficientCapacity:
    case ErrorCode::PayloadTooLarge:
    case ErrorCode::NoInsertionPoint:
      return 2;
    case ErrorCode::IoError:
    case ErrorCode::TransportError:
      return 3;
    case ErrorCode::UnknownScheme:
    case ErrorCode::InvalidInput:
    case ErrorCode::NonOctetLength:
    case ErrorCode::MixedExperiments:
    case ErrorCode::OversizePrompt:
    case ErrorCode::EmptySource:
      return 4;
    case ErrorCode::NoWatermarkFound:
    case ErrorCode::NotWatermarked:
      return 5;
    case ErrorCode::CorruptFrame:
    case ErrorCode::TruncatedFrame:
    case ErrorCode::ConfigMismatch:
      return 6;
  }
  return 4;
}

std::string read_stream(std::istream &in, const std::string &name) {
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed: " + name);
  return buf.str();
}

std::string read_input(const std::string &path) {
  if (path.empty() || path == "-") return read_stream(std::cin, "stdin");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_stream(in, path);
}

void write_output(const std::string &path, const std::string &data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data))
    throw Error(ErrorCode::IoError, "cannot write " + path);
}

// Inputs must be plain UTF-8; a byte order mark would survive into the
// carrier stream and corrupt offsets.
std::u32string decode_text(const std::string &utf8) {
  if (utf8.size() >= 3 && static_cast<unsigned char>(utf8[0]) == 0xEF &&
      static_cast<unsigned char>(utf8[1]) == 0xBB &&
      static_cast<unsigned char>(utf8[2]) == 0xBF)
    throw Error(ErrorCode::InvalidInput, "input starts with a UTF-8 BOM");
  return utf8_decode(utf8);
}

struct CommonArgs {
  std::string scheme;
  std::string input;
  std::string output;
  std::optional<std::uint32_t> timestamp;
  std::size_t wrap_width = 40;
};

EmbedOptions options_of(const CommonArgs &args) {
  EmbedOptions options;
  options.timestamp = args.timestamp;
  options.wrap_width = args.wrap_width;
  return options;
}

int cmd_embed(const CommonArgs &args, const std::string &message) {
  const CoverText cover(decode_text(read_input(args.input)));
  const StegoText stego = embed(scheme_from_name(args.scheme), cover,
                                Payload{message}, options_of(args));
  write_output(args.output, stego.to_utf8());
  return 0;
}

int cmd_extract(const CommonArgs &args) {
  const std::u32string text = decode_text(read_input(args.input));
  const Payload payload =
      extract(scheme_from_name(args.scheme), text, options_of(args));
  write_output(args.output, payload.as_text() + "\n");
  return 0;
}

int cmd_detect(const CommonArgs &args, bool as_json) {
  const std::u32string text = decode_text(read_input(args.input));
  const DetectionReport report = scan(text);
  if (as_json) {
    write_output(args.output, report.to_json() + "\n");
  } else {
    std::ostringstream out;
    if (report.verdict == Verdict::watermarked) {
      out << "watermarked\n";
      for (const auto &[scheme, score] : report.attributions)
        out << "  " << scheme_name(scheme) << " " << score << "\n";
    } else {
      out << "clean\n";
    }
    write_output(args.output, out.str());
  }
  return report.verdict == Verdict::watermarked ? 1 : 0;
}

int cmd_capacity(const CommonArgs &args) {
  const CoverText cover(decode_text(read_input(args.input)));
  std::ostringstream out;
  auto print = [&](SchemeId id) {
    const CapacityEstimate est = capacity(id, cover, options_of(args));
    out << scheme_name(id) << "\t";
    if (est.unlimited) out << "unlimited";
    else out << est.total_bits();
    if (est.filler_bits > 0 && !est.unlimited)
      out << "\t(filler " << est.filler_bits << ")";
    out << "\n";
  };
  if (args.scheme.empty() || args.scheme == "all") {
    for (SchemeId id : kAllSchemes) print(id);
  } else {
    print(scheme_from_name(args.scheme));
  }
  write_output(args.output, out.str());
  return 0;
}

int cmd_experiment(const std::string &config_path, int number,
                   const std::string &fixtures, const std::string &output) {
  const probe::ExperimentConfig config =
      probe::ExperimentConfig::from_file(config_path);
  const probe::Experiment experiment = probe::experiment_from_number(number);
  std::unique_ptr<probe::Transport> transport;
  if (!fixtures.empty())
    transport = std::make_unique<probe::MockTransport>(
        probe::MockTransport::from_file(fixtures));
  else
    transport = std::make_unique<probe::HttpTransport>();
  const auto records = probe::run_experiment(config, experiment, *transport);
  std::ostringstream out;
  for (const auto &r : records) out << r.to_json_line() << "\n";
  write_output(output, out.str());
  return 0;
}

int cmd_report(const std::string &records_path, const std::string &format,
               const std::string &output) {
  std::istringstream in(read_input(records_path));
  std::vector<probe::ProbeRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(probe::ProbeRecord::from_json_line(line));
  }
  if (records.empty())
    throw Error(ErrorCode::InvalidInput, "no records in " + records_path);
  std::string rendered;
  if (format == "table") {
    rendered = probe::render_table(records);
  } else {
    const probe::AccuracyMatrix matrix = probe::aggregate(records);
    if (format == "csv") rendered = matrix.to_csv();
    else if (format == "per-model") rendered = matrix.per_model_csv();
    else if (format == "per-scheme") rendered = matrix.per_scheme_csv();
    else
      throw Error(ErrorCode::InvalidInput, "unknown report format " + format);
  }
  write_output(output, rendered);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Invisible Unicode text watermarking toolkit"};
  app.require_subcommand(1);

  std::string data_dir_override;
  app.add_option("--data-dir", data_dir_override,
                 "Directory with substitution tables");

  CommonArgs args;
  std::string message;
  bool as_json = false;
  std::string config_path;
  int experiment_number = 0;
  std::string fixtures;
  std::string records_path;
  std::string format = "csv";

  auto add_io = [&](CLI::App *cmd, bool with_scheme) {
    if (with_scheme)
      cmd->add_option("-s,--scheme", args.scheme, "Scheme name")->required();
    cmd->add_option("-i,--input", args.input, "Input file, - for stdin");
    cmd->add_option("-o,--output", args.output, "Output file, - for stdout");
  };

  CLI::App *embed_cmd = app.add_subcommand("embed", "Embed a watermark");
  add_io(embed_cmd, true);
  embed_cmd->add_option("-m,--message", message, "Watermark text")->required();
  embed_cmd->add_option("--timestamp", args.timestamp,
                        "Fixed header timestamp (aitsteg)");
  embed_cmd->add_option("--wrap-width", args.wrap_width, "Line width (shiu)");

  CLI::App *extract_cmd = app.add_subcommand("extract", "Extract a watermark");
  add_io(extract_cmd, true);
  extract_cmd->add_option("--wrap-width", args.wrap_width, "Line width (shiu)");

  CLI::App *detect_cmd =
      app.add_subcommand("detect", "Detect watermarks without a scheme hint");
  add_io(detect_cmd, false);
  detect_cmd->add_flag("--json", as_json, "Emit the report as JSON");

  CLI::App *capacity_cmd =
      app.add_subcommand("capacity", "Report per-scheme capacity in bits");
  capacity_cmd->add_option("-s,--scheme", args.scheme,
                           "Scheme name, or all (default)");
  capacity_cmd->add_option("-i,--input", args.input, "Input file, - for stdin");
  capacity_cmd->add_option("-o,--output", args.output, "Output file, - for stdout");
  capacity_cmd->add_option("--wrap-width", args.wrap_width, "Line width (shiu)");

  CLI::App *experiment_cmd =
      app.add_subcommand("experiment", "Run a probe experiment");
  experiment_cmd->add_option("-c,--config", config_path, "Experiment config JSON")
      ->required();
  experiment_cmd->add_option("-e,--experiment", experiment_number,
                             "Experiment number (1, 2, or 3)")
      ->required();
  experiment_cmd
      ->add_option("--fixtures", fixtures,
                   "Scripted-response file; omit to call live endpoints")
      ->check(CLI::ExistingFile);
  experiment_cmd->add_option("-o,--output", args.output,
                             "Records output (JSONL), - for stdout");

  CLI::App *report_cmd =
      app.add_subcommand("report", "Summarize experiment records");
  report_cmd->add_option("-r,--records", records_path, "Records file (JSONL)")
      ->required();
  report_cmd->add_option("-f,--format", format,
                         "csv | per-model | per-scheme | table");
  report_cmd->add_option("-o,--output", args.output, "Output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  if (!data_dir_override.empty())
    setenv("STEGOMARK_DATA_DIR", data_dir_override.c_str(), 1);

  try {
    if (embed_cmd->parsed()) return cmd_embed(args, message);
    if (extract_cmd->parsed()) return cmd_extract(args);
    if (detect_cmd->parsed()) return cmd_detect(args, as_json);
    if (capacity_cmd->parsed()) return cmd_capacity(args);
    if (experiment_cmd->parsed())
      return cmd_experiment(config_path, experiment_number, fixtures,
                            args.output);
    if (report_cmd->parsed())
      return cmd_report(records_path, format, args.output);
  } catch (const stegomark::Error &e) {
    std::cerr << "error: " << stegomark::error_code_name(e.code()) << ": "
              << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
