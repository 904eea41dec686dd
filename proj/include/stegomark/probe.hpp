#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stegomark/scheme.hpp"

namespace stegomark::probe {

enum class Experiment { detectability = 1, name = 2, code = 3 };

Experiment experiment_from_number(int n);
int experiment_number(Experiment e);

struct ModelProfile {
  std::string name;
  std::string endpoint;
  std::string model;
  double temperature = 1.0;
  std::string reasoning_effort = "medium";  // low | medium | high | none
  std::optional<std::size_t> max_input_tokens;
  // API keys come from the environment, never from config files.
  std::string api_key_env;
};

enum class Label {
  correct_yes,
  correct_no,
  wrong_yes,
  wrong_no,
  full,
  partial,
  incorrect,
  abstain,
  noncompliant,
  skipped,
  error,
};

const char *label_name(Label label);

struct ProbeRecord {
  Experiment experiment;
  std::string scheme;  // scheme name or "original"
  std::string model;
  std::string prompt;
  std::string response;
  Label classification = Label::error;
  std::string error;  // per-cell failure, recorded instead of aborting
  std::string timestamp;
  double latency_ms = 0.0;

  std::string to_json_line() const;
  static ProbeRecord from_json_line(const std::string &line);
};

// Fixed prompt templates, instantiated byte for byte; the substituted
// text is never normalized.
std::string build_detect_prompt(const std::string &text);
std::string build_extract_prompt(const std::string &scheme_display_name,
                                 const std::string &stego);
std::string build_extract_with_code_prompt(const std::string &scheme_display_name,
                                           const std::string &stego,
                                           const std::string &source_code);

// Conservative pre-send size check: ASCII at ~4 bytes per token, every
// non-ASCII scalar counted as a full token.
std::size_t estimate_tokens(const std::string &prompt);

// target_watermark is required for experiments 2-3; input_watermarked tells
// experiment 1 which answer is the correct one.
Label classify_response(Experiment experiment, const std::string &raw,
                        const std::string &target_watermark,
                        bool input_watermarked = true);

struct TransportContext {
  Experiment experiment;
  std::string scheme;
};

class Transport {
public:
  virtual ~Transport() = default;
  virtual std::string send(const ModelProfile &profile, const std::string &prompt,
                           const TransportContext &context) = 0;
};

// Scripted responses keyed by (experiment, model, scheme).
class MockTransport : public Transport {
public:
  static MockTransport from_file(const std::filesystem::path &fixtures);
  std::string send(const ModelProfile &profile, const std::string &prompt,
                   const TransportContext &context) override;

  void set(Experiment e, const std::string &model, const std::string &scheme,
           std::string response);

private:
  std::map<std::string, std::string> responses_;
};

// Chat-completion HTTP POST with exactly one user message.
class HttpTransport : public Transport {
public:
  std::string send(const ModelProfile &profile, const std::string &prompt,
                   const TransportContext &context) override;
};

struct ExperimentConfig {
  std::vector<ModelProfile> models;
  std::string cover_utf8;
  std::string payload = "Secret Message";
  std::uint32_t timestamp = 0;       // AITSteg header, fixed for stable output
  std::size_t wrap_width = 12;       // Shiu line geometry
  std::map<std::string, std::string> display_names;
  std::map<std::string, std::string> source_files;  // scheme -> path, experiment 3
  std::size_t parallelism = 1;

  static ExperimentConfig from_file(const std::filesystem::path &path);
};

std::vector<ProbeRecord> run_experiment(const ExperimentConfig &config,
                                        Experiment experiment,
                                        Transport &transport);

// Long-format accuracy counts; throws MixedExperiments when records span
// more than one experiment.
struct AccuracyMatrix {
  Experiment experiment;
  // (model, scheme, label) -> count, plus marginals derived on demand.
  std::map<std::tuple<std::string, std::string, Label>, std::size_t> cells;

  std::string to_csv() const;                 // model,scheme,label,count
  std::string per_model_csv() const;          // model,label,count
  std::string per_scheme_csv() const;         // scheme,label,count
};

AccuracyMatrix aggregate(const std::vector<ProbeRecord> &records);

// Plain-text table: schemes as rows, models as columns, one cell per run.
std::string render_table(const std::vector<ProbeRecord> &records);

}  // namespace stegomark::probe
