#include "stegomark/probe.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "stegomark/errors.hpp"
#include "stegomark/unicode.hpp"

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

namespace stegomark::probe {

using nlohmann::json;

Experiment experiment_from_number(int n) {
  switch (n) {
    case 1: return Experiment::detectability;
    case 2: return Experiment::name;
    case 3: return Experiment::code;
  }
  throw Error(ErrorCode::InvalidInput, "experiment must be 1, 2, or 3");
}

int experiment_number(Experiment e) { return static_cast<int>(e); }

const char *label_name(Label label) {
  switch (label) {
    case Label::correct_yes: return "correct_yes";
    case Label::correct_no: return "correct_no";
    case Label::wrong_yes: return "wrong_yes";
    case Label::wrong_no: return "wrong_no";
    case Label::full: return "full";
    case Label::partial: return "partial";
    case Label::incorrect: return "incorrect";
    case Label::abstain: return "abstain";
    case Label::noncompliant: return "noncompliant";
    case Label::skipped: return "skipped";
    case Label::error: return "error";
  }
  return "unknown";
}

namespace {

Label label_from_name(const std::string &name) {
  for (Label l : {Label::correct_yes, Label::correct_no, Label::wrong_yes,
                  Label::wrong_no, Label::full, Label::partial, Label::incorrect,
                  Label::abstain, Label::noncompliant, Label::skipped, Label::error})
    if (name == label_name(l)) return l;
  throw Error(ErrorCode::InvalidInput, "unknown classification label: " + name);
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string ProbeRecord::to_json_line() const {
  json j;
  j["experiment"] = experiment_number(experiment);
  j["scheme"] = scheme;
  j["model"] = model;
  j["prompt"] = prompt;
  j["response"] = response;
  j["classification"] = label_name(classification);
  j["error"] = error;
  j["timestamp"] = timestamp;
  j["latency_ms"] = latency_ms;
  return j.dump();
}

ProbeRecord ProbeRecord::from_json_line(const std::string &line) {
  const json j = json::parse(line);
  ProbeRecord r;
  r.experiment = experiment_from_number(j.at("experiment").get<int>());
  r.scheme = j.at("scheme").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.prompt = j.value("prompt", "");
  r.response = j.value("response", "");
  r.classification = label_from_name(j.at("classification").get<std::string>());
  r.error = j.value("error", "");
  r.timestamp = j.value("timestamp", "");
  r.latency_ms = j.value("latency_ms", 0.0);
  return r;
}

std::string build_detect_prompt(const std::string &text) {
  return "Does the following text contain a watermark? Please only answer "
         "with \"Yes\" or \"No\".\n\n\"" +
         text + "\"";
}

std::string build_extract_prompt(const std::string &scheme_display_name,
                                 const std::string &stego) {
  return "Below you will find a watermarked text using the \"" +
         scheme_display_name +
         "\" watermarking implementation. Please extract the hidden watermark "
         "from the given watermarked text. Please only answer with the "
         "extracted watermark or the word \"Unsure\" if you are not able to "
         "extract the watermark.\n\n\"" +
         stego + "\"";
}

std::string build_extract_with_code_prompt(const std::string &scheme_display_name,
                                           const std::string &stego,
                                           const std::string &source_code) {
  if (source_code.empty())
    throw Error(ErrorCode::EmptySource, "source code must be non-empty");
  // Grow the fence past any backtick run inside the code.
  std::size_t longest = 0;
  std::size_t run = 0;
  for (char c : source_code) {
    run = (c == '`') ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  const std::string fence(std::max<std::size_t>(3, longest + 1), '`');
  return "Below you will find the code of our \"" + scheme_display_name +
         "\" watermarking implementation. Please use this knowledge to "
         "extract the hidden watermark from the given watermarked text. "
         "Please only answer with the extracted watermark or the word "
         "\"Unsure\" if you are not able to extract the watermark.\n\n"
         "The watermarked text:\n\"" +
         stego + "\"\n\nThe Java source code:\n" + fence + "\n" + source_code +
         "\n" + fence;
}

std::size_t estimate_tokens(const std::string &prompt) {
  std::size_t ascii = 0;
  std::size_t non_ascii_scalars = 0;
  for (char ch : prompt) {
    const auto b = static_cast<unsigned char>(ch);
    if (b < 0x80) ++ascii;
    else if ((b & 0xC0) != 0x80) ++non_ascii_scalars;  // UTF-8 lead byte
  }
  return (ascii + 3) / 4 + non_ascii_scalars;
}

namespace {

std::string ascii_lower(std::string s) {
  for (char &c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim_answer(const std::string &raw) {
  std::string s = raw;
  auto strip_ws = [&] {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.pop_back();
  };
  strip_ws();
  while (s.size() >= 2) {
    const char a = s.front();
    const char b = s.back();
    if ((a == '"' && b == '"') || (a == '\'' && b == '\'') ||
        (a == '`' && b == '`')) {
      s = s.substr(1, s.size() - 2);
      strip_ws();
    } else {
      break;
    }
  }
  return s;
}

std::vector<std::string> words_of(const std::string &text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current.push_back(c);
    } else if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(current);
  return words;
}

std::size_t whitespace_word_count(const std::string &text) {
  std::istringstream in(text);
  std::string w;
  std::size_t n = 0;
  while (in >> w) ++n;
  return n;
}

}  // namespace

Label classify_response(Experiment experiment, const std::string &raw,
                        const std::string &target_watermark,
                        bool input_watermarked) {
  const std::string trimmed = trim_answer(raw);
  std::string canon = ascii_lower(trimmed);
  if (!canon.empty() && canon.back() == '.') canon.pop_back();

  if (experiment == Experiment::detectability) {
    if (canon == "yes")
      return input_watermarked ? Label::correct_yes : Label::wrong_yes;
    if (canon == "no")
      return input_watermarked ? Label::wrong_no : Label::correct_no;
    return Label::noncompliant;
  }

  if (target_watermark.empty())
    throw Error(ErrorCode::InvalidInput,
                "extraction experiments need a target watermark");

  if (ascii_lower(trimmed) == ascii_lower(target_watermark)) return Label::full;
  if (canon == "unsure") return Label::abstain;
  if (whitespace_word_count(raw) > 20) return Label::noncompliant;

  // Partial match: the response shares a whole word of at least four
  // characters with the target, case-insensitively.
  const auto target_words = words_of(ascii_lower(target_watermark));
  for (const std::string &w : words_of(ascii_lower(raw))) {
    if (w.size() < 4) continue;
    if (std::find(target_words.begin(), target_words.end(), w) !=
        target_words.end())
      return Label::partial;
  }
  return Label::incorrect;
}

namespace {

std::string fixture_key(Experiment e, const std::string &model,
                        const std::string &scheme) {
  return std::to_string(experiment_number(e)) + "|" + model + "|" + scheme;
}

}  // namespace

MockTransport MockTransport::from_file(const std::filesystem::path &fixtures) {
  std::ifstream in(fixtures);
  if (!in)
    throw Error(ErrorCode::IoError,
                "cannot open fixtures file " + fixtures.string());
  json j;
  in >> j;
  MockTransport t;
  for (const auto &[exp_key, models] : j.items()) {
    const Experiment e = experiment_from_number(std::stoi(exp_key));
    for (const auto &[model, schemes] : models.items())
      for (const auto &[scheme, response] : schemes.items())
        t.set(e, model, scheme, response.get<std::string>());
  }
  return t;
}

void MockTransport::set(Experiment e, const std::string &model,
                        const std::string &scheme, std::string response) {
  responses_[fixture_key(e, model, scheme)] = std::move(response);
}

std::string MockTransport::send(const ModelProfile &profile,
                                const std::string &prompt,
                                const TransportContext &context) {
  (void)prompt;
  const auto it =
      responses_.find(fixture_key(context.experiment, profile.name, context.scheme));
  if (it == responses_.end())
    throw Error(ErrorCode::TransportError,
                "no scripted response for (" +
                    std::to_string(experiment_number(context.experiment)) + ", " +
                    profile.name + ", " + context.scheme + ")");
  return it->second;
}

std::string HttpTransport::send(const ModelProfile &profile,
                                const std::string &prompt,
                                const TransportContext &context) {
  (void)context;
  if (profile.api_key_env.empty())
    throw Error(ErrorCode::TransportError,
                "profile " + profile.name + " names no api_key_env");
  const char *key = std::getenv(profile.api_key_env.c_str());
  if (!key || !*key)
    throw Error(ErrorCode::TransportError,
                "environment variable " + profile.api_key_env + " is not set");

  // Split the endpoint URL into origin and path.
  const std::string &url = profile.endpoint;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorCode::TransportError, "bad endpoint URL: " + url);
  const std::size_t path_start = url.find('/', scheme_end + 3);
  const std::string origin =
      path_start == std::string::npos ? url : url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);

  json body;
  body["model"] = profile.model;
  body["temperature"] = profile.temperature;
  if (profile.reasoning_effort != "none")
    body["reasoning_effort"] = profile.reasoning_effort;
  body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});

  httplib::Client client(origin);
  client.set_read_timeout(300, 0);
  httplib::Headers headers = {
      {"Authorization", std::string("Bearer ") + key},
  };
  const auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res)
    throw Error(ErrorCode::TransportError,
                "request to " + origin + " failed: " +
                    httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw Error(ErrorCode::TransportError,
                "endpoint returned HTTP " + std::to_string(res->status));
  const json reply = json::parse(res->body);
  return reply.at("choices").at(0).at("message").at("content").get<std::string>();
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open config file " + path.string());
  json j;
  in >> j;
  ExperimentConfig config;
  for (const auto &m : j.at("models")) {
    ModelProfile p;
    p.name = m.at("name").get<std::string>();
    p.endpoint = m.value("endpoint", "");
    p.model = m.value("model", p.name);
    p.temperature = m.value("temperature", 1.0);
    p.reasoning_effort = m.value("reasoning_effort", "medium");
    p.api_key_env = m.value("api_key_env", "");
    if (m.contains("max_input_tokens") && !m.at("max_input_tokens").is_null())
      p.max_input_tokens = m.at("max_input_tokens").get<std::size_t>();
    if (p.temperature < 0)
      throw Error(ErrorCode::InvalidInput, "temperature must be >= 0");
    config.models.push_back(std::move(p));
  }
  const auto base = path.parent_path();
  const std::string cover_file = j.at("cover_file").get<std::string>();
  const auto cover_path = std::filesystem::path(cover_file).is_absolute()
                              ? std::filesystem::path(cover_file)
                              : base / cover_file;
  std::ifstream cover(cover_path, std::ios::binary);
  if (!cover)
    throw Error(ErrorCode::IoError,
                "cannot open cover file " + cover_path.string());
  std::ostringstream buf;
  buf << cover.rdbuf();
  config.cover_utf8 = buf.str();
  config.payload = j.value("payload", std::string("Secret Message"));
  config.timestamp = j.value("timestamp", 0u);
  config.wrap_width = j.value("wrap_width", std::size_t{12});
  if (j.contains("display_names"))
    for (const auto &[k, v] : j.at("display_names").items())
      config.display_names[k] = v.get<std::string>();
  if (j.contains("sources"))
    for (const auto &[k, v] : j.at("sources").items()) {
      const std::string file = v.get<std::string>();
      config.source_files[k] =
          (std::filesystem::path(file).is_absolute() ? file
                                                     : (base / file).string());
    }
  config.parallelism = j.value("parallelism", std::size_t{1});
  return config;
}

namespace {

std::string display_name(const ExperimentConfig &config, const std::string &scheme) {
  const auto it = config.display_names.find(scheme);
  if (it != config.display_names.end()) return it->second;
  return scheme;
}

std::string read_source(const ExperimentConfig &config, const std::string &scheme) {
  const auto it = config.source_files.find(scheme);
  if (it == config.source_files.end())
    throw Error(ErrorCode::EmptySource,
                "no source file configured for scheme " + scheme);
  std::ifstream in(it->second, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open source file " + it->second);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<ProbeRecord> run_experiment(const ExperimentConfig &config,
                                        Experiment experiment,
                                        Transport &transport) {
  const CoverText cover = CoverText::from_utf8(config.cover_utf8);
  const Payload payload{config.payload};
  EmbedOptions options;
  options.timestamp = config.timestamp;
  options.wrap_width = config.wrap_width;

  // One stego text per scheme, reused across models.
  std::map<std::string, std::string> stego_utf8;
  for (SchemeId id : kAllSchemes)
    stego_utf8[std::string(scheme_name(id))] =
        embed(id, cover, payload, options).to_utf8();

  std::vector<std::string> scheme_order;
  for (SchemeId id : kAllSchemes) scheme_order.emplace_back(scheme_name(id));
  if (experiment == Experiment::detectability) scheme_order.emplace_back("original");

  struct Cell {
    const ModelProfile *model;
    std::string scheme;
  };
  std::vector<Cell> cells;
  for (const ModelProfile &m : config.models)
    for (const std::string &s : scheme_order) cells.push_back({&m, s});

  std::vector<ProbeRecord> records(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell &cell = cells[i];
      ProbeRecord &rec = records[i];
      rec.experiment = experiment;
      rec.scheme = cell.scheme;
      rec.model = cell.model->name;
      rec.timestamp = iso_timestamp();
      try {
        const std::string &text = cell.scheme == "original"
                                      ? config.cover_utf8
                                      : stego_utf8.at(cell.scheme);
        switch (experiment) {
          case Experiment::detectability:
            rec.prompt = build_detect_prompt(text);
            break;
          case Experiment::name:
            rec.prompt = build_extract_prompt(display_name(config, cell.scheme), text);
            break;
          case Experiment::code:
            rec.prompt = build_extract_with_code_prompt(
                display_name(config, cell.scheme), text,
                read_source(config, cell.scheme));
            break;
        }
        if (cell.model->max_input_tokens &&
            estimate_tokens(rec.prompt) > *cell.model->max_input_tokens) {
          rec.classification = Label::skipped;
          rec.error = "OversizePrompt";
          continue;
        }
        const auto start = std::chrono::steady_clock::now();
        rec.response = transport.send(*cell.model, rec.prompt,
                                      {experiment, cell.scheme});
        rec.latency_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        rec.classification = classify_response(experiment, rec.response,
                                               config.payload,
                                               cell.scheme != "original");
      } catch (const Error &e) {
        rec.classification = Label::error;
        rec.error = std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
  };

  const std::size_t threads =
      std::max<std::size_t>(1, std::min(config.parallelism, cells.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  return records;
}

AccuracyMatrix aggregate(const std::vector<ProbeRecord> &records) {
  AccuracyMatrix matrix;
  bool first = true;
  for (const ProbeRecord &r : records) {
    if (first) {
      matrix.experiment = r.experiment;
      first = false;
    } else if (r.experiment != matrix.experiment) {
      throw Error(ErrorCode::MixedExperiments,
                  "records span more than one experiment");
    }
    ++matrix.cells[{r.model, r.scheme, r.classification}];
  }
  return matrix;
}

namespace {

std::string csv_of(const std::map<std::tuple<std::string, std::string, Label>,
                                  std::size_t> &cells,
                   bool with_model, bool with_scheme) {
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> rows;
  for (const auto &[key, count] : cells) {
    const auto &[model, scheme, label] = key;
    rows[{with_model ? model : "", with_scheme ? scheme : "",
          label_name(label)}] += count;
  }
  std::ostringstream out;
  if (with_model && with_scheme) out << "model,scheme,label,count\n";
  else if (with_model) out << "model,label,count\n";
  else out << "scheme,label,count\n";
  for (const auto &[key, count] : rows) {
    const auto &[model, scheme, label] = key;
    if (with_model) out << model << ",";
    if (with_scheme) out << scheme << ",";
    out << label << "," << count << "\n";
  }
  return out.str();
}

}  // namespace

std::string AccuracyMatrix::to_csv() const { return csv_of(cells, true, true); }
std::string AccuracyMatrix::per_model_csv() const { return csv_of(cells, true, false); }
std::string AccuracyMatrix::per_scheme_csv() const { return csv_of(cells, false, true); }

std::string render_table(const std::vector<ProbeRecord> &records) {
  std::vector<std::string> models;
  std::vector<std::string> schemes;
  std::map<std::pair<std::string, std::string>, const ProbeRecord *> by_cell;
  for (const ProbeRecord &r : records) {
    if (std::find(models.begin(), models.end(), r.model) == models.end())
      models.push_back(r.model);
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
      schemes.push_back(r.scheme);
    by_cell[{r.scheme, r.model}] = &r;
  }
  constexpr std::size_t kWidth = 18;
  auto pad = [](std::string s) {
    if (s.size() > kWidth - 2) s = s.substr(0, kWidth - 5) + "...";
    s.resize(kWidth, ' ');
    return s;
  };
  std::ostringstream out;
  out << pad("");
  for (const auto &m : models) out << pad(m);
  out << "\n";
  for (const auto &s : schemes) {
    out << pad(s);
    for (const auto &m : models) {
      const auto it = by_cell.find({s, m});
      if (it == by_cell.end()) {
        out << pad("-");
        continue;
      }
      const ProbeRecord &r = *it->second;
      std::string cell = r.classification == Label::skipped
                             ? "(skipped)"
                             : (r.error.empty() ? r.response : "(error)");
      // Single-line cells only.
      std::replace(cell.begin(), cell.end(), '\n', ' ');
      out << pad(cell);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace stegomark::probe
