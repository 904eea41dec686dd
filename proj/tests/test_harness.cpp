#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stegomark/errors.hpp"
#include "stegomark/probe.hpp"

#include "helpers.hpp"

using namespace stegomark;
using namespace stegomark::probe;

namespace {

ExperimentConfig config() {
  return ExperimentConfig::from_file(testutil::repo_root() / "data" / "probe" /
                                     "experiment.json");
}

MockTransport transport() {
  return MockTransport::from_file(testutil::repo_root() / "data" / "probe" /
                                  "fixtures.json");
}

std::size_t count_label(const std::vector<ProbeRecord> &records, Label label) {
  std::size_t n = 0;
  for (const auto &r : records)
    if (r.classification == label) ++n;
  return n;
}

std::size_t count_label(const std::vector<ProbeRecord> &records,
                        const std::string &model, Label label) {
  std::size_t n = 0;
  for (const auto &r : records)
    if (r.model == model && r.classification == label) ++n;
  return n;
}

}  // namespace

TEST_CASE("detect classifier maps yes and no") {
  const auto e = Experiment::detectability;
  CHECK(classify_response(e, "Yes", "", true) == Label::correct_yes);
  CHECK(classify_response(e, "yes.", "", true) == Label::correct_yes);
  CHECK(classify_response(e, "\"No\"", "", true) == Label::wrong_no);
  CHECK(classify_response(e, "No", "", false) == Label::correct_no);
  CHECK(classify_response(e, "Yes", "", false) == Label::wrong_yes);
  CHECK(classify_response(e, "It depends on the text.", "", true) ==
        Label::noncompliant);
}

TEST_CASE("extraction classifier ordering") {
  const auto e = Experiment::name;
  const std::string target = "Secret Message";
  CHECK(classify_response(e, "Secret Message", target) == Label::full);
  CHECK(classify_response(e, "secret message", target) == Label::full);
  CHECK(classify_response(e, "\"Secret Message\"", target) == Label::full);
  CHECK(classify_response(e, "Unsure", target) == Label::abstain);
  CHECK(classify_response(e, "unsure.", target) == Label::abstain);
  CHECK(classify_response(e, "secret", target) == Label::partial);
  CHECK(classify_response(e, "Secret!!", target) == Label::partial);
  CHECK(classify_response(e, "this is a secret message", target) ==
        Label::partial);
  CHECK(classify_response(e, "Hello World", target) == Label::incorrect);
  CHECK(classify_response(e, "SlVfHWa:I1ngdee", target) == Label::incorrect);
  const std::string apology =
      "I'm sorry, but I cannot extract a hidden watermark from the given "
      "text. The passage appears to be ordinary filler content, and after "
      "reading it carefully I do not see any secret payload inside.";
  CHECK(classify_response(e, apology, target) == Label::noncompliant);
}

TEST_CASE("prompt templates embed the text verbatim") {
  const std::string text = "some carrier text";
  const std::string p1 = build_detect_prompt(text);
  CHECK(p1.find("Does the following text contain a watermark?") == 0);
  CHECK(p1.find("\"Yes\" or \"No\"") != std::string::npos);
  CHECK(p1.find(text) != std::string::npos);

  const std::string p2 = build_extract_prompt("UniSpaCh", text);
  CHECK(p2.find("\"UniSpaCh\" watermarking implementation") != std::string::npos);
  CHECK(p2.find("the word \"Unsure\"") != std::string::npos);
  CHECK(p2.find(text) != std::string::npos);

  const std::string p3 = build_extract_with_code_prompt("UniSpaCh", text,
                                                        "class X {}");
  CHECK(p3.find("The watermarked text:") != std::string::npos);
  CHECK(p3.find("The Java source code:") != std::string::npos);
  CHECK(p3.find("```\nclass X {}\n```") != std::string::npos);
  CHECK(p3.find(text) != std::string::npos);
}

TEST_CASE("code fence grows past backtick runs") {
  const std::string p = build_extract_with_code_prompt(
      "X", "text", "String s = \"```\";");
  CHECK(p.find("````\n") != std::string::npos);
}

TEST_CASE("token estimate counts non-ascii as whole tokens") {
  CHECK(estimate_tokens("abcdefgh") == 2);
  CHECK(estimate_tokens("") == 0);
  // Each U+200B is three UTF-8 bytes but one scalar.
  const std::string zw = "\xE2\x80\x8B\xE2\x80\x8B";
  CHECK(estimate_tokens(zw) == 2);
  CHECK(estimate_tokens("abcd" + zw) == 3);
}

TEST_CASE("records serialize to json lines and back") {
  ProbeRecord r;
  r.experiment = Experiment::code;
  r.scheme = "snow";
  r.model = "GPT-5";
  r.prompt = "p";
  r.response = "Unsure";
  r.classification = Label::abstain;
  r.latency_ms = 12.5;
  r.timestamp = "2026-01-01T00:00:00Z";
  const ProbeRecord back = ProbeRecord::from_json_line(r.to_json_line());
  CHECK(back.experiment == r.experiment);
  CHECK(back.scheme == r.scheme);
  CHECK(back.model == r.model);
  CHECK(back.response == r.response);
  CHECK(back.classification == r.classification);
  CHECK(back.latency_ms == r.latency_ms);
}

TEST_CASE("experiment 1 reproduces the detectability pattern") {
  auto t = transport();
  const auto records = run_experiment(config(), Experiment::detectability, t);
  CHECK(records.size() == 6 * 11);
  for (const auto &r : records) CHECK(r.error.empty());
  // The two reasoning models answer all 11 cases correctly.
  for (const std::string model : {"GPT-5", "Gemini 2.5 Pro"}) {
    CHECK(count_label(records, model, Label::correct_yes) == 10);
    CHECK(count_label(records, model, Label::correct_no) == 1);
  }
  // One model misses exactly one scheme.
  CHECK(count_label(records, "Claude Sonnet 4", Label::correct_yes) == 9);
  CHECK(count_label(records, "Claude Sonnet 4", Label::wrong_no) == 1);
  // The small model only flags one watermarked text.
  CHECK(count_label(records, "Teuken 7B", Label::correct_yes) == 1);
  // Everyone answers No for the original text.
  for (const auto &r : records)
    if (r.scheme == "original") CHECK(r.classification == Label::correct_no);
}

TEST_CASE("experiment 2 yields no full extraction in 60 cells") {
  auto t = transport();
  const auto records = run_experiment(config(), Experiment::name, t);
  CHECK(records.size() == 60);
  for (const auto &r : records) CHECK(r.error.empty());
  CHECK(count_label(records, Label::full) == 0);
  CHECK(count_label(records, Label::partial) == 2);
  CHECK(count_label(records, "Teuken 7B", Label::noncompliant) == 6);
  CHECK(count_label(records, "Teuken 7B", Label::abstain) == 4);
}

TEST_CASE("experiment 3 yields five full extractions for two models") {
  auto t = transport();
  const auto records = run_experiment(config(), Experiment::code, t);
  CHECK(records.size() == 60);
  CHECK(count_label(records, "GPT-5", Label::full) == 5);
  CHECK(count_label(records, "Gemini 2.5 Pro", Label::full) == 5);
  CHECK(count_label(records, "GPT-4o", Label::full) == 0);
  CHECK(count_label(records, "Llama 3.3", Label::full) == 0);
  CHECK(count_label(records, "Claude Sonnet 4", Label::full) == 0);
  // The 4096-token model skips every oversized prompt.
  CHECK(count_label(records, "Teuken 7B", Label::skipped) == 10);
  for (const auto &r : records)
    if (r.model == "Teuken 7B") CHECK(r.error == "OversizePrompt");
}

TEST_CASE("aggregate rejects mixed experiments") {
  ProbeRecord a;
  a.experiment = Experiment::name;
  ProbeRecord b;
  b.experiment = Experiment::code;
  CHECK_THROWS_AS(aggregate({a, b}), Error);
}

TEST_CASE("csv output is sorted and stable") {
  auto t = transport();
  const auto records = run_experiment(config(), Experiment::name, t);
  const AccuracyMatrix m = aggregate(records);
  const std::string csv = m.to_csv();
  CHECK(csv.rfind("model,scheme,label,count\n", 0) == 0);
  CHECK(m.to_csv() == csv);  // deterministic
  const std::string per_scheme = m.per_scheme_csv();
  CHECK(per_scheme.rfind("scheme,label,count\n", 0) == 0);
}
