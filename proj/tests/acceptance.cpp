// Acceptance suite: one pass/fail line per criterion, exit code equals the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stegomark/errors.hpp"
#include "stegomark/probe.hpp"
#include "stegomark/scheme.hpp"
#include "stegomark/steganalysis.hpp"
#include "stegomark/substitution.hpp"
#include "stegomark/unicode.hpp"
#include "stegomark/whitespace.hpp"
#include "stegomark/zerowidth.hpp"

#include "helpers.hpp"

using namespace stegomark;

namespace {

const Payload kPayload{"Secret Message"};

const CoverText &cover() {
  static CoverText c = CoverText::from_utf8(testutil::cover_utf8());
  return c;
}

EmbedOptions options() {
  EmbedOptions o;
  o.timestamp = 1700000000;
  o.wrap_width = 12;
  return o;
}

probe::ExperimentConfig probe_config() {
  return probe::ExperimentConfig::from_file(testutil::repo_root() / "data" /
                                            "probe" / "experiment.json");
}

probe::MockTransport probe_transport() {
  return probe::MockTransport::from_file(testutil::repo_root() / "data" /
                                         "probe" / "fixtures.json");
}

int failures = 0;

void criterion(int number, const std::string &title,
               const std::function<bool()> &check) {
  bool ok = false;
  std::string note;
  try {
    ok = check();
  } catch (const std::exception &e) {
    note = std::string(" (") + e.what() + ")";
  }
  std::cout << "criterion " << number << " [" << title << "]: "
            << (ok ? "PASS" : "FAIL") << note << "\n";
  if (!ok) ++failures;
}

// Maps every whitespace-class scalar to a plain space, collapses runs and
// trims; the visual word sequence is all that remains.
std::u32string normalize_whitespace(const std::u32string &text) {
  std::u32string out;
  bool pending_space = false;
  auto is_ws = [](char32_t c) {
    if (c == U' ' || c == U'\t' || c == U'\n' || c == U'\r') return true;
    if (c == kThinSpace || c == kHairSpace) return true;
    return space_alphabet16().is_base(c);
  };
  for (char32_t c : text) {
    if (is_ws(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(U' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

int main() {
  // 1. Full roundtrip over the standard cover and payload for all schemes.
  criterion(1, "roundtrip all schemes", [] {
    const auto start = std::chrono::steady_clock::now();
    for (SchemeId id : kAllSchemes) {
      const StegoText stego = embed(id, cover(), kPayload, options());
      if (!(extract(id, stego.text, options()) == kPayload)) return false;
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return secs < 5.0;
  });

  // 2. Length preservation: the space-alphabet scheme neither adds nor
  // removes characters; 1328 visible characters either way.
  criterion(2, "length preservation", [] {
    const StegoText stego = embed(SchemeId::innamark, cover(), kPayload);
    if (cover().char_count() != 1328) return false;
    if (stego.text.size() != cover().text().size()) return false;
    return CoverText(stego.text).char_count() == 1328;
  });

  // 3. Visual invariance per carrier family.
  criterion(3, "visual invariance", [] {
    for (SchemeId id : {SchemeId::aitsteg, SchemeId::covertsys,
                        SchemeId::stegcloak}) {
      if (strip_zero_width(embed(id, cover(), kPayload, options()).text) !=
          cover().text())
        return false;
    }
    for (SchemeId id : {SchemeId::lookalikes, SchemeId::rizzo,
                        SchemeId::shazzad}) {
      if (confusable_skeleton(embed(id, cover(), kPayload, options()).text) !=
          cover().text())
        return false;
    }
    const std::u32string want = normalize_whitespace(cover().text());
    for (SchemeId id : {SchemeId::snow, SchemeId::unispach, SchemeId::innamark,
                        SchemeId::shiu}) {
      if (normalize_whitespace(embed(id, cover(), kPayload, options()).text) !=
          want)
        return false;
    }
    return true;
  });

  // 4. Local detector: 11/11 verdicts, top-1 attribution 10/10.
  criterion(4, "detector verdicts and attribution", [] {
    if (scan(cover().text()).verdict != Verdict::clean) return false;
    for (SchemeId id : kAllSchemes) {
      const DetectionReport report =
          scan(embed(id, cover(), kPayload, options()).text);
      if (report.verdict != Verdict::watermarked) return false;
      if (report.attributions.empty() ||
          report.attributions.front().first != id)
        return false;
    }
    return true;
  });

  // 5. Table cardinality pins.
  criterion(5, "table cardinalities", [] {
    return lookalikes_table().size() == 23 && rizzo_table().size() == 24 &&
           space_alphabet64().size() == 64 && space_alphabet16().size() == 16;
  });

  // 6. Classifier over the scripted extraction responses.
  criterion(6, "classifier fixture", [] {
    auto transport = probe_transport();
    const auto config = probe_config();
    const auto with_name =
        probe::run_experiment(config, probe::Experiment::name, transport);
    if (with_name.size() != 60) return false;
    for (const auto &r : with_name)
      if (r.classification == probe::Label::full) return false;
    const auto with_code =
        probe::run_experiment(config, probe::Experiment::code, transport);
    std::size_t gpt5_full = 0;
    std::size_t gemini_full = 0;
    for (const auto &r : with_code) {
      if (r.classification != probe::Label::full) continue;
      if (r.model == "GPT-5") ++gpt5_full;
      if (r.model == "Gemini 2.5 Pro") ++gemini_full;
    }
    if (gpt5_full != 5 || gemini_full != 5) return false;
    using probe::classify_response;
    using probe::Experiment;
    using probe::Label;
    return classify_response(Experiment::name, "secret", "Secret Message") ==
               Label::partial &&
           classify_response(Experiment::name, "Unsure", "Secret Message") ==
               Label::abstain;
  });

  // 7. Capacity law over random inputs.
  criterion(7, "capacity law", [] {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(424242);
    std::uniform_int_distribution<std::size_t> scheme_pick(0, 9);
    std::uniform_int_distribution<std::size_t> words(3, 120);
    std::uniform_int_distribution<std::size_t> wlen(2, 10);
    std::uniform_int_distribution<std::size_t> plen(1, 40);
    std::uniform_int_distribution<int> letter(0, 51);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    static const std::string alpha =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    for (int trial = 0; trial < 1000; ++trial) {
      std::string text;
      const std::size_t n = words(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) text += coin(rng) < 0.05 ? "\n\n" : " ";
        const std::size_t m = wlen(rng);
        for (std::size_t k = 0; k < m; ++k) text.push_back(alpha[letter(rng)]);
      }
      const CoverText c = CoverText::from_utf8(text);
      std::string pbytes;
      const std::size_t pl = plen(rng);
      for (std::size_t k = 0; k < pl; ++k)
        pbytes.push_back(alpha[letter(rng)]);
      const Payload p{pbytes};
      const SchemeId id = kAllSchemes[scheme_pick(rng)];
      const CapacityEstimate est = capacity(id, c, options());
      bool embedded = false;
      try {
        embed(id, c, p, options());
        embedded = true;
      } catch (const Error &e) {
        if (e.code() != ErrorCode::InsufficientCapacity &&
            e.code() != ErrorCode::NoInsertionPoint)
          return false;
      }
      const bool fits = est.fits(framed_bits(p.bytes.size())) &&
                        (id != SchemeId::stegcloak ||
                         c.text().find(U' ') != std::u32string::npos);
      if (embedded != fits) return false;
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return secs < 30.0;
  });

  // 8. Mock end-to-end runs must match the committed golden CSVs.
  criterion(8, "golden accuracy matrices", [] {
    auto transport = probe_transport();
    const auto config = probe_config();
    for (const auto &[experiment, file] :
         {std::pair{probe::Experiment::detectability, "experiment1.csv"},
          std::pair{probe::Experiment::name, "experiment2.csv"},
          std::pair{probe::Experiment::code, "experiment3.csv"}}) {
      const auto records = probe::run_experiment(config, experiment, transport);
      const std::string csv = probe::aggregate(records).to_csv();
      const std::string golden = testutil::read_file(
          testutil::repo_root() / "tests" / "golden" / file);
      if (csv != golden) return false;
    }
    return true;
  });

  // 9. Built prompts contain the stego text codepoint for codepoint.
  criterion(9, "prompt fidelity", [] {
    const auto config = probe_config();
    for (SchemeId id : kAllSchemes) {
      const std::string name(scheme_name(id));
      const StegoText stego = embed(id, cover(), kPayload, options());
      const std::string utf8 = stego.to_utf8();
      const std::string display = config.display_names.at(name);
      const std::string code =
          testutil::read_file(config.source_files.at(name));
      if (probe::build_detect_prompt(utf8).find(utf8) == std::string::npos)
        return false;
      if (probe::build_extract_prompt(display, utf8).find(utf8) ==
          std::string::npos)
        return false;
      if (probe::build_extract_with_code_prompt(display, utf8, code)
              .find(utf8) == std::string::npos)
        return false;
    }
    return true;
  });

  return failures;
}
