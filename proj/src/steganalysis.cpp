#include "stegomark/steganalysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stegomark/errors.hpp"
#include "stegomark/substitution.hpp"
#include "stegomark/whitespace.hpp"
#include "stegomark/zerowidth.hpp"

#include "json.hpp"

namespace stegomark {

namespace {

bool is_variation_selector(char32_t c) { return c >= 0xFE00 && c <= 0xFE0F; }

bool is_small_space(char32_t c) { return c == kThinSpace || c == kHairSpace; }

// Space-semantics characters the detector knows about, beyond U+0020.
bool is_exotic_space(char32_t c) {
  if (is_small_space(c) || c == 0x3000) return true;
  const SpaceAlphabet &a = space_alphabet64();
  return c != U' ' && a.is_base(c);
}

bool is_confusable_variant(char32_t c) {
  return lookalikes_table().is_variant(c) || rizzo_table().is_variant(c);
}

std::vector<std::u32string> split_lines(const std::u32string &text) {
  std::vector<std::u32string> lines;
  std::u32string current;
  for (char32_t c : text) {
    if (c == U'\n') {
      lines.push_back(std::move(current));
      current.clear();
    } else if (c != U'\r') {
      current.push_back(c);
    }
  }
  lines.push_back(std::move(current));
  return lines;
}

}  // namespace

CharCensus census(const std::u32string &text) {
  CharCensus out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (zw::is_invisible(c)) ++out.zero_width_count;
    if (is_confusable_variant(c)) ++out.confusable_count;
    if (is_exotic_space(c)) ++out.exotic_space_count;
    // A variation selector riding on a space is an augmented space entry.
    if (is_variation_selector(c) && i > 0 &&
        (text[i - 1] == U' ' || is_exotic_space(text[i - 1])))
      ++out.exotic_space_count;
  }

  const auto lines = split_lines(text);
  double sum = 0.0;
  double sq_sum = 0.0;
  std::size_t nonblank = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto &line = lines[li];
    if (line.empty()) continue;
    ++nonblank;
    sum += static_cast<double>(line.size());
    sq_sum += static_cast<double>(line.size()) * static_cast<double>(line.size());
    const char32_t last = line.back();
    // The final segment has no terminating newline; a trailing-run carrier
    // (SNOW) is still a trailing-whitespace line.
    if (last == U' ' || last == U'\t') ++out.trailing_ws_lines;
  }
  if (nonblank > 0) {
    const double mean = sum / static_cast<double>(nonblank);
    out.line_length_variance = sq_sum / static_cast<double>(nonblank) - mean * mean;
  }
  return out;
}

DetectionReport scan(const std::u32string &text) {
  DetectionReport report;
  report.census = census(text);

  const auto lines = split_lines(text);
  std::size_t nonblank_lines = 0;
  std::size_t max_line = 0;
  for (const auto &line : lines) {
    if (line.empty()) continue;
    ++nonblank_lines;
    max_line = std::max(max_line, line.size());
  }
  const bool wrapped_signature =
      nonblank_lines >= kWrappedMinLines && max_line <= kWrappedMaxLineLength;

  const CharCensus &c = report.census;
  report.verdict = (c.zero_width_count > 0 || c.confusable_count > 0 ||
                    c.exotic_space_count > 0 || c.trailing_ws_lines > 0 ||
                    wrapped_signature)
                       ? Verdict::watermarked
                       : Verdict::clean;
  if (report.verdict == Verdict::clean) return report;

  std::map<SchemeId, double> score;

  if (c.zero_width_count > 0) {
    if (!text.empty() && text.front() == zw::kStartMarker) {
      score[SchemeId::aitsteg] = 1.0;
    } else if (!text.empty() && text.back() == zw::kEndMarker) {
      score[SchemeId::covertsys] = 1.0;
      score[SchemeId::stegcloak] = 0.3;
    } else {
      score[SchemeId::stegcloak] = 0.9;
      score[SchemeId::covertsys] = 0.2;
    }
  }

  bool small_space_pairs = false;
  bool augmented_space = false;
  bool alphabet_space = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t ch = text[i];
    if (is_small_space(ch)) small_space_pairs = true;
    if (is_variation_selector(ch) && i > 0 &&
        (text[i - 1] == U' ' || is_exotic_space(text[i - 1])))
      augmented_space = true;
    if (!is_small_space(ch) && ch != U' ' && space_alphabet64().is_base(ch))
      alphabet_space = true;
  }
  if (small_space_pairs) score[SchemeId::unispach] = 1.0;
  if (augmented_space) {
    score[SchemeId::shazzad] = 1.0;
    score[SchemeId::innamark] = std::max(score[SchemeId::innamark], 0.3);
  } else if (alphabet_space) {
    score[SchemeId::innamark] = std::max(score[SchemeId::innamark], 0.9);
    score[SchemeId::shazzad] = std::max(score[SchemeId::shazzad], 0.4);
  }

  if (c.confusable_count > 0) {
    bool lookalikes_only = false;
    bool rizzo_only = false;
    for (char32_t ch : text) {
      const bool la = lookalikes_table().is_variant(ch);
      const bool rz = rizzo_table().is_variant(ch);
      if (la && !rz) lookalikes_only = true;
      if (rz && !la) rizzo_only = true;
    }
    if (lookalikes_only && !rizzo_only) {
      score[SchemeId::lookalikes] = 1.0;
      score[SchemeId::rizzo] = std::max(score[SchemeId::rizzo], 0.3);
    } else if (rizzo_only && !lookalikes_only) {
      score[SchemeId::rizzo] = 1.0;
      score[SchemeId::lookalikes] = std::max(score[SchemeId::lookalikes], 0.3);
    } else {
      // Only shared variants seen; undecidable between the two tables.
      score[SchemeId::lookalikes] = std::max(score[SchemeId::lookalikes], 0.5);
      score[SchemeId::rizzo] = std::max(score[SchemeId::rizzo], 0.5);
    }
  }

  // SNOW leaves one pure-whitespace line at the very end.
  const std::u32string &last_line = lines.back();
  const bool snow_run =
      !last_line.empty() && last_line.size() >= kFrameHeaderBits &&
      std::all_of(last_line.begin(), last_line.end(),
                  [](char32_t ch) { return ch == U' ' || ch == U'\t'; });
  if (snow_run) score[SchemeId::snow] = 1.0;

  if (wrapped_signature) {
    score[SchemeId::shiu] =
        (c.trailing_ws_lines > 0 && !snow_run) ? 1.0 : 0.8;
  } else if (c.trailing_ws_lines > 0 && !snow_run) {
    score[SchemeId::shiu] = std::max(score[SchemeId::shiu], 0.4);
  }

  report.attributions.assign(score.begin(), score.end());
  std::stable_sort(report.attributions.begin(), report.attributions.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  return report;
}

std::vector<std::pair<SchemeId, double>> attribute(const DetectionReport &report) {
  if (report.verdict == Verdict::clean)
    throw Error(ErrorCode::NotWatermarked, "report verdict is clean");
  return report.attributions;
}

std::string DetectionReport::to_json() const {
  nlohmann::json j;
  j["census"] = {
      {"zero_width_count", census.zero_width_count},
      {"confusable_count", census.confusable_count},
      {"exotic_space_count", census.exotic_space_count},
      {"trailing_ws_lines", census.trailing_ws_lines},
      {"line_length_variance", census.line_length_variance},
  };
  j["verdict"] = verdict == Verdict::watermarked ? "watermarked" : "clean";
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto &[scheme, s] : attributions)
    attrs.push_back({{"scheme", std::string(scheme_name(scheme))}, {"score", s}});
  j["attributions"] = attrs;
  return j.dump(2);
}

}  // namespace stegomark
