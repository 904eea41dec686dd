#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stegomark/scheme.hpp"

namespace stegomark {

// Per-character-class counts over an input text; all recomputable.
struct CharCensus {
  std::size_t zero_width_count = 0;
  std::size_t confusable_count = 0;
  std::size_t exotic_space_count = 0;
  std::size_t trailing_ws_lines = 0;
  double line_length_variance = 0.0;
};

enum class Verdict { watermarked, clean };

struct DetectionReport {
  CharCensus census;
  Verdict verdict = Verdict::clean;
  // (scheme, score in [0,1]) sorted by descending score.
  std::vector<std::pair<SchemeId, double>> attributions;

  std::string to_json() const;
};

// Wrapped-line signature thresholds for the Shiu heuristic.
inline constexpr std::size_t kWrappedMinLines = 10;
inline constexpr std::size_t kWrappedMaxLineLength = 80;

CharCensus census(const std::u32string &text);
DetectionReport scan(const std::u32string &text);

// Ranked candidate schemes; throws NotWatermarked on a clean report.
std::vector<std::pair<SchemeId, double>> attribute(const DetectionReport &report);

}  // namespace stegomark
