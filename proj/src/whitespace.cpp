#include "stegomark/whitespace.hpp"

#include <algorithm>
#include <vector>

#include "stegomark/errors.hpp"
#include "stegomark/substitution.hpp"

namespace stegomark {

namespace {

Payload unframe_or_corrupt(const BitString &bits) {
  try {
    return unframe_payload(bits);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::TruncatedFrame)
      throw Error(ErrorCode::CorruptFrame, e.what());
    throw;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SNOW

StegoText embed_snow(const CoverText &cover, const Payload &payload) {
  const BitString frame = frame_payload(payload);
  std::u32string text = cover.text();
  const std::size_t start = text.size();
  if (text.empty() || text.back() != U'\n') text.push_back(U'\n');
  for (std::size_t i = 0; i < frame.size(); ++i)
    text.push_back(frame[i] ? U'\t' : U' ');

  StegoText stego;
  stego.text = std::move(text);
  stego.scheme = SchemeId::snow;
  stego.embedded_bits = frame.size();
  stego.insertion_spans = {{start, stego.text.size()}};
  return stego;
}

Payload extract_snow(const std::u32string &text) {
  std::size_t start = text.size();
  while (start > 0 && (text[start - 1] == U' ' || text[start - 1] == U'\t'))
    --start;
  const std::size_t run = text.size() - start;
  if (run < kFrameHeaderBits)
    throw Error(ErrorCode::NoWatermarkFound, "no trailing whitespace run");
  BitString bits;
  for (std::size_t i = start; i < text.size(); ++i)
    bits.push_back(text[i] == U'\t');
  return unframe_or_corrupt(bits);
}

// ---------------------------------------------------------------------------
// UniSpaCh

namespace {

std::u32string pair_for(std::uint64_t value) {
  std::u32string out;
  out.push_back((value & 2) ? kHairSpace : kThinSpace);
  out.push_back((value & 1) ? kHairSpace : kThinSpace);
  return out;
}

bool is_small_space(char32_t c) { return c == kThinSpace || c == kHairSpace; }

}  // namespace

std::uint64_t unispach_filler_bits(const CoverText &cover) {
  return 2 * kUnispachFillerPairsPerParagraph *
         static_cast<std::uint64_t>(cover.paragraph_count());
}

StegoText embed_unispach(const CoverText &cover, const Payload &payload) {
  const BitString frame = frame_payload(payload);
  const std::uint64_t cap =
      2 * static_cast<std::uint64_t>(cover.space_count()) +
      unispach_filler_bits(cover);
  if (frame.size() > cap)
    throw Error(ErrorCode::InsufficientCapacity,
                "framed payload exceeds space and paragraph-filler capacity");

  StegoText stego;
  std::u32string out;
  out.reserve(cover.text().size() + frame.size() / 2);
  std::size_t bit = 0;
  for (char32_t c : cover.text()) {
    if (c == U' ' && bit + 2 <= frame.size()) {
      const std::uint64_t value = frame.read_uint(bit, 2);
      stego.insertion_spans.emplace_back(out.size(), out.size() + 2);
      out.append(pair_for(value));
      bit += 2;
      continue;
    }
    out.push_back(c);
  }

  if (bit < frame.size()) {
    // Remaining bits go into filler runs at the end of each paragraph.
    std::vector<std::size_t> ends;  // insertion offsets, descending later
    bool nonblank = false;
    std::size_t line_start = 0;
    std::size_t last_nonblank_end = 0;
    for (std::size_t i = 0; i <= out.size(); ++i) {
      if (i == out.size() || out[i] == U'\n') {
        const bool line_nonblank = [&] {
          for (std::size_t k = line_start; k < i; ++k)
            if (out[k] != U'\r') return true;
          return false;
        }();
        if (line_nonblank) {
          last_nonblank_end = i;
          nonblank = true;
        } else if (nonblank) {
          ends.push_back(last_nonblank_end);
          nonblank = false;
        }
        line_start = i + 1;
      }
    }
    if (nonblank) ends.push_back(last_nonblank_end);

    // Insert back to front so earlier offsets stay valid; bits are assigned
    // to paragraph ends in document order.
    std::vector<std::u32string> runs(ends.size());
    for (std::size_t p = 0; p < ends.size() && bit < frame.size(); ++p) {
      for (std::size_t k = 0;
           k < kUnispachFillerPairsPerParagraph && bit + 2 <= frame.size(); ++k) {
        runs[p] += pair_for(frame.read_uint(bit, 2));
        bit += 2;
      }
    }
    for (std::size_t p = ends.size(); p-- > 0;) {
      if (!runs[p].empty()) out.insert(ends[p], runs[p]);
    }
  }
  if (bit < frame.size())
    throw Error(ErrorCode::InsufficientCapacity,
                "paragraph filler exhausted before the frame was embedded");

  stego.text = std::move(out);
  stego.scheme = SchemeId::unispach;
  stego.embedded_bits = frame.size();
  return stego;
}

Payload extract_unispach(const std::u32string &text) {
  // Word-gap pairs decode before paragraph fillers; a filler run is a
  // small-space run followed by a line break or the end of text.
  BitString gap_bits;
  BitString filler_bits;
  bool any = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_small_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && is_small_space(text[end])) ++end;
    if ((end - i) % 2 != 0)
      throw Error(ErrorCode::CorruptFrame, "odd-length small-space run");
    const bool filler = end == text.size() || text[end] == U'\n' || text[end] == U'\r';
    BitString &sink = filler ? filler_bits : gap_bits;
    for (std::size_t k = i; k < end; ++k)
      sink.push_back(text[k] == kHairSpace);
    any = true;
    i = end;
  }
  if (!any)
    throw Error(ErrorCode::NoWatermarkFound, "no small-space pairs present");
  BitString bits = gap_bits;
  bits.append(filler_bits);
  return unframe_or_corrupt(bits);
}

// ---------------------------------------------------------------------------
// Innamark

StegoText embed_innamark(const CoverText &cover, const Payload &payload) {
  const BitString frame = frame_payload(payload);
  const std::size_t nibbles = frame.size() / 4;
  if (nibbles > cover.space_count())
    throw Error(ErrorCode::InsufficientCapacity,
                "cover has fewer spaces than frame nibbles");
  const SpaceAlphabet &alphabet = space_alphabet16();

  StegoText stego;
  std::u32string text = cover.text();
  std::size_t k = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != U' ') continue;
    // The frame repeats cyclically across every space.
    const std::uint64_t value = frame.read_uint((k % nibbles) * 4, 4);
    const std::u32string &entry = alphabet.entry(value);
    if (entry[0] != U' ') {
      text[i] = entry[0];
      stego.insertion_spans.emplace_back(i, i + 1);
    }
    ++k;
  }
  stego.text = std::move(text);
  stego.scheme = SchemeId::innamark;
  stego.embedded_bits = frame.size();
  return stego;
}

Payload extract_innamark(const std::u32string &text) {
  const SpaceAlphabet &alphabet = space_alphabet16();
  std::vector<std::uint8_t> values;
  bool any_exotic = false;
  for (char32_t c : text) {
    const auto [value, consumed] = alphabet.match(std::u32string(1, c), 0);
    if (value == SpaceAlphabet::npos || consumed != 1) continue;
    values.push_back(static_cast<std::uint8_t>(value));
    if (value != 0) any_exotic = true;
  }
  if (!any_exotic)
    throw Error(ErrorCode::NoWatermarkFound, "no alphabet characters present");

  BitString all;
  for (std::uint8_t v : values) all.append_uint(v, 4);
  if (all.size() < kFrameHeaderBits)
    throw Error(ErrorCode::CorruptFrame, "fewer than 16 carrier bits");
  const auto byte_count =
      static_cast<std::size_t>(all.read_uint(0, kFrameHeaderBits));
  const std::size_t frame_bits = kFrameHeaderBits + byte_count * 8;
  if (all.size() < frame_bits)
    throw Error(ErrorCode::CorruptFrame, "carrier shorter than one frame");

  const std::size_t reps = all.size() / frame_bits;
  BitString voted;
  for (std::size_t b = 0; b < frame_bits; ++b) {
    std::size_t ones = 0;
    for (std::size_t r = 0; r < reps; ++r)
      if (all[r * frame_bits + b]) ++ones;
    // Bitwise majority across complete repetitions; ties fall back to the
    // first copy.
    bool bit = all[b];
    if (2 * ones > reps) bit = true;
    else if (2 * ones < reps) bit = false;
    voted.push_back(bit);
  }
  return unframe_or_corrupt(voted);
}

// ---------------------------------------------------------------------------
// Shiu

namespace {

struct WrapSim {
  std::vector<std::u32string> words;
  std::size_t wrap_width;

  // Largest end index (inclusive) of a line starting at word i.
  std::size_t max_fit(std::size_t i) const {
    std::size_t len = words[i].size();
    std::size_t e = i;
    while (e + 1 < words.size() &&
           len + 1 + words[e + 1].size() <= wrap_width) {
      len += 1 + words[e + 1].size();
      ++e;
    }
    return e;
  }

  // Number of admissible break candidates for a line starting at i.
  // Only a full set of four carries break-selection bits.
  std::size_t candidate_count(std::size_t i) const {
    const std::size_t kmax = max_fit(i);
    const std::size_t first = (kmax >= i + 3) ? kmax - 3 : i;
    return kmax - first + 1;
  }
};

std::vector<std::u32string> tokenize(const std::u32string &text) {
  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t c : text) {
    if (c == U' ' || c == U'\t' || c == U'\n' || c == U'\r') {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace

std::uint64_t shiu_capacity_bits(const CoverText &cover, std::size_t wrap_width) {
  const WrapSim sim{tokenize(cover.text()), wrap_width};
  if (sim.words.empty()) return 0;
  // Worst case over payloads: every line takes its latest break candidate,
  // giving the fewest and longest lines.
  std::uint64_t bits = 0;
  std::size_t i = 0;
  while (i < sim.words.size()) {
    bits += (sim.candidate_count(i) == 4) ? 3 : 1;
    i = sim.max_fit(i) + 1;
  }
  return bits;
}

StegoText embed_shiu(const CoverText &cover, const Payload &payload,
                     std::size_t wrap_width) {
  const BitString frame = frame_payload(payload);
  if (frame.size() > shiu_capacity_bits(cover, wrap_width))
    throw Error(ErrorCode::InsufficientCapacity,
                "wrapped cover carries fewer bits than the framed payload");
  const WrapSim sim{tokenize(cover.text()), wrap_width};

  std::u32string out;
  StegoText stego;
  std::size_t bit = 0;
  std::size_t i = 0;
  while (i < sim.words.size()) {
    const std::size_t kmax = sim.max_fit(i);
    const std::size_t first = (kmax >= i + 3) ? kmax - 3 : i;
    std::size_t end = kmax;
    if (kmax - first + 1 == 4 && bit < frame.size()) {
      std::uint64_t j = 0;
      for (std::size_t k = 0; k < 2; ++k) {
        j <<= 1;
        if (bit < frame.size()) j |= frame[bit++] ? 1 : 0;
      }
      end = first + static_cast<std::size_t>(j);
    }
    const std::size_t line_start = out.size();
    for (std::size_t w = i; w <= end; ++w) {
      if (w > i) out.push_back(U' ');
      out.append(sim.words[w]);
    }
    bool trailing = false;
    if (bit < frame.size()) trailing = frame[bit++];
    if (trailing) {
      out.push_back(U' ');
      stego.insertion_spans.emplace_back(out.size() - 1, out.size());
    }
    (void)line_start;
    i = end + 1;
    if (i < sim.words.size()) out.push_back(U'\n');
  }
  if (bit < frame.size())
    throw Error(ErrorCode::InsufficientCapacity,
                "line supply exhausted before the frame was embedded");

  stego.text = std::move(out);
  stego.scheme = SchemeId::shiu;
  stego.embedded_bits = frame.size();
  return stego;
}

Payload extract_shiu(const std::u32string &text, std::size_t wrap_width) {
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

  if (lines.size() < (kFrameHeaderBits + 2) / 3)
    throw Error(ErrorCode::NoWatermarkFound,
                "too few lines to carry a frame");
  for (const auto &line : lines)
    if (line.size() > wrap_width + 1)
      throw Error(ErrorCode::ConfigMismatch,
                  "line exceeds wrap_width + 1 characters");

  const WrapSim sim{tokenize(text), wrap_width};
  BitString bits;
  std::size_t i = 0;
  for (const auto &line : lines) {
    const std::vector<std::u32string> line_words = tokenize(line);
    if (line_words.empty())
      throw Error(ErrorCode::CorruptFrame, "blank line inside wrapped text");
    if (i >= sim.words.size())
      throw Error(ErrorCode::CorruptFrame, "line structure out of sync");
    const std::size_t end = i + line_words.size() - 1;
    const std::size_t kmax = sim.max_fit(i);
    const std::size_t first = (kmax >= i + 3) ? kmax - 3 : i;
    if (kmax - first + 1 == 4) {
      if (end < first || end > kmax)
        throw Error(ErrorCode::CorruptFrame,
                    "line break outside the candidate window");
      bits.append_uint(end - first, 2);
    } else if (end != kmax) {
      throw Error(ErrorCode::CorruptFrame,
                  "line break outside the candidate window");
    }
    bits.push_back(!line.empty() && line.back() == U' ');
    i = end + 1;
  }
  return unframe_or_corrupt(bits);
}

}  // namespace stegomark
