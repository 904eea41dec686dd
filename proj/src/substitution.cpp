#include "stegomark/substitution.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "stegomark/errors.hpp"

namespace stegomark {

namespace {

char32_t parse_codepoint(const std::string &token, const std::string &file) {
  if (token.size() < 3 || token[0] != 'U' || token[1] != '+')
    throw Error(ErrorCode::IoError,
                file + ": bad codepoint token '" + token + "'");
  const unsigned long v = std::stoul(token.substr(2), nullptr, 16);
  if (v > 0x10FFFF)
    throw Error(ErrorCode::IoError, file + ": codepoint out of range");
  return static_cast<char32_t>(v);
}

std::u32string parse_sequence(const std::string &field, const std::string &file) {
  std::u32string out;
  std::istringstream in(field);
  std::string token;
  while (in >> token) out.push_back(parse_codepoint(token, file));
  if (out.empty())
    throw Error(ErrorCode::IoError, file + ": empty codepoint field");
  return out;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open data file " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::uint64_t pair_key(char32_t base, char32_t selector) {
  return (static_cast<std::uint64_t>(base) << 32) | selector;
}

}  // namespace

std::filesystem::path data_dir() {
  if (const char *env = std::getenv("STEGOMARK_DATA_DIR"); env && *env)
    return env;
#ifdef STEGOMARK_DEFAULT_DATA_DIR
  return STEGOMARK_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

ConfusableTable ConfusableTable::load(const std::filesystem::path &file,
                                      std::size_t expected_entries) {
  ConfusableTable table;
  for (const auto &row : read_rows(file)) {
    if (row.size() != 2)
      throw Error(ErrorCode::IoError,
                  file.string() + ": expected 2 tab-separated fields");
    const std::u32string original = parse_sequence(row[0], file.string());
    const std::u32string variant = parse_sequence(row[1], file.string());
    if (original.size() != 1 || variant.size() != 1)
      throw Error(ErrorCode::IoError,
                  file.string() + ": table entries must be single scalars");
    table.entries_.emplace_back(original[0], variant[0]);
  }
  if (table.entries_.size() != expected_entries)
    throw Error(ErrorCode::IoError,
                file.string() + ": expected " + std::to_string(expected_entries) +
                    " entries, found " + std::to_string(table.entries_.size()));
  for (const auto &[o, v] : table.entries_) {
    if (!table.to_variant_.emplace(o, v).second)
      throw Error(ErrorCode::IoError, file.string() + ": duplicate original");
    if (!table.to_original_.emplace(v, o).second)
      throw Error(ErrorCode::IoError, file.string() + ": duplicate variant");
  }
  for (const auto &[o, v] : table.entries_)
    if (table.to_variant_.count(v) != 0)
      throw Error(ErrorCode::IoError,
                  file.string() + ": variant collides with an original");
  return table;
}

SpaceAlphabet SpaceAlphabet::load(const std::filesystem::path &file,
                                  std::size_t expected_entries) {
  SpaceAlphabet alphabet;
  for (const auto &row : read_rows(file)) {
    if (row.size() != 1)
      throw Error(ErrorCode::IoError, file.string() + ": expected 1 field");
    alphabet.entries_.push_back(parse_sequence(row[0], file.string()));
  }
  if (alphabet.entries_.size() != expected_entries)
    throw Error(ErrorCode::IoError,
                file.string() + ": expected " + std::to_string(expected_entries) +
                    " entries, found " + std::to_string(alphabet.entries_.size()));
  if (alphabet.entries_[0] != std::u32string(1, U' '))
    throw Error(ErrorCode::IoError, file.string() + ": entry 0 must be U+0020");
  for (std::size_t i = 0; i < alphabet.entries_.size(); ++i) {
    const auto &e = alphabet.entries_[i];
    if (e.size() == 1) {
      if (!alphabet.single_index_.emplace(e[0], i).second)
        throw Error(ErrorCode::IoError, file.string() + ": duplicate entry");
    } else if (e.size() == 2) {
      if (!alphabet.pair_index_.emplace(pair_key(e[0], e[1]), i).second)
        throw Error(ErrorCode::IoError, file.string() + ": duplicate entry");
    } else {
      throw Error(ErrorCode::IoError,
                  file.string() + ": entries are at most 2 scalars");
    }
  }
  return alphabet;
}

std::pair<std::size_t, std::size_t> SpaceAlphabet::match(
    const std::u32string &text, std::size_t pos) const {
  // Longest match: a base followed by a known variation selector wins over
  // the bare base.
  if (pos + 1 < text.size()) {
    const auto it = pair_index_.find(pair_key(text[pos], text[pos + 1]));
    if (it != pair_index_.end()) return {it->second, 2};
  }
  const auto it = single_index_.find(text[pos]);
  if (it != single_index_.end()) return {it->second, 1};
  return {npos, 0};
}

const ConfusableTable &lookalikes_table() {
  static const ConfusableTable table =
      ConfusableTable::load(data_dir() / "tables" / "lookalikes.tsv", 23);
  return table;
}

const ConfusableTable &rizzo_table() {
  static const ConfusableTable table =
      ConfusableTable::load(data_dir() / "tables" / "rizzo.tsv", 24);
  return table;
}

const SpaceAlphabet &space_alphabet64() {
  static const SpaceAlphabet alphabet =
      SpaceAlphabet::load(data_dir() / "tables" / "space64.tsv", 64);
  return alphabet;
}

const SpaceAlphabet &space_alphabet16() {
  static const SpaceAlphabet alphabet =
      SpaceAlphabet::load(data_dir() / "tables" / "space16.tsv", 16);
  return alphabet;
}

std::uint64_t count_eligible(const ConfusableTable &table,
                             const std::u32string &text) {
  std::uint64_t n = 0;
  for (char32_t c : text)
    if (table.is_original(c) || table.is_variant(c)) ++n;
  return n;
}

namespace {

// Shared 1-bit-per-eligible-character embed/extract over a confusable table.
StegoText embed_confusable(const ConfusableTable &table, SchemeId scheme,
                           const CoverText &cover, const Payload &payload) {
  const BitString frame = frame_payload(payload);
  if (frame.size() > count_eligible(table, cover.text()))
    throw Error(ErrorCode::InsufficientCapacity,
                "cover has fewer eligible characters than framed bits");
  std::u32string text = cover.text();
  StegoText stego;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < text.size() && bit < frame.size(); ++i) {
    const char32_t c = text[i];
    if (!table.is_original(c) && !table.is_variant(c)) continue;
    const char32_t original = table.is_variant(c) ? table.original_of(c) : c;
    const char32_t wanted = frame[bit] ? table.variant_of(original) : original;
    if (wanted != c) {
      text[i] = wanted;
      stego.insertion_spans.emplace_back(i, i + 1);
    }
    ++bit;
  }
  stego.text = std::move(text);
  stego.scheme = scheme;
  stego.embedded_bits = frame.size();
  return stego;
}

Payload extract_confusable(const ConfusableTable &table,
                           const std::u32string &text) {
  BitString bits;
  bool any_variant = false;
  for (char32_t c : text) {
    if (table.is_original(c)) {
      bits.push_back(false);
    } else if (table.is_variant(c)) {
      bits.push_back(true);
      any_variant = true;
    }
  }
  if (bits.size() < kFrameHeaderBits)
    throw Error(ErrorCode::NoWatermarkFound, "too few eligible positions");
  const auto byte_count =
      static_cast<std::size_t>(bits.read_uint(0, kFrameHeaderBits));
  if (byte_count == 0 && !any_variant)
    throw Error(ErrorCode::NoWatermarkFound, "no variant characters present");
  try {
    return unframe_payload(bits);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::TruncatedFrame)
      throw Error(ErrorCode::CorruptFrame, e.what());
    throw;
  }
}

}  // namespace

StegoText embed_lookalikes(const CoverText &cover, const Payload &payload) {
  return embed_confusable(lookalikes_table(), SchemeId::lookalikes, cover, payload);
}

Payload extract_lookalikes(const std::u32string &text) {
  return extract_confusable(lookalikes_table(), text);
}

StegoText embed_rizzo(const CoverText &cover, const Payload &payload) {
  return embed_confusable(rizzo_table(), SchemeId::rizzo, cover, payload);
}

Payload extract_rizzo(const std::u32string &text) {
  return extract_confusable(rizzo_table(), text);
}

StegoText embed_shazzad(const CoverText &cover, const Payload &payload) {
  const BitString frame = frame_payload(payload);
  const std::uint64_t cap = 6 * static_cast<std::uint64_t>(cover.space_count());
  if (frame.size() > cap)
    throw Error(ErrorCode::InsufficientCapacity,
                "cover whitespaces carry fewer bits than the framed payload");
  const SpaceAlphabet &alphabet = space_alphabet64();
  const std::size_t groups = (frame.size() + 5) / 6;

  std::u32string out;
  out.reserve(cover.text().size());
  StegoText stego;
  std::size_t group = 0;
  for (char32_t c : cover.text()) {
    if (c == U' ' && group < groups) {
      // Last group is zero-padded; framing makes the slack harmless.
      std::uint64_t value = 0;
      for (std::size_t k = 0; k < 6; ++k) {
        const std::size_t bit = group * 6 + k;
        value = (value << 1) | (bit < frame.size() && frame[bit] ? 1 : 0);
      }
      const std::u32string &entry = alphabet.entry(value);
      if (entry != std::u32string(1, U' '))
        stego.insertion_spans.emplace_back(out.size(), out.size() + entry.size());
      out.append(entry);
      ++group;
      continue;
    }
    out.push_back(c);
  }
  stego.text = std::move(out);
  stego.scheme = SchemeId::shazzad;
  stego.embedded_bits = frame.size();
  return stego;
}

Payload extract_shazzad(const std::u32string &text) {
  const SpaceAlphabet &alphabet = space_alphabet64();
  BitString bits;
  bool any_exotic = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto [value, consumed] = alphabet.match(text, i);
    if (value == SpaceAlphabet::npos) {
      // A space-semantics character outside the alphabet breaks the stream.
      if (text[i] == 0x3000 || text[i] == 0x2009 || text[i] == 0x200A)
        throw Error(ErrorCode::CorruptFrame,
                    "space character outside the 64-entry alphabet");
      ++i;
      continue;
    }
    if (value != 0 || consumed == 2) any_exotic = true;
    bits.append_uint(value, 6);
    i += consumed;
  }
  if (!any_exotic)
    throw Error(ErrorCode::NoWatermarkFound, "no alphabet characters present");
  if (bits.size() < kFrameHeaderBits)
    throw Error(ErrorCode::CorruptFrame, "fewer than 16 carrier bits");
  try {
    return unframe_payload(bits);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::TruncatedFrame)
      throw Error(ErrorCode::CorruptFrame, e.what());
    throw;
  }
}

std::u32string confusable_skeleton(const std::u32string &text) {
  const ConfusableTable &la = lookalikes_table();
  const ConfusableTable &rz = rizzo_table();
  const SpaceAlphabet &a64 = space_alphabet64();
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto [value, consumed] = a64.match(text, i);
    if (value != SpaceAlphabet::npos && (value != 0 || consumed == 2)) {
      out.push_back(U' ');
      i += consumed;
      continue;
    }
    const char32_t c = text[i];
    if (la.is_variant(c)) {
      out.push_back(la.original_of(c));
    } else if (rz.is_variant(c)) {
      out.push_back(rz.original_of(c));
    } else {
      out.push_back(c);
    }
    ++i;
  }
  return out;
}

}  // namespace stegomark
