#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "stegomark/scheme.hpp"

namespace stegomark {

// Resolves the table directory: $STEGOMARK_DATA_DIR when set, otherwise the
// location baked in at configure time.
std::filesystem::path data_dir();

// One-to-one confusable substitution table loaded from a data file.
// Originals and variants are each distinct; no variant equals an original.
class ConfusableTable {
public:
  static ConfusableTable load(const std::filesystem::path &file,
                              std::size_t expected_entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<char32_t, char32_t>> &entries() const {
    return entries_;
  }

  bool is_original(char32_t c) const { return to_variant_.count(c) != 0; }
  bool is_variant(char32_t c) const { return to_original_.count(c) != 0; }
  char32_t variant_of(char32_t original) const { return to_variant_.at(original); }
  char32_t original_of(char32_t variant) const { return to_original_.at(variant); }

private:
  std::vector<std::pair<char32_t, char32_t>> entries_;
  std::unordered_map<char32_t, char32_t> to_variant_;
  std::unordered_map<char32_t, char32_t> to_original_;
};

// Ordered alphabet of space-semantics entries; index encodes the value.
// Entry 0 is U+0020, so value 0 leaves the text unchanged. Entries may be
// a single scalar or a base scalar plus a variation selector.
class SpaceAlphabet {
public:
  static SpaceAlphabet load(const std::filesystem::path &file,
                            std::size_t expected_entries);

  std::size_t size() const { return entries_.size(); }
  const std::u32string &entry(std::size_t value) const { return entries_[value]; }
  const std::vector<std::u32string> &entries() const { return entries_; }

  bool is_base(char32_t c) const { return single_index_.count(c) != 0; }

  // Longest-match lookup at text[pos]. Returns the encoded value and the
  // number of scalars consumed, or {npos, 0} when text[pos] starts no entry.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::pair<std::size_t, std::size_t> match(const std::u32string &text,
                                            std::size_t pos) const;

private:
  std::vector<std::u32string> entries_;
  std::unordered_map<char32_t, std::size_t> single_index_;
  std::unordered_map<std::uint64_t, std::size_t> pair_index_;
};

const ConfusableTable &lookalikes_table();  // 23 letters
const ConfusableTable &rizzo_table();       // 2 symbols + 14 letters + 8 whitespaces
const SpaceAlphabet &space_alphabet64();    // 6 bits per whitespace
const SpaceAlphabet &space_alphabet16();    // 4 bits per whitespace

std::uint64_t count_eligible(const ConfusableTable &table,
                             const std::u32string &text);

StegoText embed_lookalikes(const CoverText &cover, const Payload &payload);
Payload extract_lookalikes(const std::u32string &text);

StegoText embed_rizzo(const CoverText &cover, const Payload &payload);
Payload extract_rizzo(const std::u32string &text);

StegoText embed_shazzad(const CoverText &cover, const Payload &payload);
Payload extract_shazzad(const std::u32string &text);

// Maps every known variant (both confusable tables and the space alphabets)
// back to its original; inverse view used by the invariance checks.
std::u32string confusable_skeleton(const std::u32string &text);

}  // namespace stegomark
