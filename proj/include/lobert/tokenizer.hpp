#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lobert/feed.hpp"

namespace lobert::tok {

struct TokenizerConfig {
  std::vector<int64_t> price_levels{0, 1, 2, 3, 5, 10};
  std::vector<int64_t> volume_levels{0, 50, 100, 200};
  // Upper bounds of the last bins; tied to the PLGS clips so token bins and
  // regressor clamps agree.
  int64_t price_clip = 1000;
  int64_t volume_clip = 1500;
};

inline constexpr int64_t kPadId = 0;
inline constexpr int64_t kMaskId = 1;
inline constexpr int64_t kUnkId = 2;
inline constexpr const char* kPadStr = "[PAD]";
inline constexpr const char* kMaskStr = "[MASK]";
inline constexpr const char* kUnkStr = "[UNK]";

struct QuantizeResult {
  int bin;        // index into levels
  int64_t lower;  // the level value (bin start)
  int64_t upper;  // next level, or clip for the last bin
  bool exact;     // value sits exactly on the level
};

// bin = greatest level <= value; levels must be strictly increasing from 0.
QuantizeResult quantize(int64_t value, const std::vector<int64_t>& levels, int64_t clip);

// The discrete message components behind one token.
struct MsgComponents {
  feed::Side side = feed::Side::Buy;
  feed::MsgType mtype = feed::MsgType::New;
  int64_t price_level = 0;   // level value, not index
  int64_t volume_level = 0;  // level value
  bool round_flag = false;   // volume exactly on its level
  bool operator==(const MsgComponents&) const = default;
};

// Executions always occur at the best available price, and hidden executions
// are encoded the same way, so both collapse to price level 0.
MsgComponents canonicalize(MsgComponents c);

MsgComponents make_components(const feed::RawMessage& msg, int64_t price_diff_ticks,
                              const TokenizerConfig& cfg);

// Canonical token layout: <B|S>:<type>:P<price_level>:V<volume_level>:<Y|N>
std::string stringify(const MsgComponents& c);

// Strict parse of a stringify()-produced token; rejects strings whose levels
// are not in the config or that violate the execute/hidden price rule.
std::optional<MsgComponents> parse_token(const std::string& token, const TokenizerConfig& cfg);

struct DecodedUnknown {};  // distinguished result for [UNK]

// Immutable after build; ids are specials first then lexicographic strings.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary build_from_strings(const std::vector<std::string>& observed);

  int64_t id_of(const std::string& token) const;  // kUnkId when absent
  const std::string& str_of(int64_t id) const;
  size_t size() const { return strings_.size(); }
  bool is_special(int64_t id) const { return id >= 0 && id < 3; }

  // Per-token occurrence counts from the construction corpus.
  const std::map<std::string, int64_t>& counts() const { return counts_; }

  // Exact inverse of stringify for non-special ids; throws on PAD/MASK.
  std::variant<MsgComponents, DecodedUnknown> decode_components(int64_t id,
                                                                const TokenizerConfig& cfg) const;

  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

  const std::vector<std::string>& strings() const { return strings_; }
  static Vocabulary from_strings_exact(std::vector<std::string> lines);  // id = line index

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, int64_t> ids_;
  std::map<std::string, int64_t> counts_;
};

// Replays the corpus through a book to derive price distances, then collects
// the distinct token strings. Throws DataError on an empty corpus.
Vocabulary build_vocab(const std::vector<feed::RawMessage>& corpus, const TokenizerConfig& cfg);

struct MsgToken {
  int64_t token_id;
  MsgComponents components;
};

MsgToken encode(const feed::RawMessage& msg, int64_t price_diff_ticks, const Vocabulary& vocab,
                const TokenizerConfig& cfg);

}  // namespace lobert::tok
