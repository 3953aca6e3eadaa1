#include "lobert/tokenizer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "lobert/errors.hpp"
#include "lobert/scaling.hpp"

namespace lobert::tok {

QuantizeResult quantize(int64_t value, const std::vector<int64_t>& levels, int64_t clip) {
  if (value < 0) throw DataError("quantize input must be non-negative");
  if (levels.empty() || levels.front() != 0)
    throw ConfigError("quantization levels must start at 0");
  int bin = 0;
  for (size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) throw ConfigError("quantization levels must be increasing");
    if (levels[i] <= value) bin = int(i);
  }
  QuantizeResult r;
  r.bin = bin;
  r.lower = levels[size_t(bin)];
  r.upper = size_t(bin) + 1 < levels.size() ? levels[size_t(bin) + 1] : clip;
  r.exact = value == r.lower;
  return r;
}

MsgComponents canonicalize(MsgComponents c) {
  if (c.mtype == feed::MsgType::Execute || c.mtype == feed::MsgType::Hidden) c.price_level = 0;
  return c;
}

MsgComponents make_components(const feed::RawMessage& msg, int64_t price_diff_ticks,
                              const TokenizerConfig& cfg) {
  MsgComponents c;
  c.side = msg.side;
  c.mtype = msg.mtype;
  c.price_level = quantize(price_diff_ticks, cfg.price_levels, cfg.price_clip).lower;
  const auto vq = quantize(int64_t(msg.volume), cfg.volume_levels, cfg.volume_clip);
  c.volume_level = vq.lower;
  c.round_flag = vq.exact;
  return canonicalize(c);
}

std::string stringify(const MsgComponents& raw) {
  const MsgComponents c = canonicalize(raw);
  std::string out;
  out += feed::side_char(c.side);
  out += ':';
  out += char('0' + int(c.mtype));
  out += ":P";
  out += std::to_string(c.price_level);
  out += ":V";
  out += std::to_string(c.volume_level);
  out += ':';
  out += c.round_flag ? 'Y' : 'N';
  return out;
}

namespace {

std::optional<int64_t> parse_level(const std::string& field, char prefix,
                                   const std::vector<int64_t>& levels) {
  if (field.size() < 2 || field[0] != prefix) return std::nullopt;
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data() + 1, field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  if (std::find(levels.begin(), levels.end(), value) == levels.end()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<MsgComponents> parse_token(const std::string& token, const TokenizerConfig& cfg) {
  std::vector<std::string> fields;
  size_t start = 0;
  for (size_t i = 0; i <= token.size(); ++i) {
    if (i == token.size() || token[i] == ':') {
      fields.push_back(token.substr(start, i - start));
      start = i + 1;
    }
  }
  if (fields.size() != 5) return std::nullopt;
  MsgComponents c;
  if (fields[0] == "B") {
    c.side = feed::Side::Buy;
  } else if (fields[0] == "S") {
    c.side = feed::Side::Sell;
  } else {
    return std::nullopt;
  }
  if (fields[1].size() != 1 || fields[1][0] < '1' || fields[1][0] > '5') return std::nullopt;
  c.mtype = feed::MsgType(fields[1][0] - '0');
  const auto price = parse_level(fields[2], 'P', cfg.price_levels);
  if (!price) return std::nullopt;
  c.price_level = *price;
  const auto volume = parse_level(fields[3], 'V', cfg.volume_levels);
  if (!volume) return std::nullopt;
  c.volume_level = *volume;
  if (fields[4] == "Y") {
    c.round_flag = true;
  } else if (fields[4] == "N") {
    c.round_flag = false;
  } else {
    return std::nullopt;
  }
  if ((c.mtype == feed::MsgType::Execute || c.mtype == feed::MsgType::Hidden) &&
      c.price_level != 0)
    return std::nullopt;
  return c;
}

Vocabulary Vocabulary::build_from_strings(const std::vector<std::string>& observed) {
  if (observed.empty()) throw DataError("cannot build vocabulary from an empty corpus");
  Vocabulary v;
  v.strings_ = {kPadStr, kMaskStr, kUnkStr};
  std::set<std::string> distinct;
  for (const auto& s : observed) {
    distinct.insert(s);
    ++v.counts_[s];
  }
  for (const auto& s : distinct) v.strings_.push_back(s);  // std::set is lexicographic
  for (size_t i = 0; i < v.strings_.size(); ++i) v.ids_[v.strings_[i]] = int64_t(i);
  return v;
}

Vocabulary Vocabulary::from_strings_exact(std::vector<std::string> lines) {
  Vocabulary v;
  if (lines.size() < 3 || lines[0] != kPadStr || lines[1] != kMaskStr || lines[2] != kUnkStr)
    throw DataError("vocabulary file must start with [PAD], [MASK], [UNK]");
  v.strings_ = std::move(lines);
  for (size_t i = 0; i < v.strings_.size(); ++i) v.ids_[v.strings_[i]] = int64_t(i);
  return v;
}

int64_t Vocabulary::id_of(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::str_of(int64_t id) const {
  if (id < 0 || size_t(id) >= strings_.size())
    throw DataError("token id " + std::to_string(id) + " out of vocabulary");
  return strings_[size_t(id)];
}

std::variant<MsgComponents, DecodedUnknown> Vocabulary::decode_components(
    int64_t id, const TokenizerConfig& cfg) const {
  if (id == kPadId || id == kMaskId)
    throw DataError("cannot decode special token " + str_of(id));
  if (id == kUnkId) return DecodedUnknown{};
  const auto parsed = parse_token(str_of(id), cfg);
  if (!parsed) throw DataError("vocabulary entry is not a valid token: " + str_of(id));
  return *parsed;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write vocabulary file: " + path);
  for (const auto& s : strings_) out << s << '\n';
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vocabulary file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return from_strings_exact(std::move(lines));
}

Vocabulary build_vocab(const std::vector<feed::RawMessage>& corpus, const TokenizerConfig& cfg) {
  if (corpus.empty()) throw DataError("cannot build vocabulary from an empty corpus");
  feed::BookState book;
  std::vector<std::string> observed;
  observed.reserve(corpus.size());
  for (const auto& msg : corpus) {
    const auto diff = scaling::raw_price_diff(msg, book.best_opposing(msg.side));
    observed.push_back(stringify(make_components(msg, diff, cfg)));
    book.apply(msg);
  }
  return Vocabulary::build_from_strings(observed);
}

MsgToken encode(const feed::RawMessage& msg, int64_t price_diff_ticks, const Vocabulary& vocab,
                const TokenizerConfig& cfg) {
  MsgToken t;
  t.components = make_components(msg, price_diff_ticks, cfg);
  t.token_id = vocab.id_of(stringify(t.components));
  return t;
}

}  // namespace lobert::tok
