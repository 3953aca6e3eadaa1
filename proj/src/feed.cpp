#include "lobert/feed.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lobert/errors.hpp"

namespace lobert::feed {

const char* to_string(MsgType t) {
  switch (t) {
    case MsgType::New: return "new";
    case MsgType::Edit: return "edit";
    case MsgType::Delete: return "delete";
    case MsgType::Execute: return "execute";
    case MsgType::Hidden: return "hidden";
  }
  return "?";
}

void BookState::add_depth(Side side, int64_t price, int64_t delta) {
  if (side == Side::Buy) {
    auto it = bids_.try_emplace(price, 0).first;
    it->second += delta;
    if (it->second <= 0) bids_.erase(it);
  } else {
    auto it = asks_.try_emplace(price, 0).first;
    it->second += delta;
    if (it->second <= 0) asks_.erase(it);
  }
}

std::optional<int64_t> BookState::best_bid() const {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<int64_t> BookState::best_ask() const {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

std::optional<int64_t> BookState::best_opposing(Side side) const {
  return side == Side::Buy ? best_ask() : best_bid();
}

BookSnapshot BookState::snapshot() const {
  BookSnapshot snap;
  for (int i = 0; i < BookSnapshot::kLevels; ++i) {
    snap.levels[size_t(4 * i)] = BookSnapshot::kAbsent;
    snap.levels[size_t(4 * i + 1)] = 0.0;
    snap.levels[size_t(4 * i + 2)] = BookSnapshot::kAbsent;
    snap.levels[size_t(4 * i + 3)] = 0.0;
  }
  int i = 0;
  for (auto it = asks_.begin(); it != asks_.end() && i < BookSnapshot::kLevels; ++it, ++i) {
    snap.levels[size_t(4 * i)] = double(it->first);
    snap.levels[size_t(4 * i + 1)] = double(it->second);
  }
  i = 0;
  for (auto it = bids_.begin(); it != bids_.end() && i < BookSnapshot::kLevels; ++it, ++i) {
    snap.levels[size_t(4 * i + 2)] = double(it->first);
    snap.levels[size_t(4 * i + 3)] = double(it->second);
  }
  return snap;
}

BookSnapshot BookState::apply(const RawMessage& msg) {
  switch (msg.mtype) {
    case MsgType::New: {
      if (orders_.contains(msg.order_id))
        throw DataError("new order reuses live order_id " + std::to_string(msg.order_id));
      if (msg.volume < 1) throw DataError("new order with volume 0");
      // A resting order may not cross the opposing best.
      if (msg.side == Side::Buy) {
        if (auto ask = best_ask(); ask && msg.price >= *ask)
          throw DataError("crossing buy at " + std::to_string(msg.price) +
                          " against best ask " + std::to_string(*ask));
      } else {
        if (auto bid = best_bid(); bid && msg.price <= *bid)
          throw DataError("crossing sell at " + std::to_string(msg.price) +
                          " against best bid " + std::to_string(*bid));
      }
      orders_.emplace(msg.order_id, Order{msg.side, msg.price, msg.volume});
      add_depth(msg.side, msg.price, int64_t(msg.volume));
      break;
    }
    case MsgType::Edit: {
      auto it = orders_.find(msg.order_id);
      if (it == orders_.end())
        throw DataError("edit for unknown order_id " + std::to_string(msg.order_id));
      Order& ord = it->second;
      if (msg.price != ord.price)
        throw DataError("price-modifying edit on order_id " + std::to_string(msg.order_id) +
                        " (edits are volume-only)");
      add_depth(ord.side, ord.price, int64_t(msg.volume) - int64_t(ord.volume));
      if (msg.volume == 0) {
        orders_.erase(it);
      } else {
        ord.volume = msg.volume;
      }
      break;
    }
    case MsgType::Delete: {
      auto it = orders_.find(msg.order_id);
      if (it == orders_.end())
        throw DataError("delete for unknown order_id " + std::to_string(msg.order_id));
      add_depth(it->second.side, it->second.price, -int64_t(it->second.volume));
      orders_.erase(it);
      break;
    }
    case MsgType::Execute: {
      auto it = orders_.find(msg.order_id);
      if (it == orders_.end())
        throw DataError("execute for unknown order_id " + std::to_string(msg.order_id));
      Order& ord = it->second;
      if (ord.side != msg.side)
        throw DataError("execute side mismatch on order_id " + std::to_string(msg.order_id));
      if (ord.price != msg.price)
        throw DataError("execute price mismatch on order_id " + std::to_string(msg.order_id));
      // Executions happen at the best price of the resting side.
      const auto best = ord.side == Side::Buy ? best_bid() : best_ask();
      if (!best || *best != ord.price)
        throw DataError("execute away from best price on order_id " +
                        std::to_string(msg.order_id));
      if (msg.volume > ord.volume)
        throw DataError("execute volume " + std::to_string(msg.volume) +
                        " exceeds resting volume " + std::to_string(ord.volume) +
                        " on order_id " + std::to_string(msg.order_id));
      add_depth(ord.side, ord.price, -int64_t(msg.volume));
      if (msg.volume == ord.volume) {
        orders_.erase(it);
      } else {
        ord.volume -= msg.volume;
      }
      break;
    }
    case MsgType::Hidden:
      break;  // non-displayed liquidity; visible state unchanged
  }
  return snapshot();
}

std::pair<std::optional<int64_t>, std::optional<int64_t>> best_quotes(const BookState& state) {
  return {state.best_bid(), state.best_ask()};
}

double mid_price_ticks(const BookSnapshot& snap) {
  if (!snap.has_bid() || !snap.has_ask())
    throw DataError("mid price undefined on a one-sided book");
  return (snap.bid_price(0) + snap.ask_price(0)) / 2.0;
}

namespace {

int64_t parse_int_field(const std::string& field, const char* name, size_t line_no) {
  int64_t out = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    throw DataError("line " + std::to_string(line_no) + ": malformed " + std::string(name) +
                    " '" + field + "'");
  return out;
}

RawMessage parse_csv_row(const std::string& line, size_t line_no) {
  std::array<std::string, 6> fields;
  size_t start = 0, idx = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (idx >= fields.size())
        throw DataError("line " + std::to_string(line_no) + ": too many columns");
      fields[idx++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  if (idx != fields.size())
    throw DataError("line " + std::to_string(line_no) + ": expected 6 columns, got " +
                    std::to_string(idx));

  RawMessage msg;
  msg.ts_ms = uint64_t(parse_int_field(fields[0], "ts_ms", line_no));
  const int64_t type = parse_int_field(fields[1], "type", line_no);
  if (type < 1 || type > 5)
    throw DataError("line " + std::to_string(line_no) + ": message type " +
                    std::to_string(type) + " out of range 1..5");
  msg.mtype = MsgType(type);
  const int64_t side = parse_int_field(fields[2], "side", line_no);
  if (side != 1 && side != -1)
    throw DataError("line " + std::to_string(line_no) + ": side must be 1 or -1, got " +
                    std::to_string(side));
  msg.side = Side(side);
  msg.price = parse_int_field(fields[3], "price", line_no);
  const int64_t volume = parse_int_field(fields[4], "volume", line_no);
  const int64_t order_id = parse_int_field(fields[5], "order_id", line_no);
  if (volume < 0)
    throw DataError("line " + std::to_string(line_no) + ": negative volume " +
                    std::to_string(volume));
  if (volume < 1 && msg.mtype != MsgType::Edit)
    throw DataError("line " + std::to_string(line_no) + ": volume 0 only valid for edits");
  if (order_id < 0 || order_id > int64_t(UINT32_MAX))
    throw DataError("line " + std::to_string(line_no) + ": order_id out of range");
  msg.volume = uint32_t(volume);
  msg.order_id = uint32_t(order_id);
  return msg;
}

void check_monotone(const std::vector<RawMessage>& msgs) {
  for (size_t i = 1; i < msgs.size(); ++i) {
    if (msgs[i].ts_ms < msgs[i - 1].ts_ms)
      throw DataError("non-monotone timestamp at row " + std::to_string(i + 1) + ": " +
                      std::to_string(msgs[i].ts_ms) + " after " +
                      std::to_string(msgs[i - 1].ts_ms));
  }
}

template <typename T>
void put_le(std::string& out, T value) {
  for (size_t i = 0; i < sizeof(T); ++i)
    out.push_back(char((uint64_t(value) >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const char* p) {
  uint64_t v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v |= uint64_t(uint8_t(p[i])) << (8 * i);
  return T(v);
}

std::vector<RawMessage> parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open feed file: " + path);
  std::string line;
  if (!std::getline(in, line)) return {};  // empty file -> empty stream
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw DataError("bad CSV header in " + path + ": expected '" + std::string(kCsvHeader) +
                    "', got '" + line + "'");
  std::vector<RawMessage> msgs;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    msgs.push_back(parse_csv_row(line, line_no));
  }
  check_monotone(msgs);
  return msgs;
}

std::vector<RawMessage> parse_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open feed file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.empty()) return {};
  if (content.size() < 8 || std::memcmp(content.data(), "LOBF", 4) != 0)
    throw DataError("bad binary magic in " + path);
  const uint32_t version = get_le<uint32_t>(content.data() + 4);
  if (version != kBinaryVersion)
    throw DataError("unsupported binary feed version " + std::to_string(version));
  const size_t payload = content.size() - 8;
  if (payload % kBinaryRecordSize != 0)
    throw DataError("truncated binary feed: " + std::to_string(payload) +
                    " payload bytes is not a whole number of records");
  std::vector<RawMessage> msgs;
  msgs.reserve(payload / kBinaryRecordSize);
  for (size_t off = 8; off < content.size(); off += kBinaryRecordSize) {
    const char* p = content.data() + off;
    RawMessage msg;
    msg.ts_ms = get_le<uint64_t>(p);
    const uint8_t type = uint8_t(p[8]);
    const int8_t side = int8_t(p[9]);
    const size_t row = (off - 8) / kBinaryRecordSize + 1;
    if (type < 1 || type > 5)
      throw DataError("record " + std::to_string(row) + ": message type out of range");
    if (side != 1 && side != -1)
      throw DataError("record " + std::to_string(row) + ": side must be 1 or -1");
    msg.mtype = MsgType(type);
    msg.side = Side(side);
    msg.price = get_le<int64_t>(p + 10);
    msg.volume = get_le<uint32_t>(p + 18);
    msg.order_id = get_le<uint32_t>(p + 22);
    if (msg.volume < 1 && msg.mtype != MsgType::Edit)
      throw DataError("record " + std::to_string(row) + ": volume 0 only valid for edits");
    msgs.push_back(msg);
  }
  check_monotone(msgs);
  return msgs;
}

}  // namespace

std::vector<RawMessage> parse_feed(const std::string& path, FeedFormat format) {
  return format == FeedFormat::Csv ? parse_csv(path) : parse_binary(path);
}

void write_feed(const std::string& path, const std::vector<RawMessage>& msgs, FeedFormat format) {
  if (format == FeedFormat::Csv) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write feed file: " + path);
    out << kCsvHeader << '\n';
    for (const auto& m : msgs) {
      out << m.ts_ms << ',' << int(m.mtype) << ',' << int(m.side) << ',' << m.price << ','
          << m.volume << ',' << m.order_id << '\n';
    }
  } else {
    std::string buf;
    buf.reserve(8 + msgs.size() * kBinaryRecordSize);
    buf.append("LOBF", 4);
    put_le<uint32_t>(buf, kBinaryVersion);
    for (const auto& m : msgs) {
      put_le<uint64_t>(buf, m.ts_ms);
      buf.push_back(char(uint8_t(m.mtype)));
      buf.push_back(char(int8_t(m.side)));
      put_le<int64_t>(buf, m.price);
      put_le<uint32_t>(buf, m.volume);
      put_le<uint32_t>(buf, m.order_id);
      buf.push_back('\0');
      buf.push_back('\0');
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write feed file: " + path);
    out.write(buf.data(), std::streamsize(buf.size()));
  }
}

}  // namespace lobert::feed
