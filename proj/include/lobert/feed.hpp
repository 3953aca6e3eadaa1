#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lobert::feed {

enum class MsgType : uint8_t { New = 1, Edit = 2, Delete = 3, Execute = 4, Hidden = 5 };
enum class Side : int8_t { Buy = 1, Sell = -1 };

const char* to_string(MsgType t);
inline char side_char(Side s) { return s == Side::Buy ? 'B' : 'S'; }

// One LOB event as parsed from the feed. Prices are absolute integer ticks.
// Edit carries the new remaining volume (0 removes the order); Delete and
// Execute reference an order previously introduced by New. Hidden executions
// leave the visible book unchanged and may carry order_id 0.
struct RawMessage {
  uint64_t ts_ms = 0;
  MsgType mtype = MsgType::New;
  Side side = Side::Buy;
  int64_t price = 0;
  uint32_t volume = 0;
  uint32_t order_id = 0;
  bool operator==(const RawMessage&) const = default;
};

// 10-level snapshot captured immediately after a message.
// Layout: [ask_p1, ask_v1, bid_p1, bid_v1, ..., ask_p10, ask_v10, bid_p10, bid_v10].
// Absent levels carry the sentinel (price = -1, volume = 0).
struct BookSnapshot {
  static constexpr int kLevels = 10;
  static constexpr double kAbsent = -1.0;
  std::array<double, 40> levels{};

  double ask_price(int i) const { return levels[size_t(4 * i)]; }
  double ask_volume(int i) const { return levels[size_t(4 * i + 1)]; }
  double bid_price(int i) const { return levels[size_t(4 * i + 2)]; }
  double bid_volume(int i) const { return levels[size_t(4 * i + 3)]; }
  bool has_ask() const { return ask_price(0) >= 0.0; }
  bool has_bid() const { return bid_price(0) >= 0.0; }
};

// Single-writer order-book state machine: resting orders keyed by order id
// plus per-side aggregated depth. apply() validates the message against the
// current state and returns the post-message snapshot.
class BookState {
 public:
  struct Order {
    Side side;
    int64_t price;
    uint32_t volume;
  };

  BookSnapshot apply(const RawMessage& msg);

  std::optional<int64_t> best_bid() const;
  std::optional<int64_t> best_ask() const;
  // Best ask for buy-side events, best bid for sell-side events.
  std::optional<int64_t> best_opposing(Side side) const;

  BookSnapshot snapshot() const;

  const std::map<int64_t, int64_t, std::greater<int64_t>>& bid_depth() const { return bids_; }
  const std::map<int64_t, int64_t>& ask_depth() const { return asks_; }
  const std::unordered_map<uint32_t, Order>& orders() const { return orders_; }

 private:
  void add_depth(Side side, int64_t price, int64_t delta);

  std::unordered_map<uint32_t, Order> orders_;
  std::map<int64_t, int64_t, std::greater<int64_t>> bids_;  // price -> total volume
  std::map<int64_t, int64_t> asks_;
};

inline BookSnapshot apply_message(BookState& state, const RawMessage& msg) {
  return state.apply(msg);
}

std::pair<std::optional<int64_t>, std::optional<int64_t>> best_quotes(const BookState& state);

// (best_bid + best_ask) / 2; throws DataError on a one-sided book.
double mid_price_ticks(const BookSnapshot& snap);

enum class FeedFormat { Csv, Binary };

// CSV: header `ts_ms,type,side,price,volume,order_id`, side 1=buy / -1=sell.
// Binary: magic "LOBF", u32 LE version, then fixed 28-byte records
// (u64 ts, u8 type, i8 side, i64 price, u32 volume, u32 order_id, 2 pad).
std::vector<RawMessage> parse_feed(const std::string& path, FeedFormat format);
void write_feed(const std::string& path, const std::vector<RawMessage>& msgs, FeedFormat format);

inline constexpr const char* kCsvHeader = "ts_ms,type,side,price,volume,order_id";
inline constexpr uint32_t kBinaryVersion = 1;
inline constexpr size_t kBinaryRecordSize = 28;

}  // namespace lobert::feed
