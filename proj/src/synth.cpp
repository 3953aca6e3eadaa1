#include "lobert/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <unordered_map>

#include "lobert/errors.hpp"
#include "lobert/rng.hpp"

namespace lobert::synth {

using feed::MsgType;
using feed::RawMessage;
using feed::Side;

void SynthConfig::validate() const {
  if (n_messages < 1) throw ConfigError("n_messages must be >= 1");
  if (tick0 < 100) throw ConfigError("tick0 too small for book bootstrap");
  const double rate_sum = rate_new + rate_edit + rate_delete + rate_execute + rate_hidden;
  if (rate_sum <= 0.0) throw ConfigError("event intensities must be positive");
  const double vol_sum = p_vol_50 + p_vol_100 + p_vol_200;
  if (p_vol_50 < 0 || p_vol_100 < 0 || p_vol_200 < 0 || vol_sum > 1.0 + 1e-12)
    throw ConfigError("volume mixture probabilities must be in [0,1] and sum to <= 1");
  if (p_motif < 0.0 || p_motif > 1.0) throw ConfigError("p_motif must be in [0,1]");
  if (price_offset_decay < 0.0 || price_offset_decay >= 1.0)
    throw ConfigError("price_offset_decay must be in [0,1)");
}

namespace {

// Generator-side book mirror. Keeps FIFO queues per price level so executes
// can target the front of the best level, and a flat id vector for uniform
// picks. All containers are ordered or index-based so the byte stream is a
// pure function of the seed.
struct Mirror {
  struct Order {
    Side side;
    int64_t price;
    uint32_t volume;
  };

  std::unordered_map<uint32_t, Order> info;
  std::unordered_map<uint32_t, size_t> live_idx;
  std::vector<uint32_t> live;
  std::map<int64_t, std::deque<uint32_t>, std::greater<int64_t>> bid_q;
  std::map<int64_t, std::deque<uint32_t>> ask_q;

  std::optional<int64_t> best_bid() const {
    return bid_q.empty() ? std::nullopt : std::optional(bid_q.begin()->first);
  }
  std::optional<int64_t> best_ask() const {
    return ask_q.empty() ? std::nullopt : std::optional(ask_q.begin()->first);
  }

  bool alive(uint32_t id) const { return info.contains(id); }

  void add(uint32_t id, Side side, int64_t price, uint32_t volume) {
    info[id] = {side, price, volume};
    live_idx[id] = live.size();
    live.push_back(id);
    if (side == Side::Buy) {
      bid_q[price].push_back(id);
    } else {
      ask_q[price].push_back(id);
    }
  }

  void remove(uint32_t id) {
    const Order ord = info.at(id);
    if (ord.side == Side::Buy) {
      auto& q = bid_q.at(ord.price);
      q.erase(std::find(q.begin(), q.end(), id));
      if (q.empty()) bid_q.erase(ord.price);
    } else {
      auto& q = ask_q.at(ord.price);
      q.erase(std::find(q.begin(), q.end(), id));
      if (q.empty()) ask_q.erase(ord.price);
    }
    const size_t idx = live_idx.at(id);
    live_idx[live.back()] = idx;
    std::swap(live[idx], live.back());
    live.pop_back();
    live_idx.erase(id);
    info.erase(id);
  }
};

struct Generator {
  const SynthConfig& cfg;
  Rng rng;
  Mirror book;
  std::vector<RawMessage> out;
  uint64_t ts = 34200000;  // session open, ms
  uint32_t next_id = 1;
  int motif_phase = 0;
  uint32_t motif_pending = 0;

  explicit Generator(const SynthConfig& c) : cfg(c), rng(c.seed) {}

  uint32_t draw_volume() {
    const double u = rng.uniform();
    if (u < cfg.p_vol_50) return 50;
    if (u < cfg.p_vol_50 + cfg.p_vol_100) return 100;
    if (u < cfg.p_vol_50 + cfg.p_vol_100 + cfg.p_vol_200) return 200;
    return uint32_t(1 + rng.below(400));
  }

  uint64_t draw_dt() {
    const double raw = std::round(rng.lognormal(cfg.time_mu, cfg.time_sigma));
    return uint64_t(std::clamp(raw, 0.0, double(cfg.time_clip_ms)));
  }

  int64_t draw_offset() {
    if (rng.bernoulli(cfg.p_far_placement)) return 50 + int64_t(rng.below(2000));
    int64_t offset = 1;
    while (offset < 12 && rng.bernoulli(cfg.price_offset_decay)) ++offset;
    return offset;
  }

  void emit(MsgType type, Side side, int64_t price, uint32_t volume, uint32_t id, uint64_t dt) {
    ts += dt;
    out.push_back(RawMessage{ts, type, side, price, volume, id});
    switch (type) {
      case MsgType::New: book.add(id, side, price, volume); break;
      case MsgType::Delete: book.remove(id); break;
      case MsgType::Edit:
        if (volume == 0) {
          book.remove(id);
        } else {
          book.info.at(id).volume = volume;
        }
        break;
      case MsgType::Execute: {
        auto& ord = book.info.at(id);
        if (volume == ord.volume) {
          book.remove(id);
        } else {
          ord.volume -= volume;
        }
        break;
      }
      case MsgType::Hidden: break;
    }
  }

  void emit_new(Side side, int64_t offset, uint32_t volume, uint64_t dt) {
    int64_t price;
    if (side == Side::Buy) {
      const int64_t anchor = book.best_ask() ? *book.best_ask()
                             : book.best_bid() ? *book.best_bid() + 10
                                               : cfg.tick0 + 5;
      price = std::max<int64_t>(anchor - offset, 1);
    } else {
      const int64_t anchor = book.best_bid() ? *book.best_bid()
                             : book.best_ask() ? *book.best_ask() - 10
                                               : cfg.tick0 - 5;
      price = anchor + offset;
    }
    emit(MsgType::New, side, price, volume, next_id++, dt);
  }

  void bootstrap() {
    for (int i = 0; i < 10; ++i) {
      emit(MsgType::New, Side::Sell, cfg.tick0 + 4 + i, draw_volume(), next_id++, i == 0 ? 0 : 1);
      emit(MsgType::New, Side::Buy, cfg.tick0 - 5 - i, draw_volume(), next_id++, 1);
    }
  }

  // Two adds and two deletes per cycle, one per side, with fixed price
  // offsets (4 and 7 ticks), volumes strictly between quantization levels
  // (120 and 130) and fixed time gaps. Self-heals if random flow consumed
  // the pending order.
  void motif_step() {
    switch (motif_phase) {
      case 0:
        emit_new(Side::Buy, 4, 120, 3);
        motif_pending = next_id - 1;
        motif_phase = 1;
        break;
      case 1:
        if (book.alive(motif_pending)) {
          const auto& ord = book.info.at(motif_pending);
          emit(MsgType::Delete, ord.side, ord.price, ord.volume, motif_pending, 5);
          motif_phase = 2;
        } else {
          emit_new(Side::Buy, 4, 120, 3);
          motif_pending = next_id - 1;
        }
        break;
      case 2:
        emit_new(Side::Sell, 7, 130, 3);
        motif_pending = next_id - 1;
        motif_phase = 3;
        break;
      default:
        if (book.alive(motif_pending)) {
          const auto& ord = book.info.at(motif_pending);
          emit(MsgType::Delete, ord.side, ord.price, ord.volume, motif_pending, 5);
          motif_phase = 0;
        } else {
          emit_new(Side::Sell, 7, 130, 3);
          motif_pending = next_id - 1;
        }
        break;
    }
  }

  void random_step() {
    const size_t kind = rng.categorical(
        {cfg.rate_new, cfg.rate_edit, cfg.rate_delete, cfg.rate_execute, cfg.rate_hidden});
    switch (kind) {
      case 1: {  // edit
        if (book.live.empty()) break;
        const uint32_t id = book.live[rng.below(book.live.size())];
        const auto& ord = book.info.at(id);
        const uint32_t new_vol = rng.bernoulli(0.02) ? 0 : draw_volume();
        emit(MsgType::Edit, ord.side, ord.price, new_vol, id, draw_dt());
        return;
      }
      case 2: {  // delete
        if (book.live.empty()) break;
        const uint32_t id = book.live[rng.below(book.live.size())];
        const auto& ord = book.info.at(id);
        emit(MsgType::Delete, ord.side, ord.price, ord.volume, id, draw_dt());
        return;
      }
      case 3: {  // execute against the front of the best level
        Side side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
        if (side == Side::Buy && book.bid_q.empty()) side = Side::Sell;
        if (side == Side::Sell && book.ask_q.empty()) side = Side::Buy;
        if (side == Side::Buy ? book.bid_q.empty() : book.ask_q.empty()) break;
        const uint32_t id = side == Side::Buy ? book.bid_q.begin()->second.front()
                                              : book.ask_q.begin()->second.front();
        const auto& ord = book.info.at(id);
        const uint32_t drawn = draw_volume();
        const uint32_t vol = std::min(drawn, ord.volume);
        emit(MsgType::Execute, side, ord.price, vol, id, draw_dt());
        return;
      }
      case 4: {  // hidden execution, visible book untouched
        const Side side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
        const auto opp = side == Side::Buy ? book.best_ask() : book.best_bid();
        emit(MsgType::Hidden, side, opp.value_or(cfg.tick0), draw_volume(), 0, draw_dt());
        return;
      }
      default: break;
    }
    emit_new(rng.bernoulli(0.5) ? Side::Buy : Side::Sell, draw_offset(), draw_volume(),
             draw_dt());
  }

  std::vector<RawMessage> run() {
    bootstrap();
    while (int64_t(out.size()) < cfg.n_messages) {
      if (cfg.p_motif > 0.0 && rng.bernoulli(cfg.p_motif)) {
        motif_step();
      } else {
        random_step();
      }
    }
    out.resize(size_t(cfg.n_messages));
    return std::move(out);
  }
};

}  // namespace

std::vector<RawMessage> generate(const SynthConfig& config) {
  config.validate();
  Generator gen(config);
  return gen.run();
}

DatasetPaths write_dataset(const std::vector<RawMessage>& messages, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  DatasetPaths paths{(fs::path(out_dir) / "messages.csv").string(),
                     (fs::path(out_dir) / "snapshots.csv").string()};

  std::ofstream snaps(paths.snapshots);
  if (!snaps) throw DataError("cannot write " + paths.snapshots);
  feed::BookState book;
  for (size_t i = 0; i < messages.size(); ++i) {
    feed::BookSnapshot snap;
    try {
      snap = book.apply(messages[i]);
    } catch (const DataError& e) {
      throw DataError("replay failed at message index " + std::to_string(i) + ": " + e.what());
    }
    for (size_t j = 0; j < snap.levels.size(); ++j) {
      if (j) snaps << ',';
      snaps << int64_t(std::llround(snap.levels[j]));
    }
    snaps << '\n';
  }
  feed::write_feed(paths.messages, messages, feed::FeedFormat::Csv);
  return paths;
}

}  // namespace lobert::synth
