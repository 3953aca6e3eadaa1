#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lobert/errors.hpp"
#include "lobert/feed.hpp"
#include "lobert/synth.hpp"

using namespace lobert;
using feed::MsgType;
using feed::Side;

TEST_SUITE("synth") {

TEST_CASE("seeded generation is deterministic") {
  synth::SynthConfig cfg;
  cfg.seed = 1;
  cfg.n_messages = 100;
  CHECK(synth::generate(cfg) == synth::generate(cfg));
  synth::SynthConfig other = cfg;
  other.seed = 2;
  CHECK(synth::generate(cfg) != synth::generate(other));
}

TEST_CASE("default config concentrates volume at 100 units") {
  synth::SynthConfig cfg;
  cfg.seed = 42;
  cfg.n_messages = 100000;
  const auto msgs = synth::generate(cfg);
  int64_t at_100 = 0;
  for (const auto& m : msgs) at_100 += m.volume == 100;
  const double frac = double(at_100) / double(msgs.size());
  CHECK(frac >= 0.55);
  CHECK(frac <= 0.70);
  CHECK(frac >= 0.60);  // target of the default mixture
}

TEST_CASE("pure motif stream repeats a 4-message cycle") {
  synth::SynthConfig cfg;
  cfg.seed = 3;
  cfg.n_messages = 100;
  cfg.p_motif = 1.0;
  const auto msgs = synth::generate(cfg);
  // after the 20 bootstrap orders the motif is strictly periodic
  const size_t base = 20;
  for (size_t i = base; i + 4 < msgs.size(); ++i) {
    const auto& a = msgs[i];
    const auto& b = msgs[i + 4];
    CHECK(a.mtype == b.mtype);
    CHECK(a.side == b.side);
    CHECK(a.volume == b.volume);
    CHECK(a.price == b.price);  // book returns to baseline each cycle
  }
  CHECK(msgs[base].mtype == MsgType::New);
  CHECK(msgs[base].side == Side::Buy);
  CHECK(msgs[base].volume == 120);
  CHECK(msgs[base + 1].mtype == MsgType::Delete);
  CHECK(msgs[base + 2].mtype == MsgType::New);
  CHECK(msgs[base + 2].side == Side::Sell);
  CHECK(msgs[base + 2].volume == 130);
  CHECK(msgs[base + 3].mtype == MsgType::Delete);
}

TEST_CASE("generated streams replay cleanly and never cross") {
  for (double p_motif : {0.0, 0.5, 1.0}) {
    synth::SynthConfig cfg;
    cfg.seed = 17;
    cfg.n_messages = 5000;
    cfg.p_motif = p_motif;
    feed::BookState book;
    for (const auto& msg : synth::generate(cfg)) {
      const auto snap = book.apply(msg);  // throws on any violation
      if (snap.has_bid() && snap.has_ask()) REQUIRE(snap.ask_price(0) > snap.bid_price(0));
    }
  }
}

TEST_CASE("executes always hit the best opposing price") {
  synth::SynthConfig cfg;
  cfg.seed = 23;
  cfg.n_messages = 20000;
  feed::BookState book;
  for (const auto& msg : synth::generate(cfg)) {
    if (msg.mtype == MsgType::Execute) {
      const auto best = msg.side == Side::Buy ? book.best_bid() : book.best_ask();
      REQUIRE(best.has_value());
      CHECK(*best == msg.price);
    }
    book.apply(msg);
  }
}

TEST_CASE("timestamps are non-decreasing and volume invariants hold") {
  synth::SynthConfig cfg;
  cfg.seed = 29;
  cfg.n_messages = 10000;
  const auto msgs = synth::generate(cfg);
  for (size_t i = 0; i < msgs.size(); ++i) {
    if (i) CHECK(msgs[i].ts_ms >= msgs[i - 1].ts_ms);
    if (msgs[i].mtype != MsgType::Edit) CHECK(msgs[i].volume >= 1);
  }
}

TEST_CASE("write_dataset emits matching row counts and roundtrips") {
  synth::SynthConfig cfg;
  cfg.seed = 31;
  cfg.n_messages = 512;
  const auto msgs = synth::generate(cfg);
  const auto dir = (std::filesystem::temp_directory_path() / "synth_ds").string();
  const auto paths = synth::write_dataset(msgs, dir);

  const auto parsed = feed::parse_feed(paths.messages, feed::FeedFormat::Csv);
  CHECK(parsed == msgs);

  std::ifstream snaps(paths.snapshots);
  size_t rows = 0;
  std::string line;
  while (std::getline(snaps, line)) {
    ++rows;
    size_t cols = 1;
    for (char c : line) cols += c == ',';
    CHECK(cols == 40);
  }
  CHECK(rows == 512);
}

TEST_CASE("write_dataset of an empty stream emits two empty files") {
  const auto dir = (std::filesystem::temp_directory_path() / "synth_empty").string();
  const auto paths = synth::write_dataset({}, dir);
  CHECK(std::filesystem::file_size(paths.snapshots) == 0);
  CHECK(feed::parse_feed(paths.messages, feed::FeedFormat::Csv).empty());
}

TEST_CASE("invalid configs are rejected") {
  synth::SynthConfig cfg;
  cfg.n_messages = 0;
  CHECK_THROWS_AS(synth::generate(cfg), ConfigError);
  cfg.n_messages = 10;
  cfg.p_vol_100 = 1.5;
  CHECK_THROWS_AS(synth::generate(cfg), ConfigError);
}

}  // TEST_SUITE
