#include <doctest.h>

#include <cmath>

#include "lobert/errors.hpp"
#include "lobert/feed.hpp"
#include "lobert/scaling.hpp"

using namespace lobert;
using scaling::PlgsParams;

namespace {

// Series oracle: evaluate s(x) by literally summing mu^k terms.
double plgs_series_oracle(double x, const PlgsParams& p) {
  const double z = std::min(x, p.tau_clip);
  if (z <= p.tau_start) return z / p.tau_max;
  const double over = z - p.tau_start;
  const int n = int(std::floor(over));
  const double f = over - n;
  double s = p.tau_start;
  double term = 1.0;
  for (int k = 0; k < n; ++k) {
    s += term;
    term *= p.mu;
  }
  s += f * term;
  return s / p.tau_max;
}

feed::BookSnapshot snapshot_bid_ask(int64_t bid, int64_t bid_vol, int64_t ask, int64_t ask_vol) {
  feed::BookState book;
  book.apply({1, feed::MsgType::New, feed::Side::Buy, bid, uint32_t(bid_vol), 1});
  book.apply({2, feed::MsgType::New, feed::Side::Sell, ask, uint32_t(ask_vol), 2});
  return book.snapshot();
}

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("plgs price anchor: tau_start maps to half of the output range") {
  CHECK(scaling::plgs_forward(10.0, PlgsParams::price()) == 0.5);
  CHECK(scaling::plgs_forward(0.0, PlgsParams::price()) == 0.0);
}

TEST_CASE("plgs geometric branch matches the direct series") {
  // x = 12 with (10, 20, 1000): s = 10 + 1 + 0.9 = 11.9 -> 0.595
  CHECK(scaling::plgs_forward(12.0, PlgsParams::price()) == doctest::Approx(0.595).epsilon(1e-12));
  for (const auto* p : {&PlgsParams::price(), &PlgsParams::volume(), &PlgsParams::time()}) {
    for (double x = 0.0; x <= p->tau_clip + 10.0; x += 7.3) {
      CHECK(scaling::plgs_forward(x, *p) ==
            doctest::Approx(plgs_series_oracle(x, *p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("plgs volume anchor") {
  CHECK(scaling::plgs_forward(200.0, PlgsParams::volume()) == 0.5);
}

TEST_CASE("plgs strictly increasing below clip, constant above") {
  for (const auto* p : {&PlgsParams::price(), &PlgsParams::volume(), &PlgsParams::time()}) {
    double prev = -1.0;
    for (double x = 0.0; x <= p->tau_clip; x += 0.25) {
      const double y = scaling::plgs_forward(x, *p);
      CHECK(y > prev);
      prev = y;
    }
    CHECK(scaling::plgs_forward(p->tau_clip + 1.0, *p) == scaling::plgs_forward(p->tau_clip, *p));
    CHECK(scaling::plgs_forward(p->tau_clip * 10.0, *p) == p->plateau());
  }
}

TEST_CASE("plgs Lipschitz continuity after normalization") {
  const auto& p = PlgsParams::price();
  const double eps = 1e-6;
  for (double x = 0.0; x < 30.0; x += 0.1) {
    CHECK(std::abs(scaling::plgs_forward(x + eps, p) - scaling::plgs_forward(x, p)) <= eps);
  }
}

TEST_CASE("plgs inverse anchors") {
  CHECK(scaling::plgs_inverse(0.5, PlgsParams::price()) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(scaling::plgs_inverse(0.0, PlgsParams::price()) == 0.0);
  CHECK_THROWS_AS(scaling::plgs_inverse(-0.1, PlgsParams::price()), DataError);
  CHECK_THROWS_AS(scaling::plgs_inverse(1.1, PlgsParams::price()), DataError);
  CHECK_THROWS_AS(scaling::plgs_forward(-1.0, PlgsParams::price()), DataError);
}

TEST_CASE("plgs roundtrip identity below clip, plateau above") {
  for (const auto* p : {&PlgsParams::price(), &PlgsParams::volume(), &PlgsParams::time()}) {
    for (double x = 0.0; x < p->tau_clip; x += 0.5) {
      const double back = scaling::plgs_inverse(scaling::plgs_forward(x, *p), *p);
      CHECK(back == doctest::Approx(x).epsilon(0).scale(1).epsilon(1e-9));
      CHECK(std::abs(back - x) <= 1e-6);
    }
    CHECK(scaling::plgs_inverse(1.0, *p) == p->tau_clip);
    CHECK(scaling::plgs_inverse(p->plateau(), *p) == p->tau_clip);
  }
}

TEST_CASE("snapshot volume scaling") {
  scaling::SnapshotScalerConfig cfg;
  CHECK(scaling::scale_snapshot_volume(0.0, cfg) == 0.0);
  CHECK(scaling::scale_snapshot_volume(2000.0, cfg) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(scaling::scale_snapshot_volume(1e9, cfg) > 0.9999);
  CHECK(scaling::scale_snapshot_volume(1e9, cfg) < 1.0);
  CHECK_THROWS_AS(scaling::scale_snapshot_volume(-1.0, cfg), DataError);
}

TEST_CASE("snapshot price distances: spread one maps the touch to zero") {
  scaling::SnapshotScalerConfig cfg;
  const auto snap = snapshot_bid_ask(1001, 100, 1002, 50);
  const auto scaled = scaling::scale_snapshot(snap, cfg);
  CHECK_FALSE(scaled.one_sided);
  // d = (round((1002-1001)/1) - 1) / 20 = 0 for both touches
  CHECK(scaled.values[0] == 0.0);   // ask_p1
  CHECK(scaled.values[2] == 0.0);   // bid_p1
  CHECK(scaled.values[1] == doctest::Approx(1.0 - std::exp(-50.0 / 2000.0)));
  CHECK(scaled.values[3] == doctest::Approx(1.0 - std::exp(-100.0 / 2000.0)));
}

TEST_CASE("snapshot price distances clip at d_max") {
  scaling::SnapshotScalerConfig cfg;
  // bid 25 ticks below the best ask: min(25-1, 20)/20 = 1.0
  feed::BookState book;
  book.apply({1, feed::MsgType::New, feed::Side::Buy, 1000, 100, 1});
  book.apply({2, feed::MsgType::New, feed::Side::Buy, 977, 70, 2});
  book.apply({3, feed::MsgType::New, feed::Side::Sell, 1002, 50, 3});
  const auto scaled = scaling::scale_snapshot(book.snapshot(), cfg);
  CHECK(scaled.values[2] == doctest::Approx((2.0 - 1.0) / 20.0));  // best bid, 2 ticks away
  CHECK(scaled.values[6] == 1.0);                                  // deep bid, 25 ticks away
  // exactly 21 ticks is the first fully clipped distance
  feed::BookState book21;
  book21.apply({1, feed::MsgType::New, feed::Side::Buy, 981, 10, 1});
  book21.apply({2, feed::MsgType::New, feed::Side::Sell, 1002, 10, 2});
  CHECK(scaling::scale_snapshot(book21.snapshot(), cfg).values[2] == 1.0);
}

TEST_CASE("sentinel levels map to distance 1 and volume 0") {
  scaling::SnapshotScalerConfig cfg;
  const auto snap = snapshot_bid_ask(1000, 100, 1002, 50);
  const auto scaled = scaling::scale_snapshot(snap, cfg);
  for (int i = 1; i < feed::BookSnapshot::kLevels; ++i) {
    CHECK(scaled.values[size_t(4 * i)] == 1.0);
    CHECK(scaled.values[size_t(4 * i + 1)] == 0.0);
    CHECK(scaled.values[size_t(4 * i + 2)] == 1.0);
    CHECK(scaled.values[size_t(4 * i + 3)] == 0.0);
  }
}

TEST_CASE("one-sided book is flagged and not scaled against its own side") {
  scaling::SnapshotScalerConfig cfg;
  feed::BookState book;
  book.apply({1, feed::MsgType::New, feed::Side::Buy, 1000, 100, 1});
  const auto scaled = scaling::scale_snapshot(book.snapshot(), cfg);
  CHECK(scaled.one_sided);
  CHECK(scaled.values[2] == 1.0);  // bid distance undecidable -> max
  CHECK(scaled.values[3] > 0.0);   // volume still scaled
}

TEST_CASE("snapshot scaling outputs stay in [0,1]") {
  scaling::SnapshotScalerConfig cfg;
  feed::BookState book;
  uint32_t id = 1;
  for (int i = 0; i < 10; ++i) {
    book.apply({1, feed::MsgType::New, feed::Side::Buy, 1000 - 3 * i, uint32_t(10 + 997 * i), id++});
    book.apply({1, feed::MsgType::New, feed::Side::Sell, 1002 + 5 * i, uint32_t(1 + 400 * i), id++});
  }
  for (double v : scaling::scale_snapshot(book.snapshot(), cfg).values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("continuous channels: price at touch and zero time gap") {
  // sell priced exactly at the best bid: diff 0
  feed::RawMessage msg{1000, feed::MsgType::New, feed::Side::Sell, 1000, 100, 5};
  const auto ch = scaling::message_continuous_channels(msg, 1000, 1000);
  CHECK(ch.price == 0.0);
  CHECK(ch.time == 0.0);
}

TEST_CASE("continuous channels: executes collapse to price zero") {
  feed::RawMessage msg{1000, feed::MsgType::Execute, feed::Side::Buy, 987, 100, 5};
  CHECK(scaling::message_continuous_channels(msg, 900, 950).price == 0.0);
  CHECK(scaling::raw_price_diff(msg, 950) == 0);
  msg.mtype = feed::MsgType::Hidden;
  CHECK(scaling::raw_price_diff(msg, 950) == 0);
}

TEST_CASE("continuous channels: volume anchor and missing opposing side") {
  feed::RawMessage msg{1000, feed::MsgType::New, feed::Side::Buy, 990, 200, 5};
  const auto ch = scaling::message_continuous_channels(msg, 1000, std::nullopt);
  CHECK(ch.volume == 0.5);  // plgs_forward(200; 200,400,1500)
  CHECK(ch.price == PlgsParams::price().plateau());
  CHECK(scaling::raw_price_diff(msg, std::nullopt) == 1000);
}

}  // TEST_SUITE
