#include "lobert/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lobert/errors.hpp"

namespace lobert::scaling {

PlgsParams::PlgsParams(double start, double maxv, double clip)
    : tau_start(start), tau_max(maxv), tau_clip(clip), mu(1.0 - 1.0 / (maxv - start)) {
  if (!(tau_max > tau_start) || tau_start < 0.0)
    throw ConfigError("PLGS requires tau_max > tau_start >= 0");
  if (!(tau_clip > tau_start)) throw ConfigError("PLGS requires tau_clip > tau_start");
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("PLGS decay factor out of (0,1)");
  // The geometric series must converge to tau_max.
  const double limit = tau_start + 1.0 / (1.0 - mu);
  if (std::abs(limit - tau_max) > 1e-9 * tau_max)
    throw ConfigError("PLGS series limit " + std::to_string(limit) + " does not match tau_max");
}

double PlgsParams::plateau() const { return plgs_forward(tau_clip, *this); }

const PlgsParams& PlgsParams::price() {
  static const PlgsParams p(10.0, 20.0, 1000.0);
  return p;
}

const PlgsParams& PlgsParams::volume() {
  static const PlgsParams p(200.0, 400.0, 1500.0);
  return p;
}

const PlgsParams& PlgsParams::time() {
  static const PlgsParams p(1.0, 50.0, 250.0);
  return p;
}

double plgs_forward(double x, const PlgsParams& p) {
  if (x < 0.0) throw DataError("PLGS input must be non-negative, got " + std::to_string(x));
  const double z = std::min(x, p.tau_clip);
  double s;
  if (z <= p.tau_start) {
    s = z;
  } else {
    const double over = z - p.tau_start;
    const double n = std::floor(over);
    const double f = over - n;
    // s = tau_start + sum_{k=0}^{n-1} mu^k + f * mu^n
    const double mu_n = std::pow(p.mu, n);
    s = p.tau_start + (1.0 - mu_n) / (1.0 - p.mu) + f * mu_n;
  }
  return s / p.tau_max;
}

double plgs_inverse(double y, const PlgsParams& p) {
  if (y < 0.0 || y > 1.0)
    throw DataError("PLGS inverse input must be in [0,1], got " + std::to_string(y));
  const double s = y * p.tau_max;
  if (s <= p.tau_start) return s;
  const double plateau_s = plgs_forward(p.tau_clip, p) * p.tau_max;
  if (s >= plateau_s) return p.tau_clip;
  const double r = s - p.tau_start;  // = (1 - mu^n)/(1 - mu) + f * mu^n
  double n = std::floor(std::log1p(-r * (1.0 - p.mu)) / std::log(p.mu));
  if (n < 0.0) n = 0.0;
  // Float-safety: nudge n so that f lands in [0, 1).
  for (int i = 0; i < 4; ++i) {
    const double mu_n = std::pow(p.mu, n);
    const double partial = (1.0 - mu_n) / (1.0 - p.mu);
    const double f = (r - partial) / mu_n;
    if (f < 0.0 && n > 0.0) {
      n -= 1.0;
    } else if (f >= 1.0) {
      n += 1.0;
    } else {
      return std::min(p.tau_start + n + std::max(f, 0.0), p.tau_clip);
    }
  }
  const double mu_n = std::pow(p.mu, n);
  const double f = (r - (1.0 - mu_n) / (1.0 - p.mu)) / mu_n;
  return std::min(p.tau_start + n + std::clamp(f, 0.0, 1.0), p.tau_clip);
}

double scale_snapshot_volume(double v_raw, const SnapshotScalerConfig& cfg) {
  if (v_raw < 0.0) throw DataError("snapshot volume must be non-negative");
  return 1.0 - std::exp(-v_raw / cfg.k);
}

namespace {

// d = min(round(tick_distance) - 1, d_max) / d_max, clipped to [0, 1].
double scaled_distance(double raw_ticks, const SnapshotScalerConfig& cfg) {
  const double steps = std::round(raw_ticks / double(cfg.tick_size)) - 1.0;
  const double clipped = std::min(steps, double(cfg.d_max));
  return std::clamp(clipped / double(cfg.d_max), 0.0, 1.0);
}

}  // namespace

ScaledSnapshot scale_snapshot(const feed::BookSnapshot& snap, const SnapshotScalerConfig& cfg) {
  ScaledSnapshot out;
  const bool has_bid = snap.has_bid();
  const bool has_ask = snap.has_ask();
  out.one_sided = !(has_bid && has_ask);
  const double best_bid = has_bid ? snap.bid_price(0) : 0.0;
  const double best_ask = has_ask ? snap.ask_price(0) : 0.0;

  for (int i = 0; i < feed::BookSnapshot::kLevels; ++i) {
    const double ap = snap.ask_price(i);
    if (ap < 0.0) {
      out.values[size_t(4 * i)] = 1.0;  // sentinel level
      out.values[size_t(4 * i + 1)] = 0.0;
    } else {
      out.values[size_t(4 * i)] = has_bid ? scaled_distance(ap - best_bid, cfg) : 1.0;
      out.values[size_t(4 * i + 1)] = scale_snapshot_volume(snap.ask_volume(i), cfg);
    }
    const double bp = snap.bid_price(i);
    if (bp < 0.0) {
      out.values[size_t(4 * i + 2)] = 1.0;
      out.values[size_t(4 * i + 3)] = 0.0;
    } else {
      out.values[size_t(4 * i + 2)] = has_ask ? scaled_distance(best_ask - bp, cfg) : 1.0;
      out.values[size_t(4 * i + 3)] = scale_snapshot_volume(snap.bid_volume(i), cfg);
    }
  }
  return out;
}

int64_t raw_price_diff(const feed::RawMessage& msg, std::optional<int64_t> best_opposing) {
  if (msg.mtype == feed::MsgType::Execute || msg.mtype == feed::MsgType::Hidden) return 0;
  if (!best_opposing) return int64_t(PlgsParams::price().tau_clip);
  const int64_t diff = msg.side == feed::Side::Buy ? *best_opposing - msg.price
                                                   : msg.price - *best_opposing;
  return std::max<int64_t>(diff, 0);
}

ContinuousChannels message_continuous_channels(const feed::RawMessage& msg, uint64_t prev_ts_ms,
                                               std::optional<int64_t> best_opposing) {
  ContinuousChannels ch;
  ch.price = plgs_forward(double(raw_price_diff(msg, best_opposing)), PlgsParams::price());
  ch.volume = plgs_forward(double(msg.volume), PlgsParams::volume());
  const double dt = msg.ts_ms >= prev_ts_ms ? double(msg.ts_ms - prev_ts_ms) : 0.0;
  ch.time = plgs_forward(dt, PlgsParams::time());
  return ch;
}

}  // namespace lobert::scaling
