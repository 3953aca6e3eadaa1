#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "lobert/feed.hpp"

namespace lobert::scaling {

// Piecewise linear-geometric scaling. Identity up to tau_start, then unit
// increments decay geometrically by mu = 1 - 1/(tau_max - tau_start) so the
// series converges to tau_max; inputs clip at tau_clip; output is normalized
// by tau_max into [0, 1]. Linear interpolation applies within each unit step,
// which keeps the map continuous and strictly increasing below the clip.
struct PlgsParams {
  double tau_start;
  double tau_max;
  double tau_clip;
  double mu;

  PlgsParams(double start, double maxv, double clip);

  // Forward value at tau_clip; everything at or above the clip lands here.
  double plateau() const;

  static const PlgsParams& price();   // (10, 20, 1000) ticks
  static const PlgsParams& volume();  // (200, 400, 1500) units
  static const PlgsParams& time();    // (1, 50, 250) ms
};

double plgs_forward(double x, const PlgsParams& p);

// Exact inverse below the plateau; y above the plateau maps to tau_clip.
double plgs_inverse(double y, const PlgsParams& p);

struct SnapshotScalerConfig {
  double k = 2000.0;  // volume transformation rate
  int d_max = 20;     // max tick distance from the opposing best
  int tick_size = 1;
};

// v_scaled = 1 - exp(-v_raw / k), mapping [0, inf) to [0, 1).
double scale_snapshot_volume(double v_raw, const SnapshotScalerConfig& cfg);

// Snapshot with prices recoded as normalized distances from the best
// opposite quote and volumes exponentially scaled. Sentinel levels map to
// (1.0, 0.0). When a side has no opposite best the distances on that side
// are undecidable; they are emitted as 1.0 and one_sided is set.
struct ScaledSnapshot {
  std::array<double, 40> values{};
  bool one_sided = false;
};

ScaledSnapshot scale_snapshot(const feed::BookSnapshot& snap, const SnapshotScalerConfig& cfg);

// Non-negative tick distance from the best opposing quote (best ask for
// buys, best bid for sells). Execute and Hidden events collapse to 0; a
// missing opposing side maps to the price clip.
int64_t raw_price_diff(const feed::RawMessage& msg, std::optional<int64_t> best_opposing);

struct ContinuousChannels {
  double price;
  double volume;
  double time;
};

// The three continuous message channels: PLGS-scaled price distance, volume,
// and time gap from the previous message.
ContinuousChannels message_continuous_channels(const feed::RawMessage& msg, uint64_t prev_ts_ms,
                                               std::optional<int64_t> best_opposing);

}  // namespace lobert::scaling
