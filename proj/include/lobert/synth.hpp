#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lobert/feed.hpp"

namespace lobert::synth {

// Configuration for the toy matching-engine generator. Defaults produce
// LOB-like flow: volumes concentrated at round values (> 60% exactly 100),
// geometric price placement near the touch, heavy-tailed time gaps.
struct SynthConfig {
  uint64_t seed = 1;
  int64_t n_messages = 1000;
  int64_t tick0 = 100000;  // starting mid, ticks

  // Per-type event intensities (normalized internally).
  double rate_new = 0.55;
  double rate_edit = 0.10;
  double rate_delete = 0.20;
  double rate_execute = 0.10;
  double rate_hidden = 0.05;

  // Volume mixture over round levels plus a continuous tail on [1, 400].
  double p_vol_50 = 0.10;
  double p_vol_100 = 0.66;
  double p_vol_200 = 0.10;

  // Price placement: offset from the opposing best, geometric with this
  // continuation probability, plus a small chance of a far placement that
  // exercises the price clip.
  double price_offset_decay = 0.45;
  double p_far_placement = 0.02;

  // Time gaps: lognormal, rounded to integer ms, clipped to [0, 10^4].
  double time_mu = 1.5;
  double time_sigma = 2.0;
  int64_t time_clip_ms = 10000;

  // Deterministic 4-message motif (add/delete on both sides), injected per
  // message slot with probability p_motif. Gives toy training runs learnable
  // structure.
  double p_motif = 0.0;

  void validate() const;  // throws ConfigError
};

// Deterministic given the seed (SplitMix64 throughout). The stream replays
// cleanly through feed::BookState: executes always hit the best price of the
// resting side and new orders never cross.
std::vector<feed::RawMessage> generate(const SynthConfig& config);

struct DatasetPaths {
  std::string messages;   // feed CSV
  std::string snapshots;  // 40 comma-separated raw values per row
};

// Replays the stream (validating it) and writes messages.csv plus
// snapshots.csv where snapshot row i is the post-message-i book.
DatasetPaths write_dataset(const std::vector<feed::RawMessage>& messages,
                           const std::string& out_dir);

}  // namespace lobert::synth
