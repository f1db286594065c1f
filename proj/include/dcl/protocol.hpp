#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dcl/tableau.hpp"

namespace dcl {

enum class ChannelKind { kErasure, kCnotAncilla };
enum class ScheduleKind { kRandom, kPeriodic };
enum class PrescrambleKind { kNone, kLog, kLinear };
enum class EncodingKind { kSinglePair, kFiniteRate };

struct ProtocolConfig {
  int L = 8;
  int T = 4;
  double p = 0.0;
  ScheduleKind schedule = ScheduleKind::kRandom;
  int t_period = 1;  // periodic schedule: fires at t = 0 (mod t_period)
  ChannelKind channel = ChannelKind::kErasure;
  double p_u = 1.0;  // sparse scrambling gate probability; 1 = full brickwork
  PrescrambleKind prescramble = PrescrambleKind::kNone;
  double prescramble_k = 1.0;   // t_scr = round(k log2 L)
  int prescramble_multiple = 1; // t_scr = multiple * L
  EncodingKind encoding = EncodingKind::kSinglePair;
  int x0 = 1;              // 1-indexed system site of the encoded Bell pair
  double code_rate = 0.5;  // finite-rate encoding
  std::uint64_t seed = 1;
  int n_samples = 1;

  void validate() const;
  int n_references() const;
  int prescramble_depth() const;
};

struct TrajectoryRecord {
  std::uint64_t config_hash = 0;
  std::uint32_t sample = 0;
  std::uint64_t rng_stream = 0;
  // (dissipative timestep t, I_{A,R} in bits); t strictly increasing.
  std::vector<std::pair<int, int>> checkpoints;
};

// Replay hook used by the density-matrix oracle tests: sees every gate and
// channel event in execution order.
struct CircuitObserver {
  std::function<void(const CliffordGate2&, int, int)> on_gate2;
  std::function<void(const CliffordGate1&, int)> on_rotation;
  std::function<void(ChannelKind, int)> on_channel;
};

std::uint64_t config_hash(const ProtocolConfig& cfg);

// Bell pairs at the encoding sites, all remaining system qubits in uniformly
// random single-qubit stabilizer states. Pure, I_{A,R} = 2 N_R.
StabilizerState build_initial_state(const ProtocolConfig& cfg,
                                    std::uint32_t sample);

// One timestep: odd-bond brickwork layer, even-bond layer, then one
// dissipation event on system site 1 per the schedule. `step` is the global
// layer clock (prescramble steps first), `diss_t` the dissipative step index
// (or -1 during prescramble).
void run_timestep(StabilizerState& state, const ProtocolConfig& cfg, int step,
                  int diss_t, std::uint32_t sample,
                  const CircuitObserver* obs = nullptr);

TrajectoryRecord run_trajectory(const ProtocolConfig& cfg, std::uint32_t sample,
                                const std::vector<int>& checkpoints,
                                const CircuitObserver* obs = nullptr);

// All samples, fanned out over a worker pool; records are ordered by sample
// index and bit-identical for any worker count.
std::vector<TrajectoryRecord> run_protocol(const ProtocolConfig& cfg,
                                           const std::vector<int>& checkpoints,
                                           int threads = 0);

}  // namespace dcl
