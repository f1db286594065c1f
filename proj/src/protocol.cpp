#include "dcl/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dcl/common.hpp"
#include "dcl/walk.hpp"

namespace dcl {

void ProtocolConfig::validate() const {
  require(L >= 2 && L % 2 == 0, "L must be even and >= 2");
  require(T >= 1, "T must be >= 1");
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  require(p_u >= 0.0 && p_u <= 1.0, "p_U must lie in [0,1]");
  require(n_samples >= 1, "n_samples must be >= 1");
  if (schedule == ScheduleKind::kPeriodic)
    require(t_period >= 1, "T_period must be >= 1");
  if (prescramble == PrescrambleKind::kLog)
    require(prescramble_k > 0, "prescramble k must be > 0");
  if (prescramble == PrescrambleKind::kLinear)
    require(prescramble_multiple >= 1, "prescramble multiple must be >= 1");
  if (encoding == EncodingKind::kSinglePair) {
    require(x0 >= 1 && x0 <= L, "x0 must lie in [1, L]");
  } else {
    finite_rate_sites(L, code_rate);
  }
}

int ProtocolConfig::n_references() const {
  if (encoding == EncodingKind::kSinglePair) return 1;
  return int(finite_rate_sites(L, code_rate).size());
}

int ProtocolConfig::prescramble_depth() const {
  switch (prescramble) {
    case PrescrambleKind::kNone:
      return 0;
    case PrescrambleKind::kLog:
      return int(std::lround(prescramble_k * std::log2(double(L))));
    case PrescrambleKind::kLinear:
      return prescramble_multiple * L;
  }
  return 0;
}

std::uint64_t config_hash(const ProtocolConfig& cfg) {
  std::uint64_t h = 0x243f6a8885a308d3ull;
  auto mix = [&h](std::uint64_t v) {
    h = detail::splitmix64(h ^ (v + 0x9e3779b97f4a7c15ull));
  };
  mix(std::uint64_t(cfg.L));
  mix(std::uint64_t(cfg.T));
  mix(std::uint64_t(std::llround(cfg.p * 1e15)));
  mix(std::uint64_t(cfg.schedule));
  mix(std::uint64_t(cfg.t_period));
  mix(std::uint64_t(cfg.channel));
  mix(std::uint64_t(std::llround(cfg.p_u * 1e15)));
  mix(std::uint64_t(cfg.prescramble));
  mix(std::uint64_t(std::llround(cfg.prescramble_k * 1e9)));
  mix(std::uint64_t(cfg.prescramble_multiple));
  mix(std::uint64_t(cfg.encoding));
  mix(std::uint64_t(cfg.x0));
  mix(std::uint64_t(std::llround(cfg.code_rate * 1e15)));
  mix(cfg.seed);
  return h;
}

StabilizerState build_initial_state(const ProtocolConfig& cfg,
                                    std::uint32_t sample) {
  cfg.validate();
  std::vector<int> bell_sites;
  if (cfg.encoding == EncodingKind::kSinglePair)
    bell_sites = {cfg.x0};
  else
    bell_sites = finite_rate_sites(cfg.L, cfg.code_rate);

  const std::uint32_t n_ref = std::uint32_t(bell_sites.size());
  const std::uint32_t n = std::uint32_t(cfg.L) + n_ref;
  StabilizerState state(n, std::uint32_t(cfg.L));

  std::vector<bool> is_bell(cfg.L, false);
  for (std::uint32_t i = 0; i < n_ref; ++i) {
    const std::uint32_t site = std::uint32_t(bell_sites[i] - 1);
    const std::uint32_t ref = std::uint32_t(cfg.L) + i;
    is_bell[site] = true;
    PauliString xx(n), zz(n);
    xx.x.set(site, true);
    xx.x.set(ref, true);
    zz.z.set(site, true);
    zz.z.set(ref, true);
    state.append_generator(xx);
    state.append_generator(zz);
  }
  for (std::uint32_t site = 0; site < std::uint32_t(cfg.L); ++site) {
    if (is_bell[site]) continue;
    Stream s(cfg.seed, sample, 0, site, StreamPurpose::kInitState);
    const std::uint64_t r = s.next_below(6);  // {X,Y,Z} x {+,-}
    PauliString g(n);
    const std::uint64_t axis = r >> 1;
    if (axis == 0 || axis == 1) g.x.set(site, true);
    if (axis == 1 || axis == 2) g.z.set(site, true);
    g.sign = bool(r & 1);
    state.append_generator(g);
  }
  return state;
}

void run_timestep(StabilizerState& state, const ProtocolConfig& cfg, int step,
                  int diss_t, std::uint32_t sample, const CircuitObserver* obs) {
  // Odd-bond layer (1,2),(3,4),... then even-bond layer (2,3),(4,5),...
  for (int layer = 0; layer < 2; ++layer) {
    for (int a = layer; a + 1 < cfg.L; a += 2) {
      if (cfg.p_u < 1.0) {
        Stream fire(cfg.seed, sample, std::uint64_t(step),
                    std::uint64_t(a) * 2 + layer, StreamPurpose::kSparseFire);
        if (!fire.next_bernoulli(cfg.p_u)) continue;
      }
      Stream draw(cfg.seed, sample, std::uint64_t(step),
                  std::uint64_t(a) * 2 + layer, StreamPurpose::kGate);
      const CliffordGate2 g = sample_uniform_clifford2(draw);
      state.apply_gate2(g, std::uint32_t(a), std::uint32_t(a + 1));
      if (obs && obs->on_gate2) obs->on_gate2(g, a, a + 1);
    }
  }
  if (diss_t < 0) return;  // prescramble window: unitary only
  bool fires = false;
  if (cfg.schedule == ScheduleKind::kRandom) {
    Stream f(cfg.seed, sample, std::uint64_t(step), 0,
             StreamPurpose::kChannelFire);
    fires = f.next_bernoulli(cfg.p);
  } else {
    fires = (diss_t % cfg.t_period) == 0;
  }
  if (!fires) return;
  if (cfg.channel == ChannelKind::kErasure) {
    state.erase_qubit(0);
    if (obs && obs->on_channel) obs->on_channel(ChannelKind::kErasure, 0);
  } else {
    Stream rot(cfg.seed, sample, std::uint64_t(step), 0,
               StreamPurpose::kChannelRotation);
    const CliffordGate1 r = sample_uniform_clifford1(rot);
    state.apply_gate1(r, 0);
    if (obs && obs->on_rotation) obs->on_rotation(r, 0);
    state.dephase_qubit(0);
    if (obs && obs->on_channel) obs->on_channel(ChannelKind::kCnotAncilla, 0);
  }
}

TrajectoryRecord run_trajectory(const ProtocolConfig& cfg, std::uint32_t sample,
                                const std::vector<int>& checkpoints,
                                const CircuitObserver* obs) {
  StabilizerState state = build_initial_state(cfg, sample);
  const Region sys = state.system_region();
  const Region refs = state.reference_region();

  TrajectoryRecord rec;
  rec.config_hash = config_hash(cfg);
  rec.sample = sample;
  rec.rng_stream = detail::splitmix64(cfg.seed ^ (sample + 0x9e3779b97f4a7c15ull));

  std::vector<int> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  std::size_t next_cp = 0;
  auto record = [&](int t) {
    while (next_cp < cps.size() && cps[next_cp] == t) {
      rec.checkpoints.emplace_back(t, state.mutual_information(sys, refs));
      ++next_cp;
    }
  };

  const int depth = cfg.prescramble_depth();
  for (int s = 0; s < depth; ++s) run_timestep(state, cfg, s, -1, sample, obs);
  record(0);
  for (int t = 0; t < cfg.T; ++t) {
    run_timestep(state, cfg, depth + t, t, sample, obs);
    record(t + 1);
  }
  return rec;
}

std::vector<TrajectoryRecord> run_protocol(const ProtocolConfig& cfg,
                                           const std::vector<int>& checkpoints,
                                           int threads) {
  cfg.validate();
  std::vector<TrajectoryRecord> out(cfg.n_samples);
  int nt = threads > 0 ? threads : int(std::thread::hardware_concurrency());
  nt = std::max(1, std::min(nt, cfg.n_samples));
  std::atomic<std::uint32_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < nt; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint32_t i = next.fetch_add(1);
        if (i >= std::uint32_t(cfg.n_samples)) return;
        out[i] = run_trajectory(cfg, i, checkpoints);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace dcl
