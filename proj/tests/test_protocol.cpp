#include <doctest.h>

#include <map>
#include <vector>

#include "dcl/common.hpp"
#include "dcl/protocol.hpp"

using namespace dcl;

TEST_CASE("single-pair encoding shape") {
  ProtocolConfig cfg;
  cfg.L = 4;
  cfg.T = 1;
  cfg.x0 = 1;
  cfg.seed = 1;
  StabilizerState s = build_initial_state(cfg, 0);
  CHECK(s.n_qubits() == 5);
  CHECK(s.n_generators() == 5);  // pure
  CHECK(s.mutual_information(s.system_region(), s.reference_region()) == 2);
  for (std::uint32_t q = 1; q < 4; ++q) CHECK(s.entropy({q}) == 0);
}

TEST_CASE("finite-rate encoding at C=1/2 uses alternate sites") {
  ProtocolConfig cfg;
  cfg.L = 8;
  cfg.T = 1;
  cfg.encoding = EncodingKind::kFiniteRate;
  cfg.code_rate = 0.5;
  cfg.seed = 1;
  StabilizerState s = build_initial_state(cfg, 0);
  CHECK(s.n_references() == 4);
  CHECK(s.mutual_information(s.system_region(), s.reference_region()) == 8);
  // Bell sites 1,3,5,7 (1-indexed) are maximally entangled with references.
  CHECK(s.entropy({0}) == 1);
  CHECK(s.entropy({1}) == 0);
}

TEST_CASE("config validation") {
  ProtocolConfig cfg;
  cfg.L = 7;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.L = 8;
  cfg.x0 = 9;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.x0 = 1;
  cfg.encoding = EncodingKind::kFiniteRate;
  cfg.code_rate = 0.3;  // 0.3 * 8 not integral
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("p=0 keeps I = 2 exactly at every checkpoint") {
  ProtocolConfig cfg;
  cfg.L = 10;
  cfg.T = 20;
  cfg.p = 0;
  cfg.seed = 5;
  cfg.n_samples = 8;
  const auto recs = run_protocol(cfg, {0, 5, 10, 20}, 2);
  REQUIRE(recs.size() == 8);
  for (const auto& r : recs)
    for (const auto& [t, i] : r.checkpoints) CHECK(i == 2);
}

TEST_CASE("p=1 random schedule fires every step") {
  ProtocolConfig cfg;
  cfg.L = 4;
  cfg.T = 3;
  cfg.p = 1.0;
  cfg.seed = 9;
  StabilizerState s = build_initial_state(cfg, 0);
  for (int t = 0; t < cfg.T; ++t) {
    run_timestep(s, cfg, t, t, 0);
    // After an erasure the boundary site is maximally mixed.
    CHECK(s.entropy({0}) == 1);
  }
}

TEST_CASE("periodic schedule fires at t = 0 mod T_period") {
  ProtocolConfig cfg;
  cfg.L = 4;
  cfg.T = 6;
  cfg.p = 0.0;  // ignored by the periodic schedule
  cfg.schedule = ScheduleKind::kPeriodic;
  cfg.t_period = 3;
  cfg.seed = 12;
  StabilizerState s = build_initial_state(cfg, 0);
  int fires = 0;
  CircuitObserver obs;
  obs.on_channel = [&](ChannelKind, int) { fires++; };
  for (int t = 0; t < cfg.T; ++t) run_timestep(s, cfg, t, t, 0, &obs);
  CHECK(fires == 2);  // t = 0 and t = 3
}

TEST_CASE("determinism: identical runs, any thread count") {
  ProtocolConfig cfg;
  cfg.L = 12;
  cfg.T = 16;
  cfg.p = 0.4;
  cfg.seed = 31;
  cfg.n_samples = 12;
  const auto a = run_protocol(cfg, {8, 16}, 1);
  const auto b = run_protocol(cfg, {8, 16}, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sample == b[i].sample);
    CHECK(a[i].checkpoints == b[i].checkpoints);
  }
  ProtocolConfig other = cfg;
  other.seed = 32;
  const auto c = run_protocol(other, {8, 16}, 2);
  bool all_same = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    all_same &= (a[i].checkpoints == c[i].checkpoints);
  CHECK_FALSE(all_same);
}

TEST_CASE("sparse fire draws never perturb the gate stream") {
  // At every (timestep, bond) the sparse run either skips the gate or applies
  // exactly the gate the full run drew there: p_U = 1 is then identical to
  // full scrambling by construction.
  ProtocolConfig full;
  full.L = 8;
  full.T = 10;
  full.p = 0.5;
  full.seed = 44;
  ProtocolConfig sparse = full;
  sparse.p_u = 0.6;
  StabilizerState sf = build_initial_state(full, 0);
  StabilizerState ss = build_initial_state(sparse, 0);
  int applied = 0, skipped = 0;
  for (int t = 0; t < full.T; ++t) {
    std::map<int, CliffordGate2> full_gates, sparse_gates;
    CircuitObserver fo, so;
    fo.on_gate2 = [&](const CliffordGate2& g, int a, int) {
      full_gates.emplace(a, g);
    };
    so.on_gate2 = [&](const CliffordGate2& g, int a, int) {
      sparse_gates.emplace(a, g);
    };
    run_timestep(sf, full, t, t, 0, &fo);
    run_timestep(ss, sparse, t, t, 0, &so);
    CHECK(full_gates.size() == 7);  // 4 odd-bond + 3 even-bond gates at L=8
    for (const auto& [a, g] : sparse_gates) {
      REQUIRE(full_gates.count(a) == 1);
      CHECK(full_gates.at(a).image == g.image);
      CHECK(full_gates.at(a).image_sign == g.image_sign);
      ++applied;
    }
    skipped += int(full_gates.size() - sparse_gates.size());
  }
  CHECK(applied > 0);
  CHECK(skipped > 0);
}

TEST_CASE("sparse scrambling with p_U = 0 applies no gates") {
  ProtocolConfig cfg;
  cfg.L = 6;
  cfg.T = 4;
  cfg.p = 0;
  cfg.p_u = 0.0;
  cfg.seed = 3;
  StabilizerState s = build_initial_state(cfg, 0);
  int gates = 0;
  CircuitObserver obs;
  obs.on_gate2 = [&](const CliffordGate2&, int, int) { gates++; };
  for (int t = 0; t < cfg.T; ++t) run_timestep(s, cfg, t, t, 0, &obs);
  CHECK(gates == 0);
}

TEST_CASE("mutual information is non-increasing along trajectories") {
  ProtocolConfig cfg;
  cfg.L = 10;
  cfg.T = 40;
  cfg.p = 0.45;
  cfg.seed = 71;
  cfg.n_samples = 50;
  std::vector<int> cps;
  for (int t = 0; t <= cfg.T; ++t) cps.push_back(t);
  for (const auto& rec : run_protocol(cfg, cps, 2)) {
    int prev = 1 << 30;
    for (const auto& [t, i] : rec.checkpoints) {
      CHECK(i <= prev);
      prev = i;
    }
  }
}

TEST_CASE("prescramble depths") {
  ProtocolConfig cfg;
  cfg.L = 256;
  cfg.T = 1;
  cfg.prescramble = PrescrambleKind::kLog;
  cfg.prescramble_k = 4;
  CHECK(cfg.prescramble_depth() == 32);  // 4 * log2(256)
  cfg.prescramble = PrescrambleKind::kLinear;
  cfg.prescramble_multiple = 2;
  CHECK(cfg.prescramble_depth() == 512);
  cfg.prescramble = PrescrambleKind::kNone;
  CHECK(cfg.prescramble_depth() == 0);
}
