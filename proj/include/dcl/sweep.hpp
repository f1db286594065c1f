#pragma once

#include <string>
#include <vector>

#include "dcl/fit.hpp"
#include "dcl/protocol.hpp"
#include "dcl/walk.hpp"

namespace dcl {

struct SweepRow {
  std::string engine, protocol, channel, schedule;
  int L = 0, T = 0;
  double p = 0, p_u = 1;
  int t_scr = 0;
  double C = 0;
  int n_samples = 0;
  double mean_I = 0, sem_I = 0;
  std::uint64_t seed = 0;
};

struct SweepSpec {
  enum class Engine { kClifford, kAnnealed } engine = Engine::kClifford;
  ProtocolConfig clifford;   // template; L, T, p, seed, n_samples overridden
  AnnealedConfig annealed;   // template; L, T, prescramble_depth overridden
  // Pre-scrambling rule applied per size (both engines).
  PrescrambleKind prescramble = PrescrambleKind::kNone;
  double prescramble_k = 1.0;
  int prescramble_multiple = 1;
  std::vector<double> p_grid;
  std::vector<std::pair<int, int>> sizes;  // (L, T); annealed: L < 0 semi-inf
  int samples = 1;
  std::string out_dir;  // empty: in-memory only
  std::uint64_t seed = 1;
  int threads = 0;

  void validate() const;
  std::string to_json_string() const;
  static SweepSpec from_json_string(const std::string& text);
  static SweepSpec from_json_file(const std::string& path);
};

int prescramble_depth_for(PrescrambleKind kind, double k, int multiple, int L);

// Runs the grid, returns one aggregated row per (size, p), and, when out_dir
// is set, writes sweep.csv + manifest.json there. Fails before any
// computation on an invalid spec or unwritable directory.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

extern const char* kCsvHeader;
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(const std::string& path);

// FitPoints (size = T or L) from sweep rows, for the collapse/crossing tools.
std::vector<FitPoint> rows_to_fit_points(const std::vector<SweepRow>& rows,
                                         bool size_is_T);

}  // namespace dcl
