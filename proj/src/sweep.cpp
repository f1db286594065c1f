#include "dcl/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcl/common.hpp"

namespace dcl {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json prescramble_json(PrescrambleKind kind, double k, int multiple) {
  json j;
  j["kind"] = kind == PrescrambleKind::kNone
                  ? "none"
                  : (kind == PrescrambleKind::kLog ? "log" : "linear");
  j["k"] = k;
  j["multiple"] = multiple;
  return j;
}

void prescramble_from_json(const json& j, PrescrambleKind* kind, double* k,
                           int* multiple) {
  const std::string s = j.value("kind", "none");
  if (s == "none")
    *kind = PrescrambleKind::kNone;
  else if (s == "log")
    *kind = PrescrambleKind::kLog;
  else if (s == "linear")
    *kind = PrescrambleKind::kLinear;
  else
    throw ConfigError("unknown prescramble kind: " + s);
  *k = j.value("k", 1.0);
  *multiple = j.value("multiple", 1);
}

}  // namespace

int prescramble_depth_for(PrescrambleKind kind, double k, int multiple, int L) {
  switch (kind) {
    case PrescrambleKind::kNone:
      return 0;
    case PrescrambleKind::kLog:
      return int(std::lround(k * std::log2(double(std::abs(L)))));
    case PrescrambleKind::kLinear:
      return multiple * std::abs(L);
  }
  return 0;
}

void SweepSpec::validate() const {
  require(!p_grid.empty(), "sweep spec needs a non-empty p grid");
  require(!sizes.empty(), "sweep spec needs a non-empty size list");
  require(samples >= 1, "sweep spec needs samples >= 1");
  for (const double p : p_grid)
    require(p >= 0.0 && p <= 1.0, "p grid entry outside [0,1]");
  if (engine == Engine::kClifford) {
    for (const auto& [L, T] : sizes)
      require(L >= 2 && L % 2 == 0 && T >= 1, "invalid clifford (L,T)");
  } else {
    for (const auto& [L, T] : sizes)
      require(T >= 1 && (L < 0 || (L >= 2 && L % 2 == 0)), "invalid annealed (L,T)");
  }
}

std::string SweepSpec::to_json_string() const {
  json j;
  j["engine"] = engine == Engine::kClifford ? "clifford" : "annealed";
  j["seed"] = seed;
  j["samples"] = samples;
  j["threads"] = threads;
  j["out_dir"] = out_dir;
  j["p_grid"] = p_grid;
  json sz = json::array();
  for (const auto& [L, T] : sizes) sz.push_back({L, T});
  j["sizes"] = sz;
  j["prescramble"] = prescramble_json(prescramble, prescramble_k,
                                      prescramble_multiple);
  if (engine == Engine::kClifford) {
    json b;
    b["channel"] = clifford.channel == ChannelKind::kErasure ? "erasure"
                                                             : "cnot_ancilla";
    b["schedule"] =
        clifford.schedule == ScheduleKind::kRandom ? "random" : "periodic";
    b["t_period"] = clifford.t_period;
    b["p_u"] = clifford.p_u;
    b["encoding"] = clifford.encoding == EncodingKind::kSinglePair
                        ? "single_pair"
                        : "finite_rate";
    b["x0"] = clifford.x0;
    b["code_rate"] = clifford.code_rate;
    j["base"] = b;
  } else {
    json b;
    b["q"] = annealed.q;
    b["noise"] = annealed.noise == WalkNoise::kDeterministic ? "deterministic"
                                                             : "random_times";
    b["encoding"] = annealed.finite_rate ? "finite_rate" : "single_pair";
    b["x0"] = annealed.x0;
    b["code_rate"] = annealed.code_rate;
    j["base"] = b;
  }
  return j.dump(2);
}

SweepSpec SweepSpec::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  SweepSpec spec;
  const std::string eng = j.value("engine", "clifford");
  if (eng == "clifford")
    spec.engine = Engine::kClifford;
  else if (eng == "annealed")
    spec.engine = Engine::kAnnealed;
  else
    throw ConfigError("unknown engine: " + eng);
  spec.seed = j.value("seed", std::uint64_t(1));
  spec.samples = j.value("samples", 1);
  spec.threads = j.value("threads", 0);
  spec.out_dir = j.value("out_dir", "");
  if (!j.contains("p_grid") || !j.contains("sizes"))
    throw ConfigError("sweep spec needs p_grid and sizes");
  spec.p_grid = j["p_grid"].get<std::vector<double>>();
  for (const auto& e : j["sizes"])
    spec.sizes.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  if (j.contains("prescramble"))
    prescramble_from_json(j["prescramble"], &spec.prescramble,
                          &spec.prescramble_k, &spec.prescramble_multiple);
  const json b = j.value("base", json::object());
  if (spec.engine == Engine::kClifford) {
    const std::string ch = b.value("channel", "erasure");
    if (ch == "erasure")
      spec.clifford.channel = ChannelKind::kErasure;
    else if (ch == "cnot_ancilla")
      spec.clifford.channel = ChannelKind::kCnotAncilla;
    else
      throw ConfigError("unknown channel: " + ch);
    const std::string sc = b.value("schedule", "random");
    if (sc == "random")
      spec.clifford.schedule = ScheduleKind::kRandom;
    else if (sc == "periodic")
      spec.clifford.schedule = ScheduleKind::kPeriodic;
    else
      throw ConfigError("unknown schedule: " + sc);
    spec.clifford.t_period = b.value("t_period", 1);
    spec.clifford.p_u = b.value("p_u", 1.0);
    const std::string en = b.value("encoding", "single_pair");
    if (en == "single_pair")
      spec.clifford.encoding = EncodingKind::kSinglePair;
    else if (en == "finite_rate")
      spec.clifford.encoding = EncodingKind::kFiniteRate;
    else
      throw ConfigError("unknown encoding: " + en);
    spec.clifford.x0 = b.value("x0", 1);
    spec.clifford.code_rate = b.value("code_rate", 0.5);
  } else {
    spec.annealed.q = b.value("q", 2.0);
    const std::string no = b.value("noise", "deterministic");
    if (no == "deterministic")
      spec.annealed.noise = WalkNoise::kDeterministic;
    else if (no == "random_times")
      spec.annealed.noise = WalkNoise::kRandomTimes;
    else
      throw ConfigError("unknown noise mode: " + no);
    const std::string en = b.value("encoding", "single_pair");
    spec.annealed.finite_rate = (en == "finite_rate");
    spec.annealed.x0 = b.value("x0", 1);
    spec.annealed.code_rate = b.value("code_rate", 0.5);
  }
  spec.validate();
  return spec;
}

SweepSpec SweepSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sweep spec: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

const char* kCsvHeader =
    "engine,protocol,channel,schedule,L,T,p,p_U,t_scr,C,n_samples,mean_I,"
    "sem_I,seed";

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write CSV: " + path);
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.engine << ',' << r.protocol << ',' << r.channel << ','
        << r.schedule << ',' << r.L << ',' << r.T << ',' << fmt17(r.p) << ','
        << fmt17(r.p_u) << ',' << r.t_scr << ',' << fmt17(r.C) << ','
        << r.n_samples << ',' << fmt17(r.mean_I) << ',' << fmt17(r.sem_I)
        << ',' << r.seed << "\n";
  }
  if (!out) throw IoError("failed while writing CSV: " + path);
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV: " + path);
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f;
    SweepRow r;
    auto next = [&] {
      if (!std::getline(ss, f, ',')) throw IoError("short CSV row: " + line);
      return f;
    };
    r.engine = next();
    r.protocol = next();
    r.channel = next();
    r.schedule = next();
    r.L = std::stoi(next());
    r.T = std::stoi(next());
    r.p = std::stod(next());
    r.p_u = std::stod(next());
    r.t_scr = std::stoi(next());
    r.C = std::stod(next());
    r.n_samples = std::stoi(next());
    r.mean_I = std::stod(next());
    r.sem_I = std::stod(next());
    r.seed = std::stoull(next());
    rows.push_back(r);
  }
  return rows;
}

std::vector<FitPoint> rows_to_fit_points(const std::vector<SweepRow>& rows,
                                         bool size_is_T) {
  std::vector<FitPoint> pts;
  std::vector<int> series_sizes;
  for (const auto& r : rows) {
    FitPoint p;
    p.size = size_is_T ? double(r.T) : double(r.L);
    p.p = r.p;
    p.y = r.mean_I;
    p.err = r.sem_I;
    int key = size_is_T ? r.T : r.L;
    auto it = std::find(series_sizes.begin(), series_sizes.end(), key);
    if (it == series_sizes.end()) {
      series_sizes.push_back(key);
      p.series = int(series_sizes.size()) - 1;
    } else {
      p.series = int(it - series_sizes.begin());
    }
    pts.push_back(p);
  }
  return pts;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  namespace fs = std::filesystem;
  std::string manifest_path, csv_path;
  if (!spec.out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(spec.out_dir, ec);
    manifest_path = (fs::path(spec.out_dir) / "manifest.json").string();
    csv_path = (fs::path(spec.out_dir) / "sweep.csv").string();
    std::ofstream probe(manifest_path);
    if (!probe) throw IoError("output directory not writable: " + spec.out_dir);
  }
  const auto t_start = std::chrono::steady_clock::now();

  std::vector<SweepRow> rows;
  for (const auto& [L, T] : spec.sizes) {
    const int t_scr = prescramble_depth_for(spec.prescramble, spec.prescramble_k,
                                            spec.prescramble_multiple, L);
    for (const double p : spec.p_grid) {
      SweepRow row;
      row.L = L;
      row.T = T;
      row.p = p;
      row.t_scr = t_scr;
      row.seed = spec.seed;
      if (spec.engine == SweepSpec::Engine::kClifford) {
        ProtocolConfig cfg = spec.clifford;
        cfg.L = L;
        cfg.T = T;
        cfg.p = p;
        cfg.seed = spec.seed;
        cfg.n_samples = spec.samples;
        cfg.prescramble = spec.prescramble;
        cfg.prescramble_k = spec.prescramble_k;
        cfg.prescramble_multiple = spec.prescramble_multiple;
        const auto recs = run_protocol(cfg, {T}, spec.threads);
        double mean = 0;
        for (const auto& r : recs) mean += r.checkpoints.back().second;
        mean /= double(recs.size());
        double var = 0;
        for (const auto& r : recs) {
          const double d = r.checkpoints.back().second - mean;
          var += d * d;
        }
        var /= std::max<std::size_t>(1, recs.size() - 1);
        row.engine = "clifford";
        row.protocol = cfg.encoding == EncodingKind::kSinglePair
                           ? "single_pair"
                           : "finite_rate";
        row.channel = cfg.channel == ChannelKind::kErasure ? "erasure"
                                                           : "cnot_ancilla";
        row.schedule =
            cfg.schedule == ScheduleKind::kRandom ? "random" : "periodic";
        row.p_u = cfg.p_u;
        row.C = cfg.encoding == EncodingKind::kFiniteRate ? cfg.code_rate : 0;
        row.n_samples = spec.samples;
        row.mean_I = mean;
        row.sem_I = std::sqrt(var / double(recs.size()));
      } else {
        AnnealedConfig cfg = spec.annealed;
        cfg.L = L;
        cfg.T = T;
        cfg.prescramble_depth = t_scr;
        cfg.seed = spec.seed;
        cfg.realizations = spec.samples;
        row.engine = "annealed";
        row.protocol = cfg.finite_rate ? "finite_rate" : "single_pair";
        row.channel = "depolarize";
        row.p_u = 1.0;
        row.C = cfg.finite_rate ? cfg.code_rate : 0;
        if (cfg.noise == WalkNoise::kDeterministic) {
          row.schedule = "deterministic";
          row.n_samples = 1;
          row.mean_I = annealed_mi_point(cfg, p);
          row.sem_I = 0;
        } else {
          row.schedule = "random_times";
          row.n_samples = spec.samples;
          // Mean and SEM over disorder realizations.
          std::vector<double> vals(cfg.realizations);
          AnnealedConfig one = cfg;
          one.realizations = 1;
          for (int r = 0; r < cfg.realizations; ++r) {
            AnnealedConfig c1 = one;
            c1.seed = detail::splitmix64(spec.seed ^ (0x5851f42d4c957f2dull + r));
            vals[r] = annealed_mi_point(c1, p);
          }
          double mean = 0;
          for (const double v : vals) mean += v;
          mean /= double(vals.size());
          double var = 0;
          for (const double v : vals) var += (v - mean) * (v - mean);
          var /= std::max<std::size_t>(1, vals.size() - 1);
          row.mean_I = mean;
          row.sem_I = std::sqrt(var / double(vals.size()));
        }
      }
      rows.push_back(row);
    }
  }

  if (!spec.out_dir.empty()) {
    write_csv(csv_path, rows);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    json manifest;
    manifest["spec"] = json::parse(spec.to_json_string());
    manifest["seed"] = spec.seed;
    manifest["version"] = kVersion;
    manifest["wall_clock_seconds"] = wall;
    manifest["rows"] = rows.size();
    manifest["csv"] = "sweep.csv";
    std::ofstream out(manifest_path);
    if (!out) throw IoError("cannot write manifest: " + manifest_path);
    out << manifest.dump(2) << "\n";
  }
  return rows;
}

}  // namespace dcl
