#include "snpa/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "snpa/errors.hpp"
#include "snpa/io.hpp"
#include "snpa/parallel.hpp"
#include "snpa/stats.hpp"
#include "snpa/subsampling.hpp"

namespace snpa {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  double v;
  if (!parse_double(s, v)) throw ValidationError(key + ": invalid number '" + s + "'");
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(key + ": invalid non-negative integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::string to_string(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::SymmetricStable: return "symmetric-stable";
    case NoiseFamily::AsymmetricStable: return "asymmetric-stable";
    case NoiseFamily::Student: return "student";
    case NoiseFamily::SkewStudent: return "skew-student";
    case NoiseFamily::Normal: return "normal";
  }
  return "?";
}

std::string to_string(McTest t) {
  switch (t) {
    case McTest::DM: return "DM";
    case McTest::Alg1: return "Alg1";
    case McTest::AlgC1: return "AlgC1";
  }
  return "?";
}

NoiseFamily parse_noise_family(const std::string& s) {
  for (auto f : {NoiseFamily::SymmetricStable, NoiseFamily::AsymmetricStable, NoiseFamily::Student,
                 NoiseFamily::SkewStudent, NoiseFamily::Normal}) {
    if (s == to_string(f)) return f;
  }
  throw ValidationError("unknown noise family '" + s + "'");
}

McTest parse_mc_test(const std::string& s) {
  if (s == "dm") return McTest::DM;
  if (s == "alg1") return McTest::Alg1;
  if (s == "algc1") return McTest::AlgC1;
  throw ValidationError("unknown test '" + s + "' (expected dm, alg1 or algc1)");
}

NoiseSpec make_noise(NoiseFamily family, double kappa, double p_plus) {
  switch (family) {
    case NoiseFamily::SymmetricStable: return StableParams::symmetric(kappa);
    case NoiseFamily::AsymmetricStable: return StableParams::skewed_zero_mean(kappa);
    case NoiseFamily::Student: return StudentNoise{kappa};
    case NoiseFamily::SkewStudent: return SkewStudentParams{kappa, p_plus};
    case NoiseFamily::Normal: return NormalNoise{};
  }
  throw ValidationError("unknown noise family");
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw ValidationError("replications must be at least 1");
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("level must lie in (0,1)");
  if (sample_sizes.empty() || deltas.empty() || tests.empty()) {
    throw ValidationError("n, delta and tests must be non-empty");
  }
  if (noise == NoiseFamily::Normal) {
    if (kappas.size() != 1 || !std::isinf(kappas.front())) {
      throw ValidationError("kappa is not used with normal noise");
    }
  } else {
    if (kappas.empty()) throw ValidationError("kappa must be non-empty");
    for (double k : kappas) {
      Ar1Spec probe;
      probe.noise = make_noise(noise, k, p_plus);
      probe.phi = phi;
      probe.burn_in = burn_in;
      probe.validate();
    }
  }
  for (double d : deltas) {
    if (!std::isfinite(d)) throw ValidationError("delta must be finite");
  }
  if (!(std::abs(phi) < 1.0)) throw ValidationError("phi must satisfy |phi| < 1");
  for (std::size_t n : sample_sizes) {
    SubsampleConfig sc;
    sc.block = block;
    sc.level = level;
    sc.validate(n);
    if (lag && *lag >= n) throw ValidationError("lag must be smaller than n");
  }
  if (workers < 1) throw ValidationError("workers must be at least 1");
}

ExperimentConfig parse_experiment_config(std::istream& in, const std::string& source) {
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    static const std::set<std::string> known{"noise",   "kappa",  "n",       "delta",   "phi",
                                             "p_plus",  "replications",      "level",   "tests",
                                             "seed",    "burn_in", "block",  "lag",     "workers",
                                             "output",  "scale"};
    if (!known.count(key)) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!entries.emplace(key, std::make_pair(value, line_no)).second) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": repeated key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second.first;
  };
  auto where = [&](const std::string& key) {
    return source + ":" + std::to_string(entries.at(key).second) + ": ";
  };
  try {
    if (auto v = get("scale")) {
      if (*v == "full") {
        cfg.replications = 10000;
        cfg.sample_sizes = {1000, 2000, 5000, 10000, 100000};
      } else if (*v != "desk") {
        throw ValidationError("scale: expected desk or full, got '" + *v + "'");
      }
    }
    if (auto v = get("noise")) cfg.noise = parse_noise_family(*v);
    if (cfg.noise == NoiseFamily::Normal) cfg.kappas = {std::numeric_limits<double>::infinity()};
    if (auto v = get("kappa")) {
      if (cfg.noise == NoiseFamily::Normal) throw ValidationError("kappa is not used with normal noise");
      cfg.kappas.clear();
      for (const auto& s : split_list(*v)) cfg.kappas.push_back(to_double("kappa", s));
    }
    if (auto v = get("n")) {
      cfg.sample_sizes.clear();
      for (const auto& s : split_list(*v)) cfg.sample_sizes.push_back(to_u64("n", s));
    }
    if (auto v = get("delta")) {
      cfg.deltas.clear();
      for (const auto& s : split_list(*v)) cfg.deltas.push_back(to_double("delta", s));
    }
    if (auto v = get("phi")) cfg.phi = to_double("phi", *v);
    if (auto v = get("p_plus")) cfg.p_plus = to_double("p_plus", *v);
    if (auto v = get("replications")) cfg.replications = to_u64("replications", *v);
    if (auto v = get("level")) cfg.level = to_double("level", *v);
    if (auto v = get("tests")) {
      cfg.tests.clear();
      for (const auto& s : split_list(*v)) {
        const auto t = parse_mc_test(s);
        if (std::find(cfg.tests.begin(), cfg.tests.end(), t) != cfg.tests.end()) {
          throw ValidationError("tests: '" + s + "' listed twice");
        }
        cfg.tests.push_back(t);
      }
    }
    if (auto v = get("seed")) cfg.seed = to_u64("seed", *v);
    if (auto v = get("burn_in")) cfg.burn_in = to_u64("burn_in", *v);
    if (auto v = get("block")) cfg.block = to_u64("block", *v);
    if (auto v = get("lag")) {
      if (*v == "auto") {
        cfg.lag.reset();
      } else {
        cfg.lag = to_u64("lag", *v);
      }
    }
    if (auto v = get("workers")) cfg.workers = to_u64("workers", *v);
    if (auto v = get("output")) cfg.output = *v;
  } catch (const ValidationError& e) {
    // Attach the line of the offending key when we can tell which one it was.
    const std::string msg = e.what();
    for (const auto& [key, entry] : entries) {
      if (msg.rfind(key + ":", 0) == 0) throw ValidationError(where(key) + msg);
    }
    throw ValidationError(source + ": " + msg);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path);
  return parse_experiment_config(in, path);
}

double ExperimentRow::reject_pct() const {
  return 100.0 * static_cast<double>(rejections) / static_cast<double>(replications);
}

double ExperimentRow::mc_se() const {
  const double p = static_cast<double>(rejections) / static_cast<double>(replications);
  return 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(replications));
}

std::vector<ExperimentRow> run_experiment_grid(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ExperimentRow> rows;
  const std::size_t m = cfg.replications;
  const std::size_t n_tests = cfg.tests.size();
  std::vector<unsigned char> rejected(m * n_tests);
  for (double kappa : cfg.kappas) {
    for (std::size_t n : cfg.sample_sizes) {
      for (double delta : cfg.deltas) {
        Ar1Spec base;
        base.delta = delta;
        base.phi = cfg.phi;
        base.noise = make_noise(cfg.noise, kappa, cfg.p_plus);
        base.n = n;
        base.burn_in = cfg.burn_in;
        base.seed = cfg.seed;
        SubsampleConfig sc;
        sc.block = cfg.block;
        sc.level = cfg.level;
        parallel_for(m, cfg.workers, [&](std::size_t begin, std::size_t end) {
          Ar1Spec spec = base;
          std::vector<double> x;
          for (std::size_t r = begin; r < end; ++r) {
            spec.stream_id = r;
            simulate_ar1_into(spec, x);
            for (std::size_t k = 0; k < n_tests; ++k) {
              bool reject = false;
              switch (cfg.tests[k]) {
                case McTest::DM: reject = dm_test(x, cfg.lag, cfg.level).reject; break;
                case McTest::Alg1: reject = epa_test(x, sc).reject; break;
                case McTest::AlgC1: reject = abs_test(x, sc).reject; break;
              }
              rejected[r * n_tests + k] = reject ? 1 : 0;
            }
          }
        });
        for (std::size_t k = 0; k < n_tests; ++k) {
          ExperimentRow row;
          row.kappa = kappa;
          row.n = n;
          row.delta = delta;
          row.test = cfg.tests[k];
          row.replications = m;
          row.seed = cfg.seed;
          for (std::size_t r = 0; r < m; ++r) row.rejections += rejected[r * n_tests + k];
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_rejection_experiment(const ExperimentConfig& cfg) {
  for (double d : cfg.deltas) {
    if (d != 0.0) {
      throw ValidationError("size experiment needs delta = 0 (got " + format_double(d) +
                            "); use the power experiment for a delta grid");
    }
  }
  return run_experiment_grid(cfg);
}

std::vector<ExperimentRow> run_power_experiment(const ExperimentConfig& cfg) {
  return run_experiment_grid(cfg);
}

void write_experiment_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << "kappa,n,delta,test,reject_pct,mc_se,M,seed\n";
  for (const auto& r : rows) {
    os << format_double(r.kappa) << ',' << r.n << ',' << format_double(r.delta) << ','
       << to_string(r.test) << ',' << format_double(r.reject_pct()) << ','
       << format_double(r.mc_se()) << ',' << r.replications << ',' << r.seed << '\n';
  }
}

}  // namespace snpa
