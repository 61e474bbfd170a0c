// dyad: command-line front end for the dyad library.
//
// Exit status: 0 success, 2 usage error, 3 numerical guard tripped.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dyad/error.hpp"
#include "dyad/optimizer.hpp"
#include "dyad/phi.hpp"
#include "dyad/qdyn.hpp"
#include "dyad/qiit.hpp"
#include "dyad/qshape.hpp"
#include "dyad/serialize.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr const char* kOutputDirEnv = "DYAD_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool numerical_guard(dyad::ErrorCode c) {
  switch (c) {
    case dyad::ErrorCode::kStepTooLarge:
    case dyad::ErrorCode::kZeroMarginal:
    case dyad::ErrorCode::kKlUndefined:
    case dyad::ErrorCode::kInfiniteDivergence:
    case dyad::ErrorCode::kInfeasibleTable:
      return true;
    default:
      return false;
  }
}

// Relative paths land in $DYAD_OUTPUT_DIR when it is set.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
  }
  return p;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  fs::path p = resolve_output(out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot write " + p.string());
  f << text;
}

void emit(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

dyad::Tpm2 parse_tpm(const std::string& text) {
  if (text == "swap") return dyad::Tpm2::swap();
  if (text == "identity") return dyad::Tpm2::identity();
  if (text == "not-swap") return dyad::Tpm2::not_swap();
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw UsageError("invalid tpm '" + text + "'");
  return dyad::tpm_from_json(j);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + item + "'");
    }
  }
  return v;
}

// ---- phi

struct PhiArgs {
  std::string state;
  std::string tpm = "swap";
  std::string out;
};

void cmd_phi(const PhiArgs& a) {
  dyad::Tpm2 tpm = parse_tpm(a.tpm);
  dyad::DyadState s = dyad::parse_state(a.state);
  json j = dyad::big_phi(tpm, s);
  j["state"] = s;
  j["tpm"] = tpm;
  emit(j, a.out);
}

// ---- qshape / distances

struct QShapeArgs {
  std::string state;
  std::string tpm = "swap";
  std::string metric = "tv";
  std::string out;
};

json directed_json(const std::array<std::array<std::optional<double>, 4>, 4>& d) {
  json rows = json::array();
  for (const auto& row : d) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v ? json(*v) : json(nullptr));
    rows.push_back(r);
  }
  return rows;
}

json metric_fields(dyad::Metric m) {
  return {{"metric", dyad::metric_name(m)}, {"default_metric", m == dyad::Metric::kTotalVariation}};
}

void cmd_qshape(const QShapeArgs& a) {
  dyad::Tpm2 tpm = parse_tpm(a.tpm);
  dyad::DyadState s = dyad::parse_state(a.state);
  dyad::Metric m = dyad::parse_metric(a.metric);
  json j = dyad::build_qshape(tpm, s);
  j["iit4"] = dyad::build_qshape_iit4(tpm, s);
  j.update(metric_fields(m));
  // Distance from this state's Q-shape to each of the four.
  auto row = dyad::directed_distances(tpm, m)[s.index()];
  j["distances"] = directed_json({row})[0];
  json flags = json::array();
  for (dyad::DyadState target : dyad::kAllStates) {
    if (!row[target.index()]) {
      flags.push_back({{"target", dyad::to_string(target)}, {"code", dyad::to_string(dyad::ErrorCode::kKlUndefined)}});
    }
  }
  j["flags"] = flags;
  emit(j, a.out);
}

struct DistancesArgs {
  std::string tpm = "swap";
  std::string metric = "tv";
  bool coordinates = false;
  std::string out;
};

void cmd_distances(const DistancesArgs& a) {
  dyad::Tpm2 tpm = parse_tpm(a.tpm);
  dyad::Metric m = dyad::parse_metric(a.metric);
  json j = metric_fields(m);
  j["symmetric"] = dyad::is_symmetric(m);
  j["table"] = dyad::is_symmetric(m) ? json(dyad::distance_table(tpm, m)) : directed_json(dyad::directed_distances(tpm, m));
  if (a.coordinates) {
    json c = json::object();
    for (dyad::DyadState s : dyad::kAllStates) {
      dyad::QShape q = dyad::build_qshape(tpm, s);
      c[dyad::to_string(s)] = {{"A", dyad::part_coordinates(q, dyad::Unit::kA)},
                               {"B", dyad::part_coordinates(q, dyad::Unit::kB)}};
    }
    j["coordinates"] = c;
  }
  emit(j, a.out);
}

// ---- optimize

struct OptimizeArgs {
  std::string table;
  std::string tpm = "swap";
  bool oracle = false;
  double granularity = 1.0;
  std::optional<double> bound;
  std::string out;
};

void cmd_optimize(const OptimizeArgs& a) {
  dyad::DistanceTable table =
      a.table.empty() ? dyad::distance_table(parse_tpm(a.tpm)) : dyad::table_from_json(read_json_file(a.table));
  dyad::OptimizationResult r = dyad::solve(table);
  json j = r;
  j["table"] = table;
  j["preferred"] = r.preferred();
  if (a.oracle) {
    double bound = a.bound.value_or(3.0 * table.max_entry());
    dyad::OptimizationResult o = dyad::grid_oracle(table, a.granularity, bound);
    j["oracle"] = {{"granularity", a.granularity},
                   {"bound", bound},
                   {"optimal_sum", o.optimal_sum},
                   {"count", o.minimizers.size()},
                   {"agrees", o.minimizers == r.minimizers}};
  }
  emit(j, a.out);
}

// ---- simulate

struct SimulateArgs {
  std::string eigenvalues = "2,0,4,6";
  double lambda = 1.0;
  double t = 1.0;
  double dt = 1e-4;
  std::vector<std::string> pair = {"00", "01"};
  bool uniform = false;
  std::string hamiltonian = "none";
  int samples = 11;
  std::string format = "json";
  std::string out;
  // sde only
  long long trajectories = 1000;
  std::uint64_t seed = 0;
  double threshold = 0.99;
  bool stop_on_collapse = false;
  unsigned threads = 0;
};

dyad::PureState4 initial_state(const SimulateArgs& a) {
  if (a.uniform) return dyad::PureState4(dyad::Vector4c::Constant(dyad::Complex(0.5, 0.0)));
  if (a.pair.size() != 2) throw UsageError("--pair takes two states");
  return dyad::pair_superposition(dyad::parse_state(a.pair[0]), dyad::parse_state(a.pair[1]));
}

dyad::Matrix4c hamiltonian(const std::string& name) {
  if (name == "none") return dyad::Matrix4c::Zero();
  if (name == "swap") return dyad::swap_hamiltonian();
  throw UsageError("invalid hamiltonian '" + name + "'");
}

dyad::CollapseOperator collapse_operator(const std::string& text) {
  std::vector<double> v = parse_list(text);
  if (v.size() != 4) throw UsageError("--eigenvalues takes four comma-separated numbers");
  return dyad::build_collapse_operator(dyad::EigenAssignment{{v[0], v[1], v[2], v[3]}});
}

std::vector<double> sample_grid(const SimulateArgs& a) {
  if (a.samples < 2) throw UsageError("--samples must be at least 2");
  std::vector<double> times;
  for (int i = 0; i < a.samples; ++i) times.push_back(a.t * i / (a.samples - 1));
  return times;
}

void validate_common(const SimulateArgs& a) {
  if (!(a.t > 0.0)) throw UsageError("--t must be positive");
  if (!(a.dt > 0.0)) throw UsageError("--dt must be positive");
  if (!(a.lambda >= 0.0)) throw UsageError("--lambda must be non-negative");
  if (a.format != "json" && a.format != "csv") throw UsageError("--format must be json or csv");
}

std::string csv_series(const std::vector<double>& times, const std::vector<dyad::DensityMatrix4>& states) {
  std::string out = "time,p00,p01,p10,p11,c01,c02,c03,c12,c13,c23\n";
  char buf[32];
  for (std::size_t n = 0; n < times.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", times[n]);
    out += buf;
    for (double p : states[n].populations()) {
      std::snprintf(buf, sizeof buf, ",%.17g", p);
      out += buf;
    }
    for (double c : states[n].coherence_magnitudes()) {
      std::snprintf(buf, sizeof buf, ",%.17g", c);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

json series_json(const std::vector<double>& times, const std::vector<dyad::DensityMatrix4>& states) {
  json samples = json::array();
  for (std::size_t n = 0; n < times.size(); ++n) {
    samples.push_back({{"time", times[n]},
                       {"populations", states[n].populations()},
                       {"coherences", states[n].coherence_magnitudes()},
                       {"rho", states[n]}});
  }
  return samples;
}

json simulation_header(const char* mode, const SimulateArgs& a, const dyad::CollapseOperator& op,
                       const dyad::PureState4& psi0) {
  json amplitudes = json::array();
  for (int i = 0; i < 4; ++i) amplitudes.push_back({psi0[i].real(), psi0[i].imag()});
  return {{"mode", mode},          {"eigenvalues", op.eigenvalues()}, {"lambda", a.lambda},
          {"t", a.t},              {"dt", a.dt},                      {"hamiltonian", a.hamiltonian},
          {"initial", amplitudes}};
}

void cmd_lindblad(const SimulateArgs& a) {
  validate_common(a);
  dyad::CollapseOperator op = collapse_operator(a.eigenvalues);
  dyad::PureState4 psi0 = initial_state(a);
  std::vector<double> times = sample_grid(a);
  auto states = dyad::lindblad_path(dyad::DensityMatrix4::from_pure(psi0), hamiltonian(a.hamiltonian), op, a.lambda,
                                    times, a.dt);
  if (a.format == "csv") {
    emit(csv_series(times, states), a.out);
    return;
  }
  json j = simulation_header("lindblad", a, op, psi0);
  j["samples"] = series_json(times, states);
  emit(j, a.out);
}

void cmd_sde(const SimulateArgs& a) {
  validate_common(a);
  if (a.trajectories < 1) throw UsageError("--trajectories must be at least 1");
  if (!(a.threshold > 0.0 && a.threshold <= 1.0)) throw UsageError("--threshold must lie in (0, 1]");
  if (a.stop_on_collapse && a.format == "csv") throw UsageError("--stop-on-collapse has no time series for csv");
  dyad::CollapseOperator op = collapse_operator(a.eigenvalues);
  dyad::PureState4 psi0 = initial_state(a);

  dyad::SdeOptions opt;
  opt.lambda = a.lambda;
  opt.dt = a.dt;
  opt.horizon = a.t;
  opt.collapse_threshold = a.threshold;
  opt.stop_on_collapse = a.stop_on_collapse;
  if (!a.stop_on_collapse) opt.sample_times = sample_grid(a);

  auto ensemble = dyad::run_ensemble(psi0, hamiltonian(a.hamiltonian), op, opt, a.seed,
                                     static_cast<std::size_t>(a.trajectories), a.threads);
  std::vector<double> times;
  std::vector<dyad::DensityMatrix4> averages;
  if (!a.stop_on_collapse) {
    times = ensemble.front().times;
    for (double t : times) averages.push_back(dyad::ensemble_average(ensemble, t));
  }
  if (a.format == "csv") {
    emit(csv_series(times, averages), a.out);
    return;
  }

  auto counts = dyad::outcome_counts(ensemble);
  json outcomes = json::object();
  json frequencies = json::object();
  const double n = static_cast<double>(ensemble.size());
  for (dyad::DyadState s : dyad::kAllStates) {
    outcomes[dyad::to_string(s)] = counts[s.index()];
    frequencies[dyad::to_string(s)] = static_cast<double>(counts[s.index()]) / n;
  }
  outcomes["none"] = counts[4];
  frequencies["none"] = static_cast<double>(counts[4]) / n;

  json j = simulation_header("sde", a, op, psi0);
  j.update({{"trajectories", ensemble.size()},
            {"seed", a.seed},
            {"threshold", a.threshold},
            {"stop_on_collapse", a.stop_on_collapse},
            {"outcomes", outcomes},
            {"frequencies", frequencies},
            {"samples", series_json(times, averages)}});
  emit(j, a.out);
}

// ---- qphi

struct QphiArgs {
  std::string state;
  std::string amplitudes;
  std::string out;
};

dyad::DensityMatrix4 qphi_state(const QphiArgs& a) {
  if (!a.amplitudes.empty()) return dyad::DensityMatrix4::from_pure(dyad::amplitudes_from_json(read_json_file(a.amplitudes)));
  constexpr double r = std::numbers::sqrt2 / 2;
  const dyad::Matrix2c zero = dyad::QubitDensity::pure(1, 0).matrix();
  const dyad::Matrix2c plus = dyad::QubitDensity::pure(r, r).matrix();
  if (a.state == "plus0") return dyad::DensityMatrix4::product(plus, zero);
  if (a.state == "0plus") return dyad::DensityMatrix4::product(zero, plus);
  return dyad::DensityMatrix4::from_pure(dyad::PureState4::basis(dyad::parse_state(a.state)));
}

void cmd_qphi(const QphiArgs& a) {
  if (a.state.empty() == a.amplitudes.empty()) throw UsageError("give exactly one of --state and --amplitudes");
  dyad::DensityMatrix4 rho = qphi_state(a);
  json j = dyad::quantum_big_phi(rho);
  j["input"] = a.amplitudes.empty() ? json(a.state) : json(a.amplitudes);
  j["rho"] = rho;
  emit(j, a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrated information and collapse dynamics of the two-unit SWAP dyad."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  auto add_out = [](CLI::App* sub, std::string& out) {
    sub->add_option("--out", out, "Write output here instead of stdout; relative paths resolve under $DYAD_OUTPUT_DIR");
  };
  const std::string tpm_help = "Update rule: swap, identity, not-swap, or a JSON array of 4 output indices";

  PhiArgs phi;
  auto* phi_cmd = app.add_subcommand("phi", "Integrated information of one state");
  phi_cmd->add_option("--state", phi.state, "State of units A and B, e.g. 10")->required();
  phi_cmd->add_option("--tpm", phi.tpm, tpm_help)->capture_default_str();
  add_out(phi_cmd, phi.out);

  QShapeArgs qs;
  auto* qs_cmd = app.add_subcommand("qshape", "Q-shape of one state and its distances to all four");
  qs_cmd->add_option("--state", qs.state, "State of units A and B, e.g. 10")->required();
  qs_cmd->add_option("--tpm", qs.tpm, tpm_help)->capture_default_str();
  qs_cmd->add_option("--metric", qs.metric, "Row metric: tv, emd or kl")->capture_default_str();
  add_out(qs_cmd, qs.out);

  DistancesArgs dist;
  auto* dist_cmd = app.add_subcommand("distances", "Pairwise Q-shape distances");
  dist_cmd->add_option("--tpm", dist.tpm, tpm_help)->capture_default_str();
  dist_cmd->add_option("--metric", dist.metric, "Row metric: tv, emd or kl (kl gives a directed table)")
      ->capture_default_str();
  dist_cmd->add_flag("--coordinates", dist.coordinates, "Add each part's 8-dimensional coordinates");
  add_out(dist_cmd, dist.out);

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Minimal collapse-operator eigenvalues for a distance table");
  opt_cmd->add_option("--table", opt.table, "JSON file with a 4x4 distance table (default: computed from --tpm)");
  opt_cmd->add_option("--tpm", opt.tpm, tpm_help)->capture_default_str();
  opt_cmd->add_flag("--oracle", opt.oracle, "Cross-check against a brute-force lattice search");
  opt_cmd->add_option("--granularity", opt.granularity, "Lattice spacing for --oracle")->capture_default_str();
  opt_cmd->add_option("--bound", opt.bound, "Lattice upper bound for --oracle (default 3 x largest entry)");
  add_out(opt_cmd, opt.out);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Collapse dynamics");
  sim_cmd->require_subcommand(1);
  auto add_sim_options = [&](CLI::App* sub) {
    sub->add_option("--eigenvalues", sim.eigenvalues, "Collapse operator eigenvalues for 00,01,10,11")
        ->capture_default_str();
    sub->add_option("--lambda", sim.lambda, "Collapse rate")->capture_default_str();
    sub->add_option("--t", sim.t, "Final time")->capture_default_str();
    sub->add_option("--dt", sim.dt, "Time step")->capture_default_str();
    sub->add_option("--pair", sim.pair, "Start in the equal superposition of these two states")
        ->expected(2)
        ->capture_default_str();
    sub->add_flag("--uniform", sim.uniform, "Start in the equal superposition of all four states");
    sub->add_option("--hamiltonian", sim.hamiltonian, "none, or swap for the SWAP generator")->capture_default_str();
    sub->add_option("--samples", sim.samples, "Number of evenly spaced output times including 0 and --t")
        ->capture_default_str();
    sub->add_option("--format", sim.format, "json or csv")->capture_default_str();
    add_out(sub, sim.out);
  };
  auto* lind_cmd = sim_cmd->add_subcommand("lindblad", "Integrate the master equation");
  add_sim_options(lind_cmd);
  auto* sde_cmd = sim_cmd->add_subcommand("sde", "Average an ensemble of stochastic trajectories");
  add_sim_options(sde_cmd);
  sde_cmd->add_option("--trajectories", sim.trajectories, "Number of trajectories")->capture_default_str();
  sde_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  sde_cmd->add_option("--threshold", sim.threshold, "Population that counts as collapsed")->capture_default_str();
  sde_cmd->add_flag("--stop-on-collapse", sim.stop_on_collapse,
                    "End each trajectory once collapsed; reports outcomes only");
  sde_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();

  QphiArgs qp;
  auto* qp_cmd = app.add_subcommand("qphi", "Quantum integrated information of a product state");
  qp_cmd->add_option("--state", qp.state, "00, 01, 10, 11, plus0 or 0plus");
  qp_cmd->add_option("--amplitudes", qp.amplitudes, "JSON file with 4 amplitudes, each a number or [re, im]");
  add_out(qp_cmd, qp.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (phi_cmd->parsed()) cmd_phi(phi);
    if (qs_cmd->parsed()) cmd_qshape(qs);
    if (dist_cmd->parsed()) cmd_distances(dist);
    if (opt_cmd->parsed()) cmd_optimize(opt);
    if (lind_cmd->parsed()) cmd_lindblad(sim);
    if (sde_cmd->parsed()) cmd_sde(sim);
    if (qp_cmd->parsed()) cmd_qphi(qp);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dyad::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return numerical_guard(e.code()) ? kExitNumerical : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
