#include "vpt/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>

#include "vpt/analysis.hpp"
#include "vpt/errors.hpp"
#include "vpt/lowtemp.hpp"
#include "vpt/oracle.hpp"
#include "vpt/series.hpp"
#include "vpt/wick.hpp"

namespace vpt::cli {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  params.validate();
  if (order != 1 && order != 2) throw std::invalid_argument("--order must be 1 or 2");
  for (double g : couplings)
    if (!(g >= 0.0)) throw std::invalid_argument("--g must be nonnegative");
  if (points < 4) throw std::invalid_argument("--points must be at least 4");
  if (x_max && !(*x_max > 0.0)) throw std::invalid_argument("--x-max must be positive");
  policy.validate();
}

std::vector<double> RunConfig::grid() const {
  return uniform_grid(0.0, x_max.value_or(8.0 * params.length_scale()), points);
}

namespace {

std::vector<double> couplings_of(const RunConfig& cfg) {
  return cfg.couplings.empty() ? std::vector<double>{0.5} : cfg.couplings;
}

OscillatorParams with_g(const RunConfig& cfg, double g) {
  OscillatorParams p = cfg.params;
  p.g = g;
  return p;
}

// Runs f(g) for every coupling concurrently and returns the results in input order.
template <class F>
auto sweep(const std::vector<double>& gs, F f) {
  using R = decltype(f(0.0));
  std::vector<std::future<R>> jobs;
  for (double g : gs) jobs.push_back(std::async(std::launch::async, f, g));
  std::vector<R> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string scaled(const Rational& c, int k) {
  // coefficient in units of (-g)^k / k!
  Rational s = c;
  for (int i = 2; i <= k; ++i) s *= i;
  if (k % 2 == 1) s = -s;
  return to_string(numerator_of(s)) + "," + to_string(denominator_of(s));
}

void diagrams(const RunConfig& cfg, std::ostream& os) {
  os << "# <x^4(1)>\n" << wick::format_sum(wick::wick_reduce({{1, 4}}));
  if (cfg.order == 2) {
    const wick::WickSum full = wick::wick_reduce({{1, 4}, {2, 4}});
    os << "# <x^4(1) x^4(2)>, " << full.size() << " terms, multiplicity sum " << full.multiplicity_sum() << '\n'
       << wick::format_sum(full);
  }
  for (int k = 1; k <= cfg.order; ++k) {
    os << "# connected, order " << k << '\n' << wick::format_sum(wick::connected_w_terms(k));
    auto [beta, constant] = lowtemp::assemble_w_exponent(k, cfg.verbose ? &os : nullptr);
    os << "# exponent, order " << k << ": beta_linear " << to_string(beta[k]) << "; constant "
       << to_string(constant[k]) << '\n';
  }
}

void series_table(const RunConfig& cfg, std::ostream& os) {
  os << "quantity,g_order,x_power,numerator,denominator,scaled_numerator,scaled_denominator,hbar_exp,mass_exp,"
        "omega_exp\n";
  auto row = [&](const char* name, int k, int power, const Rational& c, const Dim& d) {
    os << name << ',' << k << ',' << power << ',' << to_string(numerator_of(c)) << ','
       << to_string(denominator_of(c)) << ',' << scaled(c, k) << ',' << d.hbar << ',' << d.mass << ',' << d.omega
       << '\n';
  };
  const auto energy = series::energy_series();
  for (int k = 0; k <= cfg.order; ++k) row("energy", k, 0, energy.coefficients[k], energy_dimension(k));
  auto table = [&](const char* name, const GPoly& p) {
    for (int k = 0; k <= cfg.order; ++k)
      for (const auto& [power, c] : p[k].terms()) row(name, k, power, c, series_dimension(k, power));
  };
  table("rho_exponent", series::rho_diagonal_series());
  table("psi_exponent", series::psi_exponent_series());
  GPoly prefactor = series::psi_pert_series();
  table("psi_prefactor", prefactor);
  if (cfg.order < 2) prefactor[2] = XPoly{};
  const auto [r1, r2] = series::check_normalization(prefactor);
  row("normalization_residual", 1, 0, r1, Dim{0, 0, 0});
  if (cfg.order == 2) row("normalization_residual", 2, 0, r2, Dim{0, 0, 0});
}

void omega_table(const RunConfig& cfg, std::ostream& os) {
  const auto grid = cfg.grid();
  const auto gs = couplings_of(cfg);
  auto profiles = sweep(gs, [&](double g) {
    return variational::solve_omega_profile(cfg.order, grid, with_g(cfg, g), cfg.policy);
  });
  analysis::CsvWriter csv(os, {"g", "x", "omega", "kind", "branch", "root_count"});
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const auto& p = profiles[j];
    for (std::size_t i = 0; i < p.x.size(); ++i)
      csv.row({gs[j], p.x[i], p.omega[i], p.kind[i] == variational::RootKind::Extremum ? 0.0 : 1.0,
               static_cast<double>(p.branch[i]), static_cast<double>(p.candidates[i].roots.size())});
  }
}

void write_curves(const std::vector<double>& gs, const std::vector<GridFunction>& curves, std::ostream& os) {
  analysis::CsvWriter csv(os, {"g", "x", "psi"});
  for (std::size_t j = 0; j < gs.size(); ++j)
    for (std::size_t i = 0; i < curves[j].size(); ++i) csv.row({gs[j], curves[j].x[i], curves[j].values[i]});
}

void psi_table(const RunConfig& cfg, std::ostream& os) {
  const auto grid = cfg.grid();
  const auto gs = couplings_of(cfg);
  auto curves = sweep(gs, [&](double g) {
    const OscillatorParams p = with_g(cfg, g);
    if (!cfg.perturbative) return variational::solve_variational(cfg.order, grid, p, cfg.policy).psi;
    GPoly prefactor = series::psi_pert_series();
    if (cfg.order < 2) prefactor[2] = XPoly{};
    GridFunction f;
    f.half_line = true;
    f.x = grid;
    for (double x : grid) f.values.push_back(series::evaluate_psi(prefactor, x, p));
    return f;
  });
  write_curves(gs, curves, os);
}

GridFunction resample(const GridFunction& f, const std::vector<double>& grid) {
  GridFunction out;
  out.half_line = true;
  out.normalized = f.normalized;
  out.x = grid;
  for (double x : grid) out.values.push_back(f.value_at(x));
  return out;
}

void exact_table(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const auto grid = cfg.grid();
  const auto gs = couplings_of(cfg);
  auto states = sweep(gs, [&](double g) { return oracle::ground_state(with_g(cfg, g)); });
  std::vector<GridFunction> curves;
  for (std::size_t j = 0; j < gs.size(); ++j) {
    err << "# E(g=" << analysis::CsvWriter::format(gs[j]) << ") = " << analysis::CsvWriter::format(states[j].energy)
        << '\n';
    curves.push_back(resample(states[j].psi, grid));
  }
  write_curves(gs, curves, os);
}

void msd_table(const RunConfig& cfg, std::ostream& os) {
  const auto grid = cfg.grid();
  const auto gs = couplings_of(cfg);
  auto rows = sweep(gs, [&](double g) {
    const OscillatorParams p = with_g(cfg, g);
    const auto exact = oracle::ground_state(p);
    const double d1 = analysis::mean_square_deviation(variational::solve_variational(1, grid, p, cfg.policy).psi, exact.psi);
    const double d2 = analysis::mean_square_deviation(variational::solve_variational(2, grid, p, cfg.policy).psi, exact.psi);
    return std::vector<double>{g, d1, d2, d2 / d1};
  });
  analysis::CsvWriter csv(os, {"g", "D1", "D2", "ratio"});
  for (const auto& r : rows) csv.row(r);
}

fs::path output_path(const RunConfig& cfg) {
  const char* dir = std::getenv("VPT_OUT_DIR");
  if (!cfg.out.empty()) {
    fs::path p(cfg.out);
    if (dir && *dir && p.is_relative()) p = fs::path(dir) / p;
    return p;
  }
  if (dir && *dir) return fs::path(dir) / (cfg.subcommand + (cfg.subcommand == "diagrams" ? ".txt" : ".csv"));
  return {};
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& seed, std::string& fallback) {
  sub->add_option("--order", cfg.order, "Order of the expansion (1 or 2)")->check(CLI::IsMember({1, 2}));
  sub->add_option("--g", cfg.couplings, "Quartic coupling; repeat for a sweep")->take_all();
  sub->add_option("--x-max", cfg.x_max, "Upper end of the x grid (default 8 oscillator lengths)");
  sub->add_option("--points", cfg.points, "Number of x grid points");
  sub->add_option("--hbar", cfg.params.hbar, "Planck constant");
  sub->add_option("--mass", cfg.params.mass, "Particle mass");
  sub->add_option("--omega", cfg.params.omega, "Harmonic frequency");
  sub->add_option("--omega-min", cfg.policy.omega_min, "Lower end of the trial-frequency scan, in units of omega");
  sub->add_option("--omega-max", cfg.policy.omega_max, "Upper end of the trial-frequency scan, in units of omega");
  sub->add_option("--scan-points", cfg.policy.scan_points, "Points of the logarithmic trial-frequency scan");
  sub->add_option("--seed-branch", seed, "Root taken at the largest x")->check(CLI::IsMember({"largest", "smallest"}));
  sub->add_option("--fallback", fallback, "Turning points where extrema are missing: per point or on the whole grid")
      ->check(CLI::IsMember({"uniform", "pointwise"}));
  sub->add_option("--out", cfg.out, "Output file (relative paths resolve under VPT_OUT_DIR)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational perturbation theory for the quartic anharmonic oscillator ground state", "vpt"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string seed = "largest", fallback = "uniform";
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"diagrams", "Wick sums, connected diagrams and their low-temperature integrals"},
      {"series", "Exact coefficient tables of the density matrix and wave function series"},
      {"omega", "Optimal trial frequency per x (CSV)"},
      {"psi", "Variational or perturbative wave function (CSV)"},
      {"exact", "Finite-difference ground state (CSV)"},
      {"msd", "Mean square deviation of orders 1 and 2 from the exact ground state (CSV)"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, cfg, seed, fallback);
    if (std::string(name) == "diagrams") sub->add_flag("-v,--verbose", cfg.verbose, "Print the derivation log");
    if (std::string(name) == "psi") sub->add_flag("--perturbative", cfg.perturbative, "Emit the series instead");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.policy.seed = seed == "smallest" ? variational::SeedRule::Smallest : variational::SeedRule::Largest;
  cfg.policy.fallback = fallback == "pointwise" ? variational::Fallback::Pointwise : variational::Fallback::Uniform;

  try {
    cfg.validate();
    const fs::path path = output_path(cfg);
    std::unique_ptr<std::ofstream> file;
    if (!path.empty()) {
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw std::invalid_argument("cannot open " + path.string());
    }
    std::ostream& os = file ? *file : out;
    const std::string& s = cfg.subcommand;
    if (s == "diagrams") diagrams(cfg, os);
    else if (s == "series") series_table(cfg, os);
    else if (s == "omega") omega_table(cfg, os);
    else if (s == "psi") psi_table(cfg, os);
    else if (s == "exact") exact_table(cfg, os, err);
    else if (s == "msd") msd_table(cfg, os);
    os.flush();
    if (!os) throw NumericError("write failed");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace vpt::cli
