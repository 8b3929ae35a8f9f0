#include "ncqo/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncqo/blackbody.hpp"
#include "ncqo/normal_form.hpp"
#include "ncqo/oracle.hpp"
#include "ncqo/vacuum.hpp"
#include "ncqo/verify.hpp"
#include "ncqo/word.hpp"
#include "ncqo/xfactor.hpp"

namespace ncqo::cli {

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

VacuumSpec load_vacuum(const std::string& path) {
  return VacuumSpec::from_json(load_json(path));
}

// Mode table inferred from the expression itself; frequencies are
// irrelevant to normal ordering.
ModeTable table_from_expression(const std::string& text) {
  ModeTable table;
  for (const auto& token : lex_word(text)) {
    if (!table.contains(token.mode_id)) table.add({token.mode_id, 1.0});
  }
  return table;
}

nlohmann::json complex_json(const std::complex<double>& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  char colon1 = 0;
  char colon2 = 0;
  std::istringstream in(text);
  in >> grid.lo >> colon1 >> grid.hi >> colon2 >> grid.points;
  if (!in || colon1 != ':' || colon2 != ':' || grid.points < 2)
    throw CLI::ValidationError("grid", "expected lo:hi:points with points >= 2");
  return grid;
}

unsigned sweep_threads() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NCQO_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1)
      throw std::runtime_error("NCQO_THREADS must be a positive integer");
    threads = std::min<long>(parsed, 256);
  }
  return threads;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void add_normal_order(CLI::App& app) {
  auto* cmd = app.add_subcommand("normal-order",
                                 "Normal order an operator expression");
  auto expr = std::make_shared<std::string>();
  cmd->add_option("expr", *expr, "operator word, e.g. \"a(k1) ad(k1)\"")
      ->required();
  cmd->callback([expr]() {
    const ModeTable table = table_from_expression(*expr);
    emit(to_json(normal_order(parse_word(*expr, table))));
  });
}

void add_vev(CLI::App& app) {
  auto* cmd = app.add_subcommand("vev",
                                 "Vacuum expectation value of an expression");
  auto expr = std::make_shared<std::string>();
  auto vacuum_path = std::make_shared<std::string>();
  cmd->add_option("expr", *expr, "operator word")->required();
  cmd->add_option("--vacuum", *vacuum_path, "vacuum JSON file")->required();
  cmd->callback([expr, vacuum_path]() {
    const VacuumSpec vacuum = load_vacuum(*vacuum_path);
    const OperatorWord word = parse_word(*expr, vacuum.table());
    emit({{"value", complex_json(vev(vacuum, normal_order(word)))}});
  });
}

void add_xfactor(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "xfactor", "Canonical and noncanonical expectations and their ratio");
  auto expr = std::make_shared<std::string>();
  auto vacuum_path = std::make_shared<std::string>();
  cmd->add_option("expr", *expr, "operator word")->required();
  cmd->add_option("--vacuum", *vacuum_path, "vacuum JSON file")->required();
  cmd->callback([expr, vacuum_path]() {
    const VacuumSpec vacuum = load_vacuum(*vacuum_path);
    const XFactorReport report =
        xfactor(vacuum, parse_word(*expr, vacuum.table()));
    emit({{"canonical", complex_json(report.canonical)},
          {"noncanonical", complex_json(report.noncanonical)},
          {"ratio", report.ratio ? complex_json(*report.ratio)
                                 : nlohmann::json(nullptr)},
          {"vanishing", report.vanishing}});
  });
}

void add_emission(CLI::App& app) {
  auto* cmd = app.add_subcommand("emission",
                                 "Field-side emission amplitude factor");
  auto process = std::make_shared<std::string>();
  auto photons = std::make_shared<int>(1);
  auto vacuum_path = std::make_shared<std::string>();
  auto mode = std::make_shared<std::string>();
  auto partner = std::make_shared<std::string>();
  cmd->add_option("--process", *process,
                  "nphoton-same | two-different | stimulated")
      ->required();
  cmd->add_option("--n", *photons, "photon count N");
  cmd->add_option("--vacuum", *vacuum_path, "vacuum JSON file")->required();
  cmd->add_option("--mode", *mode, "emitting mode (default: first)");
  cmd->add_option("--mode2", *partner, "partner mode (default: second)");
  cmd->callback([process, photons, vacuum_path, mode, partner]() {
    const VacuumSpec vacuum = load_vacuum(*vacuum_path);
    const auto& modes = vacuum.table().modes();
    const std::string primary = mode->empty() ? modes.front().id : *mode;

    EmissionProcess request;
    if (*process == "nphoton-same") {
      request = EmissionProcess::n_photon_same(*photons, primary);
    } else if (*process == "two-different") {
      std::string second = *partner;
      if (second.empty()) {
        if (modes.size() < 2)
          throw std::runtime_error("two-different needs a second mode");
        second = modes[1].id;
      }
      request = EmissionProcess::two_different(primary, second);
    } else if (*process == "stimulated") {
      request = EmissionProcess::stimulated(*photons, primary);
    } else {
      throw CLI::ValidationError("--process", "unknown process '" + *process +
                                                  "'");
    }
    nlohmann::json out{{"process", *process},
                       {"n", request.photon_count},
                       {"mode", request.mode},
                       {"factor", emission_factor(vacuum, request)}};
    if (!request.partner_mode.empty()) out["mode2"] = request.partner_mode;
    emit(out);
  });
}

void add_oracle_verify(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "oracle-verify",
      "Randomized symbolic-vs-matrix agreement suite (fixed seed)");
  auto config_path = std::make_shared<std::string>();
  auto seed = std::make_shared<std::uint64_t>(20250114);
  auto words = std::make_shared<int>(200);
  auto tolerance = std::make_shared<double>(1e-10);
  cmd->add_option("--config", *config_path,
                  "oracle config JSON (modes, fock_dim, max_oscillators, "
                  "vacuum)")
      ->required();
  cmd->add_option("--seed", *seed, "word generator seed");
  cmd->add_option("--words", *words, "number of random words");
  cmd->add_option("--tol", *tolerance, "per-case absolute tolerance");
  cmd->callback([config_path, seed, words, tolerance]() {
    const nlohmann::json j = load_json(*config_path);
    const FockOracle oracle(OracleConfig::from_json(j));
    const VacuumSpec vacuum = VacuumSpec::from_json(j.at("vacuum"));
    const AgreementReport report =
        run_agreement_suite(oracle, vacuum, *words, *seed, *tolerance);
    char line[64];
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
      const auto& c = report.cases[i];
      std::snprintf(line, sizeof(line), "%.3e", c.abs_error);
      std::cout << (c.pass ? "ok   " : "FAIL ") << i << "  |sym-mat| = "
                << line << "  " << c.word << '\n';
    }
    std::snprintf(line, sizeof(line), "%.3e", report.max_abs_error);
    std::cout << (report.all_pass ? "PASS" : "FAIL") << "  "
              << report.cases.size() << " words, max |sym-mat| = " << line
              << '\n';
    if (!report.all_pass)
      throw Error("OracleMismatch", "agreement suite failed");
  });
}

void add_planck_sweep(CLI::App& app) {
  auto* cmd = app.add_subcommand("planck-sweep",
                                 "Spectral-density sweep to CSV");
  auto mu = std::make_shared<double>(0.0);
  auto grid_text = std::make_shared<std::string>("0.01:10:512");
  auto q_list = std::make_shared<std::vector<double>>();
  auto out_path = std::make_shared<std::string>();
  cmd->add_option("--mu", *mu, "chemical potential in k_B T units (<= 0)");
  cmd->add_option("--grid", *grid_text, "omega grid lo:hi:points");
  cmd->add_option("--q", *q_list, "Tsallis q values")->delimiter(',');
  cmd->add_option("--out", *out_path, "output CSV path")->required();
  cmd->callback([mu, grid_text, q_list, out_path]() {
    const GridSpec grid = parse_grid(*grid_text);
    const auto rows =
        sweep({1.0, *mu}, linear_grid(grid.lo, grid.hi, grid.points), *q_list,
              {}, sweep_threads());
    auto out = open_output(*out_path);
    write_sweep_csv(out, rows, *q_list);
  });
}

void add_planck_surface(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "planck-surface", "Two-dimensional (mu, omega) sweep to CSV");
  auto mu_text = std::make_shared<std::string>("-10:0:21");
  auto grid_text = std::make_shared<std::string>("0.01:10:128");
  auto out_path = std::make_shared<std::string>();
  cmd->add_option("--mu-range", *mu_text, "mu grid lo:hi:points");
  cmd->add_option("--grid", *grid_text, "omega grid lo:hi:points");
  cmd->add_option("--out", *out_path, "output CSV path")->required();
  cmd->callback([mu_text, grid_text, out_path]() {
    const GridSpec mu_grid = parse_grid(*mu_text);
    const GridSpec grid = parse_grid(*grid_text);
    const auto rows = sweep_surface(
        1.0, linear_grid(mu_grid.lo, mu_grid.hi, mu_grid.points),
        linear_grid(grid.lo, grid.hi, grid.points), {}, sweep_threads());
    auto out = open_output(*out_path);
    write_surface_csv(out, rows);
  });
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Noncanonical bosonic-algebra engine"};
  app.require_subcommand(1);
  add_normal_order(app);
  add_vev(app);
  add_xfactor(app);
  add_emission(app);
  add_oracle_verify(app);
  add_planck_sweep(app);
  add_planck_surface(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ncqo::cli
