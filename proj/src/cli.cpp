#include "spingeom/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spingeom/errors.hpp"
#include "spingeom/group.hpp"
#include "spingeom/harmonic.hpp"
#include "spingeom/scenario.hpp"
#include "spingeom/verify.hpp"

namespace spingeom::cli {

namespace {

using nlohmann::json;
using scenario::InputError;
using scenario::Kind;
using scenario::Scenario;

/// Convergence errors at or below this fraction of the state scale are
/// round-off rather than truncation error.
constexpr double kRoundoffFloor = 1e-11;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --- running a scenario ----------------------------------------------------

struct Run {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> monitor_names;
  std::vector<std::vector<double>> monitors;  ///< [monitor][step]
  Eigen::VectorXd final_state;
};

void append_pairs(std::vector<double>& row, const SpinTensor& s) {
  for (std::size_t k = 0; k < kPairCount; ++k) row.push_back(s[k]);
}

Run simulate(const Scenario& sc, double dt, int nsteps) {
  Run r;
  r.monitor_names = sc.output.monitors;
  r.monitors.resize(r.monitor_names.size());
  const char* velocity = sc.kind == Kind::bmt ? "u" : "p";
  r.columns = {"tau", "x0", "x1", "x2", "x3"};
  for (int i = 0; i < 4; ++i) r.columns.push_back(velocity + std::to_string(i));
  for (const Pair& p : kPairs) r.columns.push_back("S" + std::to_string(p.a) + std::to_string(p.b));
  if (sc.kind == Kind::hamiltonian) {
    r.columns.push_back("phi");
    r.columns.push_back("q");
  }
  for (const std::string& m : r.monitor_names) r.columns.push_back(m);

  auto record_monitors = [&](std::vector<double>& row, const std::function<double(const std::string&)>& get) {
    for (std::size_t i = 0; i < r.monitor_names.size(); ++i) {
      const double v = get(r.monitor_names[i]);
      r.monitors[i].push_back(v);
      row.push_back(v);
    }
  };

  if (sc.kind == Kind::bmt) {
    const scenario::BMTSetup& b = *sc.bmt;
    const bmt::BMTTrajectory traj = bmt::integrate(b.initial, b.field, b.params, dt, nsteps, b.method);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const bmt::BMTState& s = traj.states[k];
      const bmt::BMTMonitors& m = traj.monitors[k];
      std::vector<double> row{s.tau, s.x[0], s.x[1], s.x[2], s.x[3], s.u[0], s.u[1], s.u[2], s.u[3]};
      append_pairs(row, s.spin);
      record_monitors(row, [&](const std::string& name) {
        if (name == "total_spin") return m.total_spin;
        if (name == "mass_shell") return m.residuals.mass_shell;
        return m.residuals.transversality;
      });
      r.rows.push_back(std::move(row));
    }
    const bmt::BMTState& e = traj.states.back();
    r.final_state.resize(14);
    r.final_state << e.x, e.u, Eigen::Map<const Eigen::Matrix<double, 6, 1>>(e.spin.values().data());
  } else {
    const scenario::HamiltonianSetup& h = *sc.ham;
    const ham::HamiltonianTrajectory traj =
        ham::integrate_hamiltonian(h.initial, h.fields, dt, nsteps, h.method, h.stencil);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const ham::PhaseState& s = traj.states[k];
      const ham::HamiltonianMonitors& m = traj.monitors[k];
      std::vector<double> row{s.tau, s.x[0], s.x[1], s.x[2], s.x[3], s.p[0], s.p[1], s.p[2], s.p[3]};
      append_pairs(row, s.spin);
      row.push_back(s.phi);
      row.push_back(s.q);
      record_monitors(row, [&](const std::string& name) {
        if (name == "h") return m.h;
        if (name == "total_spin") return m.total_spin;
        if (name == "q") return m.q;
        return m.det_deviation;
      });
      r.rows.push_back(std::move(row));
    }
    const ham::PhaseState& e = traj.states.back();
    r.final_state.resize(25);
    r.final_state << e.x, e.p, Eigen::Map<const Eigen::Matrix<double, 6, 1>>(e.spin.values().data()),
        e.lambda(0, 0).real(), e.lambda(0, 0).imag(), e.lambda(0, 1).real(), e.lambda(0, 1).imag(),
        e.lambda(1, 0).real(), e.lambda(1, 0).imag(), e.lambda(1, 1).real(), e.lambda(1, 1).imag(),
        std::cos(e.phi), std::sin(e.phi), e.q;
  }
  return r;
}

void write_csv(std::ostream& os, const Run& r, int stride) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << '\n';
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    if (k % static_cast<std::size_t>(stride) != 0 && k + 1 != r.rows.size()) continue;
    const auto& row = r.rows[k];
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << '\n';
  }
}

json run_report(const Scenario& sc, const Run& r, std::vector<std::string>& failures) {
  json monitors = json::object();
  for (std::size_t i = 0; i < r.monitor_names.size(); ++i) {
    const std::vector<double>& v = r.monitors[i];
    double lo = v.front();
    double hi = v.front();
    double drift = 0.0;
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      drift = std::max(drift, std::abs(x - v.front()));
    }
    json m{{"initial", v.front()}, {"min", lo}, {"max", hi}, {"drift", drift}};
    const auto tol = sc.tolerances.find(r.monitor_names[i]);
    if (tol != sc.tolerances.end()) {
      const bool ok = drift <= tol->second;
      m["tolerance"] = tol->second;
      m["pass"] = ok;
      if (!ok) {
        failures.push_back(r.monitor_names[i] + " drift " + short_fmt(drift) + " exceeds tolerance " +
                           short_fmt(tol->second));
      }
    }
    monitors[r.monitor_names[i]] = m;
  }
  // Tolerances on monitors left out of the output still have to be checked.
  for (const auto& [name, tol] : sc.tolerances) {
    if (!monitors.contains(name)) {
      failures.push_back("tolerance on " + name + " requires it in output.monitors");
    }
  }
  return json{{"kind", scenario::to_string(sc.kind)},
              {"field", sc.field_type},
              {"method", sc.method_name()},
              {"dt", sc.dt},
              {"steps", sc.nsteps},
              {"monitors", monitors},
              {"pass", failures.empty()}};
}

/// Returns a message when the initial data violate the BMT constraints.
std::optional<std::string> constraint_violation(const Scenario& sc) {
  if (sc.kind != Kind::bmt) return std::nullopt;
  const scenario::BMTSetup& b = *sc.bmt;
  const bmt::ConstraintResiduals r = bmt::constraint_residuals(b.initial, b.params);
  const double c2 = b.params.c * b.params.c;
  if (std::abs(r.mass_shell) > 1e-10 * c2) {
    return "scenario: initial.u violates the mass-shell constraint u.u = c^2 (residual u.u - c^2 = " +
           fmt(r.mass_shell) + ")";
  }
  const double scale = std::max(1.0, b.initial.spin.norm() * b.initial.u.norm());
  if (r.transversality > 1e-10 * scale) {
    return "scenario: initial.S violates the transversality constraint S_ab u^b = 0 (residual |S u| = " +
           fmt(r.transversality) + ")";
  }
  return std::nullopt;
}

void check_initial_energy(const Scenario& sc) {
  if (sc.kind != Kind::hamiltonian) return;
  try {
    (void)ham::hamiltonian(sc.ham->initial, sc.ham->fields);
  } catch (const ImaginaryMassError& e) {
    throw InputError("scenario: initial state has H^2 = " + fmt(e.h_squared()) +
                     " <= 0, so H is not real");
  }
}

// --- subcommands -----------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
  std::string output;
  bool json = false;
  bool strict = false;
  bool timing = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const Scenario sc = scenario::load(a.scenario);
  if (const auto violation = constraint_violation(sc)) {
    if (a.strict) throw InputError(*violation);
    err << "warning: " << *violation << '\n';
  }
  check_initial_energy(sc);

  const auto start = std::chrono::steady_clock::now();
  const Run r = simulate(sc, sc.dt, sc.nsteps);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> failures;
  json report = run_report(sc, r, failures);
  if (a.timing) report["wall_time_s"] = wall;

  if (!a.output.empty()) {
    std::ofstream csv(a.output);
    if (!csv) throw InputError("cannot write " + a.output);
    write_csv(csv, r, sc.output.stride);
    std::filesystem::path report_path(a.output);
    report_path.replace_extension(".report.json");
    std::ofstream rep(report_path);
    if (!rep) throw InputError("cannot write " + report_path.string());
    rep << report.dump(2) << '\n';
  }

  if (a.json) {
    out << report.dump(2) << '\n';
  } else {
    out << "kind " << report["kind"].get<std::string>() << ", field " << sc.field_type << ", method "
        << sc.method_name() << ", " << sc.nsteps << " steps of dt " << short_fmt(sc.dt) << '\n';
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %-24s %-24s %-24s\n", "monitor", "min", "max", "drift");
    out << line;
    for (const std::string& name : r.monitor_names) {
      const json& m = report["monitors"][name];
      std::snprintf(line, sizeof line, "%-16s %-24s %-24s %-24s\n", name.c_str(),
                    fmt(m["min"].get<double>()).c_str(), fmt(m["max"].get<double>()).c_str(),
                    fmt(m["drift"].get<double>()).c_str());
      out << line;
    }
    out << "result: " << (failures.empty() ? "pass" : "fail") << '\n';
  }
  for (const std::string& f : failures) err << "tolerance failure: " << f << '\n';
  return failures.empty() ? kExitOk : kExitFailure;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 0;
  double sample_scale = 1.0;
  bool corrupt = false;
  bool json = false;
  std::string output;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.sample_scale <= 0.0) throw InputError("--sample-scale must be positive");
  verify::Options opt;
  opt.seed = a.seed;
  opt.sample_scale = a.sample_scale;
  opt.corrupt_generator = a.corrupt;
  std::vector<verify::Property> props;
  try {
    props = verify::run(a.suite, opt);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  bool pass = true;
  json list = json::array();
  for (const verify::Property& p : props) {
    pass = pass && p.pass;
    list.push_back({{"suite", p.suite},
                    {"property", p.name},
                    {"samples", p.samples},
                    {"worst_error", p.worst_error},
                    {"tolerance", p.tolerance},
                    {"pass", p.pass}});
  }
  const json report{{"suite", a.suite},
                    {"seed", a.seed},
                    {"sample_scale", a.sample_scale},
                    {"corrupt_generator", a.corrupt},
                    {"properties", list},
                    {"pass", pass}};
  if (!a.output.empty()) {
    std::ofstream os(a.output);
    if (!os) throw InputError("cannot write " + a.output);
    os << report.dump(2) << '\n';
  }
  if (a.json) {
    out << report.dump(2) << '\n';
  } else {
    char line[200];
    for (const verify::Property& p : props) {
      std::snprintf(line, sizeof line, "%-5s %-12s %-32s n=%-6d worst=%-12s tol=%s\n",
                    p.pass ? "PASS" : "FAIL", p.suite.c_str(), p.name.c_str(), p.samples,
                    short_fmt(p.worst_error).c_str(), short_fmt(p.tolerance).c_str());
      out << line;
    }
    out << "result: " << (pass ? "pass" : "fail") << '\n';
  }
  return pass ? kExitOk : kExitFailure;
}

struct ConvergenceArgs {
  std::string scenario;
  std::vector<double> ladder;
  int rungs = 5;
  bool json = false;
  std::string output;
};

int cmd_convergence(const ConvergenceArgs& a, std::ostream& out) {
  const Scenario sc = scenario::load(a.scenario);
  check_initial_energy(sc);
  const double horizon = sc.dt * sc.nsteps;

  std::vector<double> ladder = a.ladder;
  if (ladder.empty()) {
    if (a.rungs < 4) throw InputError("--rungs must be at least 4 (got " + std::to_string(a.rungs) + ")");
    for (int k = 0; k < a.rungs; ++k) ladder.push_back(sc.dt / std::ldexp(1.0, k));
  }
  if (ladder.size() < 4) {
    throw InputError("--ladder needs at least 4 dt values (got " + std::to_string(ladder.size()) + ")");
  }
  std::vector<int> steps;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (!(ladder[k] > 0.0)) throw InputError("--ladder values must be positive");
    if (k > 0 && std::abs(ladder[k - 1] / ladder[k] - 2.0) > 1e-9) {
      throw InputError("--ladder values must halve at each rung (rung " + std::to_string(k) + " is " +
                       fmt(ladder[k]) + ")");
    }
    const double n = horizon / ladder[k];
    if (std::abs(n - std::round(n)) > 1e-9 * n || std::round(n) < 1.0) {
      throw InputError("--ladder value " + fmt(ladder[k]) + " does not divide the horizon dt*nsteps = " +
                       fmt(horizon));
    }
    steps.push_back(static_cast<int>(std::round(n)));
  }

  std::vector<Eigen::VectorXd> finals;
  for (std::size_t k = 0; k < ladder.size(); ++k) finals.push_back(simulate(sc, ladder[k], steps[k]).final_state);
  const Eigen::VectorXd& ref = finals.back();
  const double floor = kRoundoffFloor * std::max(1.0, ref.cwiseAbs().maxCoeff());

  std::vector<double> errors;
  for (const auto& f : finals) errors.push_back((f - ref).cwiseAbs().maxCoeff());
  const std::size_t last = ladder.size() - 1;

  std::vector<std::string> orders(ladder.size());
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < last; ++k) {
    if (errors[k] <= floor) {
      orders[k] = "exact";
      continue;
    }
    lx.push_back(std::log(ladder[k]));
    ly.push_back(std::log(errors[k]));
    if (k + 1 < last && errors[k + 1] > floor) orders[k] = fmt(std::log2(errors[k] / errors[k + 1]));
  }
  orders[last] = "reference";

  json fitted;
  if (lx.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    fitted = sxy / sxx;
  } else {
    fitted = "exact";
  }

  std::ostringstream csv;
  csv << "dt,nsteps,error,order\n";
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    csv << fmt(ladder[k]) << ',' << steps[k] << ',' << fmt(errors[k]) << ',' << orders[k] << '\n';
  }
  if (!a.output.empty()) {
    std::ofstream os(a.output);
    if (!os) throw InputError("cannot write " + a.output);
    os << csv.str();
  }
  if (a.json) {
    json rungs = json::array();
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      rungs.push_back({{"dt", ladder[k]}, {"nsteps", steps[k]}, {"error", errors[k]}, {"order", orders[k]}});
    }
    out << json{{"kind", scenario::to_string(sc.kind)}, {"rungs", rungs}, {"fitted_order", fitted}}.dump(2)
        << '\n';
  } else {
    out << csv.str();
    out << "fitted order: " << (fitted.is_string() ? fitted.get<std::string>() : fmt(fitted.get<double>()))
        << '\n';
  }
  return kExitOk;
}

struct DecomposeArgs {
  std::vector<double> lambda;
  std::vector<double> p;
  double m = 0.0;
  double phi = 0.0;
  bool json = false;
};

json complex_json(group::Complex z) { return json::array({z.real(), z.imag()}); }

int cmd_decompose(const DecomposeArgs& a, std::ostream& out) {
  if (!(a.m > 0.0)) throw InputError("--m must be positive");
  group::Matrix2c raw;
  for (int k = 0; k < 4; ++k) raw(k / 2, k % 2) = group::Complex(a.lambda[2 * k], a.lambda[2 * k + 1]);
  group::GroupElement lam;
  try {
    lam = group::GroupElement::from_matrix(raw);
  } catch (const Error& e) {
    throw InputError(std::string("--lambda is not in SL(2,C): ") + e.what());
  }
  const FourVector p(a.p[0], a.p[1], a.p[2], a.p[3]);
  group::LittleGroupFactors f;
  try {
    f = group::little_group_decompose(lam, p, a.m);
  } catch (const OffShellError& e) {
    throw InputError("--p is off shell: p.p - m^2 = " + fmt(e.residual()));
  }
  const group::EulerAngles euler = group::euler_from_su2(f.rotation);
  const harmonic::InternalCoords z =
      harmonic::internal_coords(f.boost_prime.lambda, f.boost_prime.zeta, a.phi, a.m);
  const double residual = (group::reassemble(f).matrix() - lam.matrix()).cwiseAbs().maxCoeff() /
                          lam.matrix().cwiseAbs().maxCoeff();

  json u = json::array();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) u.push_back(complex_json(f.rotation(r, c)));
  }
  const json report{
      {"boost", {{"lambda", f.boost.lambda}, {"zeta", complex_json(f.boost.zeta)}}},
      {"rotation", u},
      {"euler", {{"alpha", euler.alpha}, {"beta", euler.beta}, {"gamma", euler.gamma}}},
      {"boost_prime", {{"lambda", f.boost_prime.lambda}, {"zeta", complex_json(f.boost_prime.zeta)}}},
      {"p_prime", {f.p_prime[0], f.p_prime[1], f.p_prime[2], f.p_prime[3]}},
      {"zeta1", complex_json(z.zeta1)},
      {"zeta2", complex_json(z.zeta2)},
      {"reassembly_residual", residual}};
  if (a.json) {
    out << report.dump(2) << '\n';
    return kExitOk;
  }
  auto c = [](group::Complex v) { return fmt(v.real()) + (v.imag() < 0 ? " - " : " + ") + fmt(std::abs(v.imag())) + "i"; };
  out << "boost        lambda = " << fmt(f.boost.lambda) << ", zeta = " << c(f.boost.zeta) << '\n';
  out << "rotation     [[" << c(f.rotation(0, 0)) << ", " << c(f.rotation(0, 1)) << "], ["
      << c(f.rotation(1, 0)) << ", " << c(f.rotation(1, 1)) << "]]\n";
  out << "euler        alpha = " << fmt(euler.alpha) << ", beta = " << fmt(euler.beta)
      << ", gamma = " << fmt(euler.gamma) << '\n';
  out << "boost_prime  lambda = " << fmt(f.boost_prime.lambda) << ", zeta = " << c(f.boost_prime.zeta)
      << '\n';
  out << "p_prime      (" << fmt(f.p_prime[0]) << ", " << fmt(f.p_prime[1]) << ", " << fmt(f.p_prime[2])
      << ", " << fmt(f.p_prime[3]) << ")\n";
  out << "zeta1        " << c(z.zeta1) << '\n';
  out << "zeta2        " << c(z.zeta2) << '\n';
  out << "residual     " << fmt(residual) << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin geometry toolkit: Lorentz-group arithmetic, spin dynamics and harmonic analysis"};
  app.name("spingeom");
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Integrate a scenario file");
  simulate_cmd->add_option("scenario", sim.scenario, "Scenario JSON file")->required();
  simulate_cmd->add_option("--output", sim.output,
                           "Trajectory CSV path; the report is written next to it as <stem>.report.json");
  simulate_cmd->add_flag("--json", sim.json, "Print the report as JSON");
  simulate_cmd->add_flag("--strict-constraints", sim.strict,
                         "Reject initial data violating u.u = c^2 or S_ab u^b = 0");
  simulate_cmd->add_flag("--timing", sim.timing, "Include wall time in the report");

  VerifyArgs ver;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  verify_cmd->add_option("suite", ver.suite, "group, operators, bmt, hamiltonian, harmonic or all")
      ->required();
  verify_cmd->add_option("--seed", ver.seed, "Random seed");
  verify_cmd->add_option("--sample-scale", ver.sample_scale, "Multiplier on every sample count");
  verify_cmd->add_flag("--corrupt-generator", ver.corrupt,
                       "Perturb one Dirac generator (negative control)");
  verify_cmd->add_flag("--json", ver.json, "Print the report as JSON");
  verify_cmd->add_option("--output", ver.output, "Write the JSON report to this path");

  ConvergenceArgs conv;
  CLI::App* conv_cmd = app.add_subcommand("convergence", "Self-convergence study on a dt ladder");
  conv_cmd->add_option("scenario", conv.scenario, "Scenario JSON file")->required();
  conv_cmd->add_option("--ladder", conv.ladder, "dt values, each half the previous")->delimiter(',');
  conv_cmd->add_option("--rungs", conv.rungs, "Rungs below the scenario dt when no ladder is given");
  conv_cmd->add_flag("--json", conv.json, "Print the table as JSON");
  conv_cmd->add_option("--output", conv.output, "Write the CSV table to this path");

  DecomposeArgs dec;
  CLI::App* dec_cmd = app.add_subcommand("decompose", "Factor a Lorentz transformation at a momentum");
  dec_cmd->add_option("--lambda", dec.lambda, "Re/im parts of entries 00, 01, 10, 11")
      ->expected(8)
      ->required();
  dec_cmd->add_option("--p", dec.p, "Momentum p^0 p^1 p^2 p^3")->expected(4)->required();
  dec_cmd->add_option("--m", dec.m, "Mass")->required();
  dec_cmd->add_option("--phi", dec.phi, "U(1) phase for the internal coordinates");
  dec_cmd->add_flag("--json", dec.json, "Print the factors as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(sim, out, err);
    if (verify_cmd->parsed()) return cmd_verify(ver, out);
    if (conv_cmd->parsed()) return cmd_convergence(conv, out);
    return cmd_decompose(dec, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"spingeom"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace spingeom::cli
