#include "fockmz/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockmz/errors.hpp"
#include "fockmz/fock.hpp"
#include "fockmz/gabor.hpp"
#include "fockmz/specfun.hpp"
#include "fockmz/spectral.hpp"

namespace fockmz::cli {

namespace {

const std::vector<int> kDefaultDegrees = {25, 50, 100, 200};
const std::vector<int> kDefaultGaborDegrees = {5, 10};
const std::vector<int> kDefaultScanDegrees = {10, 20, 40, 80};
constexpr int kTailSamples = 100;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check(bool ok, const std::string& msg) {
  if (!ok) {
    throw UsageError(msg);
  }
}

void check_degrees(const std::vector<int>& degrees) {
  check(!degrees.empty(), "--degrees must list at least one degree");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    check(degrees[i] >= 1, "--degrees entries must be positive");
    check(i == 0 || degrees[i] > degrees[i - 1], "--degrees must be strictly increasing");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FamilySpec family_from_config(const RunConfig& c) {
  FamilySpec spec;
  spec.lattice = LatticeSpec::square(*c.alpha);
  spec.mode = *c.mode;
  spec.tau = *c.tau;
  spec.degrees = c.degrees;
  return spec;
}

void emit(const RunConfig& c, const ReportTable& table, std::ostream& out) {
  const ReportMeta meta{kLibraryVersion, config_json(c)};
  const ReportFormat format = c.format.value_or(ReportFormat::csv);
  if (c.out) {
    write_report(table, format, *c.out, &meta);
    out << "wrote " << table.rows.size() << " row(s) to " << *c.out << "\n";
  } else {
    out << render_report(table, format, &meta);
  }
}

int run_gamma_check(const RunConfig& c, std::ostream& out) {
  if (c.x) {
    const RegGammaValue v = regularized_gamma(*c.a, *c.x);
    out << "p = " << format_number(v.p) << "\n"
        << "q = " << format_number(v.q) << "\n"
        << "method = " << to_string(v.method) << "\n";
    if (c.out) {
      ReportTable t{{"a", "x", "p", "q", "method"}, {{*c.a, *c.x, v.p, v.q, std::string(to_string(v.method))}}};
      emit(c, t, out);
    }
    return kExitOk;
  }
  const AsymptoticGap g = asymptotic_gap_check(*c.a, *c.tau);
  ReportTable t{{"a", "tau", "q", "limit", "gap", "bound", "pass"},
                {{*c.a, *c.tau, g.q, g.limit, g.gap, g.bound, g.pass}}};
  emit(c, t, out);
  return g.pass ? kExitOk : kExitCheckFailed;
}

int run_family_build(const RunConfig& c, std::ostream& out) {
  const FamilySpec spec = family_from_config(c);
  const Family family = build_family(spec);
  const std::string doc = family_spec_to_json(spec);
  if (c.out) {
    std::ofstream f(*c.out, std::ios::binary | std::ios::trunc);
    if (!f || !(f << doc) || !f.flush()) {
      throw ReportError("cannot write '" + *c.out + "'");
    }
  } else {
    out << doc;
  }

  ReportTable t{{"n", "count", "ratio", "max_disk_count", "outside_bulk_count", "transition_count",
                 "min_separation"},
                {}};
  for (const auto& [n, layer] : family) {
    const LocalCounts lc = local_count_diagnostics(layer, n, *c.epsilon, *c.rho, spec.tau);
    t.rows.push_back({std::int64_t{n}, static_cast<std::int64_t>(layer.size()),
                      static_cast<double>(layer.size()) / (n + 1.0),
                      static_cast<std::int64_t>(lc.max_disk_count),
                      static_cast<std::int64_t>(lc.outside_bulk_count),
                      static_cast<std::int64_t>(lc.transition_count), lc.min_separation});
  }
  if (c.out) {
    const ReportMeta meta{kLibraryVersion, config_json(c)};
    out << render_report(t, c.format.value_or(ReportFormat::csv), &meta);
  }
  return kExitOk;
}

FamilySpec family_for_report(const RunConfig& c, Mode required) {
  FamilySpec spec;
  if (c.family) {
    try {
      spec = family_spec_from_json(read_file(*c.family));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    spec = family_from_config(c);
  }
  check(spec.mode == required, std::string("family must be in ") + std::string(to_string(required)) + " mode");
  return spec;
}

int run_mz_report(const RunConfig& c, std::ostream& out) {
  const auto rows = mz_report(family_for_report(c, Mode::sampling));
  emit(c, frame_table(rows), out);
  for (const auto& r : rows) {
    if (!(r.a > *c.tol)) {
      return kExitCheckFailed;
    }
  }
  return kExitOk;
}

int run_interp_report(const RunConfig& c, std::ostream& out) {
  const auto rows = interp_report(family_for_report(c, Mode::interpolation));
  emit(c, interp_table(rows), out);
  for (const auto& r : rows) {
    if (!(r.lambda_min > *c.tol)) {
      return kExitCheckFailed;
    }
  }
  return kExitOk;
}

int run_gabor_crosscheck(const RunConfig& c, std::ostream& out) {
  const Family family = build_family(family_from_config(c));
  std::vector<CrosscheckReport> rows;
  bool pass = true;
  for (const auto& [n, layer] : family) {
    rows.push_back(gabor_fock_crosscheck(n, layer.points()));
    pass = pass && rows.back().max_entry_gap <= *c.tol && rows.back().eig_gap <= *c.tol;
  }
  emit(c, crosscheck_table(rows), out);
  return pass ? kExitOk : kExitCheckFailed;
}

int run_tail_energy(const RunConfig& c, std::ostream& out) {
  ReportTable t{{"n", "rho", "bound", "max_ratio", "pass"}, {}};
  bool all_pass = true;
  for (int n : c.degrees) {
    const double rho = c.rho ? *c.rho : std::sqrt((n + std::sqrt(static_cast<double>(n)) * *c.tau) / std::numbers::pi);
    check(rho > 0.0, "tail-energy: radius must be positive");
    const double bound = tail_energy_bound(n, rho);
    std::mt19937_64 rng(0x7a11u + static_cast<std::uint64_t>(n));
    std::normal_distribution<double> normal;
    double worst = 0.0;
    bool pass = true;
    for (int s = 0; s < kTailSamples; ++s) {
      std::vector<std::complex<double>> a(n + 1);
      for (auto& ak : a) {
        ak = {normal(rng), normal(rng)};
      }
      const CoefficientVector coeffs(std::move(a));
      const double exact = tail_energy_exact(coeffs, rho);
      worst = std::max(worst, exact / coeffs.norm_sq());
      pass = pass && exact <= bound * coeffs.norm_sq() + *c.tol;
    }
    all_pass = all_pass && pass;
    t.rows.push_back({std::int64_t{n}, rho, bound, worst, pass});
  }
  emit(c, t, out);
  return all_pass ? kExitOk : kExitCheckFailed;
}

int run_degenerate_scan(const RunConfig& c, std::ostream& out) {
  const auto rows = square_case_scan(LatticeSpec::square(*c.alpha), c.degrees);
  emit(c, frame_table(rows), out);
  return kExitOk;
}

} // namespace

std::string_view to_string(Command command) {
  switch (command) {
  case Command::gamma_check:
    return "gamma-check";
  case Command::family_build:
    return "family-build";
  case Command::mz_report:
    return "mz-report";
  case Command::interp_report:
    return "interp-report";
  case Command::gabor_crosscheck:
    return "gabor-crosscheck";
  case Command::tail_energy:
    return "tail-energy";
  case Command::degenerate_scan:
    return "degenerate-scan";
  }
  return "unknown";
}

RunConfig resolve(RunConfig c) {
  if (c.alpha) {
    check(positive_finite(*c.alpha), "--alpha must be positive and finite");
  }
  if (c.tau) {
    check(std::isfinite(*c.tau), "--tau must be finite");
  }
  if (c.epsilon) {
    check(*c.epsilon > 0.0 && *c.epsilon < 1.0, "--epsilon must lie in (0, 1)");
  }
  if (c.rho) {
    check(positive_finite(*c.rho), "--rho must be positive and finite");
  }
  if (c.tol) {
    check(std::isfinite(*c.tol) && *c.tol >= 0.0, "--tol must be non-negative and finite");
  }

  auto family_defaults = [&](Mode mode) {
    if (!c.mode) {
      c.mode = mode;
    }
    const bool sampling = *c.mode == Mode::sampling;
    if (!c.alpha) {
      c.alpha = sampling ? 0.95 : 1.1;
    }
    if (!c.tau) {
      c.tau = sampling ? 6.0 : 2.0;
    }
    check(*c.tau > 0.0, "--tau must be positive");
    if (c.degrees.empty()) {
      c.degrees = kDefaultDegrees;
    }
    check_degrees(c.degrees);
    try {
      family_from_config(c).validate();
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  };

  switch (c.command) {
  case Command::gamma_check:
    check(c.a.has_value(), "gamma-check requires --a");
    check(c.x.has_value() != c.tau.has_value(), "gamma-check takes exactly one of --x or --tau");
    check(std::isfinite(*c.a) && *c.a > 0.0, "--a must be positive and finite");
    if (c.x) {
      check(std::isfinite(*c.x) && *c.x >= 0.0, "--x must be non-negative and finite");
    } else {
      check(*c.a >= 10.0, "asymptotic check requires --a >= 10");
      check(*c.a + *c.tau * std::sqrt(*c.a) >= 0.0, "asymptotic check requires a + tau sqrt(a) >= 0");
    }
    break;
  case Command::family_build:
    family_defaults(c.mode.value_or(Mode::sampling));
    if (!c.epsilon) {
      c.epsilon = 0.1;
    }
    if (!c.rho) {
      c.rho = 1.0;
    }
    break;
  case Command::mz_report:
  case Command::interp_report: {
    const Mode mode = c.command == Command::mz_report ? Mode::sampling : Mode::interpolation;
    check(!c.mode || *c.mode == mode, "--mode conflicts with the report type");
    if (c.family) {
      check(!c.alpha && !c.tau && c.degrees.empty(), "--family cannot be combined with --alpha/--tau/--degrees");
      std::ifstream probe(*c.family);
      check(static_cast<bool>(probe), "cannot read family file '" + *c.family + "'");
    } else {
      family_defaults(mode);
    }
    if (!c.tol) {
      c.tol = 0.0;
    }
    break;
  }
  case Command::gabor_crosscheck:
    if (c.degrees.empty()) {
      c.degrees = kDefaultGaborDegrees;
    }
    family_defaults(Mode::sampling);
    check(*c.mode == Mode::sampling, "gabor-crosscheck uses sampling layers");
    if (!c.tol) {
      c.tol = 1e-6;
    }
    if (!c.format) {
      c.format = ReportFormat::json;
    }
    break;
  case Command::tail_energy:
    if (c.degrees.empty()) {
      c.degrees = {30};
    }
    check_degrees(c.degrees);
    if (!c.rho && !c.tau) {
      c.tau = 0.0;
    }
    if (!c.tol) {
      c.tol = 1e-12;
    }
    break;
  case Command::degenerate_scan:
    if (!c.alpha) {
      c.alpha = 0.95;
    }
    if (c.degrees.empty()) {
      c.degrees = kDefaultScanDegrees;
    }
    check_degrees(c.degrees);
    break;
  }
  return c;
}

std::string config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = std::string(to_string(c.command));
  if (c.a) j["a"] = *c.a;
  if (c.x) j["x"] = *c.x;
  if (c.family) j["family"] = *c.family;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.mode) j["mode"] = std::string(to_string(*c.mode));
  if (c.tau) j["tau"] = *c.tau;
  if (!c.degrees.empty()) j["degrees"] = c.degrees;
  if (c.epsilon) j["epsilon"] = *c.epsilon;
  if (c.rho) j["rho"] = *c.rho;
  if (c.tol) j["tol"] = *c.tol;
  if (c.format) j["format"] = *c.format == ReportFormat::csv ? "csv" : "json";
  return j.dump();
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = resolve(config);
    switch (c.command) {
    case Command::gamma_check:
      return run_gamma_check(c, out);
    case Command::family_build:
      return run_family_build(c, out);
    case Command::mz_report:
      return run_mz_report(c, out);
    case Command::interp_report:
      return run_interp_report(c, out);
    case Command::gabor_crosscheck:
      return run_gabor_crosscheck(c, out);
    case Command::tail_energy:
      return run_tail_energy(c, out);
    case Command::degenerate_scan:
      return run_degenerate_scan(c, out);
    }
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ReportError& e) {
    err << "output error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Marcinkiewicz-Zygmund families for polynomials in the Fock space"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  RunConfig cfg;
  std::string mode_text;
  std::string format_text;

  auto add_family_flags = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "square lattice spacing");
    sub->add_option("--tau", cfg.tau, "truncation parameter");
    sub->add_option("--degrees", cfg.degrees, "comma-separated degree list")->delimiter(',');
  };
  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "report path (default: stdout)");
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* gamma = app.add_subcommand("gamma-check", "regularized incomplete gamma and its erfc asymptotics");
  gamma->add_option("--a", cfg.a, "order");
  gamma->add_option("--x", cfg.x, "cutoff");
  gamma->add_option("--tau", cfg.tau, "cutoff a + tau sqrt(a) for the asymptotic check");
  add_output_flags(gamma);

  auto* build = app.add_subcommand("family-build", "truncated lattice family and counting diagnostics");
  add_family_flags(build);
  build->add_option("--mode", mode_text, "sampling or interpolation")
      ->check(CLI::IsMember({"sampling", "interpolation"}));
  build->add_option("--epsilon", cfg.epsilon, "bulk margin for the outside-bulk count");
  build->add_option("--rho", cfg.rho, "disk radius for local counts");
  add_output_flags(build);

  auto* mz = app.add_subcommand("mz-report", "frame bounds of a sampling family");
  auto* interp = app.add_subcommand("interp-report", "Gram bounds of an interpolation family");
  for (auto* sub : {mz, interp}) {
    sub->add_option("--family", cfg.family, "FamilySpec JSON file");
    add_family_flags(sub);
    sub->add_option("--mode", mode_text, "sampling or interpolation")
        ->check(CLI::IsMember({"sampling", "interpolation"}));
    sub->add_option("--tol", cfg.tol, "lower bounds must exceed this");
    add_output_flags(sub);
  }

  auto* gabor = app.add_subcommand("gabor-crosscheck", "quadrature vs closed-form Gabor frame matrices on V_n");
  add_family_flags(gabor);
  gabor->add_option("--tol", cfg.tol, "allowed entry and eigenvalue gap");
  add_output_flags(gabor);

  auto* tail = app.add_subcommand("tail-energy", "exact tail energy against its incomplete-gamma bound");
  tail->add_option("--degrees", cfg.degrees, "comma-separated degree list")->delimiter(',');
  tail->add_option("--rho", cfg.rho, "disk radius");
  tail->add_option("--tau", cfg.tau, "radius from pi rho^2 = n + sqrt(n) tau when --rho is absent");
  tail->add_option("--tol", cfg.tol, "additive slack");
  add_output_flags(tail);

  auto* scan = app.add_subcommand("degenerate-scan", "frame bounds with exactly n+1 points");
  scan->add_option("--alpha", cfg.alpha, "square lattice spacing");
  scan->add_option("--degrees", cfg.degrees, "comma-separated degree list")->delimiter(',');
  add_output_flags(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kLibraryVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::pair<CLI::App*, Command> table[] = {
      {gamma, Command::gamma_check},         {build, Command::family_build},
      {mz, Command::mz_report},              {interp, Command::interp_report},
      {gabor, Command::gabor_crosscheck},    {tail, Command::tail_energy},
      {scan, Command::degenerate_scan},
  };
  for (const auto& [sub, command] : table) {
    if (sub->parsed()) {
      cfg.command = command;
    }
  }
  try {
    if (!mode_text.empty()) {
      cfg.mode = parse_mode(mode_text);
    }
    if (!format_text.empty()) {
      cfg.format = parse_report_format(format_text);
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return dispatch(cfg, out, err);
}

} // namespace fockmz::cli
