#include "cpd/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpd/basin.hpp"
#include "cpd/parallel.hpp"
#include "cpd/report.hpp"
#include "cpd/separatrix.hpp"
#include "cpd/systems.hpp"
#include "cpd/verify.hpp"

namespace cpd::cli {

namespace {

/// A diagnostic that maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, char sep,
                                  std::size_t expected, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(sep, pos), text.size());
    double v = 0.0;
    const char* first = text.data() + pos;
    const char* last = text.data() + next;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw UsageError(std::string(what) + " must be " + std::to_string(expected) +
                       " numbers separated by '" + sep + "', got '" + text + "'");
    }
    out.push_back(v);
    pos = next + 1;
  }
  if (out.size() != expected) {
    throw UsageError(std::string(what) + " must be " + std::to_string(expected) +
                     " numbers separated by '" + sep + "', got '" + text + "'");
  }
  return out;
}

struct SystemOptions {
  std::string system;
  double alpha1 = 0.0;
  double a1 = 0.0;
  double gamma2 = 0.0;
  double a2 = 0.0;
  CLI::Option* gamma2_opt = nullptr;
  CLI::Option* a2_opt = nullptr;
  std::optional<std::size_t> workers;

  void attach(CLI::App* cmd) {
    cmd->add_option("--system", system, "11-06 or 11-14")->required();
    cmd->add_option("--alpha1", alpha1, "alpha1 > 0")->required();
    cmd->add_option("--a1", a1, "A1 > 0")->required();
    gamma2_opt = cmd->add_option("--gamma2", gamma2, "gamma2 > 0 (11-06 only)");
    a2_opt = cmd->add_option("--a2", a2, "A2 > 0 (11-14 only)");
    cmd->add_option("--workers", workers, "worker threads (default: $CPD_WORKERS or 1)");
  }

  std::pair<SystemId, SystemParams> resolve() const {
    const auto id = parse_system_id(system);
    if (!id) throw UsageError("--system must be 11-06 or 11-14, got '" + system + "'");
    SystemParams p{alpha1, a1, 0.0};
    if (*id == SystemId::Sys1106) {
      if (a2_opt->count() > 0) throw UsageError("--a2 is not a parameter of system 11-06");
      if (gamma2_opt->count() == 0) throw UsageError("--gamma2 is required for system 11-06");
      p.third = gamma2;
    } else {
      if (gamma2_opt->count() > 0) throw UsageError("--gamma2 is not a parameter of system 11-14");
      if (a2_opt->count() == 0) throw UsageError("--a2 is required for system 11-14");
      p.third = a2;
    }
    try {
      p.validate(*id);
    } catch (const InvalidParams& e) {
      throw UsageError(e.what());
    }
    return {*id, p};
  }

  std::size_t worker_count() const {
    try {
      return resolve_workers(workers);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

// Writes to the named file, or to out when the path is empty.
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write,
          bool binary = false) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, binary ? std::ios::binary : std::ios::out);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string(name) + " must be positive");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Analysis of the competitive rational systems (11,6) and (11,14)", "cpd"};
  app.require_subcommand(1);

  // analyze
  SystemOptions analyze_opts;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "region, equilibria and hypotheses as JSON");
  analyze_opts.attach(analyze);
  analyze->add_option("--out", analyze_out, "output file (default stdout)");

  // orbit
  SystemOptions orbit_opts;
  std::string orbit_start;
  std::size_t orbit_steps = 20;
  std::size_t orbit_max_iter = 10000;
  std::string orbit_out;
  auto* orbit = app.add_subcommand("orbit", "orbit as CSV plus its certified fate");
  orbit_opts.attach(orbit);
  orbit->add_option("--start", orbit_start, "x,y")->required();
  orbit->add_option("--steps", orbit_steps, "rows to print after the start");
  orbit->add_option("--max-iter", orbit_max_iter, "iteration budget for the fate");
  orbit->add_option("--out", orbit_out, "output file (default stdout)");

  // separatrix
  SystemOptions sep_opts;
  std::string sep_xrange;
  std::size_t sep_samples = 33;
  double sep_tol = 1e-10;
  std::size_t sep_max_iter = 10000;
  std::string sep_out;
  auto* sep = app.add_subcommand("separatrix", "stable manifold of the saddle as CSV");
  sep_opts.attach(sep);
  sep->add_option("--xrange", sep_xrange, "x_min,x_max")->required();
  sep->add_option("--samples", sep_samples, "number of samples (>= 3)");
  sep->add_option("--tol", sep_tol, "bisection tolerance");
  sep->add_option("--max-iter", sep_max_iter, "iteration budget per fate query");
  sep->add_option("--out", sep_out, "output CSV (default stdout)");

  // basin
  SystemOptions basin_opts;
  std::string basin_window;
  std::string basin_grid = "100x100";
  std::size_t basin_max_iter = 10000;
  std::string basin_out;
  auto* basin = app.add_subcommand("basin", "basin raster as PGM with a JSON sidecar");
  basin_opts.attach(basin);
  basin->add_option("--window", basin_window, "x_lo,x_hi,y_lo,y_hi")->required();
  basin->add_option("--grid", basin_grid, "WIDTHxHEIGHT");
  basin->add_option("--max-iter", basin_max_iter, "iteration budget per cell");
  basin->add_option("--out", basin_out, "output PGM; the sidecar gets a .json extension")
      ->required();

  // taxonomy
  std::string tax_out;
  std::optional<std::size_t> tax_workers;
  auto* tax = app.add_subcommand("taxonomy", "census of the special cases as JSON");
  tax->add_option("--out", tax_out, "output file (default stdout)");
  tax->add_option("--workers", tax_workers, "accepted for uniformity");

  // verify
  SystemOptions ver_opts;
  std::vector<std::string> ver_suites;
  std::size_t ver_cases = 10000;
  std::uint64_t ver_seed = 1;
  std::size_t ver_grid = 32;
  std::size_t ver_newton = 50;
  std::string ver_out;
  auto* ver = app.add_subcommand("verify", "property suites as JSON; exit 1 on failure");
  ver_opts.attach(ver);
  ver->add_option("--suite", ver_suites,
                  "order, monotone-y, monotone-y-growth, period-two, hypotheses "
                  "(repeatable; default: every suite applicable to the parameters)");
  ver->add_option("--cases", ver_cases, "cases per sampled suite");
  ver->add_option("--seed", ver_seed, "generator seed");
  ver->add_option("--grid", ver_grid, "period-two seed mesh size");
  ver->add_option("--newton-iters", ver_newton, "Newton iterations per seed");
  ver->add_option("--out", ver_out, "output file (default stdout)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) {
      const auto [id, params] = analyze_opts.resolve();
      (void)analyze_opts.worker_count();
      const auto doc = report::analyze(id, params);
      emit(analyze_out, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
      return kExitOk;
    }

    if (*orbit) {
      const auto [id, params] = orbit_opts.resolve();
      (void)orbit_opts.worker_count();
      const auto xy = parse_numbers(orbit_start, ',', 2, "--start");
      const Point start{xy[0], xy[1]};
      if (!is_state(start)) throw UsageError("--start must be a finite nonnegative point");
      if (orbit_max_iter < 1) throw UsageError("--max-iter must be >= 1");
      const auto trace = iterate(id, params, start, orbit_steps);
      const auto fate = classify_orbit(id, params, start, orbit_max_iter);
      emit(orbit_out, out, [&](std::ostream& o) {
        o << "n,x,y\n";
        for (std::size_t n = 0; n < trace.points.size(); ++n) {
          o << n << ',' << format_double(trace.points[n].x) << ','
            << format_double(trace.points[n].y) << '\n';
        }
        o << "# fate=" << to_string(fate.tag) << " iters=" << fate.iterations_used
          << '\n';
      });
      return kExitOk;
    }

    if (*sep) {
      const auto [id, params] = sep_opts.resolve();
      const std::size_t workers = sep_opts.worker_count();
      const auto range = parse_numbers(sep_xrange, ',', 2, "--xrange");
      require_positive(sep_tol, "--tol");
      if (!has_interior_saddle(classify_region(id, params))) {
        throw UsageError("the separatrix exists only in the TwoEquilibria region");
      }
      SeparatrixCurve curve;
      try {
        curve = compute_separatrix(id, params, range[0], range[1], sep_samples,
                                   sep_tol, sep_max_iter, workers);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit(sep_out, out, [&](std::ostream& o) { write_csv(o, curve); });
      return kExitOk;
    }

    if (*basin) {
      const auto [id, params] = basin_opts.resolve();
      const std::size_t workers = basin_opts.worker_count();
      const auto w = parse_numbers(basin_window, ',', 4, "--window");
      const auto g = parse_numbers(basin_grid, 'x', 2, "--grid");
      if (g[0] < 1 || g[1] < 1 || g[0] != std::floor(g[0]) || g[1] != std::floor(g[1])) {
        throw UsageError("--grid must be WIDTHxHEIGHT with positive integers");
      }
      BasinRaster raster;
      try {
        raster = rasterize(id, params, {w[0], w[1], w[2], w[3]},
                           static_cast<std::size_t>(g[0]),
                           static_cast<std::size_t>(g[1]), basin_max_iter, workers);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::filesystem::path pgm(basin_out);
      std::filesystem::path sidecar = pgm;
      sidecar.replace_extension(".json");
      emit(pgm.string(), out, [&](std::ostream& o) { write_pgm(o, raster); }, true);
      const auto doc = report::basin_sidecar(raster, pgm.filename().string());
      emit(sidecar.string(), out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
      return kExitOk;
    }

    if (*tax) {
      (void)resolve_workers(tax_workers);
      const auto doc = report::taxonomy_census();
      emit(tax_out, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
      return kExitOk;
    }

    if (*ver) {
      const auto [id, params] = ver_opts.resolve();
      (void)ver_opts.worker_count();
      if (ver_cases < 1) throw UsageError("--cases must be >= 1");
      const Region region = classify_region(id, params);
      if (ver_suites.empty()) {
        ver_suites = {"order", "hypotheses", "period-two"};
        if (region == Region::R1114_GAS) ver_suites.push_back("monotone-y");
        if (region == Region::R1106_Nonhyperbolic) ver_suites.push_back("monotone-y-growth");
      }
      nlohmann::json reports = nlohmann::json::array();
      bool all_passed = true;
      for (const auto& name : ver_suites) {
        verify::SuiteReport r;
        try {
          if (name == "order") {
            r = verify::run_order_suite(id, params, ver_cases, ver_seed);
          } else if (name == "monotone-y") {
            if (id != SystemId::Sys1114) throw UsageError("monotone-y applies to system 11-14");
            r = verify::run_monotone_y_suite(params, ver_cases, ver_seed);
          } else if (name == "monotone-y-growth") {
            if (id != SystemId::Sys1106) {
              throw UsageError("monotone-y-growth applies to system 11-06");
            }
            r = verify::run_monotone_y_growth_suite(params, ver_cases, ver_seed);
          } else if (name == "period-two") {
            r = verify::run_period_two_search(id, params, ver_grid, ver_newton);
          } else if (name == "hypotheses") {
            r = verify::run_hypothesis_suite(id, params);
          } else {
            throw UsageError("unknown suite '" + name + "'");
          }
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        all_passed = all_passed && r.passed();
        reports.push_back(verify::to_json(r));
      }
      const nlohmann::json doc = {{"schema", "cpd-verify-1"},
                                  {"system", std::string(to_string(id))},
                                  {"params", report::params_json(id, params)},
                                  {"passed", all_passed},
                                  {"suites", reports}};
      emit(ver_out, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
      return all_passed ? kExitOk : kExitSuiteFailure;
    }
  } catch (const UsageError& e) {
    err << "cpd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "cpd: " << e.what() << '\n';
    return kExitSuiteFailure;
  }
  return kExitUsage;
}

}  // namespace cpd::cli
