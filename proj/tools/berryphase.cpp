// berryphase: Berry phases of spin coherent-state families from the command line.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "berry/errors.hpp"
#include "berry/experiment.hpp"
#include "berry/expression.hpp"
#include "berry/validation.hpp"

namespace {

using namespace berry;

struct CommonOptions {
  std::string config_path;
  std::string id;
  std::string family;
  std::string method;
  std::string loop;
  std::optional<std::size_t> samples;
  std::string grid;
  std::optional<double> total_time;
  std::optional<std::size_t> steps;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config (flags override it)");
  cmd->add_option("--id", o.id, "Experiment id");
  cmd->add_option("--family", o.family, "su2-spin-half | su2-spin-1 | su3-spin-1");
  cmd->add_option("--method", o.method, "line | overlap | surface | schrodinger | all");
  cmd->add_option("--loop", o.loop, "e.g. 'sweep=phi,theta=pi/2' or 'csv=loop.csv,g=0'");
  cmd->add_option("--samples", o.samples, "Loop samples (default 2048)");
  cmd->add_option("--grid", o.grid, "Surface grid, N or N1xN2 (default 256x256)");
  cmd->add_option("--T", o.total_time, "Schrodinger total time (default 2000)");
  cmd->add_option("--steps", o.steps, "Schrodinger RK4 steps (default 1000*T)");
  cmd->add_option("--out", o.out, "Output path, '-' for stdout");
  cmd->add_option("--format", o.format, "csv | record")->check(CLI::IsMember({"csv", "record"}));
  cmd->add_option("--seed", o.seed, "Seed recorded with results");
  cmd->add_flag("--timing", o.timing, "Include wall-clock columns");
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) {
      const auto n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::config, "bad grid '" + text + "' (expected N or N1xN2)");
  }
}

ExperimentConfig build_config(const CommonOptions& o) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = load_config(o.config_path);
  if (!o.id.empty()) c.id = o.id;
  if (!o.family.empty()) c.family = o.family;
  if (!o.method.empty()) c.method = parse_method(o.method);
  if (!o.loop.empty()) c.loop = parse_loop_spec(o.loop);
  if (o.samples) c.resolution.samples = *o.samples;
  if (!o.grid.empty()) std::tie(c.resolution.grid1, c.resolution.grid2) = parse_grid(o.grid);
  if (o.total_time) c.oracle.total_time = *o.total_time;
  if (o.steps) c.oracle.steps = *o.steps;
  if (!o.out.empty()) c.output.path = o.out;
  if (!o.format.empty()) c.output.format = o.format == "csv" ? OutputFormat::csv : OutputFormat::record;
  if (o.seed) c.seed = *o.seed;
  if (o.timing) c.output.timing = true;
  if (c.family.empty()) throw Error(Errc::config, "no family given (--family or config)");
  if (const auto* circle = std::get_if<CircleLoopSpec>(&c.loop); circle && circle->sweep.empty()) {
    throw Error(Errc::config, "no loop given (--loop or config)");
  }
  return c;
}

void warn_out_of_bounds(const ExperimentConfig& c) {
  const auto* circle = std::get_if<CircleLoopSpec>(&c.loop);
  if (!circle) return;
  const StateFamily family = family_by_id(c.family);
  std::vector<double> coords(family.chart().dimension(), 0.0);
  for (const auto& [name, value] : circle->fixed) coords[family.chart().index_of(name)] = value;
  for (const auto& name : family.chart().out_of_bounds(coords)) {
    std::cerr << "warning: coordinate '" << name << "' lies outside the chart bounds\n";
  }
}

template <typename Writer>
void with_output(const std::string& path, Writer write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(Errc::config, "cannot write " + path);
  write(file);
}

void emit(const ExperimentConfig& c, const std::vector<ResultRecord>& records) {
  with_output(c.output.path, [&](std::ostream& out) {
    if (c.output.format == OutputFormat::csv) {
      write_csv(out, records, c.output.timing);
    } else {
      write_records(out, records, c.output.timing);
    }
  });
}

std::vector<double> parse_values(const std::string& values, const std::string& range) {
  std::vector<double> out;
  if (!values.empty()) {
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      out.push_back(evaluate_expression(item));
    }
  }
  if (!range.empty()) {
    // start:stop:count, inclusive
    const auto a = range.find(':');
    const auto b = range.rfind(':');
    if (a == std::string::npos || a == b) throw Error(Errc::config, "range must be start:stop:count");
    const double start = evaluate_expression(range.substr(0, a));
    const double stop = evaluate_expression(range.substr(a + 1, b - a - 1));
    const double count_value = evaluate_expression(range.substr(b + 1));
    if (count_value < 1 || count_value != std::floor(count_value)) {
      throw Error(Errc::config, "range count must be a positive integer");
    }
    const auto count = static_cast<std::size_t>(count_value);
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1));
    }
  }
  return out;
}

GridAxes parse_axes(const std::string& axes, const std::string& grid, const std::string& fixed) {
  GridAxes g;
  if (!axes.empty()) {
    const auto comma = axes.find(',');
    if (comma == std::string::npos) throw Error(Errc::config, "--axes needs two names, e.g. theta,phi");
    g.first = axes.substr(0, comma);
    g.second = axes.substr(comma + 1);
  }
  if (!grid.empty()) std::tie(g.n1, g.n2) = parse_grid(grid);
  if (!fixed.empty()) {
    std::stringstream ss(fixed);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(Errc::config, "--fixed entries look like g=0.3");
      g.fixed[item.substr(0, eq)] = evaluate_expression(item.substr(eq + 1));
    }
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berry phases of spin coherent-state families"};
  app.require_subcommand(1);

  CommonOptions phase_opts;
  auto* phase = app.add_subcommand("phase", "Run one experiment");
  add_common(phase, phase_opts);

  CommonOptions sweep_opts;
  std::string sweep_coord, sweep_values, sweep_range;
  unsigned jobs = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Repeat an experiment over values of a fixed coordinate");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--coord", sweep_coord, "Coordinate to vary")->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values, e.g. 'pi/6,pi/4'");
  sweep_cmd->add_option("--range", sweep_range, "start:stop:count (inclusive)");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  std::string table_family = "su2-spin-half", table_axes, table_grid, table_fixed, table_out;
  std::optional<double> table_h;
  auto add_table = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--family", table_family, "Family id");
    cmd->add_option("--axes", table_axes, "Two grid coordinates (default theta,phi)");
    cmd->add_option("--grid", table_grid, "Grid size N or N1xN2 (default 16x16)");
    cmd->add_option("--fixed", table_fixed, "Values of the remaining coordinates, e.g. g=0.3");
    cmd->add_option("--step", table_h, "Finite-difference step");
    cmd->add_option("--out", table_out, "Output path, '-' for stdout");
    return cmd;
  };
  auto* connection = add_table("connection", "Tabulate the Berry connection on a grid");
  auto* curvature = add_table("curvature", "Tabulate the Berry curvature on a grid");

  std::uint64_t validate_seed = 0;
  bool quick = false;
  auto* validate = app.add_subcommand("validate", "Run the built-in reproduction suite");
  validate->add_option("--seed", validate_seed, "Offset into the quasi-random sample");
  validate->add_flag("--quick", quick, "Skip the Schrodinger-evolution checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code(Errc::config);
  }

  try {
    if (*phase) {
      const ExperimentConfig c = build_config(phase_opts);
      warn_out_of_bounds(c);
      emit(c, run_experiment(c));
    } else if (*sweep_cmd) {
      const ExperimentConfig c = build_config(sweep_opts);
      const auto values = parse_values(sweep_values, sweep_range);
      emit(c, sweep(c, sweep_coord, values, jobs));
    } else if (*connection || *curvature) {
      const StateFamily family = family_by_id(table_family);
      const GridAxes axes = parse_axes(table_axes, table_grid, table_fixed);
      with_output(table_out, [&](std::ostream& out) {
        if (*connection) {
          tabulate_connection(out, family, axes, table_h.value_or(kConnectionStep));
        } else {
          tabulate_curvature(out, family, axes, table_h.value_or(kCurvatureStep));
        }
      });
    } else if (*validate) {
      const auto results = run_validation_suite(validate_seed, !quick);
      bool all_passed = true;
      for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  (worst " << r.worst
                  << ", tol " << r.tolerance << ")\n";
        all_passed = all_passed && r.passed;
      }
      std::cout << "seed " << validate_seed << '\n';
      return all_passed ? 0 : 3;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}
