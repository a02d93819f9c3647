#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "berry/families.hpp"
#include "berry/loops.hpp"

namespace berry {

enum class Method { line, overlap, surface, schrodinger, all };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);

/// Constant-coordinate circle: `sweep` runs from `from` to `to`, everything
/// else is fixed. The surface method integrates over the patch spanned by
/// `radial` in [cap, fixed[radial]] and the sweep range.
struct CircleLoopSpec {
  std::string sweep;
  double from = 0.0;
  double to = kTwoPi;
  std::string radial;  // empty: theta for phi sweeps, g for gamma sweeps
  std::optional<double> cap;  // empty: lower bound of the radial coordinate
  std::map<std::string, double> fixed;  // unlisted coordinates are 0
};

struct CsvLoopSpec {
  std::string path;
  std::map<std::string, double> fixed;  // coordinates absent from the file
};

using LoopSpec = std::variant<CircleLoopSpec, CsvLoopSpec>;

/// Parses "sweep=phi,theta=pi/2[,from=..,to=..,radial=..,cap=..]" or
/// "csv=path[,coord=value...]". Values accept angle expressions.
LoopSpec parse_loop_spec(std::string_view text);
/// Inverse of parse_loop_spec with full-precision numbers.
std::string describe(const LoopSpec& spec);

struct Resolution {
  std::size_t samples = kDefaultLoopSamples;
  std::size_t grid1 = kDefaultSurfaceGrid;
  std::size_t grid2 = kDefaultSurfaceGrid;
  double connection_step = kConnectionStep;
  double curvature_step = kCurvatureStep;
};

struct OracleSettings {
  double total_time = 2000.0;
  std::size_t steps = 0;  // 0 picks recommended_steps(total_time)
};

enum class OutputFormat { csv, record };

struct OutputSettings {
  std::string path = "-";
  OutputFormat format = OutputFormat::csv;
  bool timing = false;  // wall-clock columns break byte-identical reruns
};

struct ExperimentConfig {
  std::string id = "experiment";
  std::string family;
  Method method = Method::all;
  LoopSpec loop;
  Resolution resolution;
  OracleSettings oracle;
  OutputSettings output;
  std::uint64_t seed = 0;

  /// Throws Errc::config describing the first problem found.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);
/// JSON with comments allowed.
ExperimentConfig load_config(const std::filesystem::path& path);

struct ResultRecord {
  std::string experiment_id;
  std::string family;
  std::string method;
  std::string loop;
  double raw_phase = 0.0;
  double canonical_phase = 0.0;
  std::optional<double> reference;
  std::optional<double> deviation;  // |e^{i(raw - reference)} - 1|
  std::optional<double> overlap_deficit;
  double elapsed_seconds = 0.0;
  nlohmann::json config;
};

/// Builds the loop described by the config (reads CSV files).
Loop build_loop(const ExperimentConfig& config, const StateFamily& family);
/// Patch bounded by a circle loop; Errc::config for CSV loops.
SurfacePatch build_patch(const ExperimentConfig& config, const StateFamily& family);

/// Closed-form phase of a circle in a built-in family, when one exists.
std::optional<double> circle_reference_phase(const StateFamily& family,
                                             const CircleLoopSpec& circle);

/// Runs the configured method(s). Method::all runs all four and appends one
/// record per pair (method "a|b") holding the mod-2pi deviation.
/// Numerical errors are rethrown with the experiment id prefixed.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

/// One experiment per value of a coordinate held fixed by a circle loop.
/// Records come back in input order; `jobs` = 0 uses the hardware thread count.
std::vector<ResultRecord> sweep(const ExperimentConfig& config, const std::string& coordinate,
                                std::span<const double> values, unsigned jobs = 0);

void write_csv(std::ostream& out, std::span<const ResultRecord> records, bool timing = false);
void write_records(std::ostream& out, std::span<const ResultRecord> records, bool timing = false);

struct GridAxes {
  std::string first = "theta";
  std::string second = "phi";
  std::size_t n1 = 16;
  std::size_t n2 = 16;
  std::map<std::string, double> fixed;
};

/// CSV table of the finite-difference connection (and the closed form when
/// available) on an inclusive grid over two chart coordinates.
void tabulate_connection(std::ostream& out, const StateFamily& family, const GridAxes& axes,
                         double h = kConnectionStep);
/// CSV table of every curvature component F_kl, k < l.
void tabulate_curvature(std::ostream& out, const StateFamily& family, const GridAxes& axes,
                        double h = kCurvatureStep);

}  // namespace berry
