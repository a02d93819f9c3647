#include "berry/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "berry/adiabatic.hpp"
#include "berry/errors.hpp"
#include "berry/expression.hpp"
#include "berry/geometry.hpp"

namespace berry {

using nlohmann::json;

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double angle_from_json(const json& value, const std::string& key) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return evaluate_expression(value.get<std::string>());
  throw Error(Errc::config, "'" + key + "' must be a number or an expression string");
}

std::map<std::string, double> fixed_from_json(const json& value) {
  if (!value.is_object()) throw Error(Errc::config, "'fixed' must be an object");
  std::map<std::string, double> fixed;
  for (const auto& [name, v] : value.items()) fixed[name] = angle_from_json(v, name);
  return fixed;
}

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw Error(Errc::config, "unknown key '" + key + "' in " + where);
  }
}

LoopSpec loop_from_json(const json& j) {
  if (j.is_string()) return parse_loop_spec(j.get<std::string>());
  if (!j.is_object()) throw Error(Errc::config, "'loop' must be an object or a loop string");
  if (j.contains("csv")) {
    reject_unknown_keys(j, {"csv", "fixed"}, "loop");
    CsvLoopSpec spec;
    spec.path = j.at("csv").get<std::string>();
    if (j.contains("fixed")) spec.fixed = fixed_from_json(j.at("fixed"));
    return spec;
  }
  reject_unknown_keys(j, {"sweep", "from", "to", "radial", "cap", "fixed"}, "loop");
  CircleLoopSpec spec;
  if (!j.contains("sweep")) throw Error(Errc::config, "circle loop needs 'sweep'");
  spec.sweep = j.at("sweep").get<std::string>();
  if (j.contains("from")) spec.from = angle_from_json(j.at("from"), "from");
  if (j.contains("to")) spec.to = angle_from_json(j.at("to"), "to");
  if (j.contains("radial")) spec.radial = j.at("radial").get<std::string>();
  if (j.contains("cap")) spec.cap = angle_from_json(j.at("cap"), "cap");
  if (j.contains("fixed")) spec.fixed = fixed_from_json(j.at("fixed"));
  return spec;
}

json loop_to_json(const LoopSpec& spec) {
  if (const auto* csv = std::get_if<CsvLoopSpec>(&spec)) {
    json j{{"csv", csv->path}};
    if (!csv->fixed.empty()) j["fixed"] = csv->fixed;
    return j;
  }
  const auto& circle = std::get<CircleLoopSpec>(spec);
  json j{{"sweep", circle.sweep}, {"from", circle.from}, {"to", circle.to}};
  if (!circle.radial.empty()) j["radial"] = circle.radial;
  if (circle.cap) j["cap"] = *circle.cap;
  j["fixed"] = json::object();
  for (const auto& [name, value] : circle.fixed) j["fixed"][name] = value;
  return j;
}

std::vector<double> base_coordinates(const ParameterChart& chart,
                                     const std::map<std::string, double>& fixed) {
  std::vector<double> base(chart.dimension(), 0.0);
  for (const auto& [name, value] : fixed) base[chart.index_of(name)] = value;
  return base;
}

std::string radial_coordinate(const CircleLoopSpec& circle, const ParameterChart& chart) {
  if (!circle.radial.empty()) return circle.radial;
  if (circle.sweep == "phi" && chart.find("theta")) return "theta";
  if (circle.sweep == "gamma" && chart.find("g")) return "g";
  for (const auto& c : chart.coordinates()) {
    if (c.name != circle.sweep) return c.name;
  }
  throw Error(Errc::config, "no radial coordinate available for a surface patch");
}

double fixed_value(const std::map<std::string, double>& fixed, const std::string& name) {
  const auto it = fixed.find(name);
  return it == fixed.end() ? 0.0 : it->second;
}

ResultRecord make_record(const ExperimentConfig& config, const std::string& method, double raw,
                         std::optional<double> reference) {
  ResultRecord r;
  r.experiment_id = config.id;
  r.family = config.family;
  r.method = method;
  r.loop = describe(config.loop);
  r.raw_phase = raw;
  r.canonical_phase = canonical_phase(raw);
  r.reference = reference;
  if (reference) r.deviation = phase_deviation(raw, *reference);
  r.config = to_json(config);
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string optional_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string{};
}

std::vector<double> grid_values(const Coordinate& c, std::size_t n) {
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = n == 1 ? c.lower
                       : c.lower + (c.upper - c.lower) * static_cast<double>(i) /
                                       static_cast<double>(n - 1);
  }
  return values;
}

template <typename Row>
void for_each_grid_point(const StateFamily& family, const GridAxes& axes, Row row) {
  const auto& chart = family.chart();
  const std::size_t first = chart.index_of(axes.first);
  const std::size_t second = chart.index_of(axes.second);
  if (first == second) throw Error(Errc::config, "grid axes must differ");
  if (axes.n1 == 0 || axes.n2 == 0) throw Error(Errc::config, "grid must be non-empty");
  auto coords = base_coordinates(chart, axes.fixed);
  for (double u : grid_values(chart.coordinate(first), axes.n1)) {
    for (double v : grid_values(chart.coordinate(second), axes.n2)) {
      coords[first] = u;
      coords[second] = v;
      row(family.point(coords));
    }
  }
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::line: return "line";
    case Method::overlap: return "overlap";
    case Method::surface: return "surface";
    case Method::schrodinger: return "schrodinger";
    case Method::all: return "all";
  }
  return "all";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::line, Method::overlap, Method::surface, Method::schrodinger,
                   Method::all}) {
    if (text == to_string(m)) return m;
  }
  throw Error(Errc::config, "unknown method '" + std::string(text) +
                                "' (expected line, overlap, surface, schrodinger or all)");
}

LoopSpec parse_loop_spec(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::vector<std::string> order;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::config, "loop field '" + trim(item) + "' lacks '='");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    const std::string value = trim(std::string_view(item).substr(eq + 1));
    if (key.empty() || value.empty()) throw Error(Errc::config, "empty loop field in '" + std::string(text) + "'");
    if (!fields.emplace(key, value).second) throw Error(Errc::config, "duplicate loop field '" + key + "'");
    order.push_back(key);
  }
  if (fields.contains("csv")) {
    CsvLoopSpec spec;
    for (const auto& [key, value] : fields) {
      if (key == "csv") {
        spec.path = value;
      } else {
        spec.fixed[key] = evaluate_expression(value);
      }
    }
    return spec;
  }
  if (!fields.contains("sweep")) throw Error(Errc::config, "loop needs 'sweep=<coordinate>' or 'csv=<path>'");
  CircleLoopSpec spec;
  for (const auto& [key, value] : fields) {
    if (key == "sweep") {
      spec.sweep = value;
    } else if (key == "radial") {
      spec.radial = value;
    } else if (key == "from") {
      spec.from = evaluate_expression(value);
    } else if (key == "to") {
      spec.to = evaluate_expression(value);
    } else if (key == "cap") {
      spec.cap = evaluate_expression(value);
    } else {
      spec.fixed[key] = evaluate_expression(value);
    }
  }
  return spec;
}

std::string describe(const LoopSpec& spec) {
  std::string out;
  if (const auto* csv = std::get_if<CsvLoopSpec>(&spec)) {
    out = "csv=" + csv->path;
    for (const auto& [name, value] : csv->fixed) out += "," + name + "=" + format_number(value);
    return out;
  }
  const auto& circle = std::get<CircleLoopSpec>(spec);
  out = "sweep=" + circle.sweep + ",from=" + format_number(circle.from) +
        ",to=" + format_number(circle.to);
  if (!circle.radial.empty()) out += ",radial=" + circle.radial;
  if (circle.cap) out += ",cap=" + format_number(*circle.cap);
  for (const auto& [name, value] : circle.fixed) out += "," + name + "=" + format_number(value);
  return out;
}

void ExperimentConfig::validate() const {
  if (id.empty()) throw Error(Errc::config, "experiment id must not be empty");
  const StateFamily fam = family_by_id(family);
  const ParameterChart& chart = fam.chart();
  if (resolution.samples < 16) throw Error(Errc::config, "samples must be >= 16");
  if (resolution.grid1 < 8 || resolution.grid2 < 8) throw Error(Errc::config, "grid must be at least 8 x 8");
  if (!(resolution.connection_step > 0.0) || !(resolution.curvature_step > 0.0)) {
    throw Error(Errc::config, "finite-difference steps must be positive");
  }
  if (!(oracle.total_time > 0.0) || !std::isfinite(oracle.total_time)) {
    throw Error(Errc::config, "oracle T must be positive");
  }
  if (oracle.steps != 0 && oracle.steps < 1000) throw Error(Errc::config, "oracle steps must be >= 1000");

  if (const auto* circle = std::get_if<CircleLoopSpec>(&loop)) {
    chart.index_of(circle->sweep);
    for (const auto& [name, value] : circle->fixed) {
      chart.index_of(name);
      if (name == circle->sweep) throw Error(Errc::config, "coordinate '" + name + "' is both swept and fixed");
    }
    if (!build_loop(*this, fam).is_closed()) {
      throw Error(Errc::config, "loop " + describe(loop) +
                                    " does not close: sweep a periodic coordinate over a multiple of 2*pi");
    }
    if (method == Method::surface || method == Method::all) build_patch(*this, fam).validate();
  } else {
    if (method == Method::surface) throw Error(Errc::config, "surface method needs a circle loop");
    const auto& csv = std::get<CsvLoopSpec>(loop);
    for (const auto& [name, value] : csv.fixed) chart.index_of(name);
    try {
      build_loop(*this, fam);
    } catch (const Error& e) {
      throw Error(Errc::config, e.what());
    }
  }
}

ExperimentConfig config_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(Errc::config, "config must be a JSON object");
    reject_unknown_keys(j, {"id", "family", "method", "loop", "resolution", "oracle", "output", "seed"},
                        "config");
    ExperimentConfig c;
    if (j.contains("id")) c.id = j.at("id").get<std::string>();
    if (!j.contains("family")) throw Error(Errc::config, "config needs 'family'");
    c.family = j.at("family").get<std::string>();
    if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
    if (!j.contains("loop")) throw Error(Errc::config, "config needs 'loop'");
    c.loop = loop_from_json(j.at("loop"));
    if (j.contains("resolution")) {
      const auto& r = j.at("resolution");
      reject_unknown_keys(r, {"samples", "grid", "connection_step", "curvature_step"}, "resolution");
      if (r.contains("samples")) c.resolution.samples = r.at("samples").get<std::size_t>();
      if (r.contains("grid")) {
        const auto& g = r.at("grid");
        if (g.is_array() && g.size() == 2) {
          c.resolution.grid1 = g[0].get<std::size_t>();
          c.resolution.grid2 = g[1].get<std::size_t>();
        } else {
          c.resolution.grid1 = c.resolution.grid2 = g.get<std::size_t>();
        }
      }
      if (r.contains("connection_step")) c.resolution.connection_step = r.at("connection_step").get<double>();
      if (r.contains("curvature_step")) c.resolution.curvature_step = r.at("curvature_step").get<double>();
    }
    if (j.contains("oracle")) {
      const auto& o = j.at("oracle");
      reject_unknown_keys(o, {"T", "steps"}, "oracle");
      if (o.contains("T")) c.oracle.total_time = o.at("T").get<double>();
      if (o.contains("steps")) c.oracle.steps = o.at("steps").get<std::size_t>();
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      reject_unknown_keys(o, {"path", "format", "timing"}, "output");
      if (o.contains("path")) c.output.path = o.at("path").get<std::string>();
      if (o.contains("format")) {
        const auto f = o.at("format").get<std::string>();
        if (f == "csv") {
          c.output.format = OutputFormat::csv;
        } else if (f == "record") {
          c.output.format = OutputFormat::record;
        } else {
          throw Error(Errc::config, "unknown output format '" + f + "' (expected csv or record)");
        }
      }
      if (o.contains("timing")) c.output.timing = o.at("timing").get<bool>();
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::config, std::string("config: ") + e.what());
  }
}

json to_json(const ExperimentConfig& c) {
  return json{
      {"id", c.id},
      {"family", c.family},
      {"method", std::string(to_string(c.method))},
      {"loop", loop_to_json(c.loop)},
      {"resolution",
       {{"samples", c.resolution.samples},
        {"grid", {c.resolution.grid1, c.resolution.grid2}},
        {"connection_step", c.resolution.connection_step},
        {"curvature_step", c.resolution.curvature_step}}},
      {"oracle", {{"T", c.oracle.total_time}, {"steps", c.oracle.steps}}},
      {"output",
       {{"path", c.output.path},
        {"format", c.output.format == OutputFormat::csv ? "csv" : "record"},
        {"timing", c.output.timing}}},
      {"seed", c.seed},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config, "cannot open config " + path.string());
  try {
    return config_from_json(json::parse(in, nullptr, true, /*ignore_comments=*/true));
  } catch (const json::exception& e) {
    throw Error(Errc::config, path.string() + ": " + e.what());
  }
}

Loop build_loop(const ExperimentConfig& config, const StateFamily& family) {
  const ParameterChart& chart = family.chart();
  if (const auto* circle = std::get_if<CircleLoopSpec>(&config.loop)) {
    return Loop::circle(family.chart_ptr(), base_coordinates(chart, circle->fixed),
                        chart.index_of(circle->sweep), circle->from, circle->to);
  }
  const auto& csv = std::get<CsvLoopSpec>(config.loop);
  std::ifstream in(csv.path);
  if (!in) throw Error(Errc::config, "cannot open loop file " + csv.path);
  const auto base = base_coordinates(chart, csv.fixed);
  return read_loop_csv(in, family.chart_ptr(), base);
}

SurfacePatch build_patch(const ExperimentConfig& config, const StateFamily& family) {
  const auto* circle = std::get_if<CircleLoopSpec>(&config.loop);
  if (!circle) throw Error(Errc::config, "surface patches need a circle loop");
  const ParameterChart& chart = family.chart();
  const std::string radial = radial_coordinate(*circle, chart);
  const std::size_t first = chart.index_of(radial);
  const std::size_t second = chart.index_of(circle->sweep);
  if (first == second) throw Error(Errc::config, "radial and swept coordinates must differ");
  SurfacePatch patch;
  patch.chart = family.chart_ptr();
  patch.first = first;
  patch.second = second;
  patch.a1 = circle->cap.value_or(chart.coordinate(first).lower);
  patch.b1 = fixed_value(circle->fixed, radial);
  patch.a2 = circle->from;
  patch.b2 = circle->to;
  patch.base = base_coordinates(chart, circle->fixed);
  if (patch.a1 == patch.b1) {
    throw Error(Errc::config, "surface patch is degenerate: cap equals the loop's " + radial);
  }
  return patch;
}

std::optional<double> circle_reference_phase(const StateFamily& family,
                                             const CircleLoopSpec& circle) {
  const double sweep = circle.to - circle.from;
  const double theta = fixed_value(circle.fixed, "theta");
  const double g = fixed_value(circle.fixed, "g");
  const std::string& id = family.id();
  if (id == "su2-spin-half" && circle.sweep == "phi") return -0.5 * sweep * (1.0 - std::cos(theta));
  if (id == "su2-spin-1" && circle.sweep == "phi") return -sweep * (1.0 - std::cos(theta));
  if (id == "su3-spin-1" && circle.sweep == "gamma") return -sweep * (1.0 - std::cos(2 * g));
  if (id == "su3-spin-1" && circle.sweep == "phi") return sweep * std::cos(theta) * std::cos(2 * g);
  return std::nullopt;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  try {
    const StateFamily family = family_by_id(config.family);
    const Loop loop = build_loop(config, family);
    const auto* circle = std::get_if<CircleLoopSpec>(&config.loop);
    const std::optional<double> reference =
        circle ? circle_reference_phase(family, *circle) : std::nullopt;

    std::vector<Method> methods;
    if (config.method == Method::all) {
      methods = {Method::line, Method::overlap};
      if (circle) methods.push_back(Method::surface);
      methods.push_back(Method::schrodinger);
    } else {
      methods = {config.method};
    }

    std::vector<ResultRecord> records;
    for (Method m : methods) {
      const auto start = std::chrono::steady_clock::now();
      ResultRecord record;
      switch (m) {
        case Method::line: {
          LineIntegralOptions options;
          options.samples = config.resolution.samples;
          options.h = config.resolution.connection_step;
          record = make_record(config, "line", line_integral_phase(family, loop, options).raw,
                               reference);
          break;
        }
        case Method::overlap:
          record = make_record(config, "overlap",
                               overlap_product_phase(family, loop, config.resolution.samples).raw,
                               reference);
          break;
        case Method::surface: {
          const SurfacePatch patch = build_patch(config, family);
          SurfaceIntegralOptions options{config.resolution.grid1, config.resolution.grid2,
                                         config.resolution.curvature_step};
          // The patch boundary also runs along radial = cap, which may carry its own phase.
          std::optional<double> patch_reference;
          if (reference) {
            CircleLoopSpec inner = *circle;
            inner.fixed[family.chart().coordinate(patch.first).name] = patch.a1;
            if (auto inner_reference = circle_reference_phase(family, inner)) {
              patch_reference = *reference - *inner_reference;
            }
          }
          record = make_record(config, "surface",
                               surface_integral_phase(family, patch, options).raw,
                               patch_reference);
          break;
        }
        case Method::schrodinger: {
          const PhaseReport report =
              adiabatic_loop_phase(family, loop, config.oracle.total_time, config.oracle.steps);
          record = make_record(config, "schrodinger", report.geometric_phase, reference);
          record.overlap_deficit = report.residual_overlap_deficit;
          break;
        }
        case Method::all:
          break;
      }
      record.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      records.push_back(std::move(record));
    }

    if (config.method == Method::all) {
      const std::size_t n = records.size();
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          const double delta = records[a].raw_phase - records[b].raw_phase;
          records.push_back(
              make_record(config, records[a].method + "|" + records[b].method, delta, 0.0));
        }
      }
    }
    return records;
  } catch (const Error& e) {
    throw Error(e.code(), "[" + config.id + "] " + e.what());
  }
}

std::vector<ResultRecord> sweep(const ExperimentConfig& config, const std::string& coordinate,
                                std::span<const double> values, unsigned jobs) {
  const auto* circle = std::get_if<CircleLoopSpec>(&config.loop);
  if (!circle) throw Error(Errc::config, "sweeps need a circle loop");
  const StateFamily family = family_by_id(config.family);
  family.chart().index_of(coordinate);
  if (coordinate == circle->sweep) {
    throw Error(Errc::config, "cannot sweep '" + coordinate + "': the loop itself runs along it");
  }

  std::vector<ExperimentConfig> configs;
  configs.reserve(values.size());
  for (double value : values) {
    ExperimentConfig c = config;
    auto& spec = std::get<CircleLoopSpec>(c.loop);
    spec.fixed[coordinate] = value;
    c.id = config.id + "/" + coordinate + "=" + format_number(value);
    c.validate();
    configs.push_back(std::move(c));
  }

  std::vector<std::vector<ResultRecord>> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run_experiment(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, configs.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  if (threads > 0) worker();
  pool.clear();

  std::vector<ResultRecord> records;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& r : results[i]) records.push_back(std::move(r));
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const ResultRecord> records, bool timing) {
  out << "experiment_id,family,method,loop,raw_phase,canonical_phase,reference,deviation,"
         "overlap_deficit,seed";
  if (timing) out << ",elapsed_seconds";
  out << '\n';
  for (const auto& r : records) {
    out << csv_field(r.experiment_id) << ',' << csv_field(r.family) << ',' << csv_field(r.method)
        << ',' << csv_field(r.loop) << ',' << format_number(r.raw_phase) << ','
        << format_number(r.canonical_phase) << ',' << optional_number(r.reference) << ','
        << optional_number(r.deviation) << ',' << optional_number(r.overlap_deficit) << ','
        << (r.config.contains("seed") ? r.config.at("seed").dump() : std::string{});
    if (timing) out << ',' << format_number(r.elapsed_seconds);
    out << '\n';
  }
}

void write_records(std::ostream& out, std::span<const ResultRecord> records, bool timing) {
  json array = json::array();
  for (const auto& r : records) {
    json j{{"experiment_id", r.experiment_id},
           {"family", r.family},
           {"method", r.method},
           {"loop", r.loop},
           {"raw_phase", r.raw_phase},
           {"canonical_phase", r.canonical_phase},
           {"reference", r.reference ? json(*r.reference) : json(nullptr)},
           {"deviation", r.deviation ? json(*r.deviation) : json(nullptr)},
           {"overlap_deficit", r.overlap_deficit ? json(*r.overlap_deficit) : json(nullptr)},
           {"config", r.config}};
    if (timing) j["elapsed_seconds"] = r.elapsed_seconds;
    array.push_back(std::move(j));
  }
  out << array.dump(2) << '\n';
}

void tabulate_connection(std::ostream& out, const StateFamily& family, const GridAxes& axes,
                         double h) {
  const auto& chart = family.chart();
  for (const auto& c : chart.coordinates()) out << c.name << ',';
  for (const auto& c : chart.coordinates()) out << "A_" << c.name << ',';
  if (family.has_analytic_connection()) {
    for (const auto& c : chart.coordinates()) out << "A_" << c.name << "_exact,";
  }
  out << "reality_defect\n";
  for_each_grid_point(family, axes, [&](const ParameterPoint& p) {
    const ConnectionCovector a = berry_connection_fd(family, p, h);
    for (double x : p.coords()) out << format_number(x) << ',';
    for (double x : a.components) out << format_number(x) << ',';
    if (family.has_analytic_connection()) {
      for (double x : analytic_connection(family, p).components) out << format_number(x) << ',';
    }
    double defect = 0.0;
    for (double r : a.imaginary_residue) defect = std::max(defect, std::abs(r));
    out << format_number(defect) << '\n';
  });
}

void tabulate_curvature(std::ostream& out, const StateFamily& family, const GridAxes& axes,
                        double h) {
  const auto& chart = family.chart();
  const std::size_t m = chart.dimension();
  for (const auto& c : chart.coordinates()) out << c.name << ',';
  bool first_column = true;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k + 1; l < m; ++l) {
      out << (first_column ? "" : ",") << "F_" << chart.coordinate(k).name << '_'
          << chart.coordinate(l).name;
      first_column = false;
    }
  }
  out << '\n';
  for_each_grid_point(family, axes, [&](const ParameterPoint& p) {
    const CurvatureForm f = berry_curvature_fd(family, p, h);
    for (double x : p.coords()) out << format_number(x) << ',';
    bool first_value = true;
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t l = k + 1; l < m; ++l) {
        out << (first_value ? "" : ",") << format_number(f(k, l));
        first_value = false;
      }
    }
    out << '\n';
  });
}

}  // namespace berry
