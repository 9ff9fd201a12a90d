#include "tsid/cli.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "tsid/dynsys.hpp"
#include "tsid/error.hpp"
#include "tsid/experiments.hpp"
#include "tsid/ident.hpp"
#include "tsid/io.hpp"

namespace tsid {

namespace {

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::UsageError, message); }

const std::string& require(const RunSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) usage("missing required option --" + key);
  return it->second;
}

std::optional<std::string> optional_param(const RunSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) return std::nullopt;
  return it->second;
}

bool flag(const RunSpec& spec, const std::string& key) {
  const auto v = optional_param(spec, key);
  return v && *v != "0" && *v != "false";
}

double to_double(const std::string& key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    usage("--" + key + " expects a number, got '" + std::string(text) + "'");
  return v;
}

std::size_t to_count(const std::string& key, std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    usage("--" + key + " expects a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

std::size_t positive_count(const RunSpec& spec, const std::string& key) {
  const std::size_t v = to_count(key, require(spec, key));
  if (v == 0) usage("--" + key + " must be positive");
  return v;
}

Vector to_csv(const std::string& key, std::string_view text) {
  Vector out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(to_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double tolerance(const RunSpec& spec, double fallback) {
  const auto t = optional_param(spec, "tol");
  if (!t) return fallback;
  const double v = to_double("tol", *t);
  if (!(v > 0.0)) usage("--tol must be positive");
  return v;
}

void emit(const RunSpec& spec, std::ostream& out, const std::string& content) {
  if (const auto path = optional_param(spec, "out")) {
    write_text(*path, content);
  } else {
    out << content;
  }
}

void run_simulate(const RunSpec& spec, std::ostream& out) {
  SystemSpec sys = read_system(require(spec, "system"));
  const Vector x0 = to_csv("x0", require(spec, "x0"));
  const std::size_t len = positive_count(spec, "len");
  if (x0.size() != sys.order())
    usage("--x0 has " + std::to_string(x0.size()) + " entries, system order is " + std::to_string(sys.order()));
  const auto lambda = optional_param(spec, "lambda");
  if (sys.kind() == SystemKind::Discrete) {
    if (lambda) usage("--lambda applies to continuous systems only");
    emit(spec, out, format_series(simulate_discrete(sys, x0, len)));
    return;
  }
  if (lambda) {
    const double step = to_double("lambda", *lambda);
    if (!(step > 0.0)) usage("--lambda must be positive");
    sys = sys.with_step(step);
  }
  emit(spec, out, format_series(sample_continuous(sys, x0, len)));
}

void run_identify(const RunSpec& spec, std::ostream& out) {
  const TimeSeries series = read_series(require(spec, "series"));
  const std::size_t n = positive_count(spec, "n");
  const std::size_t k = optional_param(spec, "k") ? to_count("k", *optional_param(spec, "k")) : 0;
  IdentifyOptions options;
  options.overdetermined = flag(spec, "overdetermined");
  const IdentReport report = flag(spec, "affine") ? identify_affine(series, n, k, options)
                                                  : identify(series, n, k, options);
  emit(spec, out, format_json(model_to_json(report)));
}

void run_predict(const RunSpec& spec, std::ostream& out) {
  const IdentReport report = read_model(require(spec, "model"));
  const Vector seed = to_csv("seed-window", require(spec, "seed-window"));
  const std::size_t steps = positive_count(spec, "steps");
  if (seed.size() != report.model.order()) {
    usage("--seed-window has " + std::to_string(seed.size()) + " values, model order is " +
          std::to_string(report.model.order()));
  }
  const TimeSeries next = predict(report.model, seed, steps);
  Vector extended = seed;
  extended.insert(extended.end(), next.values().begin(), next.values().end());
  emit(spec, out, format_series(TimeSeries(std::move(extended), report.model.step())));
}

void run_observability(const RunSpec& spec, std::ostream& out) {
  const SystemSpec sys = read_system(require(spec, "system"));
  const double tol = tolerance(spec, kDefaultRankTol);
  const ObservabilityResult r = is_observable(sys.a(), sys.c(), tol);
  Json j;
  j["format_version"] = kFormatVersion;
  j["n"] = sys.order();
  j["rank"] = r.rank;
  j["observable"] = r.observable;
  j["tol"] = tol;
  emit(spec, out, format_json(j));
}

void run_spectrum(const RunSpec& spec, std::ostream& out) {
  const IdentReport report = read_model(require(spec, "model"));
  const ContinuousSpectrum s = recover_continuous_spectrum(report.model);
  Json eig = Json::array();
  for (const Complex& z : s.eigenvalues) eig.push_back({z.real(), z.imag()});
  Json j;
  j["format_version"] = kFormatVersion;
  j["step"] = *report.model.step();
  j["eigenvalues"] = std::move(eig);
  j["aliasing_risk"] = s.aliasing_risk;
  emit(spec, out, format_json(j));
}

void run_montecarlo(const RunSpec& spec, std::ostream& out) {
  const std::string& name = require(spec, "property");
  const auto property = parse_property(name);
  if (!property) usage("unknown property '" + name + "'");
  TrialConfig config;
  config.n = positive_count(spec, "n");
  config.trials = positive_count(spec, "trials");
  config.seed = spec.seed.value_or(0);
  if (const auto box = optional_param(spec, "box")) {
    const Vector b = to_csv("box", *box);
    if (b.size() != 2 || !(b[0] < b[1])) usage("--box expects lo,hi with lo < hi");
    config.box = {b[0], b[1]};
  }
  config.rank_tol = tolerance(spec, kDefaultRankTol);
  if (const auto s = optional_param(spec, "success-tol")) config.success_tol = to_double("success-tol", *s);
  if (const auto s = optional_param(spec, "cond-cap")) config.cond_cap = to_double("cond-cap", *s);
  try {
    config.validate();
  } catch (const Error& e) {
    usage(e.what());
  }
  emit(spec, out, format_json(report_to_json(mc_estimate(*property, config))));
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UsageError:
    case ErrorKind::ParseError:
    case ErrorKind::EmptySeries:
    case ErrorKind::IoError: return kExitUsageError;
    default: return kExitDomainError;
  }
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) noexcept {
  if (name == "simulate") return Command::Simulate;
  if (name == "identify") return Command::Identify;
  if (name == "predict") return Command::Predict;
  if (name == "observability") return Command::Observability;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "montecarlo") return Command::Montecarlo;
  return std::nullopt;
}

int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    switch (spec.command) {
      case Command::Simulate: run_simulate(spec, out); break;
      case Command::Identify: run_identify(spec, out); break;
      case Command::Predict: run_predict(spec, out); break;
      case Command::Observability: run_observability(spec, out); break;
      case Command::Spectrum: run_spectrum(spec, out); break;
      case Command::Montecarlo: run_montecarlo(spec, out); break;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitOk;
}

}  // namespace tsid
