#include "tsid/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>

#include "tsid/error.hpp"

namespace tsid {

namespace {

void emit(const Json& v, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        emit(v[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: out += format_double(v.get<double>()); return;
    default: out += v.dump(); return;
  }
}

double parse_double(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    throw Error(ErrorKind::ParseError, "not a finite number: '" + std::string(token) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& r : m.to_rows()) out.push_back(vector_json(r));
  return out;
}

Vector vector_from(const Json& j) { return j.get<Vector>(); }

Matrix matrix_from(const Json& j) { return Matrix::from_rows(j.get<std::vector<std::vector<double>>>()); }

std::optional<double> optional_double(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

void check_version(const Json& j) {
  if (!j.is_object() || !j.contains("format_version"))
    throw Error(ErrorKind::ParseError, "missing format_version");
  if (j.at("format_version").get<int>() != kFormatVersion)
    throw Error(ErrorKind::ParseError, "unsupported format_version");
}

// nlohmann type/key errors and invalid decoded values surface as ParseError.
template <class F>
auto as_parse_error(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::DimensionMismatch)
      throw Error(ErrorKind::ParseError, e.what());
    throw;
  }
}

Outcome outcome_from(std::string_view name) {
  for (Outcome o : {Outcome::Success, Outcome::Failure, Outcome::NumericalRejection}) {
    if (outcome_name(o) == name) return o;
  }
  throw Error(ErrorKind::ParseError, "unknown outcome '" + std::string(name) + "'");
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_json(const Json& value) {
  std::string out;
  emit(value, out, 0);
  out += "\n";
  return out;
}

// ---------------------------------------------------------------- series

TimeSeries parse_series(std::string_view text) {
  Vector values;
  std::optional<double> step;
  long origin = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    try {
      if (line.front() == '#') {
        const std::string_view body = trim(line.substr(1));
        if (body.starts_with("step=")) {
          step = parse_double(trim(body.substr(5)));
          if (!(*step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
        } else if (body.starts_with("origin=")) {
          origin = static_cast<long>(parse_double(trim(body.substr(7))));
        }
        continue;
      }
      values.push_back(parse_double(line));
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (values.empty()) throw Error(ErrorKind::EmptySeries, "series file holds no samples");
  return TimeSeries(std::move(values), step, origin);
}

TimeSeries read_series(const std::filesystem::path& path) { return parse_series(read_text(path)); }

std::string format_series(const TimeSeries& series) {
  std::string out;
  if (series.step()) out += "# step=" + format_double(*series.step()) + "\n";
  if (series.origin() != 0) out += "# origin=" + std::to_string(series.origin()) + "\n";
  for (double v : series.values()) out += format_double(v) + "\n";
  return out;
}

// ---------------------------------------------------------------- system

Json system_to_json(const SystemSpec& sys) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = sys.kind() == SystemKind::Discrete ? "discrete" : "continuous";
  j["A"] = matrix_json(sys.a());
  j["c"] = vector_json(sys.c());
  if (sys.b()) j["b"] = vector_json(*sys.b());
  if (sys.step()) j["lambda"] = *sys.step();
  return j;
}

SystemSpec system_from_json(const Json& j) {
  return as_parse_error([&] {
    check_version(j);
    const std::string kind = j.value("kind", "discrete");
    Matrix a = matrix_from(j.at("A"));
    Vector c = vector_from(j.at("c"));
    if (kind == "discrete") {
      std::optional<Vector> b;
      if (j.contains("b") && !j.at("b").is_null()) b = vector_from(j.at("b"));
      return SystemSpec::discrete(std::move(a), std::move(c), std::move(b));
    }
    if (kind == "continuous") {
      if (j.contains("b") && !j.at("b").is_null())
        throw Error(ErrorKind::ParseError, "continuous systems take no 'b'");
      return SystemSpec::continuous(std::move(a), std::move(c), optional_double(j, "lambda"));
    }
    throw Error(ErrorKind::ParseError, "unknown system kind '" + kind + "'");
  });
}

SystemSpec read_system(const std::filesystem::path& path) { return system_from_json(read_json(path)); }

// ----------------------------------------------------------------- model

Json model_to_json(const IdentReport& report) {
  const PredictionModel& m = report.model;
  Json j;
  j["format_version"] = kFormatVersion;
  j["order"] = m.order();
  j["coeffs"] = vector_json(m.coeffs());
  j["offset"] = m.offset() ? Json(*m.offset()) : Json(nullptr);
  j["step"] = m.step() ? Json(*m.step()) : Json(nullptr);
  if (m.shifted()) j["shifted_coeffs"] = vector_json(*m.shifted());
  j["residual"] = report.residual;
  j["condition_estimate"] = report.condition_estimate;
  j["window_start"] = report.window_start;
  return j;
}

IdentReport model_from_json(const Json& j) {
  return as_parse_error([&] {
    check_version(j);
    Vector coeffs = vector_from(j.at("coeffs"));
    if (j.contains("order") && j.at("order").get<std::size_t>() != coeffs.size())
      throw Error(ErrorKind::ParseError, "order does not match coefficient count");
    std::optional<Vector> shifted;
    if (j.contains("shifted_coeffs") && !j.at("shifted_coeffs").is_null())
      shifted = vector_from(j.at("shifted_coeffs"));
    PredictionModel model(std::move(coeffs), optional_double(j, "offset"), optional_double(j, "step"),
                          std::move(shifted));
    return IdentReport{std::move(model), j.value("window_start", std::size_t{0}), j.value("residual", 0.0),
                       j.value("condition_estimate", 1.0)};
  });
}

IdentReport read_model(const std::filesystem::path& path) { return model_from_json(read_json(path)); }

// ---------------------------------------------------------------- report

Json report_to_json(const ExperimentReport& report) {
  const TrialConfig& c = report.config;
  Json j;
  j["format_version"] = kFormatVersion;
  j["property"] = std::string(property_name(report.property));
  j["sampling_law"] = "uniform on box";
  j["n"] = c.n;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["box"] = {{"lo", c.box.lo}, {"hi", c.box.hi}};
  j["success_tol"] = c.success_tol;
  j["cond_cap"] = c.cond_cap;
  j["rank_tol"] = c.rank_tol;
  j["successes"] = report.successes;
  j["failures"] = report.failures;
  j["numerical_rejections"] = report.numerical_rejections;
  j["estimate"] = report.estimate;
  Json worst = Json::array();
  for (const WorstCase& w : report.worst_cases) {
    worst.push_back({{"trial", w.trial},
                     {"outcome", std::string(outcome_name(w.outcome))},
                     {"metric", w.metric},
                     {"diagnostic", w.diagnostic},
                     {"c", vector_json(w.draw.c)},
                     {"A", matrix_json(w.draw.a)},
                     {"x0", vector_json(w.draw.x0)}});
  }
  j["worst_cases"] = std::move(worst);
  return j;
}

ExperimentReport report_from_json(const Json& j) {
  return as_parse_error([&] {
    check_version(j);
    ExperimentReport r;
    const auto prop = parse_property(j.at("property").get<std::string>());
    if (!prop) throw Error(ErrorKind::ParseError, "unknown property");
    r.property = *prop;
    r.config.n = j.at("n").get<std::size_t>();
    r.config.trials = j.at("trials").get<std::size_t>();
    r.config.seed = j.at("seed").get<std::uint64_t>();
    r.config.box = {j.at("box").at("lo").get<double>(), j.at("box").at("hi").get<double>()};
    r.config.success_tol = j.at("success_tol").get<double>();
    r.config.cond_cap = j.at("cond_cap").get<double>();
    r.config.rank_tol = j.at("rank_tol").get<double>();
    r.successes = j.at("successes").get<std::size_t>();
    r.failures = j.at("failures").get<std::size_t>();
    r.numerical_rejections = j.at("numerical_rejections").get<std::size_t>();
    r.estimate = j.at("estimate").get<double>();
    for (const Json& w : j.at("worst_cases")) {
      r.worst_cases.push_back({w.at("trial").get<std::size_t>(),
                               outcome_from(w.at("outcome").get<std::string>()), w.at("metric").get<double>(),
                               w.at("diagnostic").get<std::string>(),
                               Draw{vector_from(w.at("c")), matrix_from(w.at("A")), vector_from(w.at("x0"))}});
    }
    return r;
  });
}

void write_report(const ExperimentReport& report, const std::filesystem::path& path) {
  write_text(path, format_json(report_to_json(report)));
}

ExperimentReport read_report(const std::filesystem::path& path) { return report_from_json(read_json(path)); }

// ------------------------------------------------------------------ files

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace tsid
