#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <string>

#include "support.hpp"
#include "tsid/io.hpp"

using namespace tsid;
using tsid::testing::error_kind;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tsid_io_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string error_message(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("read_series examples") {
  const fs::path fib = scratch("fib.txt");
  write_text(fib, "1\n1\n2\n3\n5\n");
  const TimeSeries s = read_series(fib);
  CHECK(s.values() == Vector{1, 1, 2, 3, 5});
  CHECK_FALSE(s.step().has_value());

  const fs::path stepped = scratch("step.txt");
  write_text(stepped, "# step=0.3\n1.0\n0.955\n");
  const TimeSeries t = read_series(stepped);
  CHECK(t.values() == Vector{1.0, 0.955});
  CHECK(t.step() == 0.3);

  const fs::path bad = scratch("bad.txt");
  write_text(bad, "1\nabc\n");
  CHECK(error_kind([&] { read_series(bad); }) == ErrorKind::ParseError);
  CHECK(error_message([&] { read_series(bad); }).find("line 2") != std::string::npos);

  CHECK(error_kind([] { read_series(scratch("missing.txt")); }) == ErrorKind::IoError);
}

TEST_CASE("parse_series edge cases") {
  CHECK(error_kind([] { parse_series(""); }) == ErrorKind::EmptySeries);
  CHECK(error_kind([] { parse_series("# only a comment\n\n"); }) == ErrorKind::EmptySeries);
  CHECK(parse_series("  2.5  \r\n\n-1e-3\n").values() == Vector{2.5, -1e-3});
  CHECK(parse_series("# a note\n# origin=4\n7\n").origin() == 4);
  CHECK(error_kind([] { parse_series("1 2\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_series("nan\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_series("# step=-1\n1\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_series("# step=abc\n1\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("series format round trips exactly") {
  testing::Gen gen(501);
  for (int t = 0; t < 50; ++t) {
    Vector v = gen.vector(gen.index(1, 30), -1e6, 1e6);
    v.push_back(1.0 / 3.0);
    v.push_back(-0.0);
    v.push_back(5e-324);
    const std::optional<double> step = t % 2 ? std::optional<double>(gen.uniform(1e-3, 1)) : std::nullopt;
    const TimeSeries s(v, step, static_cast<long>(t % 3));
    const TimeSeries back = parse_series(format_series(s));
    CHECK(back.values() == s.values());
    CHECK(back.step() == s.step());
    CHECK(back.origin() == s.origin());
  }
}

TEST_CASE("format_json is deterministic with sorted keys and 17 digits") {
  Json j;
  j["zeta"] = 0.1;
  j["alpha"] = {1, 2.5, nullptr};
  j["mid"] = Json::object({{"b", true}, {"a", "x"}});
  const std::string text = format_json(j);
  CHECK(text == format_json(Json::parse(text)));
  CHECK(text.find("\"alpha\"") < text.find("\"mid\""));
  CHECK(text.find("\"mid\"") < text.find("\"zeta\""));
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(format_double(NAN) == "null");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("system files round trip") {
  const SystemSpec d = SystemSpec::discrete(Matrix::from_rows({{0.1, 0.2}, {0.3, 1.0 / 3.0}}), {1, 0}, Vector{0.5, -2});
  const SystemSpec back = system_from_json(Json::parse(format_json(system_to_json(d))));
  CHECK(back.kind() == SystemKind::Discrete);
  CHECK(back.a() == d.a());
  CHECK(back.c() == d.c());
  CHECK(back.b() == d.b());
  CHECK_FALSE(back.step().has_value());

  const SystemSpec c = SystemSpec::continuous(Matrix::from_rows({{0, 1}, {-1, 0}}), {1, 0}, 0.3);
  const SystemSpec cb = system_from_json(Json::parse(format_json(system_to_json(c))));
  CHECK(cb.kind() == SystemKind::Continuous);
  CHECK(cb.step() == 0.3);
  CHECK(system_to_json(c)["format_version"] == 1);

  CHECK(error_kind([] { system_from_json(Json::parse(R"({"format_version": 2, "kind": "discrete", "A": [[1]], "c": [1]})")); }) ==
        ErrorKind::ParseError);
  CHECK(error_kind([] { system_from_json(Json::parse(R"({"format_version": 1, "kind": "hybrid", "A": [[1]], "c": [1]})")); }) ==
        ErrorKind::ParseError);
  CHECK(error_kind([] { system_from_json(Json::parse(R"({"format_version": 1, "kind": "discrete", "A": [[1]]})")); }) ==
        ErrorKind::ParseError);
  CHECK(error_kind([] { system_from_json(Json::parse(R"({"format_version": 1, "kind": "discrete", "A": [[1, 2]], "c": [1]})")); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("model files round trip") {
  const IdentReport r{PredictionModel({0.1, -1.0 / 3.0}, 0.25, 0.01, Vector{1e-5, 0.02}), 3, 1e-17, 12.5};
  const IdentReport back = model_from_json(Json::parse(format_json(model_to_json(r))));
  CHECK(back.model.coeffs() == r.model.coeffs());
  CHECK(back.model.offset() == r.model.offset());
  CHECK(back.model.step() == r.model.step());
  CHECK(back.model.shifted() == r.model.shifted());
  CHECK(back.window_start == 3);
  CHECK(back.residual == 1e-17);
  CHECK(back.condition_estimate == 12.5);

  const Json plain = model_to_json(IdentReport{PredictionModel({-1, -1}), 0, 0.0, 9.0});
  CHECK(plain["offset"].is_null());
  CHECK(plain["order"] == 2);
  CHECK_FALSE(plain.contains("shifted_coeffs"));
  CHECK(error_kind([] { model_from_json(Json::parse(R"({"format_version": 1, "order": 3, "coeffs": [1, 2]})")); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("report round trip, determinism and unwritable paths") {
  TrialConfig c;
  c.n = 3;
  c.trials = 300;
  c.seed = 12345678901234ULL;
  c.box = {1.0, 1.0 + 1e-15};  // forces failures so worst cases are populated
  const ExperimentReport r = mc_estimate(Property::Observable, c);
  REQUIRE_FALSE(r.worst_cases.empty());

  const fs::path a = scratch("report_a.json");
  const fs::path b = scratch("report_b.json");
  write_report(r, a);
  write_report(r, b);
  CHECK(read_text(a) == read_text(b));
  CHECK(read_report(a) == r);

  const Json j = report_to_json(r);
  CHECK(j["sampling_law"] == "uniform on box");
  CHECK(j["format_version"] == 1);
  CHECK(j["seed"] == 12345678901234ULL);

  CHECK(error_kind([&] { write_report(r, scratch("no_such_dir") / "x" / "r.json"); }) == ErrorKind::IoError);
  CHECK(error_kind([&] { write_report(r, fs::temp_directory_path()); }) == ErrorKind::IoError);
  CHECK(error_kind([] { read_json(scratch("missing.json")); }) == ErrorKind::IoError);

  const fs::path junk = scratch("junk.json");
  write_text(junk, "{not json");
  CHECK(error_kind([&] { read_report(junk); }) == ErrorKind::ParseError);
}

TEST_CASE("property: random reports round trip exactly") {
  testing::Gen gen(502);
  for (int t = 0; t < 20; ++t) {
    TrialConfig c;
    c.n = gen.index(1, 4);
    c.trials = gen.index(1, 60);
    c.seed = gen.engine()();
    c.box = {gen.uniform(-2, 0), gen.uniform(0.1, 2)};
    c.success_tol = gen.uniform(1e-12, 1e-3);
    c.rank_tol = gen.uniform(1e-12, 1e-3);
    const Property p = static_cast<Property>(gen.index(0, 4));
    const ExperimentReport r = mc_estimate(p, c);
    CHECK(report_from_json(Json::parse(format_json(report_to_json(r)))) == r);
  }
}
