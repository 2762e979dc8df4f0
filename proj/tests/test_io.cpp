#include <doctest.h>

#include <sstream>

#include "hankel/io.hpp"
#include "../tools/config.hpp"
#include "support.hpp"

using namespace hankel;
using hankel::io::Json;
using hankel::cli::ConfigError;
using hankel::cli::parse_config;

TEST_CASE("rationals and scalars") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("3e-2") == Rational(3, 100));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(to_string(Rational(-6, 8)) == "-3/4");
  CHECK(parse_rational("007") == 7);
  CHECK(parse_rational("-0.5e1") == -5);
  CHECK(to_string(Rational(4)) == "4");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3) == "0.3333333333333333");
  CHECK(std::stod(format_double(2.0 / 3)) == 2.0 / 3);
  CHECK(parse_scalar<double>("1/4") == 0.25);
  CHECK(io::rational_from_json(Json("5/7")) == Rational(5, 7));
  CHECK(io::rational_from_json(Json(2)) == 2);
}

TEST_CASE("backend strings") {
  CHECK(Backend::parse("rational") == Backend::rational());
  CHECK(Backend::parse("f64") == Backend::f64());
  CHECK(Backend::parse("bigfloat:300").bits == 300);
  CHECK(Backend::parse("bigfloat:300").str() == "bigfloat:300");
  CHECK_THROWS(Backend::parse("bigfloat:"));
  CHECK_THROWS(Backend::parse("f32"));
}

TEST_CASE("bigfloat") {
  PrecisionScope scope(200);
  const BigFloat third(Rational(1, 3));
  CHECK(third.precision() == 200);
  CHECK(abs(third - BigFloat(1.0 / 3)).exponent2() < -50);
  CHECK(abs(third - BigFloat(1.0 / 3)).exponent2() > -60);
  CHECK(sqrt(BigFloat(2)).str(20) == "1.4142135623730950488");
  {
    PrecisionScope inner(64);
    CHECK(BigFloat::context_precision() == 64);
  }
  CHECK(BigFloat::context_precision() == 200);
}

TEST_CASE("family JSON round trip") {
  const std::vector<MomentFamily> families{
      PowerLog{Rational(3, 2)}, Gegenbauer{Rational(1, 2)}, Discrete{testing::three_point()},
      LogNormal{Rational(1)}, Gaussian{}, Explicit{{Rational(1), Rational(1, 3)}}};
  for (const auto& f : families) {
    CHECK(io::family_from_json(io::to_json(f)) == f);
  }
  const Json ex = io::to_json(MomentFamily(Explicit{{Rational(1), Rational(1, 3)}}));
  CHECK(ex["params"]["values"][1] == "1/3");

  CHECK_THROWS_AS(io::family_from_json(Json::parse(R"({"family": "power_log", "params": {"c": 1, "d": 2}})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::family_from_json(Json::parse(R"({"family": "cauchy", "params": {}})")), io::FormatError);
  CHECK_THROWS_AS(io::family_from_json(Json::parse(R"({"family": "gaussian", "extra": 1})")), io::FormatError);
  CHECK(io::family_from_json(Json::parse(R"({"family": "gegenbauer", "params": {"lambda": "1/2"}, "backend": "rational"})")) ==
        MomentFamily::uniform());
}

TEST_CASE("measure JSON") {
  const DiscreteMeasure mu = io::measure_from_json(Json::parse(R"({"points": ["1/2", "-1/2"], "weights": ["1", 2]})"));
  CHECK(mu.size() == 2);
  CHECK(io::to_json(mu)["points"][0] == "-1/2");
  CHECK_THROWS_AS(io::measure_from_json(Json::parse(R"({"points": ["1/2"]})")), io::FormatError);
}

TEST_CASE("profile CSV") {
  SpectralProfile p;
  p.n_grid = {2, 4};
  p.lambda_min = {0.5, std::numeric_limits<double>::quiet_NaN()};
  p.lambda_max = {1.25, std::numeric_limits<double>::infinity()};
  p.hs_norm_B = {2, std::numeric_limits<double>::quiet_NaN()};
  p.trace_partial = {1, 2};
  p.precision_bits = {53, 0};
  p.errors = {"", "bad, very"};
  std::ostringstream os;
  io::write_profile_csv(os, p);
  const std::string text = os.str();
  CHECK(text.find("N,lambda_min,lambda_max,hs_norm_B") == 0);
  CHECK(text.find("2,0.5,1.25,2,") != std::string::npos);
  CHECK(text.find("4,,inf,") != std::string::npos);
  CHECK(text.find("\"bad, very\"") != std::string::npos);
}

namespace {

Json config(const char* text) { return Json::parse(text); }

}  // namespace

TEST_CASE("experiment configs") {
  const auto ok = parse_config(
      config(R"({"family": {"family": "power_log", "params": {"c": 2}}, "N": 8, "trace_terms": 100})"), "classify",
      std::nullopt);
  CHECK(ok.n == 8);
  CHECK(ok.trace_terms == 100);

  const auto spectrum = parse_config(
      config(R"({"family": {"family": "gaussian"}, "N_grid": {"start": 4, "stop": 12, "step": 4}})"), "spectrum",
      std::string("bigfloat:128"));
  CHECK(spectrum.n_grid == std::vector<std::size_t>{4, 8, 12});
  CHECK(spectrum.precision.mode == PrecisionPolicy::Mode::fixed);
  CHECK(spectrum.precision.backend.bits == 128);

  CHECK_THROWS_AS(parse_config(config(R"({"family": {"family": "gaussian"}, "colour": 1})"), "classify", std::nullopt),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(config(R"({"family": {"family": "gaussian"}, "N_grid": []})"), "spectrum", std::nullopt),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(config(R"({"family": {"family": "gaussian"}, "N_grid": {"start": 5, "stop": 4}})"), "spectrum",
                   std::nullopt),
      ConfigError);
  CHECK_THROWS_AS(parse_config(config(R"({"family": {"family": "power_log", "params": {"c": 0}}})"), "classify",
                               std::nullopt),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(config(R"({"family": {"family": "gaussian"}})"), "bench", std::string("rational")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(config(R"({"family": {"family": "gaussian"}, "remove": [0]})"), "extremal",
                               std::nullopt),
                  ConfigError);
  const char* discrete =
      R"({"family": {"family": "discrete", "params": {"points": ["0", "1/2"], "weights": ["1", "1"]}}, "remove": [2]})";
  CHECK_THROWS_AS(parse_config(config(discrete), "extremal", std::nullopt), ConfigError);
  CHECK_THROWS_AS(parse_config(config(R"({"command": "bench", "family": {"family": "gaussian"}})"), "classify",
                               std::nullopt),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(config(R"({"family": {"family": "gaussian"}, "outputs": {"json": "../x.json"}})"),
                               "classify", std::nullopt),
                  ConfigError);
}
