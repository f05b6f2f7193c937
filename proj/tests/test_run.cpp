#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mumford/run.hpp"

using namespace mumford;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kTate = std::string(MUMFORD_DATA_DIR) + "/tate-p3.json";
const std::string kGenusTwo = std::string(MUMFORD_DATA_DIR) + "/genus2-p3.json";

Json tate_json() { return Json::parse(slurp(kTate)); }

ErrorCode code_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("config was accepted");
  return ErrorCode::kInvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("bundled fixtures parse") {
  RunConfig rc = parse_config(kTate);
  CHECK(rc.group.genus() == 1);
  CHECK(rc.p() == 3);
  CHECK(rc.run.level == 2);
  RunConfig g2 = parse_config(kGenusTwo);
  CHECK(g2.group.genus() == 2);
}

TEST_CASE("growth condition violation is a validation error") {
  Json j = Json::parse(slurp(kGenusTwo));
  j["operator"]["alpha_g"] = "1";  // 3^1 = 3 <= 4
  CHECK(code_of(j.dump()) == ErrorCode::kValidationError);
  CHECK(message_of(j.dump()).find("p^alpha_g") != std::string::npos);
  j["operator"]["alpha_g"] = "5/4";  // 3^(5/4) ~ 3.95
  CHECK(code_of(j.dump()) == ErrorCode::kValidationError);
  j["operator"]["alpha_g"] = "4/3";  // 3^(4/3) ~ 4.33
  CHECK_NOTHROW(parse_config_text(j.dump()));
}

TEST_CASE("a form with a zero outside the field is a validation error") {
  Json j = tate_json();
  // z^2 - 2 has no root in Q.
  j["measure"]["datum"]["factors"].push_back({{"poly", {"-2", "0", "1"}}, {"mult", 1}});
  CHECK(code_of(j.dump()) == ErrorCode::kValidationError);
  CHECK(message_of(j.dump()).find("measure.datum") != std::string::npos);
}

TEST_CASE("malformed configs name the field") {
  Json j = tate_json();
  j["operator"]["alpha"] = "1/0";
  CHECK(code_of(j.dump()) == ErrorCode::kParseError);
  CHECK(message_of(j.dump()).find("operator.alpha") != std::string::npos);

  j = tate_json();
  j["group"]["holes"].erase(1);
  CHECK(code_of(j.dump()) == ErrorCode::kParseError);
  CHECK(message_of(j.dump()).find("group.holes") != std::string::npos);

  j = tate_json();
  j["extra"] = 1;
  CHECK(code_of(j.dump()) == ErrorCode::kParseError);

  CHECK(code_of("{ not json") == ErrorCode::kParseError);

  j = tate_json();
  j["run"]["level"] = 1;
  CHECK(code_of(j.dump()) == ErrorCode::kValidationError);

  j = tate_json();
  j["run"]["initial"] = {{"kind", "indicator"}, {"state", 99}};
  CHECK(code_of(j.dump()) == ErrorCode::kValidationError);

  j = tate_json();
  j["group"]["holes"][1]["radius_exp"] = -1;  // the pairing no longer holds
  CHECK(code_of(j.dump()) == ErrorCode::kValidationError);
}

TEST_CASE("round trip and hash") {
  for (const auto& path : {kTate, kGenusTwo}) {
    RunConfig rc = parse_config(path);
    RunConfig back = parse_config_text(rc.to_json().dump());
    CHECK(back.to_json() == rc.to_json());
    CHECK(config_hash(back) == config_hash(rc));
    CHECK(config_hash(rc).size() == 16);
  }
  RunConfig rc = parse_config(kTate);
  RunConfig other = rc;
  other.run.seed += 1;
  CHECK(config_hash(other) != config_hash(rc));
  other = rc;
  other.mode = EvalMode::kAmbient;
  CHECK(config_hash(other) != config_hash(rc));
}

TEST_CASE("decimal and rational reals") {
  CHECK(parse_real("0.25") == Rational(1, 4));
  CHECK(parse_real("-1.5") == Rational(-3, 2));
  CHECK(parse_real("3/6") == Rational(1, 2));
  CHECK(parse_real("2") == Rational(2));
  CHECK_THROWS_AS(parse_real("1/2.5"), Error);
  CHECK_THROWS_AS(parse_real("."), Error);
}

TEST_CASE("spectrum output contains the worked row") {
  RunConfig rc = parse_config(kTate);
  auto out = run_command(Command::kSpectrum, rc);
  REQUIRE(out.size() == 1);
  CHECK(out[0].filename == "spectrum.csv");
  CHECK(out[0].content.find(
            "radius_exp,density_num,density_den,lambda_paper,lambda_exact_lo,lambda_exact_hi,multiplicity,n_witness_discs\n"
            "-1,1,1,15/26,81/26,81/26,4,2\n") != std::string::npos);
}

TEST_CASE("every artifact carries hash, mode, cutoff and tail bound; outputs are deterministic") {
  RunConfig rc = parse_config(kTate);
  rc.run.audit_instances = 300;
  rc.run.paths = 200;
  const std::string hash = config_hash(rc);
  for (Command c : {Command::kValidate, Command::kSpectrum, Command::kEvolve, Command::kSample, Command::kAudit,
                    Command::kResolvent}) {
    auto first = run_command(c, rc);
    auto again = run_command(c, rc);
    REQUIRE(first.size() == again.size());
    for (size_t i = 0; i < first.size(); ++i) {
      INFO(command_name(c) << " " << first[i].filename);
      CHECK(first[i].content == again[i].content);
      CHECK(first[i].content.find(hash) != std::string::npos);
      CHECK(first[i].content.find("transport") != std::string::npos);
      CHECK(first[i].content.find("cutoff") != std::string::npos);
      CHECK(first[i].content.find("tail_bound") != std::string::npos);
    }
  }
}

TEST_CASE("audit output documents both readings") {
  RunConfig rc = parse_config(kTate);
  rc.run.audit_instances = 500;
  Json audit = Json::parse(run_command(Command::kAudit, rc)[0].content);
  const Json& s = audit["sections"];
  CHECK(s["moebius_distance_identity"]["verdict"] == "pass");
  CHECK(s["translate_distance_lower_bound"]["verdict"] == "pass");
  CHECK(s["translate_distance_equivariance"]["reference_instance"]["lhs"] == "1/9");
  CHECK(s["translate_distance_equivariance"]["reference_instance"]["rhs"] == "1");
  CHECK(s.contains("local_integral_alpha"));
}

TEST_CASE("evolve and resolvent read the configured initial condition") {
  RunConfig rc = parse_config(kTate);
  auto ev = run_command(Command::kEvolve, rc);
  CHECK(ev[0].filename == "solution.csv");
  CHECK(ev[0].content.find("t,state_index,value\n0,0,") != std::string::npos);
  CHECK(ev[1].filename == "states.csv");
  auto rs = run_command(Command::kResolvent, rc);
  CHECK(rs[0].content.find("state_index,h,u\n") != std::string::npos);
  CHECK(exit_code_for(ErrorCode::kNumericalBreakdown) == 3);
  CHECK(exit_code_for(ErrorCode::kValidationError) == 2);
}
