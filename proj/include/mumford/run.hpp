#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mumford/heat.hpp"
#include "mumford/json_io.hpp"
#include "mumford/omega.hpp"
#include "mumford/schottky.hpp"
#include "mumford/spectrum.hpp"

namespace mumford {

// Initial datum for evolve, and right-hand side for resolvent.
struct InitialCondition {
  enum class Kind { kIndicator, kWavelet, kValues } kind = Kind::kIndicator;
  long state = 0;                     // kIndicator
  std::optional<Wavelet> wavelet;     // kWavelet, real part, omega-normalised
  std::vector<Rational> values;       // kValues, one per level-m state
};

struct RunParams {
  long level = 2;
  std::vector<Rational> times{Rational(1)};
  long paths = 1000;
  std::uint64_t seed = 1;
  long start_state = 0;
  Rational eta{1};
  long audit_instances = 10000;
  InitialCondition initial;
};

struct RunConfig {
  SchottkyGroup group{0, {}, {Disc(2, Rational(0), 0), {}}};
  // Exactly one of the two measure sources.
  std::optional<RationalFunctionDatum> datum;
  long resolution = 2;  // profile depth when built from the datum
  std::optional<Json> explicit_profile;
  Rational alpha{1}, alpha_g{1};
  EvalMode mode = EvalMode::kTransport;
  Cutoff cutoff = Cutoff::of_tolerance(Rational(1, 1000000000000));
  RunParams run;

  long p() const { return group.p; }

  Json to_json() const;
  // Structural parsing only; every field error is kParseError with its path.
  static RunConfig from_json(const Json& j);

  // Validated operator. Throws kValidationError naming the broken invariant.
  OperatorConfig build() const;
};

// Parse and validate. kParseError for malformed input, kValidationError for
// a well-formed config that breaks an invariant.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// Times and other reals: "n/d", integers or plain decimals, all exact.
Rational parse_real(const std::string& text);

// FNV-1a 64 over the canonical JSON of the effective config, 16 hex digits.
std::string config_hash(const RunConfig& rc);

struct Artifact {
  std::string filename;
  std::string content;
};

enum class Command { kValidate, kSpectrum, kEvolve, kSample, kAudit, kResolvent };
Command parse_command(const std::string& name);
const char* command_name(Command c);

// Runs one command; the first artifact is the primary output.
std::vector<Artifact> run_command(Command cmd, const RunConfig& rc);

// 0 ok, 2 validation failure, 3 numerical breakdown.
int exit_code_for(ErrorCode code);

}  // namespace mumford
