// mumford-heat: command-line front end over the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <optional>
#include <string>

#include "mumford_heat.h"

namespace {

struct Flags {
  std::string config;
  std::optional<long> level;
  std::optional<std::string> times;
  std::optional<long> paths;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<long> cutoff_len;
  std::optional<std::string> cutoff_tol;
  std::string out = ".";
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--level", f.level, "state level m");
  cmd->add_option("--t,--times", f.times, "comma-separated times, e.g. 0,1/2,1");
  cmd->add_option("--paths", f.paths, "number of sample paths");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--mode", f.mode, "transport or ambient")->check(CLI::IsMember({"transport", "ambient"}));
  auto* len = cmd->add_option("--cutoff-len", f.cutoff_len, "word-length cutoff for group sums");
  cmd->add_option("--cutoff-tol", f.cutoff_tol, "tolerance for the discarded tail, e.g. 1/1000000")->excludes(len);
  cmd->add_option("-o,--out", f.out, "output directory")->capture_default_str();
}

int fail(mh_status st) {
  std::fprintf(stderr, "mumford-heat: %s: %s\n", mh_status_name(st), mh_last_error());
  return mh_exit_code(st);
}

int run(const std::string& command, const Flags& f) {
  mh_session* s = nullptr;
  mh_status st = mh_session_open_file(f.config.c_str(), &s);
  if (st != MH_OK) return fail(st);
  struct Closer {
    mh_session* s;
    ~Closer() { mh_session_close(s); }
  } closer{s};

  if (f.level && (st = mh_session_set_level(s, *f.level)) != MH_OK) return fail(st);
  if (f.mode && (st = mh_session_set_mode(s, f.mode->c_str())) != MH_OK) return fail(st);
  if (f.cutoff_len && (st = mh_session_set_cutoff_length(s, *f.cutoff_len)) != MH_OK) return fail(st);
  if (f.cutoff_tol && (st = mh_session_set_cutoff_tolerance(s, f.cutoff_tol->c_str())) != MH_OK) return fail(st);
  if (f.times && (st = mh_session_set_times(s, f.times->c_str())) != MH_OK) return fail(st);
  if (f.paths && (st = mh_session_set_paths(s, *f.paths)) != MH_OK) return fail(st);
  if (f.seed && (st = mh_session_set_seed(s, *f.seed)) != MH_OK) return fail(st);

  char* written = nullptr;
  st = mh_run_to_dir(s, command.c_str(), f.out.c_str(), &written);
  if (st != MH_OK) return fail(st);
  std::fputs(written, stdout);
  mh_string_free(written);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion on p-adic Schottky quotients: spectra, heat flow, paths, audits."};
  app.set_version_flag("--version", mh_version());
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check the configuration and report the domain, measure and census"},
      {"spectrum", "eigenvalue classes of the admissible wavelets below the level"},
      {"evolve", "solve the heat equation for the configured initial condition"},
      {"sample", "simulate jump paths and compare them with the semigroup"},
      {"audit", "exact checks of the distance and integral statements the operator uses"},
      {"resolvent", "solve (eta - Q) u = h"},
  };
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return run(app.get_subcommands().front()->get_name(), flags);
}
