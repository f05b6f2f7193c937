#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mumford/run.hpp"
#include "mumford_heat.h"

using namespace mumford;

struct mh_session {
  RunConfig config;
};

namespace {

thread_local std::string last_error;

mh_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return MH_ERR_PARSE;
    case ErrorCode::kInvalidArgument: return MH_ERR_INVALID_ARGUMENT;
    default: break;
  }
  return exit_code_for(code) == 3 ? MH_ERR_NUMERICAL : MH_ERR_VALIDATION;
}

template <class F>
mh_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return MH_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MH_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* ptr, const char* what) {
  if (!ptr) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

// Applies a change to a copy, validates it, then commits.
template <class F>
mh_status update(mh_session* s, F&& change) {
  return guarded([&] {
    require(s, "session");
    RunConfig next = s->config;
    change(next);
    next.build();
    s->config = std::move(next);
  });
}

}  // namespace

extern "C" {

const char* mh_version(void) { return "0.1.0"; }

const char* mh_status_name(mh_status status) {
  switch (status) {
    case MH_OK: return "ok";
    case MH_ERR_PARSE: return "parse_error";
    case MH_ERR_VALIDATION: return "validation_error";
    case MH_ERR_NUMERICAL: return "numerical_breakdown";
    case MH_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MH_ERR_IO: return "io_error";
    case MH_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

int mh_exit_code(mh_status status) {
  switch (status) {
    case MH_OK: return 0;
    case MH_ERR_NUMERICAL: return 3;
    default: return 2;
  }
}

const char* mh_last_error(void) { return last_error.c_str(); }

mh_status mh_session_open(const char* config_json, mh_session** out) {
  return guarded([&] {
    require(config_json, "config");
    require(out, "out");
    *out = nullptr;
    auto s = std::make_unique<mh_session>();
    s->config = parse_config_text(config_json);
    *out = s.release();
  });
}

mh_status mh_session_open_file(const char* path, mh_session** out) {
  std::string text;
  bool unreadable = false;
  mh_status st = guarded([&] {
    require(path, "path");
    std::ifstream in(path);
    if (!in) {
      unreadable = true;
      throw std::runtime_error(std::string("cannot read '") + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  });
  if (st != MH_OK) return unreadable ? MH_ERR_IO : st;
  return mh_session_open(text.c_str(), out);
}

void mh_session_close(mh_session* session) { delete session; }

mh_status mh_session_set_level(mh_session* s, long level) {
  return update(s, [&](RunConfig& rc) { rc.run.level = level; });
}

mh_status mh_session_set_mode(mh_session* s, const char* mode) {
  return update(s, [&](RunConfig& rc) {
    require(mode, "mode");
    try {
      rc.mode = parse_mode(mode);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidArgument, e.what());
    }
  });
}

mh_status mh_session_set_cutoff_length(mh_session* s, long length) {
  return update(s, [&](RunConfig& rc) { rc.cutoff = Cutoff::of_length(length); });
}

mh_status mh_session_set_cutoff_tolerance(mh_session* s, const char* tolerance) {
  return update(s, [&](RunConfig& rc) {
    require(tolerance, "tolerance");
    rc.cutoff = Cutoff::of_tolerance(parse_real(tolerance));
  });
}

mh_status mh_session_set_times(mh_session* s, const char* times) {
  return update(s, [&](RunConfig& rc) {
    require(times, "times");
    std::vector<Rational> ts;
    std::stringstream ss(times);
    std::string item;
    while (std::getline(ss, item, ',')) ts.push_back(parse_real(item));
    rc.run.times = ts;
  });
}

mh_status mh_session_set_paths(mh_session* s, long paths) {
  return update(s, [&](RunConfig& rc) { rc.run.paths = paths; });
}

mh_status mh_session_set_seed(mh_session* s, uint64_t seed) {
  return update(s, [&](RunConfig& rc) { rc.run.seed = seed; });
}

void mh_string_free(char* s) { std::free(s); }

mh_status mh_session_config_json(const mh_session* s, char** out) {
  return guarded([&] {
    require(s, "session");
    require(out, "out");
    *out = copy_out(s->config.to_json().dump(2) + "\n");
  });
}

mh_status mh_session_config_hash(const mh_session* s, char** out) {
  return guarded([&] {
    require(s, "session");
    require(out, "out");
    *out = copy_out(config_hash(s->config));
  });
}

mh_status mh_run(mh_session* s, const char* command, char** primary_output) {
  return guarded([&] {
    require(s, "session");
    require(command, "command");
    require(primary_output, "out");
    *primary_output = nullptr;
    auto artifacts = run_command(parse_command(command), s->config);
    *primary_output = copy_out(artifacts.front().content);
  });
}

mh_status mh_run_to_dir(mh_session* s, const char* command, const char* dir, char** written) {
  std::vector<Artifact> artifacts;
  mh_status st = guarded([&] {
    require(s, "session");
    require(command, "command");
    require(dir, "dir");
    artifacts = run_command(parse_command(command), s->config);
  });
  if (st != MH_OK) return st;
  st = guarded([&] {
    std::filesystem::create_directories(dir);
    std::string list;
    for (const auto& a : artifacts) {
      const auto path = std::filesystem::path(dir) / a.filename;
      std::ofstream f(path, std::ios::binary);
      f << a.content;
      if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
      list += path.string() + "\n";
    }
    if (written) *written = copy_out(list);
  });
  return st == MH_ERR_INTERNAL ? MH_ERR_IO : st;
}

mh_status mh_lambda_paper(mh_session* s, const char* center, long radius_exp, char** value, char** error) {
  return guarded([&] {
    require(s, "session");
    require(center, "center");
    require(value, "value");
    OperatorConfig cfg = s->config.build();
    Disc B(cfg.p(), parse_rational(center), radius_exp);
    if (!is_admissible(cfg.profile(), B)) throw Error(ErrorCode::kNotAdmissible, "disc is not admissible");
    Certified<Surd> c = lambda_paper(cfg, B);
    *value = copy_out(surd_text(c.value));
    if (error) *error = copy_out(to_string(c.error));
  });
}

}  // extern "C"
