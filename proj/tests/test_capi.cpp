// The C surface, exercised the way a foreign caller would: only mumford_heat.h.
#include <doctest.h>

#include <cstring>
#include <string>

#include "mumford_heat.h"

namespace {

const std::string kTate = std::string(MUMFORD_DATA_DIR) + "/tate-p3.json";

std::string take(char* s) {
  std::string out = s ? s : "";
  mh_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("open, query, close") {
  mh_session* s = nullptr;
  REQUIRE(mh_session_open_file(kTate.c_str(), &s) == MH_OK);
  REQUIRE(s != nullptr);
  CHECK(std::strlen(mh_last_error()) == 0);

  char* hash = nullptr;
  CHECK(mh_session_config_hash(s, &hash) == MH_OK);
  const std::string h = take(hash);
  CHECK(h.size() == 16);

  char* json = nullptr;
  CHECK(mh_session_config_json(s, &json) == MH_OK);
  const std::string text = take(json);
  mh_session* again = nullptr;
  REQUIRE(mh_session_open(text.c_str(), &again) == MH_OK);
  char* hash2 = nullptr;
  mh_session_config_hash(again, &hash2);
  CHECK(take(hash2) == h);
  mh_session_close(again);

  char* value = nullptr;
  char* err = nullptr;
  CHECK(mh_lambda_paper(s, "1", -1, &value, &err) == MH_OK);
  CHECK(take(value) == "15/26");
  CHECK(take(err) == "0");

  char* out = nullptr;
  CHECK(mh_run(s, "spectrum", &out) == MH_OK);
  CHECK(take(out).find(",15/26,") != std::string::npos);
  mh_session_close(s);
}

TEST_CASE("errors come back as status codes") {
  mh_session* s = nullptr;
  CHECK(mh_session_open("{", &s) == MH_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK(std::strlen(mh_last_error()) > 0);
  CHECK(mh_session_open_file("/nonexistent/config.json", &s) == MH_ERR_IO);
  CHECK(mh_session_open(nullptr, &s) == MH_ERR_INVALID_ARGUMENT);

  REQUIRE(mh_session_open_file(kTate.c_str(), &s) == MH_OK);
  char* hash = nullptr;
  mh_session_config_hash(s, &hash);
  const std::string before = take(hash);

  CHECK(mh_session_set_level(s, 0) == MH_ERR_VALIDATION);
  CHECK(mh_session_set_mode(s, "sideways") == MH_ERR_INVALID_ARGUMENT);
  CHECK(mh_session_set_cutoff_tolerance(s, "-1") == MH_ERR_VALIDATION);
  CHECK(mh_session_set_times(s, "1,x") == MH_ERR_PARSE);
  CHECK(mh_session_set_paths(s, 0) == MH_ERR_VALIDATION);
  // Failed overrides leave the session untouched.
  mh_session_config_hash(s, &hash);
  CHECK(take(hash) == before);

  CHECK(mh_session_set_mode(s, "ambient") == MH_OK);
  CHECK(mh_session_set_times(s, "0,0.5,1/3") == MH_OK);
  CHECK(mh_session_set_cutoff_length(s, 12) == MH_OK);
  CHECK(mh_session_set_seed(s, 99) == MH_OK);
  mh_session_config_hash(s, &hash);
  CHECK(take(hash) != before);

  char* out = nullptr;
  CHECK(mh_run(s, "dance", &out) == MH_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  char* value = nullptr;
  CHECK(mh_lambda_paper(s, "0", 0, &value, nullptr) == MH_ERR_VALIDATION);
  mh_session_close(s);
  mh_session_close(nullptr);

  CHECK(mh_exit_code(MH_OK) == 0);
  CHECK(mh_exit_code(MH_ERR_VALIDATION) == 2);
  CHECK(mh_exit_code(MH_ERR_PARSE) == 2);
  CHECK(mh_exit_code(MH_ERR_NUMERICAL) == 3);
  CHECK(std::string(mh_status_name(MH_ERR_NUMERICAL)) == "numerical_breakdown");
}
