#pragma once

#include <json.hpp>

#include "mumford/error.hpp"
#include "mumford/padic.hpp"
#include "mumford/schottky.hpp"

namespace mumford {

using Json = nlohmann::json;

// Rationals travel as "num/den" strings. Plain JSON integers are accepted on input.
inline Json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::kParseError, where + ": expected a rational as \"num/den\"");
}

inline long integer_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Error(ErrorCode::kParseError, where + ": expected an integer");
  return j.get<long>();
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::kParseError, where + ": missing field '" + key + "'");
  return j.at(key);
}

inline Json disc_json(const Disc& d) {
  return Json{{"center", rational_json(d.center())}, {"radius_exp", d.radius_exp()}};
}

inline Disc disc_from_json(long p, const Json& j, const std::string& where) {
  return Disc(p, rational_from_json(field(j, "center", where), where + ".center"),
              integer_from_json(field(j, "radius_exp", where), where + ".radius_exp"));
}

inline Json p1_disc_json(const P1Disc& d) {
  Json j = disc_json(d.inner());
  if (d.is_complement()) j["complement"] = true;
  return j;
}

inline P1Disc p1_disc_from_json(long p, const Json& j, const std::string& where) {
  bool co = j.contains("complement") && j.at("complement").is_boolean() && j.at("complement").get<bool>();
  return P1Disc(disc_from_json(p, j, where), co);
}

}  // namespace mumford
