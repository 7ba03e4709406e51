// JSON instance files:
//   {"nx": .., "ny": .., "dim": .., "epsilon": ..,
//    "p": [[p(x,y) for y] for x], "f": [[[coords] for y] for x]}
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "fcomp/core.hpp"
#include "json.hpp"

namespace fcomp {

using json = nlohmann::json;

inline json instance_to_json(const ProblemInstance& inst) {
  json j;
  j["nx"] = inst.nx;
  j["ny"] = inst.ny;
  j["dim"] = inst.dim;
  j["epsilon"] = inst.epsilon;
  j["p"] = inst.p;
  j["f"] = inst.f;
  return j;
}

inline ProblemInstance instance_from_json(const json& j) {
  ProblemInstance inst;
  auto field = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw InstanceError(std::string("missing field \"") + key + "\"");
    return j.at(key);
  };
  try {
    inst.nx = field("nx").get<std::size_t>();
    inst.ny = field("ny").get<std::size_t>();
    inst.dim = field("dim").get<std::size_t>();
    inst.epsilon = field("epsilon").get<double>();
  } catch (const json::exception& e) {
    throw InstanceError(std::string("bad header field: ") + e.what());
  }
  try {
    inst.p = field("p").get<Matrix>();
  } catch (const json::exception& e) {
    throw InstanceError(std::string("field \"p\": ") + e.what());
  }
  try {
    inst.f = field("f").get<std::vector<std::vector<Point>>>();
  } catch (const json::exception& e) {
    throw InstanceError(std::string("field \"f\": ") + e.what());
  }
  inst.validate();
  return inst;
}

/// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string dump_instance(const ProblemInstance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline ProblemInstance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("parse failure: ") + e.what());
  }
  if (!j.is_object()) throw InstanceError("instance file must hold a JSON object");
  return instance_from_json(j);
}

inline ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

inline void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write " + path);
  out << dump_instance(inst);
}

}  // namespace fcomp
