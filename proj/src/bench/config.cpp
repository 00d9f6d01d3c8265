#include <set>

#include <json.hpp>

#include "asss/bench/bench.hpp"
#include "asss/la/errors.hpp"

namespace asss::bench {

namespace {

using nlohmann::json;

template <class T>
std::vector<T> list_of(const json& v) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<T>());
  } else {
    out.push_back(v.get<T>());
  }
  return out;
}

}  // namespace

BenchSpec spec_from_json(const std::string& text, BenchSpec base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("bench config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("bench config must be a JSON object");
  static const std::set<std::string> known{
      "methods", "k",           "nu",      "omega",         "alpha",      "outer_tol",
      "inner_tol", "max_iterations", "restart", "max_seconds", "ichol_droptol", "bd_variant",
      "threads", "out"};
  try {
    for (const auto& [key, v] : j.items()) {
      if (!known.count(key)) throw ConfigError("bench config: unknown key '" + key + "'");
      if (key == "methods") {
        base.methods.clear();
        for (const auto& name : list_of<std::string>(v)) base.methods.push_back(parse_method(name));
      } else if (key == "k") {
        base.ks = list_of<int>(v);
      } else if (key == "nu") {
        base.nus = list_of<double>(v);
      } else if (key == "omega") {
        base.omegas = list_of<double>(v);
      } else if (key == "alpha") {
        if (v.is_null())
          base.alpha.reset();
        else
          base.alpha = v.get<double>();
      } else if (key == "outer_tol") {
        base.outer_tol = v.get<double>();
      } else if (key == "inner_tol") {
        base.inner_tol = v.get<double>();
      } else if (key == "max_iterations") {
        base.max_iterations = v.get<std::size_t>();
      } else if (key == "restart") {
        base.restart = v.get<std::size_t>();
      } else if (key == "max_seconds") {
        base.max_seconds = v.get<double>();
      } else if (key == "ichol_droptol") {
        base.ichol_droptol = v.get<double>();
      } else if (key == "bd_variant") {
        const auto name = v.get<std::string>();
        if (name == "scaled_shift")
          base.bd_variant = precond::BlockDiagVariant::scaled_shift;
        else if (name == "unscaled_shift")
          base.bd_variant = precond::BlockDiagVariant::unscaled_shift;
        else
          throw ConfigError("bench config: bd_variant must be scaled_shift or unscaled_shift");
      } else if (key == "threads") {
        base.threads = v.get<unsigned>();
      } else if (key == "out") {
        base.out = v.get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bench config: ") + e.what());
  }
  base.validate();
  return base;
}

}  // namespace asss::bench
