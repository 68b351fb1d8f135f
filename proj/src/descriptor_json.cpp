#include "cfinsler/profiles/descriptor_json.hpp"

#include "cfinsler/error.hpp"

namespace cfinsler {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, path + ": " + msg);
}

double number_field(const json& j, const std::string& key, const std::string& path,
                    std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    config_error(path + "." + key, "required number is missing");
  }
  if (!j.at(key).is_number()) config_error(path + "." + key, "expected a number");
  return j.at(key).get<double>();
}

}  // namespace

std::string to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::Hermitian: return "hermitian";
    case ProfileFamily::Randers: return "randers";
    case ProfileFamily::WkRanders: return "wk-randers";
    case ProfileFamily::Model: return "model";
  }
  return "unknown";
}

json to_json(const ScalarFunction1D& f) {
  const auto& p = f.params();
  switch (f.kind()) {
    case ScalarFunction1D::Kind::Constant: return {{"kind", "constant"}, {"c", p[0]}};
    case ScalarFunction1D::Kind::Linear: return {{"kind", "linear"}, {"c", p[0]}};
    case ScalarFunction1D::Kind::Power: return {{"kind", "power"}, {"c", p[0]}, {"p", p[1]}};
    case ScalarFunction1D::Kind::Exponential: return {{"kind", "exponential"}, {"c", p[0]}, {"a", p[1]}};
    case ScalarFunction1D::Kind::Rational: return {{"kind", "rational"}, {"a", p[0]}, {"b", p[1]}};
    case ScalarFunction1D::Kind::Sum: {
      json terms = json::array();
      for (const auto& t : f.terms()) terms.push_back(to_json(t));
      return {{"kind", "sum"}, {"terms", terms}};
    }
  }
  return {};
}

json to_json(const ProfileDescriptor& d) {
  json j;
  j["family"] = to_string(d.family);
  switch (d.family) {
    case ProfileFamily::Model:
      j["k"] = d.k;
      j["c"] = d.c;
      break;
    case ProfileFamily::Randers:
      j["g"] = to_json(*d.g);
      j["h"] = to_json(*d.h);
      [[fallthrough]];
    case ProfileFamily::Hermitian:
      j["f"] = to_json(*d.f);
      break;
    case ProfileFamily::WkRanders:
      j["f"] = to_json(*d.f);
      j["h_scale"] = d.h_scale;
      break;
  }
  return j;
}

ScalarFunction1D scalar_function_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) config_error(path, "expected an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) config_error(path + ".kind", "expected a string");
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "constant") return ScalarFunction1D::constant(number_field(j, "c", path));
    if (kind == "linear") return ScalarFunction1D::linear(number_field(j, "c", path, 1.0));
    if (kind == "power") return ScalarFunction1D::power(number_field(j, "c", path, 1.0), number_field(j, "p", path));
    if (kind == "exponential")
      return ScalarFunction1D::exponential(number_field(j, "c", path, 1.0), number_field(j, "a", path, 1.0));
    if (kind == "rational") return ScalarFunction1D::rational(number_field(j, "a", path), number_field(j, "b", path));
    if (kind == "sum") {
      if (!j.contains("terms") || !j.at("terms").is_array()) config_error(path + ".terms", "expected an array");
      std::vector<ScalarFunction1D> terms;
      for (std::size_t i = 0; i < j.at("terms").size(); ++i)
        terms.push_back(scalar_function_from_json(j.at("terms")[i], path + ".terms[" + std::to_string(i) + "]"));
      return ScalarFunction1D::sum(std::move(terms));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(path, e.what());
  }
  config_error(path + ".kind", "unknown kind '" + kind + "'");
}

ProfileDescriptor descriptor_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) config_error(path, "expected an object");
  if (!j.contains("family") || !j.at("family").is_string()) config_error(path + ".family", "expected a string");
  const auto family = j.at("family").get<std::string>();
  ProfileDescriptor d;
  auto fn = [&](const char* key) {
    if (!j.contains(key)) config_error(path + "." + key, "required function is missing");
    return scalar_function_from_json(j.at(key), path + "." + key);
  };
  if (family == "hermitian") {
    d.family = ProfileFamily::Hermitian;
    d.f = fn("f");
  } else if (family == "randers") {
    d.family = ProfileFamily::Randers;
    d.f = fn("f");
    d.g = fn("g");
    d.h = fn("h");
  } else if (family == "wk-randers") {
    d.family = ProfileFamily::WkRanders;
    d.f = fn("f");
    d.h_scale = number_field(j, "h_scale", path, 1.0);
  } else if (family == "model") {
    d.family = ProfileFamily::Model;
    const double k = number_field(j, "k", path);
    if (k != 4.0 && k != 0.0 && k != -4.0) config_error(path + ".k", "must be one of 4, 0, -4");
    d.k = static_cast<int>(k);
    d.c = number_field(j, "c", path, 1.0);
    if (!(d.c > 0.0)) config_error(path + ".c", "must be positive");
  } else {
    config_error(path + ".family", "unknown family '" + family + "'");
  }
  return d;
}

}  // namespace cfinsler
