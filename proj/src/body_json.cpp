#include "ballbody/body_json.hpp"

#include <fstream>
#include <sstream>

#include "ballbody/errors.hpp"

namespace ballbody {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec to_vec(const nlohmann::json& arr, const char* key) {
  if (!arr.is_array()) throw InvalidArgument(std::string("body json: '") + key + "' must be an array of numbers");
  Vec v;
  for (const auto& x : arr) {
    if (!x.is_number()) throw InvalidArgument(std::string("body json: non-numeric entry in '") + key + "'");
    v.push_back(x.get<double>());
  }
  return v;
}

Vec read_vec(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("body json: missing array '") + key + "'");
  return to_vec(j.at(key), key);
}

double read_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw InvalidArgument(std::string("body json: missing number '") + key + "'");
  return j.at(key).get<double>();
}

void check_dim(const nlohmann::json& j, int dim) {
  if (!j.contains("dim")) return;
  if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() != dim)
    throw InvalidArgument("body json: 'dim' does not match the coordinates (" + std::to_string(dim) + ")");
}

}  // namespace

Body body_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw InvalidArgument("body json: expected an object with a string 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "ball") {
    Vec c = read_vec(j, "center");
    check_dim(j, static_cast<int>(c.size()));
    return Body::ball(std::move(c), read_number(j, "radius"));
  }
  if (type == "trig2d") {
    check_dim(j, 2);
    std::vector<Body::Term> terms;
    if (j.contains("terms")) {
      if (!j.at("terms").is_array()) throw InvalidArgument("body json: 'terms' must be an array");
      for (const auto& t : j.at("terms")) {
        if (!t.is_object() || !t.contains("k") || !t.at("k").is_number_integer())
          throw InvalidArgument("body json: trig2d term needs an integer 'k'");
        terms.push_back({t.at("k").get<int>(), read_number(t, "eps")});
      }
    }
    return Body::trig2d(read_number(j, "a"), std::move(terms));
  }
  if (type == "ball_intersection") {
    if (!j.contains("centers") || !j.at("centers").is_array())
      throw InvalidArgument("body json: ball_intersection needs 'centers'");
    std::vector<Vec> centers;
    for (const auto& c : j.at("centers")) centers.push_back(to_vec(c, "centers"));
    if (centers.empty()) throw InvalidArgument("body json: ball_intersection needs at least one center");
    check_dim(j, static_cast<int>(centers.front().size()));
    return Body::ball_intersection(std::move(centers));
  }
  if (type == "minkowski") {
    if (!j.contains("parts") || !j.at("parts").is_array()) throw InvalidArgument("body json: minkowski needs 'parts'");
    std::vector<std::pair<double, Body>> parts;
    for (const auto& p : j.at("parts")) {
      if (!p.is_object() || !p.contains("body")) throw InvalidArgument("body json: minkowski part needs 'body'");
      parts.emplace_back(read_number(p, "weight"), body_from_json(p.at("body")));
    }
    Body b = Body::minkowski(std::move(parts));
    check_dim(j, b.dim());
    return b;
  }
  if (type == "c_dual" || type == "reflect") {
    if (!j.contains("of")) throw InvalidArgument("body json: '" + type + "' needs 'of'");
    Body inner = body_from_json(j.at("of"));
    check_dim(j, inner.dim());
    return type == "c_dual" ? Body::c_dual_of(std::move(inner)) : Body::reflected(std::move(inner));
  }
  throw InvalidArgument("body json: unknown type '" + type + "'");
}

nlohmann::ordered_json body_to_json(const Body& body) {
  nlohmann::ordered_json j;
  std::visit(overloaded{
                 [&](const BallShape& b) {
                   j["type"] = "ball";
                   j["dim"] = body.dim();
                   j["center"] = b.center;
                   j["radius"] = b.radius;
                 },
                 [&](const Trig2DShape& t) {
                   j["type"] = "trig2d";
                   j["a"] = t.a;
                   j["terms"] = nlohmann::ordered_json::array();
                   for (const auto& term : t.terms) j["terms"].push_back({{"k", term.k}, {"eps", term.eps}});
                 },
                 [&](const BallIntersectionShape& bi) {
                   j["type"] = "ball_intersection";
                   j["dim"] = body.dim();
                   j["centers"] = bi.centers();
                 },
                 [&](const MinkowskiShape& m) {
                   j["type"] = "minkowski";
                   j["parts"] = nlohmann::ordered_json::array();
                   for (const auto& [w, part] : m.parts) j["parts"].push_back({{"weight", w}, {"body", body_to_json(part)}});
                 },
                 [&](const CDualShape& c) {
                   j["type"] = "c_dual";
                   j["of"] = body_to_json(c.inner);
                 },
                 [&](const ReflectedShape& r) {
                   j["type"] = "reflect";
                   j["of"] = body_to_json(r.inner);
                 },
             },
             body.shape().v);
  return j;
}

Body parse_body(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line/column (1-based).
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InvalidArgument("malformed body JSON at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what());
  }
  return body_from_json(j);
}

Body load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open body file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_body(ss.str());
}

}  // namespace ballbody
