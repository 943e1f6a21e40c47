#pragma once

#include <string>
#include <string_view>

#include "ballbody/body.hpp"
#include "json.hpp"

namespace ballbody {

// Tagged JSON objects:
//   {"type":"ball","dim":2,"center":[0,0],"radius":0.5}
//   {"type":"trig2d","a":0.5,"terms":[{"k":2,"eps":0.05}]}
//   {"type":"ball_intersection","dim":2,"centers":[[0.5,0],[-0.5,0]]}
//   {"type":"minkowski","parts":[{"weight":0.5,"body":{...}}, ...]}
//   {"type":"c_dual","of":{...}}
//   {"type":"reflect","of":{...}}
// "dim" is optional; when present it must agree with the coordinates.
Body body_from_json(const nlohmann::json& j);
nlohmann::ordered_json body_to_json(const Body& body);

// Parses text; malformed JSON raises InvalidArgument with line and column.
Body parse_body(std::string_view text);
Body load_body(const std::string& path);

}  // namespace ballbody
