#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ballbody/floating.hpp"
#include "ballbody/functionals.hpp"
#include "ballbody/inequality.hpp"
#include "json.hpp"

namespace ballbody {

// 17 significant digits ("%.17g"); non-finite values become "null" in JSON
// and "nan"/"inf"/"-inf" in CSV.
std::string format_number(double x);

// Stable key order (insertion order), every double written with 17
// significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

nlohmann::ordered_json to_json(const FunctionalReport& r);
nlohmann::ordered_json to_json(const InequalityRecord& r);
nlohmann::ordered_json to_json(const std::vector<InequalityRecord>& records);

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// RFC 4180 quoting, header row first, '\n' line ends.
std::string to_csv(const Table& t);

Table functionals_table(const FunctionalReport& r);
Table records_table(const std::vector<InequalityRecord>& records);

}  // namespace ballbody
