#include "ballbody/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ballbody {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_json(std::ostream& os, const nlohmann::ordered_json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << nlohmann::ordered_json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write_json(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << nl;
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_number(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

std::string csv_field(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) {
            if (ch == '"') q += '"';
            q += ch;
          }
          return q + '"';
        }
      },
      c);
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::ostringstream os;
  write_json(os, j, indent, 0);
  os << '\n';
  return os.str();
}

nlohmann::ordered_json to_json(const FunctionalReport& r) {
  nlohmann::ordered_json j;
  j["omega_c"] = r.omega_c;
  j["omega_classical"] = r.omega_classical;
  j["surface_area"] = r.surface_area;
  j["mean_width_half"] = r.mean_width_half;
  j["volume"] = r.volume;
  j["grid"] = r.grid;
  j["clamp_count"] = r.clamp_count;
  j["negative_products"] = r.negative_products;
  j["nonsmooth_nodes"] = r.nonsmooth_nodes;
  j["exact_planar"] = r.exact_planar;
  j["projected_surface"] = r.projected_surface;
  j["structural_omega_c"] = optional_number(r.structural_omega_c);
  return j;
}

nlohmann::ordered_json to_json(const InequalityRecord& r) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(r.kind);
  j["body"] = r.body;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["near_equality"] = r.near_equality;
  j["finite_difference"] = r.finite_difference;
  if (r.inner_slack) j["inner_slack"] = *r.inner_slack;
  return j;
}

nlohmann::ordered_json to_json(const std::vector<InequalityRecord>& records) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : records) j.push_back(to_json(r));
  return j;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
  return os.str();
}

Table functionals_table(const FunctionalReport& r) {
  Table t;
  t.header = {"omega_c", "omega_classical", "surface_area", "mean_width_half", "volume", "grid", "clamp_count",
              "negative_products", "nonsmooth_nodes", "exact_planar", "projected_surface"};
  t.rows.push_back({r.omega_c, r.omega_classical, r.surface_area, r.mean_width_half, r.volume, r.grid,
                    static_cast<long long>(r.clamp_count), static_cast<long long>(r.negative_products),
                    static_cast<long long>(r.nonsmooth_nodes), r.exact_planar, r.projected_surface});
  return t;
}

Table records_table(const std::vector<InequalityRecord>& records) {
  Table t;
  t.header = {"kind", "body", "lhs", "rhs", "slack", "tol", "pass", "near_equality"};
  for (const auto& r : records)
    t.rows.push_back({to_string(r.kind), r.body, r.lhs, r.rhs, r.slack, r.tol, r.pass, r.near_equality});
  return t;
}

}  // namespace ballbody
