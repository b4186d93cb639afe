#include <cmath>
#include <cstdio>

#include "cli.hpp"

namespace cohtorus::cli {

namespace {

void format_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write(std::string& out, const nlohmann::json& v) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      // The default object type is an ordered std::map, so keys come out sorted.
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        write(out, item);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        write(out, v[i]);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      format_double(out, v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

}  // namespace

std::string canonical_json(const nlohmann::json& value) {
  std::string out;
  write(out, value);
  out += '\n';
  return out;
}

std::string spectrum_csv(const std::vector<double>& eigenvalues) {
  std::string out = "index,eigenvalue\n";
  char buf[64];
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,", i);
    out += buf;
    format_double(out, eigenvalues[i]);
    out += '\n';
  }
  return out;
}

}  // namespace cohtorus::cli
