#include "hoax/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json_out.hpp"

namespace hoax {

std::string format_double(double value) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  for (int precision = 1; precision <= 12; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

namespace detail {

namespace {

// Fixed-point ratios travel through the tree as a tagged single-key object.
constexpr const char* kRatioTag = "\x01ratio6";

void dump(const ordered_json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.size() == 1 && v.contains(kRatioTag)) {
        out += format_fixed(v[kRatioTag].get<double>(), 6);
        return;
      }
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, child] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += ordered_json(key).dump();
        out += ": ";
        dump(child, indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const auto& e) {
        return e.is_primitive() ||
               (e.is_array() && std::all_of(e.begin(), e.end(), [](const auto& x) {
                  return x.is_primitive();
                }));
      });
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (k) out += ", ";
          dump(v[k], indent + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ",\n";
        out += inner;
        dump(v[k], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump_json(const ordered_json& value) {
  std::string out;
  dump(value, 0, out);
  out += "\n";
  return out;
}

ordered_json ratio6(double value) {
  ordered_json tagged = ordered_json::object();
  tagged[kRatioTag] = value;
  return tagged;
}

}  // namespace detail
}  // namespace hoax
