#include "caracomm/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace caracomm {

namespace {

using nlohmann::json;

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON document");
  return j;
}

void append_points(std::ostringstream& out, const PointSet& ps) {
  out << "\"dimension\": " << ps.dimension << ", \"points\": [";
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    if (i) out << ", ";
    out << "[";
    for (std::size_t j = 0; j < ps.points[i].size(); ++j) {
      if (j) out << ", ";
      out << fmt_real(ps.points[i][j]);
    }
    out << "]";
  }
  out << "]";
}

PointSet points_from(const json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("points"))
    throw ParseError("expected {dimension, points}");
  PointSet ps;
  try {
    ps.dimension = j.at("dimension").get<std::size_t>();
    ps.points = j.at("points").get<std::vector<Point>>();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  ps.validate();
  return ps;
}

}  // namespace

std::string point_set_to_json(const PointSet& ps) {
  std::ostringstream out;
  out << "{";
  append_points(out, ps);
  out << "}\n";
  return out.str();
}

std::string combination_to_json(const ConvexCombination& c) {
  c.validate();
  std::ostringstream out;
  out << "{";
  append_points(out, *c.set);
  out << ", \"weights\": [";
  for (std::size_t i = 0; i < c.support.size(); ++i) {
    if (i) out << ", ";
    out << "{\"index\": " << c.support[i].index
        << ", \"weight\": " << fmt_real(c.support[i].weight) << "}";
  }
  out << "]}\n";
  return out.str();
}

PointSet point_set_from_json(const std::string& text) {
  return points_from(parse(text));
}

ConvexCombination combination_from_json(const std::string& text) {
  const json j = parse(text);
  ConvexCombination c;
  c.set = std::make_shared<PointSet>(points_from(j));
  if (!j.contains("weights")) throw ParseError("document has no weights");
  try {
    for (const auto& e : j.at("weights")) {
      const double w = e.at("weight").get<double>();
      if (w == 0.0) continue;  // zero entries are not part of the support
      c.support.push_back({e.at("index").get<std::size_t>(), w});
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  std::sort(c.support.begin(), c.support.end(),
            [](const WeightedIndex& a, const WeightedIndex& b) {
              return a.index < b.index;
            });
  c.validate();
  return c;
}

std::string truth_table_to_json(const TruthTable& t) {
  check_table_guard(t.n);
  static const char* hex = "0123456789abcdef";
  const std::size_t nbytes = (t.size() + 7) / 8;
  std::string bits;
  bits.reserve(2 * nbytes);
  for (std::size_t b = 0; b < nbytes; ++b) {
    const unsigned byte = (t.words[b >> 3] >> ((b & 7) * 8)) & 0xffu;
    bits.push_back(hex[byte >> 4]);
    bits.push_back(hex[byte & 0xf]);
  }
  std::ostringstream out;
  out << "{\"n\": " << t.n << ", \"bits_hex\": \"" << bits << "\"}\n";
  return out.str();
}

TruthTable truth_table_from_json(const std::string& text) {
  const json j = parse(text);
  int n = 0;
  std::string hex;
  try {
    n = j.at("n").get<int>();
    hex = j.at("bits_hex").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  check_table_guard(n);
  TruthTable t = TruthTable::zeros(n);
  if (hex.size() != 2 * ((t.size() + 7) / 8))
    throw ParseError("bits_hex has the wrong length");
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ParseError("bits_hex has a non-hex character");
  };
  for (std::size_t b = 0; b * 2 < hex.size(); ++b) {
    const std::uint64_t byte = (nibble(hex[2 * b]) << 4) | nibble(hex[2 * b + 1]);
    t.words[b >> 3] |= byte << ((b & 7) * 8);
  }
  return t;
}

std::string probability_table_to_json(const ProbabilityTable& t) {
  t.validate();
  std::ostringstream out;
  out << "{\"n\": " << t.n << ", \"values\": [";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (i) out << ", ";
    out << fmt_real(t.values[i]);
  }
  out << "]}\n";
  return out.str();
}

ProbabilityTable probability_table_from_json(const std::string& text) {
  const json j = parse(text);
  ProbabilityTable t;
  try {
    t.n = j.at("n").get<int>();
    t.values = j.at("values").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  t.validate();
  return t;
}

std::string report_to_json(const CompilationReport& r) {
  std::ostringstream out;
  out << "{\"epsilon_measured\": " << fmt_real(r.epsilon_measured)
      << ", \"delta_target\": " << fmt_real(r.delta_target)
      << ", \"error_measured\": " << fmt_real(r.error_measured)
      << ", \"k\": " << r.k
      << ", \"index_bits\": " << r.index_bits
      << ", \"public_cost\": " << r.public_cost
      << ", \"private_cost\": " << r.private_cost
      << ", \"reduction_used\": " << (r.reduction_used ? "true" : "false")
      << ", \"seed\": " << r.seed
      << ", \"guarantee_holds\": " << (r.guarantee_holds() ? "true" : "false")
      << "}\n";
  return out.str();
}

}  // namespace caracomm
