#include "normgeo/space_io.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "normgeo/errors.hpp"

namespace normgeo {

namespace {

// Parses a double starting at `pos`; advances pos past it.
double take_double(const std::string& s, std::size_t& pos, const char* what) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) throw ParseError(pos, std::string("expected ") + what);
  pos += static_cast<std::size_t>(end - begin);
  return v;
}

long take_int(const std::string& s, std::size_t& pos, const char* what) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin) throw ParseError(pos, std::string("expected ") + what);
  pos += static_cast<std::size_t>(end - begin);
  return v;
}

void expect(const std::string& s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c) {
    throw ParseError(pos, std::string("expected '") + c + "'");
  }
  ++pos;
}

double take_exponent(const std::string& s, std::size_t& pos) {
  if (s.compare(pos, 3, "inf") == 0) {
    pos += 3;
    return kInf;
  }
  const std::size_t at = pos;
  const double q = take_double(s, pos, "norm exponent");
  if (!(q >= 1.0)) throw ParseError(at, "exponent must be >= 1");
  return q;
}

int take_dim(const std::string& s, std::size_t& pos) {
  const std::size_t at = pos;
  const long d = take_int(s, pos, "dimension");
  if (d < 2) throw ParseError(at, "dimension must be >= 2");
  return static_cast<int>(d);
}

}  // namespace

NormedSpace parse_space(const std::string& text) {
  std::size_t pos = 0;
  if (text.compare(0, 6, "poly:@") == 0) {
    const std::string path = text.substr(6);
    if (path.empty()) throw ParseError(6, "expected a file path after 'poly:@'");
    return load_polyhedral_json(path);
  }
  if (text.compare(0, 2, "wl") == 0) {
    pos = 2;
    const double q = take_exponent(text, pos);
    expect(text, pos, ':');
    const int dim = take_dim(text, pos);
    expect(text, pos, ':');
    std::vector<double> weights;
    while (true) {
      const std::size_t at = pos;
      const double w = take_double(text, pos, "weight");
      if (!(w > 0.0)) throw ParseError(at, "weights must be strictly positive");
      weights.push_back(w);
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    if (pos != text.size()) throw ParseError(pos, "unexpected trailing characters");
    if (static_cast<int>(weights.size()) != dim) {
      throw ParseError(pos, "expected " + std::to_string(dim) + " weights, got " +
                                std::to_string(weights.size()));
    }
    return NormedSpace::weighted_lp(q, std::move(weights));
  }
  if (!text.empty() && text[0] == 'l') {
    pos = 1;
    const double q = take_exponent(text, pos);
    expect(text, pos, ':');
    const int dim = take_dim(text, pos);
    if (pos != text.size()) throw ParseError(pos, "unexpected trailing characters");
    return NormedSpace::lp(q, dim);
  }
  throw ParseError(0, "expected 'l<q>:<dim>', 'wl<q>:<dim>:<weights>' or 'poly:@<path>'");
}

NormedSpace load_polyhedral_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open polyhedral file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid vertex JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("type", "") != "polyhedral") {
    throw ParseError(0, "expected an object with \"type\": \"polyhedral\"");
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ParseError(0, "expected an integer \"dim\"");
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw ParseError(0, "expected a \"vertices\" array");
  }
  const int dim = j["dim"].get<int>();
  std::vector<Vector> vertices;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError(0, "each vertex must be an array of length dim");
    }
    vertices.push_back(row.get<Vector>());
  }
  return NormedSpace::polyhedral(std::move(vertices));  // InvalidSpace on bad sets
}

}  // namespace normgeo
