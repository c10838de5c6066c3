#include "quadsuite/state_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "quadsuite/errors.hpp"

namespace quadsuite {

namespace {

std::vector<double> parse_numbers(std::string_view text, std::size_t expected, std::string_view what) {
  std::vector<double> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ValidationError("state spec: bad number '" + token + "' in " + std::string(what));
    }
  }
  if (out.size() != expected) {
    throw ValidationError("state spec: " + std::string(what) + " expects " +
                          std::to_string(expected) + " numbers");
  }
  return out;
}

}  // namespace

TruncatedState read_state(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("state file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("matrix")) {
    throw ValidationError("state file: expected fields 'dim' and 'matrix'");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1) {
    throw ValidationError("state file: 'dim' must be a positive integer");
  }
  const int dim = doc["dim"].get<int>();
  const auto& entries = doc["matrix"];
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim) * dim) {
    throw ValidationError("state file: 'matrix' must hold dim*dim [re, im] pairs");
  }
  CMatrix m(dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int k = 0; k < dim; ++k) {
      const auto& e = entries[static_cast<std::size_t>(n * dim + k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ValidationError("state file: matrix entries must be [re, im] pairs");
      }
      m(n, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return TruncatedState::from_matrix(std::move(m));
}

TruncatedState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("state file: cannot open '" + path + "'");
  return read_state(in);
}

void write_state(std::ostream& out, const TruncatedState& state) {
  nlohmann::json entries = nlohmann::json::array();
  for (int n = 0; n < state.dim(); ++n) {
    for (int m = 0; m < state.dim(); ++m) {
      entries.push_back({state(n, m).real(), state(n, m).imag()});
    }
  }
  out << nlohmann::json{{"dim", state.dim()}, {"matrix", entries}}.dump() << '\n';
}

TruncatedState parse_state_spec(std::string_view spec, int dim) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (kind == "vacuum" && colon == std::string_view::npos) return make_state(NumberSpec{0}, dim);
  if (kind == "number") {
    const double n = parse_numbers(arg, 1, "number:<n>")[0];
    if (n != std::floor(n) || n < 0) throw ValidationError("state spec: number index must be a non-negative integer");
    return make_state(NumberSpec{static_cast<int>(n)}, dim);
  }
  if (kind == "coherent") {
    const auto v = parse_numbers(arg, 2, "coherent:<re>,<im>");
    return make_state(CoherentSpec{{v[0], v[1]}}, dim);
  }
  if (kind == "squeezed") {
    const auto v = parse_numbers(arg, 2, "squeezed:<r>,<phi>");
    return make_state(SqueezedSpec{v[0], v[1]}, dim);
  }
  if (kind == "file") return read_state_file(std::string(arg));
  throw ValidationError("state spec: unknown form '" + std::string(spec) +
                        "' (vacuum | number:n | coherent:re,im | squeezed:r,phi | file:path)");
}

}  // namespace quadsuite
