#include "gardinglab/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "gardinglab/errors.hpp"

namespace gardinglab {

namespace {

bool is_separator(char c) {
  return c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == ';' ||
         std::isspace(static_cast<unsigned char>(c));
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::string current;
  for (char c : line) {
    if (is_separator(c)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

double parse_double(const std::string& token, std::size_t line) {
  std::string_view view = token;
  // from_chars rejects a leading '+'; accept it as a courtesy.
  if (view.size() > 1 && view.front() == '+') view.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
  if (ec != std::errc() || ptr != view.data() + view.size()) {
    throw ParseError("not a number: '" + token + "'", line);
  }
  if (!std::isfinite(value)) throw ParseError("non-finite value: '" + token + "'", line);
  return value;
}

std::size_t parse_index(const std::string& token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
    throw ParseError("index must be a positive integer: '" + token + "'", line);
  }
  return value;
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'", 0);
  return in;
}

}  // namespace

RealVector read_real_vector(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    for (const auto& token : tokens_of(strip_comment(line))) {
      values.push_back(parse_double(token, number));
    }
  }
  if (values.empty()) throw ParseError("no numbers found", 0);
  return RealVector(std::move(values));
}

RealVector parse_real_vector(const std::string& text) {
  std::istringstream in(text);
  return read_real_vector(in);
}

RealVector read_real_vector_file(const std::string& path) {
  auto in = open_file(path);
  return read_real_vector(in);
}

std::string format_shortest(double x) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  if (ec != std::errc()) throw NumericError("cannot format value");
  return std::string(buffer, ptr);
}

std::string format_csv(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += format_shortest(values[i]);
  }
  return out;
}

CurvatureTensor read_tensor_components(std::istream& in) {
  std::vector<TensorComponent> comps;
  std::optional<std::size_t> declared;
  std::size_t largest = 0;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto tokens = tokens_of(strip_comment(line));
    if (tokens.empty()) continue;
    if (tokens.front() == "dimension") {
      if (tokens.size() != 2) throw ParseError("expected 'dimension N'", number);
      if (declared) throw ParseError("dimension declared twice", number);
      declared = parse_index(tokens[1], number);
      continue;
    }
    if (tokens.size() != 5) throw ParseError("expected 'i j k l value'", number);
    std::size_t idx[4];
    for (int t = 0; t < 4; ++t) {
      idx[t] = parse_index(tokens[t], number);
      largest = std::max(largest, idx[t]);
    }
    comps.push_back({idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1, parse_double(tokens[4], number)});
  }
  const std::size_t n = declared.value_or(largest);
  if (n < 2) throw ParseError("tensor dimension must be at least 2", 0);
  if (largest > n) throw ParseError("index exceeds declared dimension", 0);
  return CurvatureTensor::from_components(n, comps);
}

CurvatureTensor read_tensor_components_file(const std::string& path) {
  auto in = open_file(path);
  return read_tensor_components(in);
}

}  // namespace gardinglab
