#include "parse.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "pbergman/errors.hpp"

namespace pbergman::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double number(const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ParameterError("not a number: '" + s + "'");
  return v;
}

int integer(const std::string& s) {
  const double v = number(s);
  if (v != std::floor(v) || v < 0 || v > 1000) throw ParameterError("not a nonnegative integer: '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {number(parts[0]), 0.0};
  if (parts.size() == 2) return {number(parts[0]), number(parts[1])};
  throw ParameterError("complex numbers are written re,im: '" + text + "'");
}

Eigen::VectorXcd parse_point(const std::string& text, int dimension) {
  Eigen::VectorXcd z(dimension);
  if (text.find(';') != std::string::npos || dimension == 1) {
    const auto coords = split(text, ';');
    if (static_cast<int>(coords.size()) != dimension)
      throw ParameterError("point '" + text + "' needs " + std::to_string(dimension) + " coordinates");
    for (int j = 0; j < dimension; ++j) z[j] = parse_complex(coords[j]);
    return z;
  }
  const auto flat = split(text, ',');
  if (static_cast<int>(flat.size()) != 2 * dimension)
    throw ParameterError("point '" + text + "' needs " + std::to_string(2 * dimension) + " numbers");
  for (int j = 0; j < dimension; ++j) z[j] = {number(flat[2 * j]), number(flat[2 * j + 1])};
  return z;
}

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw ParameterError("range must be start:stop:kind:count, got '" + text + "'");
  const double start = number(parts[0]), stop = number(parts[1]);
  const int count = integer(parts[3]);
  if (count < 1) throw ParameterError("range count must be positive");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  if (parts[2] == "linear") {
    for (int i = 0; i < count; ++i) out[i] = start + (stop - start) * i / (count - 1);
  } else if (parts[2] == "geometric") {
    if (!(start > 0 && stop > 0)) throw ParameterError("geometric range needs positive ends");
    for (int i = 0; i < count; ++i) {
      // snap to 12 significant digits so 2:16:geometric:4 gives 8, not 7.999999999999999
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", start * std::pow(stop / start, static_cast<double>(i) / (count - 1)));
      out[i] = std::strtod(buf, nullptr);
    }
  } else {
    throw ParameterError("range kind must be linear or geometric, got '" + parts[2] + "'");
  }
  out.back() = stop;  // exact end point
  return out;
}

SampleSource parse_input(const std::string& text, int dimension) {
  std::string t = trim(text);
  auto power_suffix = [&](const std::string& head) -> std::optional<int> {
    if (t == head) return 1;
    if (t.rfind(head + "^", 0) == 0) return integer(t.substr(head.size() + 1));
    return std::nullopt;
  };
  for (const char* head : {"conjz", "conj(z)"})
    if (auto k = power_suffix(head))
      return {t, [k = *k](const Eigen::VectorXcd& z) { return std::pow(std::conj(z[0]), k); }};
  for (const char* head : {"|z|", "absz"})
    if (auto k = power_suffix(head))
      return {t, [k = *k](const Eigen::VectorXcd& z) { return Complex(std::pow(z.norm(), k)); }};

  std::ifstream in(t);
  if (!in) throw ParameterError("unknown input '" + t + "' (not a built-in and not a readable file)");
  struct Term {
    std::vector<int> a, b;
    Complex c;
  };
  std::vector<Term> terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> fields;
    for (std::string f; ls >> f;) fields.push_back(f);
    if (fields.empty()) continue;
    if (static_cast<int>(fields.size()) != 2 * dimension + 2)
      throw ParameterError(t + ":" + std::to_string(lineno) + ": expected " + std::to_string(2 * dimension + 2) +
                           " fields");
    Term term;
    for (int j = 0; j < dimension; ++j) term.a.push_back(integer(fields[j]));
    for (int j = 0; j < dimension; ++j) term.b.push_back(integer(fields[dimension + j]));
    term.c = {number(fields[2 * dimension]), number(fields[2 * dimension + 1])};
    terms.push_back(std::move(term));
  }
  if (terms.empty()) throw ParameterError(t + ": no coefficients");
  return {t, [terms = std::move(terms)](const Eigen::VectorXcd& z) {
            Complex sum = 0.0;
            for (const auto& term : terms) {
              Complex v = term.c;
              for (Eigen::Index j = 0; j < z.size(); ++j)
                v *= std::pow(z[j], term.a[j]) * std::pow(std::conj(z[j]), term.b[j]);
              sum += v;
            }
            return sum;
          }};
}

}  // namespace pbergman::cli
