#include "qsim/cli_support.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace qsim {

namespace {

double parse_double_strict(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

}  // namespace

SweepSpec SweepSpec::parse(const std::string& text) {
  SweepSpec spec;
  const size_t c1 = text.find(':');
  if (c1 == std::string::npos) {
    spec.start = spec.stop = parse_double_strict(text);
    spec.count = 1;
    return spec;
  }
  const size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("sweep must be a number or start:stop:count");
  spec.start = parse_double_strict(text.substr(0, c1));
  spec.stop = parse_double_strict(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string count_text = text.substr(c2 + 1);
  char* end = nullptr;
  const long n = std::strtol(count_text.c_str(), &end, 10);
  if (count_text.empty() || end != count_text.c_str() + count_text.size() || n < 1)
    throw std::invalid_argument("sweep count must be a positive integer");
  spec.count = n;
  return spec;
}

std::vector<double> parse_double_list(const std::string& comma_separated) {
  std::vector<double> out;
  size_t begin = 0;
  while (begin <= comma_separated.size()) {
    size_t end = comma_separated.find(',', begin);
    if (end == std::string::npos) end = comma_separated.size();
    out.push_back(parse_double_strict(comma_separated.substr(begin, end - begin)));
    begin = end + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace qsim
