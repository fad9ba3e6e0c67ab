#pragma once

#include <string>
#include <vector>

namespace qsim {

// Inclusive linear grid "start:stop:count"; a bare number is a 1-point grid.
// Points are reproducible to full precision from the index formula.
struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  long count = 1;

  static SweepSpec parse(const std::string& text);

  double at(long i) const {
    if (count == 1) return start;
    return start + static_cast<double>(i) * (stop - start) / static_cast<double>(count - 1);
  }

  std::vector<double> grid() const {
    std::vector<double> g;
    g.reserve(count);
    for (long i = 0; i < count; ++i) g.push_back(at(i));
    return g;
  }
};

std::vector<double> parse_double_list(const std::string& comma_separated);

// Shortest decimal form that reparses to the same double.
std::string format_double(double v);

}  // namespace qsim
