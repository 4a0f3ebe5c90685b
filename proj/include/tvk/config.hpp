#pragma once

#include <map>
#include <string>
#include <vector>

#include "tvk/solver.hpp"

namespace tvk {

/// Monotone cubic (Fritsch-Carlson) interpolant for tabulated coefficients.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;

 private:
  std::vector<double> x_, y_, m_;  // nodes, values, node slopes
};

/// Parses the flat key=value config with sections
/// [grid] [coefficients] [initial] [run] [checks]; unknown keys are errors.
/// `overrides` entries look like "section.key=value" and win over the file.
SimConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides = {});

/// Same, from config text already in memory.
SimConfig parse_config_text(const std::string& text,
                            const std::vector<std::string>& overrides = {});

namespace scenarios {
/// Saturating viscosity, decaying sinusoidal stiffness, square-root coupling.
SimConfig standard();
/// Same with the stiffness frozen in time.
SimConfig standard_static_a();
/// No thermal coupling, unit coefficients.
SimConfig decoupled();
/// Superlinear-growth coupling probe (outside the admissible exponent range).
SimConfig alpha09();
}  // namespace scenarios

}  // namespace tvk
