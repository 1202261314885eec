#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa::optim {

using Objective = std::function<double(std::span<const double>)>;

enum class Method { nelder_mead, gradient };

inline constexpr std::string_view to_string(Method m) {
  return m == Method::nelder_mead ? "nelder_mead" : "gradient";
}

inline Method parse_method(std::string_view name) {
  if (name == "nelder_mead") return Method::nelder_mead;
  if (name == "gradient") return Method::gradient;
  throw std::invalid_argument("unknown optimizer method '" + std::string(name) + "'");
}

struct Config {
  /// Unset: gradient for exact evaluators, Nelder-Mead otherwise.
  std::optional<Method> method;

  // Nelder-Mead
  double initial_simplex_size = 0.5;
  int iterations_per_parameter = 10; ///< iteration cap = this * dimension
  double xatol = 1e-8;
  double fatol = 1e-8;

  // quasi-Newton
  double gradient_step = 1e-6; ///< relative central-difference step
  double gradient_tolerance = 1e-8;
  double step_tolerance = 1e-10;
  int gradient_max_iterations = 200;
};

inline void validate(const Config &c) {
  if (!(c.initial_simplex_size > 0.0) || c.iterations_per_parameter < 1 || !(c.xatol > 0.0) || !(c.fatol > 0.0) ||
      !(c.gradient_step > 0.0) || !(c.gradient_tolerance > 0.0) || !(c.step_tolerance > 0.0) ||
      c.gradient_max_iterations < 1)
    throw std::invalid_argument("optimizer config: sizes and tolerances must be positive");
}

struct Result {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

namespace detail {
inline double checked_call(const Objective &f, std::span<const double> x, std::size_t &count) {
  const double v = f(x);
  ++count;
  if (v != v) throw std::domain_error("optimizer: objective returned NaN");
  return v;
}
} // namespace detail

} // namespace qaoa::optim
