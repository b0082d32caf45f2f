#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abel {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  static Interval nonnegative() { return {0.0, std::numeric_limits<double>::infinity()}; }
  static Interval empty() { return {1.0, 0.0}; }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool is_empty() const { return lo > hi; }
};

using FunctionParams = std::map<std::string, double>;

/// A real function of one variable together with the shape facts the
/// inequality checks rely on. Registry functions carry analytically known
/// facts; `custom` ones are flagged unverified.
class ScalarFunction {
 public:
  struct Traits {
    Interval domain = Interval::real_line();
    bool convex = false;
    /// Interval on which the function is nondecreasing (empty if nowhere).
    Interval nondecreasing_on = Interval::empty();
    /// Strictly increasing on the whole domain.
    bool increasing = false;
    bool affine = false;
    bool verified = true;
  };

  ScalarFunction(std::string name, FunctionParams params, std::function<double(double)> value,
                 std::function<double(double)> derivative, Traits traits);

  /// Arbitrary user closure; convexity and monotonicity claims are taken on
  /// trust and the handle reports `verified() == false`.
  static ScalarFunction custom(std::string name, std::function<double(double)> value, Traits traits,
                               std::function<double(double)> derivative = {});

  double operator()(double x) const { return value_(x); }

  const std::string& name() const { return name_; }
  const FunctionParams& params() const { return params_; }
  const Traits& traits() const { return traits_; }
  const Interval& domain() const { return traits_.domain; }
  bool convex() const { return traits_.convex; }
  bool verified() const { return traits_.verified; }

  bool has_derivative() const { return static_cast<bool>(derivative_); }
  /// The derivative as its own handle (increasing when this one is convex).
  /// Throws DomainError for non-differentiable handles.
  ScalarFunction derivative() const;

 private:
  std::string name_;
  FunctionParams params_;
  std::function<double(double)> value_;
  std::function<double(double)> derivative_;
  Traits traits_;
};

/// Registry handles by name:
///   identity, square, cube, exp, abs, sqrt, arctan_plus_x,
///   hinge{c}      max(0, x - c),
///   affine{a, b}  a*x + b.
/// Unknown names or missing parameters throw DomainError.
ScalarFunction make_function(std::string_view name, const FunctionParams& params = {});

std::vector<std::string> registry_names();

}  // namespace abel
