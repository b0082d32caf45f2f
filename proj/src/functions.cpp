#include "abel/functions.hpp"

#include <cmath>

#include "abel/error.hpp"

namespace abel {

ScalarFunction::ScalarFunction(std::string name, FunctionParams params, std::function<double(double)> value,
                               std::function<double(double)> derivative, Traits traits)
    : name_(std::move(name)),
      params_(std::move(params)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      traits_(traits) {}

ScalarFunction ScalarFunction::custom(std::string name, std::function<double(double)> value, Traits traits,
                                      std::function<double(double)> derivative) {
  traits.verified = false;
  return ScalarFunction(std::move(name), {}, std::move(value), std::move(derivative), traits);
}

ScalarFunction ScalarFunction::derivative() const {
  if (!derivative_) throw DomainError("function '" + name_ + "' has no continuous derivative");
  Traits t;
  t.domain = traits_.domain;
  // f convex and C^1 => f' nondecreasing and continuous.
  if (traits_.convex) t.nondecreasing_on = traits_.domain;
  t.verified = traits_.verified;
  return ScalarFunction(name_ + "'", params_, derivative_, {}, t);
}

namespace {

double require(const FunctionParams& params, const std::string& key, std::string_view fn) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw DomainError("function '" + std::string(fn) + "' requires parameter '" + key + "'");
  }
  return it->second;
}

}  // namespace

ScalarFunction make_function(std::string_view name, const FunctionParams& params) {
  using T = ScalarFunction::Traits;
  const std::string n(name);
  if (name == "identity") {
    T t{.convex = true, .nondecreasing_on = Interval::real_line(), .increasing = true, .affine = true};
    return ScalarFunction(n, {}, [](double x) { return x; }, [](double) { return 1.0; }, t);
  }
  if (name == "square") {
    T t{.convex = true, .nondecreasing_on = Interval::nonnegative()};
    return ScalarFunction(n, {}, [](double x) { return x * x; }, [](double x) { return 2.0 * x; }, t);
  }
  if (name == "cube") {
    T t{.nondecreasing_on = Interval::real_line(), .increasing = true};
    return ScalarFunction(n, {}, [](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; }, t);
  }
  if (name == "exp") {
    T t{.convex = true, .nondecreasing_on = Interval::real_line(), .increasing = true};
    return ScalarFunction(n, {}, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }, t);
  }
  if (name == "abs") {
    T t{.convex = true, .nondecreasing_on = Interval::nonnegative()};
    return ScalarFunction(n, {}, [](double x) { return std::abs(x); }, {}, t);
  }
  if (name == "sqrt") {
    T t{.domain = Interval::nonnegative(), .nondecreasing_on = Interval::nonnegative(), .increasing = true};
    return ScalarFunction(n, {}, [](double x) { return std::sqrt(x); }, {}, t);
  }
  if (name == "arctan_plus_x") {
    T t{.nondecreasing_on = Interval::real_line(), .increasing = true};
    return ScalarFunction(
        n, {}, [](double x) { return std::atan(x) + x; }, [](double x) { return 1.0 / (1.0 + x * x) + 1.0; }, t);
  }
  if (name == "hinge") {
    const double c = require(params, "c", name);
    T t{.convex = true, .nondecreasing_on = Interval::real_line()};
    return ScalarFunction(n, {{"c", c}}, [c](double x) { return std::max(0.0, x - c); }, {}, t);
  }
  if (name == "affine") {
    const double a = require(params, "a", name);
    const double b = require(params, "b", name);
    T t{.convex = true, .affine = true};
    if (a >= 0.0) t.nondecreasing_on = Interval::real_line();
    t.increasing = a > 0.0;
    return ScalarFunction(
        n, {{"a", a}, {"b", b}}, [a, b](double x) { return a * x + b; }, [a](double) { return a; }, t);
  }
  throw DomainError("unknown function '" + n + "'");
}

std::vector<std::string> registry_names() {
  return {"identity", "square", "cube", "exp", "abs", "sqrt", "arctan_plus_x", "hinge", "affine"};
}

}  // namespace abel
