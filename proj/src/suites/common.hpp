#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "abel/bilinear.hpp"
#include "abel/element.hpp"
#include "abel/instances.hpp"
#include "abel/json_io.hpp"
#include "abel/random.hpp"
#include "abel/suites.hpp"

namespace abel::suites {

void add_identity_properties(std::vector<Property>& out);
void add_bound_properties(std::vector<Property>& out);
void add_series_properties(std::vector<Property>& out);
void add_inequality_properties(std::vector<Property>& out);
void add_trace_properties(std::vector<Property>& out);

inline std::size_t draw_size(Rng& rng, std::size_t lo, std::size_t hi) {
  if (hi < lo) hi = lo;
  return static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

/// Random input shapes accepted by `phi`, within the caps.
struct ShapePair {
  Shape x;
  Shape y;
};
ShapePair draw_shapes(Rng& rng, BilinearVariant v, const SizeCaps& caps);

/// A random map variant; `same_kind` restricts to maps E x E -> G.
BilinearVariant draw_variant(Rng& rng, bool same_kind = false);

inline Outcome make_outcome(bool pass, double slack, std::string detail = {}) {
  Outcome o;
  o.pass = pass;
  o.slack = slack;
  o.detail = std::move(detail);
  return o;
}

/// Outcome for "value <= tol", with the residual recorded.
inline Outcome residual_outcome(double residual, double tol, std::string detail = {}) {
  Outcome o = make_outcome(residual <= tol, tol - residual, std::move(detail));
  o.residual = residual;
  return o;
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace abel::suites
