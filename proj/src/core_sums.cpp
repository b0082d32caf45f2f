#include "abel/core_sums.hpp"

#include <cmath>
#include <sstream>

#include "abel/error.hpp"
#include "abel/ordered.hpp"

namespace abel {

std::string_view to_string(AbelVariant v) {
  switch (v) {
    case AbelVariant::forward:
      return "forward";
    case AbelVariant::dual_forward:
      return "dual_forward";
    case AbelVariant::backward:
      return "backward";
    case AbelVariant::dual_backward:
      return "dual_backward";
  }
  return "unknown";
}

AbelVariant parse_abel_variant(std::string_view name) {
  for (AbelVariant v : kAllAbelVariants) {
    if (to_string(v) == name) return v;
  }
  throw DomainError("unknown Abel transform variant '" + std::string(name) + "'");
}

namespace {

Shape checked_output(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys) {
  if (xs.size() != ys.size()) {
    std::ostringstream msg;
    msg << "sequence lengths differ (" << xs.size() << " vs " << ys.size() << ")";
    throw DomainError(msg.str());
  }
  if (xs.empty()) throw DomainError("sequences must have at least one element");
  return phi.output_shape(xs.shape(), ys.shape());
}

// suffix[k] = sum_{j >= k} s_j, accumulated from the right.
std::vector<Element> suffix_sums(const FiniteSequence& s) {
  std::vector<Element> out(s.size(), Element::zero(s.shape()));
  Element running = Element::zero(s.shape());
  for (std::size_t k = s.size(); k-- > 0;) {
    running += s[k];
    out[k] = running;
  }
  return out;
}

TransformResult total(std::vector<Element> summands, const Shape& out_shape) {
  Element value = Element::zero(out_shape);
  for (const Element& s : summands) value += s;
  return {std::move(value), std::move(summands)};
}

}  // namespace

Element direct_sum(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys) {
  Element sum = Element::zero(checked_output(phi, xs, ys));
  for (std::size_t k = 0; k < xs.size(); ++k) sum += phi(xs[k], ys[k]);
  return sum;
}

TransformResult abel_transform(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys,
                               AbelVariant variant) {
  const Shape out_shape = checked_output(phi, xs, ys);
  const std::size_t n = xs.size();
  std::vector<Element> summands;
  summands.reserve(n);
  switch (variant) {
    case AbelVariant::forward: {
      const FiniteSequence py = ys.prefix_sums();
      for (std::size_t k = 0; k + 1 < n; ++k) summands.push_back(phi(xs[k] - xs[k + 1], py[k]));
      summands.push_back(phi(xs[n - 1], py[n - 1]));
      break;
    }
    case AbelVariant::dual_forward: {
      const FiniteSequence px = xs.prefix_sums();
      for (std::size_t k = 0; k + 1 < n; ++k) summands.push_back(phi(px[k], ys[k] - ys[k + 1]));
      summands.push_back(phi(px[n - 1], ys[n - 1]));
      break;
    }
    case AbelVariant::backward: {
      const std::vector<Element> sy = suffix_sums(ys);
      for (std::size_t k = 1; k < n; ++k) summands.push_back(phi(xs[k] - xs[k - 1], sy[k]));
      summands.push_back(phi(xs[0], sy[0]));
      break;
    }
    case AbelVariant::dual_backward: {
      const std::vector<Element> sx = suffix_sums(xs);
      for (std::size_t k = 1; k < n; ++k) summands.push_back(phi(sx[k], ys[k] - ys[k - 1]));
      summands.push_back(phi(sx[0], ys[0]));
      break;
    }
  }
  return total(std::move(summands), out_shape);
}

TransformResult abel_mixed(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys, std::size_t k) {
  const Shape out_shape = checked_output(phi, xs, ys);
  const std::size_t n = xs.size();
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "split index " << k << " is outside 1.." << n;
    throw DomainError(msg.str());
  }
  const FiniteSequence py = ys.prefix_sums();
  const std::vector<Element> sy = suffix_sums(ys);

  // 0-based positions: x_j is xs[j - 1].
  Element head = Element::zero(out_shape);
  for (std::size_t j = 1; j < k; ++j) head += phi(xs[j - 1] - xs[j], py[j - 1]);
  Element left = phi(xs[k - 1], py[k - 1]);
  Element right = Element::zero(out_shape);
  if (k < n) right = phi(xs[k], sy[k]);
  Element tail = Element::zero(out_shape);
  for (std::size_t j = k + 2; j <= n; ++j) tail += phi(xs[j - 1] - xs[j - 2], sy[j - 1]);

  std::vector<Element> groups;
  groups.reserve(4);
  groups.push_back(std::move(head));
  groups.push_back(std::move(left));
  groups.push_back(std::move(right));
  groups.push_back(std::move(tail));
  return total(std::move(groups), out_shape);
}

AbelBound abel_inequality_bound(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("abel_inequality_bound: sequence lengths differ");
  if (a.empty()) throw DomainError("abel_inequality_bound: sequences must be nonempty");
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    if (!(a[k] >= a[k + 1])) {
      std::ostringstream msg;
      msg << "a is not decreasing at index " << k + 1 << " (a_" << k + 1 << " = " << a[k] << " < a_" << k + 2
          << " = " << a[k + 1] << ")";
      throw PreconditionError(msg.str(), k + 1);
    }
  }
  if (!(a.back() >= 0.0)) {
    std::ostringstream msg;
    msg << "a_n must be >= 0 (index " << a.size() << ")";
    throw PreconditionError(msg.str(), a.size());
  }
  double sum = 0.0;
  double partial = 0.0;
  double max_partial = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum += a[k] * b[k];
    partial += b[k];
    max_partial = std::max(max_partial, std::abs(partial));
  }
  AbelBound out;
  out.lhs = std::abs(sum);
  out.bound = a[0] * max_partial;
  out.holds = out.lhs <= out.bound + 1e-12;
  return out;
}

SandwichResult bilinear_bound_check(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys,
                                    const Element& m, const Element& big_m) {
  checked_output(phi, xs, ys);
  if (m.shape() != xs.shape() || big_m.shape() != xs.shape()) {
    throw DomainError("bilinear_bound_check: bounds must have the shape of the x elements");
  }
  const double xtol = hypothesis_tol(xs.shape().kind);
  const FiniteSequence px = xs.prefix_sums();
  for (std::size_t k = 0; k < px.size(); ++k) {
    if (!less_equal(m, px[k], xtol)) {
      std::ostringstream msg;
      msg << "lower bound fails: m <= sum_{i<=" << k + 1 << "} x_i does not hold";
      throw PreconditionError(msg.str(), k + 1);
    }
    if (!less_equal(px[k], big_m, xtol)) {
      std::ostringstream msg;
      msg << "upper bound fails: sum_{i<=" << k + 1 << "} x_i <= M does not hold";
      throw PreconditionError(msg.str(), k + 1);
    }
  }
  const ChainVerdict yv = is_monotone_chain(ys, Direction::decreasing, true, hypothesis_tol(ys.shape().kind));
  if (!yv.ok()) throw PreconditionError("y hypothesis fails: " + yv.reason, yv.violation.value_or(0));

  SandwichResult out{phi(m, ys[0]), direct_sum(phi, xs, ys), phi(big_m, ys[0]), false, 0.0};
  out.worst_slack = std::min(order_floor(out.value - out.lower), order_floor(out.upper - out.value));
  out.holds = out.worst_slack >= -1e-10;
  return out;
}

}  // namespace abel
