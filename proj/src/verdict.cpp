#include "bickley/verdict.hpp"

#include <algorithm>
#include <utility>

namespace bickley {

InequalityVerdict make_verdict(std::string name,
                               std::map<std::string, double> params,
                               Uncertain lhs, Uncertain rhs, double tolerance,
                               bool asserted) {
  InequalityVerdict v;
  v.name = std::move(name);
  v.params = std::move(params);
  v.lhs = lhs.value;
  v.rhs = rhs.value;
  const double scale = std::max({std::abs(lhs.value), std::abs(rhs.value), 1e-300});
  v.margin = (rhs.value - lhs.value) / scale;
  v.err_budget = (lhs.err + rhs.err) / scale;
  v.tolerance = tolerance;
  v.holds = v.margin >= -(tolerance + v.err_budget);
  v.asserted = asserted;
  return v;
}

}  // namespace bickley
