#pragma once

#include <json.hpp>

#include "abel/element.hpp"
#include "abel/functions.hpp"
#include "abel/majorize.hpp"
#include "abel/seriesdiag.hpp"

namespace abel {

using Json = nlohmann::ordered_json;

/// {"kind": "vector", "data": [...]}; matrices use row-major nested arrays and
/// scalars a one-element array (a bare number is accepted on input).
Json to_json(const Element& e);
Element element_from_json(const Json& j);

Json to_json(const FiniteSequence& s);
FiniteSequence sequence_from_json(const Json& j);

/// Row-major nested arrays.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const PwlConvexFunction& f);
PwlConvexFunction pwl_from_json(const Json& j);

Json to_json(const HlpDecomposition& d);
HlpDecomposition hlp_from_json(const Json& j);

/// {"rule": ..., "params": {...}, "kind": ..., "dim": N}; tabulated rules
/// carry "values" instead of params.
Json to_json(const SequenceGenerator& g);
SequenceGenerator generator_from_json(const Json& j);

/// {"name": ..., "params": {...}} for registry handles, or
/// {"name": "hlp", "hlp": {...}} for piecewise-linear ones.
ScalarFunction function_from_json(const Json& j);
Json function_to_json(const std::string& name, const FunctionParams& params);

}  // namespace abel
