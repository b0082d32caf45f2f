#include "abel/json_io.hpp"

#include "abel/error.hpp"

namespace abel {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("JSON object is missing '") + key + "'");
  return j.at(key);
}

double number(const Json& j) {
  if (!j.is_number()) throw DomainError("expected a JSON number, got " + j.dump());
  return j.get<double>();
}

std::vector<double> numbers(const Json& j) {
  if (!j.is_array()) throw DomainError("expected a JSON array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) out.push_back(number(v));
  return out;
}

}  // namespace

Json to_json(const Element& e) {
  Json j;
  j["kind"] = std::string(to_string(e.kind()));
  switch (e.kind()) {
    case Kind::scalar:
      j["data"] = Json::array({e[0]});
      break;
    case Kind::vector:
      j["data"] = std::vector<double>(e.data().begin(), e.data().end());
      break;
    case Kind::symmetric_matrix: {
      Json rows = Json::array();
      for (std::size_t i = 0; i < e.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < e.dim(); ++c) row.push_back(e.at(i, c));
        rows.push_back(std::move(row));
      }
      j["data"] = std::move(rows);
      break;
    }
  }
  return j;
}

Element element_from_json(const Json& j) {
  const Kind kind = parse_kind(field(j, "kind").get<std::string>());
  const Json& data = field(j, "data");
  switch (kind) {
    case Kind::scalar:
      if (data.is_number()) return Element::scalar(number(data));
      if (data.is_array() && data.size() == 1) return Element::scalar(number(data[0]));
      throw DomainError("scalar data must be a number or a one-element array");
    case Kind::vector:
      return Element::vector(numbers(data));
    case Kind::symmetric_matrix:
      return Element::matrix(matrix_from_json(data));
  }
  throw DomainError("unknown element kind");
}

Json to_json(const FiniteSequence& s) {
  Json j = Json::array();
  for (const Element& e : s) j.push_back(to_json(e));
  return j;
}

FiniteSequence sequence_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("a sequence is a JSON array of elements");
  std::vector<Element> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(element_from_json(e));
  return FiniteSequence(std::move(out));
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("a matrix is a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::vector<double> row = numbers(j[std::size_t(i)]);
    if (static_cast<Eigen::Index>(row.size()) != n) throw DomainError("matrix rows must have length N");
    for (Eigen::Index c = 0; c < n; ++c) m(i, c) = row[std::size_t(c)];
  }
  return m;
}

Json to_json(const PwlConvexFunction& f) {
  Json j;
  j["domain"] = Json::array({f.a(), f.b()});
  j["breakpoints"] = f.breakpoints();
  j["slopes"] = f.slopes();
  j["anchor_value"] = f.anchor_value();
  return j;
}

PwlConvexFunction pwl_from_json(const Json& j) {
  const std::vector<double> domain = numbers(field(j, "domain"));
  if (domain.size() != 2) throw DomainError("domain must be [a, b]");
  return PwlConvexFunction(domain[0], domain[1], numbers(field(j, "breakpoints")), numbers(field(j, "slopes")),
                           number(field(j, "anchor_value")));
}

Json to_json(const HlpDecomposition& d) {
  Json j;
  j["alpha"] = d.alpha;
  j["beta"] = d.beta;
  Json terms = Json::array();
  for (const auto& t : d.terms) terms.push_back({{"center", t.center}, {"coefficient", t.coefficient}});
  j["terms"] = std::move(terms);
  return j;
}

HlpDecomposition hlp_from_json(const Json& j) {
  HlpDecomposition d;
  d.alpha = number(field(j, "alpha"));
  d.beta = number(field(j, "beta"));
  for (const Json& t : field(j, "terms")) {
    d.terms.push_back({number(field(t, "center")), number(field(t, "coefficient"))});
  }
  return d;
}

Json to_json(const SequenceGenerator& g) {
  Json j;
  j["rule"] = g.rule();
  if (g.rule() == "tabulated") {
    j["values"] = g.table();
  } else {
    Json params = Json::object();
    for (const auto& [k, v] : g.params()) params[k] = v;
    j["params"] = std::move(params);
  }
  j["kind"] = std::string(to_string(g.shape().kind));
  if (g.shape().kind != Kind::scalar) j["dim"] = g.shape().dim;
  return j;
}

SequenceGenerator generator_from_json(const Json& j) {
  const std::string rule = field(j, "rule").get<std::string>();
  if (rule == "tabulated") return SequenceGenerator::tabulated(numbers(field(j, "values")));
  GeneratorParams params;
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) params[k] = number(v);
  }
  Shape shape = Shape::scalar();
  if (j.contains("kind")) {
    const Kind kind = parse_kind(j.at("kind").get<std::string>());
    if (kind != Kind::scalar) {
      const auto dim = field(j, "dim").get<std::size_t>();
      shape = kind == Kind::vector ? Shape::vector(dim) : Shape::matrix(dim);
    }
  }
  return SequenceGenerator::make(rule, std::move(params), shape);
}

ScalarFunction function_from_json(const Json& j) {
  const std::string name = field(j, "name").get<std::string>();
  if (name == "hlp") {
    Interval domain;
    if (j.contains("domain")) {
      const std::vector<double> d = numbers(j.at("domain"));
      if (d.size() != 2) throw DomainError("domain must be [a, b]");
      domain = {d[0], d[1]};
    }
    return hlp_function(hlp_from_json(field(j, "hlp")), domain);
  }
  FunctionParams params;
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) params[k] = number(v);
  }
  return make_function(name, params);
}

Json function_to_json(const std::string& name, const FunctionParams& params) {
  Json j;
  j["name"] = name;
  Json p = Json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = std::move(p);
  return j;
}

}  // namespace abel
