#include "epr/state_spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace epr {
namespace {

using nlohmann::json;

double number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw SpecError(std::string("missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

int integer_at(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw SpecError(std::string("missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

Eigen::VectorXd vector_at(const json& j, const char* key, Eigen::Index size) {
  if (!j.contains(key) || !j[key].is_array() ||
      static_cast<Eigen::Index>(j[key].size()) != size) {
    std::ostringstream msg;
    msg << "field '" << key << "' must be an array of " << size << " numbers";
    throw SpecError(msg.str());
  }
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!j[key][i].is_number())
      throw SpecError(std::string("non-numeric entry in '") + key + "'");
    v[i] = j[key][i].get<double>();
  }
  return v;
}

Eigen::MatrixXcd entries_at(const json& j, Eigen::Index dim) {
  if (!j.contains("entries") || !j["entries"].is_array() ||
      static_cast<Eigen::Index>(j["entries"].size()) != dim * dim) {
    std::ostringstream msg;
    msg << "field 'entries' must hold " << dim * dim << " [re, im] pairs";
    throw SpecError(msg.str());
  }
  Eigen::MatrixXcd m(dim, dim);
  Eigen::Index k = 0;
  for (const auto& pair : j["entries"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      throw SpecError("entries must be [re, im] pairs");
    m(k / dim, k % dim) = std::complex<double>(pair[0].get<double>(),
                                               pair[1].get<double>());
    ++k;
  }
  return m;
}

SingleModeState parse_single(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string())
    throw SpecError("single-mode state needs a 'kind' string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "fock") {
    SingleModeFock f;
    f.dim = integer_at(j, "dim");
    if (f.dim < 1) throw SpecError("'dim' must be positive");
    f.entries = entries_at(j, f.dim);
    validate(f);
    return f;
  }
  if (kind == "gaussian") {
    SingleModeGaussian g;
    g.mean = vector_at(j, "mean", 2);
    const Eigen::VectorXd c = vector_at(j, "cov", 4);
    g.cov << c[0], c[1], c[2], c[3];
    validate(g);
    return g;
  }
  throw SpecError("unknown single-mode kind '" + kind + "'");
}

ParsedState parse_document(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw SpecError("state spec must be an object with a 'kind' string");
  ParsedState parsed;
  parsed.kind = doc["kind"].get<std::string>();
  if (parsed.kind == "tmsv") {
    const double r = number_at(doc, "r");
    const int cutoff = integer_at(doc, "cutoff");
    parsed.state = make_two_mode_squeezed_vacuum(r, cutoff);
    parsed.tmsv_r = r;
    return parsed;
  }
  if (parsed.kind == "gaussian") {
    GaussianState g;
    g.mean = vector_at(doc, "mean", 4);
    const Eigen::VectorXd c = vector_at(doc, "cov", 16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g.cov(i, j) = c[4 * i + j];
    validate(g);
    parsed.state = g;
    return parsed;
  }
  if (parsed.kind == "fock") {
    FockDensityMatrix f;
    f.dim_a = integer_at(doc, "dim_a");
    f.dim_b = integer_at(doc, "dim_b");
    if (f.dim_a < 1 || f.dim_b < 1)
      throw SpecError("'dim_a' and 'dim_b' must be positive");
    f.entries = entries_at(doc, static_cast<Eigen::Index>(f.dim_a) * f.dim_b);
    validate(f);
    parsed.state = f;
    return parsed;
  }
  if (parsed.kind == "separable_mixture") {
    if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty())
      throw SpecError("mixture needs a non-empty 'terms' array");
    std::vector<MixtureTerm> terms;
    for (const auto& t : doc["terms"]) {
      MixtureTerm term;
      term.weight = number_at(t, "weight");
      if (!t.contains("state_a") || !t.contains("state_b"))
        throw SpecError("each term needs 'state_a' and 'state_b'");
      term.state_a = parse_single(t["state_a"]);
      term.state_b = parse_single(t["state_b"]);
      terms.push_back(std::move(term));
    }
    SeparableMixture mix{std::move(terms)};
    validate(mix);
    parsed.state = std::move(mix);
    return parsed;
  }
  throw SpecError("unknown state kind '" + parsed.kind + "'");
}

json single_to_json(const SingleModeState& state) {
  json j;
  if (std::holds_alternative<SingleModeFock>(state)) {
    const auto& f = std::get<SingleModeFock>(state);
    j["kind"] = "fock";
    j["dim"] = f.dim;
    json entries = json::array();
    for (int r = 0; r < f.dim; ++r)
      for (int c = 0; c < f.dim; ++c)
        entries.push_back({f.entries(r, c).real(), f.entries(r, c).imag()});
    j["entries"] = std::move(entries);
  } else {
    const auto& g = std::get<SingleModeGaussian>(state);
    j["kind"] = "gaussian";
    j["mean"] = {g.mean[0], g.mean[1]};
    j["cov"] = {g.cov(0, 0), g.cov(0, 1), g.cov(1, 0), g.cov(1, 1)};
  }
  return j;
}

}  // namespace

ParsedState parse_state_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(doc);
}

ParsedState load_state_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open state spec '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_spec(buffer.str());
}

std::string serialize_state_spec(const TwoModeState& state) {
  json doc;
  if (std::holds_alternative<FockDensityMatrix>(state)) {
    const auto& f = std::get<FockDensityMatrix>(state);
    doc["kind"] = "fock";
    doc["dim_a"] = f.dim_a;
    doc["dim_b"] = f.dim_b;
    json entries = json::array();
    for (Eigen::Index r = 0; r < f.entries.rows(); ++r)
      for (Eigen::Index c = 0; c < f.entries.cols(); ++c)
        entries.push_back({f.entries(r, c).real(), f.entries(r, c).imag()});
    doc["entries"] = std::move(entries);
  } else if (std::holds_alternative<GaussianState>(state)) {
    const auto& g = std::get<GaussianState>(state);
    doc["kind"] = "gaussian";
    doc["mean"] = {g.mean[0], g.mean[1], g.mean[2], g.mean[3]};
    json cov = json::array();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) cov.push_back(g.cov(i, j));
    doc["cov"] = std::move(cov);
  } else {
    const auto& mix = std::get<SeparableMixture>(state);
    doc["kind"] = "separable_mixture";
    json terms = json::array();
    for (const auto& term : mix.terms) {
      json t;
      t["weight"] = term.weight;
      t["state_a"] = single_to_json(term.state_a);
      t["state_b"] = single_to_json(term.state_b);
      terms.push_back(std::move(t));
    }
    doc["terms"] = std::move(terms);
  }
  return doc.dump();
}

}  // namespace epr
