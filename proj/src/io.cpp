#include "cbs/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cbs/errors.hpp"

namespace cbs {

namespace {

const char* type_of(const Json& j) { return j.type_name(); }

Complex parse_complex(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(where + ": expected [re, im], got " + std::string(type_of(j)));
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw ValueError(where + ": non-finite number");
  return {re, im};
}

CVector parse_vector(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  if (j.size() != dim) {
    throw SchemaError(where + ": length " + std::to_string(j.size()) + " does not match dim " +
                      std::to_string(dim));
  }
  CVector out;
  out.reserve(dim);
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(parse_complex(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

void dump_into(std::string& out, const Json& j, int indent);

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void newline(std::string& out, int indent) {
  out.push_back('\n');
  out.append(static_cast<std::size_t>(indent), ' ');
}

void dump_number(std::string& out, const Json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isnan(v)) {
      out += "\"nan\"";
    } else if (std::isinf(v)) {
      out += v > 0 ? "\"inf\"" : "\"-inf\"";
    } else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
    }
  } else {
    out += j.dump();
  }
}

void dump_into(std::string& out, const Json& j, int indent) {
  if (j.is_number()) {
    dump_number(out, j);
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
    out.push_back('[');
    bool first = true;
    for (const Json& item : j) {
      if (!first) out.push_back(',');
      if (flat) {
        if (!first) out.push_back(' ');
      } else {
        newline(out, indent + 2);
      }
      dump_into(out, item, indent + 2);
      first = false;
    }
    if (!flat) newline(out, indent);
    out.push_back(']');
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out.push_back('{');
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out.push_back(',');
      newline(out, indent + 2);
      out += Json(it.key()).dump();
      out += ": ";
      dump_into(out, it.value(), indent + 2);
      first = false;
    }
    newline(out, indent);
    out.push_back('}');
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string to_string(ProblemMode mode) {
  return mode == ProblemMode::operators ? "operators" : "vectors";
}

ProblemMode parse_mode(std::string_view name) {
  if (name == "operators") return ProblemMode::operators;
  if (name == "vectors") return ProblemMode::vectors;
  throw ValueError("unknown mode '" + std::string(name) + "' (expected operators or vectors)");
}

ProblemFile parse_problem(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed problem file: ") + e.what());
  } catch (const nlohmann::json::out_of_range& e) {
    // Raised for literals such as 1e999 that overflow a double.
    throw ValueError(std::string("non-finite number in problem file: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("problem file must be a JSON object");

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key != "schema_version" && key != "dim" && key != "weights" && key != "operators" &&
        key != "vectors") {
      throw SchemaError("unexpected field '" + key + "'");
    }
  }

  ProblemFile p;
  if (!doc.contains("schema_version") || !doc["schema_version"].is_string()) {
    throw SchemaError("missing string field 'schema_version'");
  }
  p.schema_version = doc["schema_version"].get<std::string>();
  if (p.schema_version != kSchemaVersion) {
    throw SchemaError("unsupported schema_version '" + p.schema_version + "'");
  }

  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw SchemaError("'dim' must be a positive integer");
  }
  p.dim = doc["dim"].get<std::size_t>();

  const bool has_ops = doc.contains("operators");
  const bool has_vecs = doc.contains("vectors");
  if (has_ops == has_vecs) throw SchemaError("exactly one of 'operators' or 'vectors' is required");

  if (has_ops) {
    const Json& ops = doc["operators"];
    if (!ops.is_array() || ops.empty()) throw SchemaError("'operators' must be a nonempty array");
    std::vector<ComplexMatrix> mats;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const std::string where = "operators[" + std::to_string(i) + "]";
      const Json& m = ops[i];
      if (!m.is_array() || m.size() != p.dim) {
        throw SchemaError(where + ": expected " + std::to_string(p.dim) + " rows");
      }
      std::vector<CVector> rows;
      for (std::size_t r = 0; r < m.size(); ++r) {
        rows.push_back(parse_vector(m[r], p.dim, where + "[" + std::to_string(r) + "]"));
      }
      mats.push_back(ComplexMatrix::from_rows(rows));
    }
    p.operators = std::move(mats);
  } else {
    const Json& vecs = doc["vectors"];
    if (!vecs.is_array() || vecs.empty()) throw SchemaError("'vectors' must be a nonempty array");
    std::vector<CVector> ys;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      const std::string where = "vectors[" + std::to_string(i) + "]";
      CVector y = parse_vector(vecs[i], p.dim, where);
      if (norm(y) == 0.0) throw ValueError(where + " is the zero vector");
      ys.push_back(std::move(y));
    }
    p.vectors = std::move(ys);
  }

  if (doc.contains("weights")) {
    const Json& w = doc["weights"];
    if (!w.is_array()) throw SchemaError("'weights' must be an array");
    if (w.size() != p.count()) {
      throw SchemaError("'weights' has " + std::to_string(w.size()) + " entries for " +
                        std::to_string(p.count()) + " " + to_string(p.mode()));
    }
    std::vector<Complex> ws;
    for (std::size_t i = 0; i < w.size(); ++i) {
      ws.push_back(parse_complex(w[i], "weights[" + std::to_string(i) + "]"));
    }
    p.weights = std::move(ws);
  } else if (has_ops) {
    throw SchemaError("'weights' are required in operators mode");
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open problem file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

Json problem_to_json(const ProblemFile& problem) {
  Json doc = Json::object();
  doc["schema_version"] = problem.schema_version;
  doc["dim"] = problem.dim;
  if (problem.weights) {
    Json w = Json::array();
    for (const Complex& z : *problem.weights) w.push_back(complex_to_json(z));
    doc["weights"] = std::move(w);
  }
  if (problem.operators) {
    Json ops = Json::array();
    for (const ComplexMatrix& m : *problem.operators) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
      }
      ops.push_back(std::move(rows));
    }
    doc["operators"] = std::move(ops);
  }
  if (problem.vectors) {
    Json vecs = Json::array();
    for (const CVector& y : *problem.vectors) {
      Json v = Json::array();
      for (const Complex& z : y) v.push_back(complex_to_json(z));
      vecs.push_back(std::move(v));
    }
    doc["vectors"] = std::move(vecs);
  }
  return doc;
}

std::string dump_json(const Json& doc) {
  std::string out;
  dump_into(out, doc, 0);
  out.push_back('\n');
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValueError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ValueError("failed writing '" + path.string() + "'");
}

}  // namespace cbs
