// Copyright 2026 The Solo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// JSON input files: a document maps each source name to a value shaped by
// the source's declared sensitive type. The exact schema is documented in
// docs/inputs.md.
#ifndef SOLO_JSON_IO_HPP
#define SOLO_JSON_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "solo/eval.hpp"

namespace solo {

inline Value value_from_json_plain(const nlohmann::json& j, const TypePtr& t,
                                   const std::string& path);

// Decodes one JSON value against a sensitive type shape.
inline Value value_from_json(const nlohmann::json& j, const STypePtr& s,
                             const std::string& path) {
  auto fail = [&](const std::string& want) -> Value {
    throw EvalError(Code::kShapeMismatch,
                    path + ": expected " + want + ", got " + j.dump());
  };
  switch (s->k) {
    case SType::K::kSReal:
      if (!j.is_number()) return fail("a number");
      return Value::real(j.get<double>());
    case SType::K::kSList: {
      if (!j.is_array()) return fail("an array");
      std::vector<Value> xs;
      for (std::size_t i = 0; i < j.size(); ++i)
        xs.push_back(value_from_json(j[i], s->a, path + "[" + std::to_string(i) + "]"));
      return Value::list(std::move(xs));
    }
    case SType::K::kSProd: {
      if (!j.is_array() || j.size() != 2) return fail("a two-element array");
      return Value::pair(value_from_json(j[0], s->a, path + "[0]"),
                         value_from_json(j[1], s->b, path + "[1]"));
    }
    case SType::K::kSSet: {
      if (!j.is_array()) return fail("an array");
      std::vector<Value> xs;
      for (std::size_t i = 0; i < j.size(); ++i)
        xs.push_back(
            value_from_json_plain(j[i], s->elem, path + "[" + std::to_string(i) + "]"));
      return Value::list(std::move(xs));
    }
    case SType::K::kSMatrix: {
      if (!j.is_array() || j.size() != s->rows)
        return fail("an array of " + std::to_string(s->rows) + " rows");
      std::vector<Value> rows;
      for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != s->cols)
          return fail("rows of " + std::to_string(s->cols) + " columns");
        std::vector<Value> cols;
        for (std::size_t k = 0; k < row.size(); ++k)
          cols.push_back(value_from_json(row[k], s->a,
                                         path + "[" + std::to_string(i) + "][" +
                                             std::to_string(k) + "]"));
        rows.push_back(Value::list(std::move(cols)));
      }
      return Value::list(std::move(rows));
    }
    case SType::K::kSDict: {
      // Object form: string keys parse as decimal numbers.
      if (!j.is_object()) return fail("an object");
      std::vector<std::pair<double, Value>> entries;
      for (const auto& [key, val] : j.items()) {
        auto r = Rat::parse_decimal(key);
        if (!r)
          throw EvalError(Code::kShapeMismatch,
                          path + ": dictionary key '" + key + "' is not a decimal number");
        entries.emplace_back(r->to_double(),
                             value_from_json(val, s->b, path + "." + key));
      }
      std::sort(entries.begin(), entries.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<Value> xs;
      for (auto& [k, v] : entries) xs.push_back(Value::pair(Value::real(k), std::move(v)));
      return Value::list(std::move(xs));
    }
  }
  return fail("a value");
}

// Plain types appear inside sensitive sets.
inline Value value_from_json_plain(const nlohmann::json& j, const TypePtr& t,
                                   const std::string& path) {
  auto fail = [&](const std::string& want) -> Value {
    throw EvalError(Code::kShapeMismatch,
                    path + ": expected " + want + ", got " + j.dump());
  };
  switch (t->k) {
    case Type::K::kReal:
    case Type::K::kRealSing:
      if (!j.is_number()) return fail("a number");
      return Value::real(j.get<double>());
    case Type::K::kBool:
      if (!j.is_boolean()) return fail("a boolean");
      return Value::boolean(j.get<bool>());
    case Type::K::kProd: {
      if (!j.is_array() || j.size() != 2) return fail("a two-element array");
      return Value::pair(value_from_json_plain(j[0], t->a, path + "[0]"),
                         value_from_json_plain(j[1], t->b, path + "[1]"));
    }
    case Type::K::kList: {
      if (!j.is_array()) return fail("an array");
      std::vector<Value> xs;
      for (std::size_t i = 0; i < j.size(); ++i)
        xs.push_back(
            value_from_json_plain(j[i], t->a, path + "[" + std::to_string(i) + "]"));
      return Value::list(std::move(xs));
    }
    default: return fail("a first-order value");
  }
}

// Loads the full inputs document for a program.
inline std::map<std::string, Value> inputs_from_json(const nlohmann::json& j,
                                                     const Program& p) {
  if (!j.is_object())
    throw EvalError(Code::kShapeMismatch, "inputs file must be a JSON object");
  std::map<std::string, Value> out;
  for (const SourceDecl& s : p.sources) {
    if (!j.contains(s.name))
      throw EvalError(Code::kMissingSource, "inputs file has no entry for source '" +
                                                s.name + "'");
    out[s.name] = value_from_json(j[s.name], s.stype, s.name);
  }
  return out;
}

}  // namespace solo

#endif  // SOLO_JSON_IO_HPP
