// Copyright 2026 The bellsim Authors
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

#include "bellsim/chvm/model_json.hpp"

#include <fstream>

#include "bellsim/common/error.hpp"

namespace bellsim::chvm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error("model: '" + path + "' " + what);
}

std::size_t read_size(const json& j, const std::string& key) {
  if (!j.contains(key)) fail("/" + key, "is missing");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) fail("/" + key, "must be a positive integer");
  return v.get<std::size_t>();
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "must be an object");
  if (!j.contains(key)) fail(path + "/" + key, "is missing");
  return j.at(key);
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(path + "/" + key, "is not a recognized key");
  }
}

// Reads a flat list of probabilities, remembering whether any came from a
// floating-point number.
std::vector<Rational> read_probabilities(const std::vector<std::pair<const json*, std::string>>& cells,
                                         const std::string& table_path) {
  std::vector<Rational> out;
  bool inexact = false;
  Rational total = 0;
  for (const auto& [cell, path] : cells) {
    Rational r;
    if (cell->is_string()) {
      try {
        r = parse_rational(cell->get<std::string>());
      } catch (const Error& e) {
        fail(path, std::string("is not a rational: ") + e.what());
      }
    } else if (cell->is_number_integer()) {
      r = Rational(cell->get<std::int64_t>());
    } else if (cell->is_number()) {
      r = exact_from_double(cell->get<double>());
      inexact = true;
    } else {
      fail(path, "must be a \"p/q\" string or a number");
    }
    if (r < 0) fail(path, "is negative");
    total += r;
    out.push_back(r);
  }
  if (total != 1) {
    if (!inexact || std::abs(to_double(total) - 1.0) > 1e-9) {
      fail(table_path, "sums to " + to_string(total) + ", not 1");
    }
    for (auto& r : out) r /= total;
  }
  return out;
}

std::vector<std::pair<const json*, std::string>> matrix_cells(const json& j, std::size_t rows, std::size_t cols,
                                                             const std::string& path) {
  if (!j.is_array() || j.size() != rows) fail(path, "must be an array of " + std::to_string(rows) + " rows");
  std::vector<std::pair<const json*, std::string>> cells;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) fail(row_path, "must be an array of " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) cells.emplace_back(&j[r][c], row_path + "/" + std::to_string(c));
  }
  return cells;
}

}  // namespace

json model_to_json(const ContextualModel& model) {
  json j;
  j["k"] = model.k;
  j["m"] = model.m;
  json source = json::array();
  for (std::size_t l1 = 0; l1 < model.k; ++l1) {
    json row = json::array();
    for (std::size_t l2 = 0; l2 < model.k; ++l2) row.push_back(to_string(model.source[l1 * model.k + l2]));
    source.push_back(row);
  }
  j["source"] = source;
  for (std::size_t o = 0; o < 4; ++o) {
    json inst = json::array();
    for (const auto& w : model.instrument[o]) inst.push_back(to_string(w));
    j["instruments"][kInstrumentNames[o]] = inst;
    json table = json::array();
    for (std::size_t l = 0; l < model.k; ++l) {
      json row = json::array();
      for (std::size_t a = 0; a < model.m; ++a) row.push_back(model.at(o, l, a));
      table.push_back(row);
    }
    j["outcomes"][kObservableNames[o]] = table;
  }
  return j;
}

ContextualModel model_from_json(const json& j) {
  if (!j.is_object()) fail("", "must be a JSON object");
  reject_unknown(j, "", {"k", "m", "source", "instruments", "outcomes", "description"});
  ContextualModel model;
  model.k = read_size(j, "k");
  model.m = read_size(j, "m");
  model.source = read_probabilities(matrix_cells(member(j, "source", ""), model.k, model.k, "/source"), "/source");

  const json& inst = member(j, "instruments", "");
  reject_unknown(inst, "/instruments", {"x", "xp", "y", "yp"});
  const json& outs = member(j, "outcomes", "");
  reject_unknown(outs, "/outcomes", {"A_x", "A_xp", "B_y", "B_yp"});
  for (std::size_t o = 0; o < 4; ++o) {
    const std::string ipath = std::string("/instruments/") + kInstrumentNames[o];
    const json& list = member(inst, kInstrumentNames[o], "/instruments");
    if (!list.is_array() || list.size() != model.m) fail(ipath, "must be an array of " + std::to_string(model.m) + " entries");
    std::vector<std::pair<const json*, std::string>> cells;
    for (std::size_t a = 0; a < model.m; ++a) cells.emplace_back(&list[a], ipath + "/" + std::to_string(a));
    model.instrument[o] = read_probabilities(cells, ipath);

    const std::string opath = std::string("/outcomes/") + kObservableNames[o];
    for (const auto& [cell, path] : matrix_cells(member(outs, kObservableNames[o], "/outcomes"), model.k, model.m, opath)) {
      if (!cell->is_number_integer() || cell->get<int>() < -1 || cell->get<int>() > 1) {
        fail(path, "must be -1, 0 or 1");
      }
      model.outcome[o].push_back(static_cast<std::int8_t>(cell->get<int>()));
    }
  }
  if (j.contains("description") && !j.at("description").is_string()) fail("/description", "must be a string");
  model.validate();
  return model;
}

ContextualModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace bellsim::chvm
