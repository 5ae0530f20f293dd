// Copyright 2026 The mstage Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mstage/io.hpp"

namespace mstage {

using Json = nlohmann::ordered_json;

const char* ToString(Problem problem) {
  switch (problem) {
    case Problem::kMinCut:
      return "mincut";
    case Problem::kVertexCover:
      return "vertexcover";
    case Problem::kSetCover:
      return "setcover";
    case Problem::kPcst:
      return "pcst";
    case Problem::kPctsp:
      return "pctsp";
  }
  return "unknown";
}

Problem ParseProblem(std::string_view tag) {
  for (Problem p : {Problem::kMinCut, Problem::kVertexCover, Problem::kSetCover,
                    Problem::kPcst, Problem::kPctsp}) {
    if (tag == ToString(p)) return p;
  }
  throw std::invalid_argument("unknown problem '" + std::string(tag) + "'");
}

namespace {

std::string At(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string At(const std::string& path, size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& Field(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(At(path, key), "missing field");
  return *it;
}

const Json& Array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

int Integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

void ExpectLength(const Json& j, size_t n, const std::string& field) {
  if (j.size() != n) {
    throw ValidationError(field, "expected length " + std::to_string(n) + ", got " +
                                     std::to_string(j.size()));
  }
}

std::vector<double> Numbers(const Json& j, const std::string& path, size_t n) {
  Array(j, path);
  ExpectLength(j, n, path);
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(Number(j[i], At(path, i)));
  return out;
}

std::vector<int> Integers(const Json& j, const std::string& path) {
  Array(j, path);
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(Integer(j[i], At(path, i)));
  return out;
}

std::vector<std::vector<double>> Table(const Json& j, const std::string& path,
                                       size_t rows, size_t cols) {
  Array(j, path);
  ExpectLength(j, rows, path);
  std::vector<std::vector<double>> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(Numbers(j[i], At(path, i), cols));
  return out;
}

void NonNegative(const std::vector<double>& values, const std::string& field) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw ValidationError(At(field, i), "must be finite and >= 0");
    }
  }
}

void NonNegative(const std::vector<std::vector<double>>& table, const std::string& field) {
  for (size_t i = 0; i < table.size(); ++i) NonNegative(table[i], At(field, i));
}

void VertexId(int v, int n, const std::string& field) {
  if (v < 0 || v >= n) throw ValidationError(field, "vertex id out of range");
}

int PositiveCount(const Json& obj, const char* key) {
  const int n = Integer(Field(obj, "", key), At("", key));
  if (n < 1) throw ValidationError(At("", key), "must be >= 1");
  return n;
}

// Dense matrices; null off-diagonal entries become the missing-edge cost
// when `missing_ok` is set.
std::vector<CostMatrix> Matrices(const Json& j, int T, int n, bool missing_ok,
                                 const std::vector<std::vector<double>>& penalties) {
  const std::string path = "/costs";
  Array(j, path);
  ExpectLength(j, T, path);
  std::vector<CostMatrix> out;
  for (int t = 0; t < T; ++t) {
    const std::string pt = At(path, t);
    Array(j[t], pt);
    ExpectLength(j[t], n, pt);
    CostMatrix c(n);
    std::vector<std::pair<int, int>> missing;
    for (int u = 0; u < n; ++u) {
      const std::string pu = At(pt, u);
      Array(j[t][u], pu);
      ExpectLength(j[t][u], n, pu);
      for (int v = 0; v < n; ++v) {
        const Json& cell = j[t][u][v];
        if (cell.is_null() && missing_ok && u != v) {
          missing.emplace_back(u, v);
          c(u, v) = kInfinity;
          continue;
        }
        c(u, v) = Number(cell, At(pu, v));
        if (!(c(u, v) >= 0.0) || !std::isfinite(c(u, v))) {
          throw ValidationError(At(pu, v), "must be finite and >= 0");
        }
      }
    }
    for (int u = 0; u < n; ++u) {
      if (c(u, u) != 0.0) throw ValidationError(At(At(pt, u), u), "diagonal must be 0");
      for (int v = 0; v < n; ++v) {
        const bool a = std::isinf(c(u, v)), b = std::isinf(c(v, u));
        if (a != b || (!a && c(u, v) != c(v, u))) {
          throw ValidationError(At(At(pt, u), v), "matrix must be symmetric");
        }
      }
    }
    if (!missing.empty()) {
      const double fill = MissingEdgeCost(c, penalties[t]);
      for (auto [u, v] : missing) c(u, v) = fill;
    }
    out.push_back(std::move(c));
  }
  return out;
}

template <typename Instance>
void Check(const Instance& inst) {
  try {
    inst.Validate();
  } catch (const InstanceError& e) {
    throw ValidationError("/", e.what());
  }
}

MsCutInstance ParseMinCut(const Json& j, int T) {
  MsCutInstance inst;
  inst.n = PositiveCount(j, "n");
  inst.source = Integer(Field(j, "", "source"), "/source");
  inst.sink = Integer(Field(j, "", "sink"), "/sink");
  VertexId(inst.source, inst.n, "/source");
  VertexId(inst.sink, inst.n, "/sink");
  const Json& steps = Array(Field(j, "", "steps"), "/steps");
  ExpectLength(steps, T, "/steps");
  for (int t = 0; t < T; ++t) {
    const std::string pt = At("/steps", t);
    Array(steps[t], pt);
    std::vector<Edge> edges;
    for (size_t k = 0; k < steps[t].size(); ++k) {
      const std::string pk = At(pt, k);
      Array(steps[t][k], pk);
      ExpectLength(steps[t][k], 3, pk);
      Edge e{Integer(steps[t][k][0], At(pk, 0)), Integer(steps[t][k][1], At(pk, 1)),
             Number(steps[t][k][2], At(pk, 2))};
      VertexId(e.u, inst.n, At(pk, 0));
      VertexId(e.v, inst.n, At(pk, 1));
      if (e.u == e.v) throw ValidationError(pk, "self-loop");
      if (!(e.weight >= 0.0)) throw ValidationError(At(pk, 2), "must be >= 0");
      edges.push_back(e);
    }
    inst.steps.push_back(std::move(edges));
  }
  inst.transition = Table(Field(j, "", "transition"), "/transition", T - 1, inst.n);
  NonNegative(inst.transition, "/transition");
  Check(inst);
  return inst;
}

MsVcInstance ParseVertexCover(const Json& j, int T) {
  MsVcInstance inst;
  inst.n = PositiveCount(j, "n");
  const Json& edges = Array(Field(j, "", "edges"), "/edges");
  ExpectLength(edges, T, "/edges");
  for (int t = 0; t < T; ++t) {
    const std::string pt = At("/edges", t);
    Array(edges[t], pt);
    std::vector<std::pair<int, int>> list;
    for (size_t k = 0; k < edges[t].size(); ++k) {
      const std::string pk = At(pt, k);
      Array(edges[t][k], pk);
      ExpectLength(edges[t][k], 2, pk);
      const int u = Integer(edges[t][k][0], At(pk, 0));
      const int v = Integer(edges[t][k][1], At(pk, 1));
      VertexId(u, inst.n, At(pk, 0));
      VertexId(v, inst.n, At(pk, 1));
      if (u == v) throw ValidationError(pk, "self-loop");
      list.emplace_back(u, v);
    }
    inst.edges.push_back(std::move(list));
  }
  inst.weights = Table(Field(j, "", "weights"), "/weights", T, inst.n);
  NonNegative(inst.weights, "/weights");
  inst.transition = Table(Field(j, "", "transition"), "/transition", T - 1, inst.n);
  NonNegative(inst.transition, "/transition");
  Check(inst);
  return inst;
}

MsScInstance ParseSetCover(const Json& j, int T) {
  MsScInstance inst;
  inst.m = PositiveCount(j, "m");
  inst.num_elements = Integer(Field(j, "", "num_elements"), "/num_elements");
  if (inst.num_elements < 0) throw ValidationError("/num_elements", "must be >= 0");
  auto element = [&](int e, const std::string& field) {
    if (e < 0 || e >= inst.num_elements) throw ValidationError(field, "element out of range");
  };
  if (j.contains("ground") && !j["ground"].is_null()) {
    const Json& ground = Array(j["ground"], "/ground");
    ExpectLength(ground, T, "/ground");
    for (int t = 0; t < T; ++t) {
      inst.ground.push_back(Integers(ground[t], At("/ground", t)));
      for (size_t k = 0; k < inst.ground[t].size(); ++k) {
        element(inst.ground[t][k], At(At("/ground", t), k));
      }
    }
  }
  const Json& sets = Array(Field(j, "", "sets"), "/sets");
  ExpectLength(sets, T, "/sets");
  for (int t = 0; t < T; ++t) {
    const std::string pt = At("/sets", t);
    Array(sets[t], pt);
    ExpectLength(sets[t], inst.m, pt);
    std::vector<std::vector<int>> step;
    for (int i = 0; i < inst.m; ++i) {
      step.push_back(Integers(sets[t][i], At(pt, i)));
      for (size_t k = 0; k < step.back().size(); ++k) {
        element(step.back()[k], At(At(pt, i), k));
      }
    }
    inst.sets.push_back(std::move(step));
  }
  inst.weights = Table(Field(j, "", "weights"), "/weights", T, inst.m);
  NonNegative(inst.weights, "/weights");
  inst.penalties = Numbers(Field(j, "", "penalties"), "/penalties", inst.m);
  NonNegative(inst.penalties, "/penalties");
  Check(inst);
  try {
    Frequency(inst);
  } catch (const UncoverableElement& e) {
    throw ValidationError("/sets", e.what());
  }
  return inst;
}

template <typename Instance>
Instance ParsePrizeCollecting(const Json& j, int T, const char* anchor, bool missing_ok) {
  Instance inst;
  inst.n = PositiveCount(j, "n");
  const int a = Integer(Field(j, "", anchor), At("", anchor));
  VertexId(a, inst.n, At("", anchor));
  inst.penalties = Table(Field(j, "", "penalties"), "/penalties", T, inst.n);
  NonNegative(inst.penalties, "/penalties");
  inst.w = Numbers(Field(j, "", "w"), "/w", inst.n);
  NonNegative(inst.w, "/w");
  inst.costs = Matrices(Field(j, "", "costs"), T, inst.n, missing_ok, inst.penalties);
  return inst;
}

Json Pairs(const std::vector<std::pair<int, int>>& edges) {
  Json out = Json::array();
  for (auto [u, v] : edges) out.push_back({u, v});
  return out;
}

Json Matrix(const CostMatrix& c) {
  Json out = Json::array();
  for (int u = 0; u < c.size(); ++u) {
    Json row = Json::array();
    for (int v = 0; v < c.size(); ++v) row.push_back(c(u, v));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

InstanceFile ParseInstance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  InstanceFile file;
  const Json& tag = Field(j, "", "problem");
  if (!tag.is_string()) throw SchemaError("/problem", "expected a string");
  try {
    file.problem = ParseProblem(tag.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError("/problem", e.what());
  }
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw SchemaError("/id", "expected a string");
    file.id = j["id"].get<std::string>();
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) throw SchemaError("/metadata", "expected an object");
    file.metadata_json = j["metadata"].dump();
  }
  const int T = PositiveCount(j, "T");
  switch (file.problem) {
    case Problem::kMinCut:
      file.instance = ParseMinCut(j, T);
      break;
    case Problem::kVertexCover:
      file.instance = ParseVertexCover(j, T);
      break;
    case Problem::kSetCover:
      file.instance = ParseSetCover(j, T);
      break;
    case Problem::kPcst: {
      auto inst = ParsePrizeCollecting<MsPcstInstance>(j, T, "root", true);
      inst.root = j["root"].get<int>();
      Check(inst);
      file.instance = std::move(inst);
      break;
    }
    case Problem::kPctsp: {
      auto inst = ParsePrizeCollecting<MsPctspInstance>(j, T, "depot", false);
      inst.depot = j["depot"].get<int>();
      for (int t = 0; t < T; ++t) {
        if (!CheckMetric(inst.costs[t])) {
          throw ValidationError(At("/costs", t), "violates the triangle inequality");
        }
      }
      Check(inst);
      file.instance = std::move(inst);
      break;
    }
  }
  return file;
}

std::string SerializeInstance(const InstanceFile& file) {
  Json j;
  j["problem"] = ToString(file.problem);
  j["id"] = file.id;
  std::visit(
      [&](const auto& inst) {
        using I = std::decay_t<decltype(inst)>;
        j["T"] = inst.T();
        if constexpr (std::is_same_v<I, MsCutInstance>) {
          j["n"] = inst.n;
          j["source"] = inst.source;
          j["sink"] = inst.sink;
          Json steps = Json::array();
          for (const auto& edges : inst.steps) {
            Json list = Json::array();
            for (const Edge& e : edges) list.push_back({e.u, e.v, e.weight});
            steps.push_back(std::move(list));
          }
          j["steps"] = std::move(steps);
          j["transition"] = inst.transition;
        } else if constexpr (std::is_same_v<I, MsVcInstance>) {
          j["n"] = inst.n;
          Json edges = Json::array();
          for (const auto& list : inst.edges) edges.push_back(Pairs(list));
          j["edges"] = std::move(edges);
          j["weights"] = inst.weights;
          j["transition"] = inst.transition;
        } else if constexpr (std::is_same_v<I, MsScInstance>) {
          j["m"] = inst.m;
          j["num_elements"] = inst.num_elements;
          if (!inst.ground.empty()) j["ground"] = inst.ground;
          j["sets"] = inst.sets;
          j["weights"] = inst.weights;
          j["penalties"] = inst.penalties;
        } else {
          j["n"] = inst.n;
          if constexpr (std::is_same_v<I, MsPcstInstance>) {
            j["root"] = inst.root;
          } else {
            j["depot"] = inst.depot;
          }
          Json costs = Json::array();
          for (const CostMatrix& c : inst.costs) costs.push_back(Matrix(c));
          j["costs"] = std::move(costs);
          j["penalties"] = inst.penalties;
          j["w"] = inst.w;
        }
      },
      file.instance);
  j["metadata"] = Json::parse(file.metadata_json);
  return j.dump(1) + "\n";
}

InstanceFile ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  InstanceFile file = ParseInstance(buffer.str());
  return file;
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace mstage
