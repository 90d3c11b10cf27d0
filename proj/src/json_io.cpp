// Copyright 2026 The zxtk Authors
//
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

#include "zxtk/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zxtk/dsl.hpp"
#include "zxtk/error.hpp"

namespace zxtk {

namespace {

GenKind kind_from_name(const std::string& s) {
  for (auto k : {GenKind::ZSpider, GenKind::H, GenKind::Cup, GenKind::Cap,
                 GenKind::Ground})
    if (kind_name(k) == s) return k;
  throw ParseError("unknown generator kind '" + s + "'", 0);
}

json end_to_json(const EdgeEnd& end, bool top) {
  if (end.is_port()) return {{"generator", end.index}, {"port", end.port}};
  return {{top ? "input" : "output", end.index}};
}

EdgeId edge_by_label(const Diagram& d, const std::string& label) {
  auto e = d.find_edge(label);
  if (!e) throw ParseError("unknown edge '" + label + "'", 0);
  return *e;
}

json cjson(cd c) { return json::array({c.real(), c.imag()}); }

cd cfrom(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("coefficient must be [re, im]", 0);
  return {j[0].get<double>(), j[1].get<double>()};
}

const char* dir_name(Dir d) { return d == Dir::Down ? "down" : "up"; }

Dir dir_from(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "down") return Dir::Down;
  if (s == "up") return Dir::Up;
  throw ParseError("bad direction '" + s + "'", 0);
}

std::uint8_t bit_from(const json& j) {
  const int b = j.get<int>();
  if (b != 0 && b != 1) throw ParseError("bit must be 0 or 1", 0);
  return static_cast<std::uint8_t>(b);
}

template <class Tok>
Tok token_from(const Diagram& d, const json& j);

template <>
Token token_from<Token>(const Diagram& d, const json& j) {
  const auto& bits = j.at("bits");
  if (bits.size() != 1) throw ParseError("pure token needs one bit", 0);
  return Token{edge_by_label(d, j.at("edge").get<std::string>()),
               dir_from(j.at("dir")), bit_from(bits[0])};
}

template <>
GroundToken token_from<GroundToken>(const Diagram& d, const json& j) {
  const auto& bits = j.at("bits");
  if (bits.size() != 2) throw ParseError("ground token needs two bits", 0);
  return GroundToken{edge_by_label(d, j.at("edge").get<std::string>()),
                     dir_from(j.at("dir")), bit_from(bits[0]),
                     bit_from(bits[1])};
}

template <class Tok>
json mono_to_json(const Diagram& d, const Monomial<Tok>& m) {
  json out = json::array();
  for (const auto& t : m) out.push_back(token_to_json(d, t));
  return out;
}

template <class Tok>
Monomial<Tok> mono_from(const Diagram& d, const json& j) {
  Monomial<Tok> m;
  for (const auto& t : j) m.push_back(token_from<Tok>(d, t));
  return m;
}

template <class Tok>
constexpr const char* kind_tag() {
  return std::is_same_v<Tok, Token> ? "pure" : "ground";
}

template <class Tok>
json step_to_json(const Diagram& d, const StepRecord<Tok>& r,
                  const State<Tok>& after, std::size_t index) {
  json produced = json::array();
  for (const auto& b : r.produced)
    produced.push_back(
        {{"coeff", cjson(b.coeff)}, {"tokens", mono_to_json(d, b.tokens)}});
  const json state = state_to_json(d, after);
  return {{"type", "step"},
          {"step", index},
          {"rule", r.rule},
          {"site",
           {{"edge", d.label(r.consumed.edge)},
            {"generator", r.generator.v},
            {"term", mono_to_json(d, r.site_term)},
            {"coeff", cjson(r.site_coeff)}}},
          {"consumed", token_to_json(d, r.consumed)},
          {"produced", produced},
          {"collisions", r.collisions},
          {"state", state},
          {"state_digest", fnv1a_hex(state.dump())}};
}

}  // namespace

std::string dump(const json& j) { return j.dump() + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

json diagram_to_json(const Diagram& d) {
  json gens = json::array();
  for (const auto& g : d.generators()) {
    json jg = {{"kind", kind_name(g.kind)}};
    if (g.kind == GenKind::ZSpider) {
      if (g.angle.is_exact())
        jg["angle"] = g.angle.to_string();
      else
        jg["angle"] = g.angle.value();
    }
    json ins = json::array(), outs = json::array();
    for (auto e : g.inputs) ins.push_back(d.label(e));
    for (auto e : g.outputs) outs.push_back(d.label(e));
    jg["inputs"] = ins;
    jg["outputs"] = outs;
    gens.push_back(jg);
  }
  json edges = json::array();
  for (std::uint32_t e = 0; e < d.num_edges(); ++e) {
    const auto& edge = d.edge(EdgeId{e});
    edges.push_back({{"label", d.label(EdgeId{e})},
                     {"top", end_to_json(edge.top, true)},
                     {"bottom", end_to_json(edge.bottom, false)}});
  }
  json ins = json::array(), outs = json::array();
  for (auto e : d.inputs()) ins.push_back(d.label(e));
  for (auto e : d.outputs()) outs.push_back(d.label(e));
  return {{"version", kFormatVersion},
          {"generators", gens},
          {"edges", edges},
          {"inputs", ins},
          {"outputs", outs}};
}

Diagram diagram_from_json(const json& j) {
  try {
    if (j.at("version").get<int>() != kFormatVersion)
      throw ParseError("unsupported diagram version", 0);
    const auto& jedges = j.at("edges");
    std::vector<std::string> names;
    std::map<std::string, EdgeId> index;
    for (std::size_t e = 0; e < jedges.size(); ++e) {
      const auto label = jedges[e].at("label").get<std::string>();
      if (!index.emplace(label, EdgeId{static_cast<std::uint32_t>(e)}).second)
        throw ParseError("duplicate edge label '" + label + "'", 0);
      if (!label.empty() && label.front() == '#') {
        if (label != "#" + std::to_string(e))
          throw ParseError("label '" + label + "' is reserved", 0);
        names.emplace_back();
      } else {
        names.push_back(label);
      }
    }
    auto lookup = [&](const json& l) {
      auto it = index.find(l.get<std::string>());
      if (it == index.end())
        throw ParseError("unknown edge '" + l.get<std::string>() + "'", 0);
      return it->second;
    };
    std::vector<Generator> gens;
    for (const auto& jg : j.at("generators")) {
      Generator g;
      g.kind = kind_from_name(jg.at("kind").get<std::string>());
      if (jg.contains("angle")) {
        const auto& a = jg["angle"];
        g.angle = a.is_string() ? Angle::parse(a.get<std::string>())
                                : Angle::radians(a.get<double>());
      }
      for (const auto& l : jg.at("inputs")) g.inputs.push_back(lookup(l));
      for (const auto& l : jg.at("outputs")) g.outputs.push_back(lookup(l));
      gens.push_back(std::move(g));
    }
    std::vector<EdgeId> ins, outs;
    for (const auto& l : j.at("inputs")) ins.push_back(lookup(l));
    for (const auto& l : j.at("outputs")) outs.push_back(lookup(l));
    Diagram d = Diagram::from_parts(std::move(gens), std::move(names),
                                    std::move(ins), std::move(outs));
    // The stored endpoints are redundant; reject files where they disagree.
    for (std::uint32_t e = 0; e < d.num_edges(); ++e) {
      const auto& edge = d.edge(EdgeId{e});
      if (jedges[e].contains("top") &&
          jedges[e]["top"] != end_to_json(edge.top, true))
        throw InvalidDiagram("edge " + d.label(EdgeId{e}) +
                             " top end does not match the port lists");
      if (jedges[e].contains("bottom") &&
          jedges[e]["bottom"] != end_to_json(edge.bottom, false))
        throw InvalidDiagram("edge " + d.label(EdgeId{e}) +
                             " bottom end does not match the port lists");
    }
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad diagram document: ") + e.what(), 0);
  }
}

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(cjson(m.at(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& data = j.at("data");
    if (data.size() != rows * cols)
      throw ParseError("matrix data has the wrong length", 0);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = cfrom(data[r * cols + c]);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad matrix document: ") + e.what(), 0);
  }
}

json token_to_json(const Diagram& d, const Token& t) {
  return {{"edge", d.label(t.edge)},
          {"dir", dir_name(t.dir)},
          {"bits", json::array({t.bit})}};
}

json token_to_json(const Diagram& d, const GroundToken& t) {
  return {{"edge", d.label(t.edge)},
          {"dir", dir_name(t.dir)},
          {"bits", json::array({t.x, t.y})}};
}

template <class Tok>
json state_to_json(const Diagram& d, const State<Tok>& s) {
  json terms = json::array();
  for (const auto& [m, c] : s.terms())
    terms.push_back({{"coeff", cjson(c)}, {"tokens", mono_to_json(d, m)}});
  return {{"version", kFormatVersion}, {"kind", kind_tag<Tok>()},
          {"terms", terms}};
}

template <class Tok>
State<Tok> state_from_json(const Diagram& d, const json& j) {
  try {
    if (j.at("kind").get<std::string>() != kind_tag<Tok>())
      throw ParseError(std::string("expected a ") + kind_tag<Tok>() +
                           " token state",
                       0);
    State<Tok> s;
    for (const auto& t : j.at("terms"))
      s.add(mono_from<Tok>(d, t.at("tokens")), cfrom(t.at("coeff")));
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad token state: ") + e.what(), 0);
  }
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class Tok>
std::string state_digest(const Diagram& d, const State<Tok>& s) {
  return fnv1a_hex(state_to_json(d, s).dump());
}

template <class Tok>
std::string trace_to_jsonl(const Diagram& d, const Trace<Tok>& t) {
  std::string out;
  const json init = state_to_json(d, t.initial);
  out += dump({{"type", "header"},
               {"version", kFormatVersion},
               {"kind", kind_tag<Tok>()},
               {"steps", t.steps.size()},
               {"initial", init},
               {"state_digest", fnv1a_hex(init.dump())}});
  for (std::size_t i = 0; i < t.steps.size(); ++i)
    out += dump(step_to_json(d, t.steps[i], t.states[i], i + 1));
  return out;
}

template <class Tok>
Trace<Tok> trace_from_jsonl(const Diagram& d, std::string_view text) {
  Trace<Tok> t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = parse_json(line);
      if (!header) {
        if (j.at("type") != "header") throw ParseError("missing header", 0);
        t.initial = state_from_json<Tok>(d, j.at("initial"));
        header = true;
        continue;
      }
      StepRecord<Tok> r;
      r.rule = j.at("rule").get<std::string>();
      const auto& site = j.at("site");
      r.generator = GenId{site.at("generator").get<std::uint32_t>()};
      r.site_term = mono_from<Tok>(d, site.at("term"));
      r.site_coeff = cfrom(site.at("coeff"));
      r.consumed = token_from<Tok>(d, j.at("consumed"));
      for (const auto& b : j.at("produced"))
        r.produced.push_back(
            Branch<Tok>{cfrom(b.at("coeff")), mono_from<Tok>(d, b.at("tokens"))});
      r.collisions = j.at("collisions").get<std::size_t>();
      t.steps.push_back(std::move(r));
      t.states.push_back(state_from_json<Tok>(d, j.at("state")));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad trace: ") + e.what(), 0);
  }
  if (!header) throw ParseError("empty trace", 0);
  return t;
}

std::int64_t first_bad_digest(std::string_view jsonl) {
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::int64_t index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = parse_json(line);
    const json& state = j.contains("initial") ? j.at("initial") : j.at("state");
    if (j.value("state_digest", "") != fnv1a_hex(state.dump())) return index;
    ++index;
  }
  return -1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

Diagram load_diagram(const std::string& path) {
  const std::string text = read_file(path);
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".zxj") || ends_with(".json"))
    return diagram_from_json(parse_json(text));
  return parse_dsl(text);
}

#define ZXTK_INSTANTIATE(Tok)                                                 \
  template json state_to_json<Tok>(const Diagram&, const State<Tok>&);        \
  template State<Tok> state_from_json<Tok>(const Diagram&, const json&);      \
  template std::string state_digest<Tok>(const Diagram&, const State<Tok>&);  \
  template std::string trace_to_jsonl<Tok>(const Diagram&, const Trace<Tok>&); \
  template Trace<Tok> trace_from_jsonl<Tok>(const Diagram&, std::string_view);

ZXTK_INSTANTIATE(Token)
ZXTK_INSTANTIATE(GroundToken)

#undef ZXTK_INSTANTIATE

}  // namespace zxtk
