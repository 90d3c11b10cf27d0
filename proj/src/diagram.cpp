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

#include "zxtk/diagram.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "zxtk/error.hpp"

namespace zxtk {

std::string_view kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::ZSpider:
      return "Z";
    case GenKind::H:
      return "H";
    case GenKind::Cup:
      return "cup";
    case GenKind::Cap:
      return "cap";
    case GenKind::Ground:
      return "ground";
  }
  return "?";
}

namespace {

void check_arity(GenKind kind, std::size_t n, std::size_t m) {
  bool ok = true;
  switch (kind) {
    case GenKind::ZSpider:
      break;
    case GenKind::H:
      ok = n == 1 && m == 1;
      break;
    case GenKind::Cup:
      ok = n == 2 && m == 0;
      break;
    case GenKind::Cap:
      ok = n == 0 && m == 2;
      break;
    case GenKind::Ground:
      ok = n == 1 && m == 0;
      break;
  }
  if (!ok)
    throw ArityError(
        std::string(kind_name(kind)) + " cannot have " + std::to_string(n) +
        " inputs and " + std::to_string(m) + " outputs");
}

constexpr std::uint32_t kUnset = 0xffffffffu;

}  // namespace

Diagram Diagram::from_parts(
    std::vector<Generator> generators, std::vector<std::string> names,
    std::vector<EdgeId> inputs, std::vector<EdgeId> outputs) {
  Diagram d;
  const std::size_t n_edges = names.size();
  d.edges_.resize(n_edges);
  std::vector<bool> has_top(n_edges, false), has_bottom(n_edges, false);

  auto claim = [&](EdgeId e, bool top, EdgeEnd end) {
    if (e.v >= n_edges)
      throw InvalidDiagram("edge #" + std::to_string(e.v) + " out of range");
    auto flag = top ? has_top[e.v] : has_bottom[e.v];
    if (flag)
      throw InvalidDiagram("edge #" + std::to_string(e.v) + " has two " +
                           (top ? "top" : "bottom") + " ends");
    flag = true;
    (top ? d.edges_[e.v].top : d.edges_[e.v].bottom) = end;
  };

  for (std::uint32_t g = 0; g < generators.size(); ++g) {
    const auto& gen = generators[g];
    check_arity(gen.kind, gen.inputs.size(), gen.outputs.size());
    for (std::uint32_t p = 0; p < gen.inputs.size(); ++p)
      claim(gen.inputs[p], false, {EdgeEnd::Kind::Port, g, p});
    for (std::uint32_t p = 0; p < gen.outputs.size(); ++p)
      claim(gen.outputs[p], true, {EdgeEnd::Kind::Port, g, p});
  }
  for (std::uint32_t i = 0; i < inputs.size(); ++i)
    claim(inputs[i], true, {EdgeEnd::Kind::Boundary, i, 0});
  for (std::uint32_t i = 0; i < outputs.size(); ++i)
    claim(outputs[i], false, {EdgeEnd::Kind::Boundary, i, 0});

  std::unordered_set<std::string> seen;
  for (std::size_t e = 0; e < n_edges; ++e) {
    if (!has_top[e] || !has_bottom[e])
      throw InvalidDiagram("edge #" + std::to_string(e) + " is missing its " +
                           (has_top[e] ? "bottom" : "top") + " end");
    if (!names[e].empty() && !seen.insert(names[e]).second)
      throw InvalidDiagram("duplicate edge label '" + names[e] + "'");
    d.edges_[e].name = std::move(names[e]);
  }
  d.generators_ = std::move(generators);
  d.inputs_ = std::move(inputs);
  d.outputs_ = std::move(outputs);
  return d;
}

std::string Diagram::label(EdgeId e) const {
  const auto& name = edges_[e.v].name;
  if (!name.empty()) return name;
  return "#" + std::to_string(e.v);
}

std::optional<EdgeId> Diagram::find_edge(std::string_view label) const {
  for (std::uint32_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].name == label) return EdgeId{e};
  if (label.size() > 1 && label.front() == '#') {
    std::uint32_t v = 0;
    for (char c : label.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + static_cast<std::uint32_t>(c - '0');
    }
    if (v < edges_.size() && edges_[v].name.empty()) return EdgeId{v};
  }
  return std::nullopt;
}

bool Diagram::has_ground() const { return count_kind(GenKind::Ground) > 0; }

std::size_t Diagram::count_kind(GenKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(generators_.begin(), generators_.end(),
                    [&](const Generator& g) { return g.kind == kind; }));
}

Diagram Diagram::renamed(std::vector<std::string> names) const {
  if (names.size() != edges_.size())
    throw InvalidDiagram("rename needs one label per edge");
  return from_parts(generators_, std::move(names), inputs_, outputs_);
}

bool operator==(const Diagram& a, const Diagram& b) {
  if (a.generators_ != b.generators_ || a.inputs_ != b.inputs_ ||
      a.outputs_ != b.outputs_ || a.edges_.size() != b.edges_.size())
    return false;
  for (std::size_t e = 0; e < a.edges_.size(); ++e)
    if (a.edges_[e].name != b.edges_[e].name) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Construction

Diagram make_generator(GenKind kind, std::size_t n_inputs,
                       std::size_t m_outputs, Angle angle) {
  check_arity(kind, n_inputs, m_outputs);
  Generator g;
  g.kind = kind;
  if (kind == GenKind::ZSpider) g.angle = angle;
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < n_inputs; ++i) g.inputs.push_back({next++});
  for (std::size_t i = 0; i < m_outputs; ++i) g.outputs.push_back({next++});
  auto ins = g.inputs;
  auto outs = g.outputs;
  return Diagram::from_parts({std::move(g)}, std::vector<std::string>(next),
                             std::move(ins), std::move(outs));
}

Diagram z_spider(std::size_t n, std::size_t m, Angle angle) {
  return make_generator(GenKind::ZSpider, n, m, angle);
}
Diagram hadamard() { return make_generator(GenKind::H, 1, 1); }
Diagram cup() { return make_generator(GenKind::Cup, 2, 0); }
Diagram cap() { return make_generator(GenKind::Cap, 0, 2); }
Diagram ground() { return make_generator(GenKind::Ground, 1, 0); }

Diagram identity_wire() { return identity_wires(1); }

Diagram identity_wires(std::size_t n) {
  std::vector<EdgeId> io;
  for (std::uint32_t i = 0; i < n; ++i) io.push_back({i});
  return Diagram::from_parts({}, std::vector<std::string>(n), io, io);
}

Diagram swap_wires() {
  return Diagram::from_parts({}, {"", ""}, {{0}, {1}}, {{1}, {0}});
}

namespace {

Diagram tensor_power(const Diagram& d, std::size_t n) {
  Diagram out;
  for (std::size_t i = 0; i < n; ++i) out = tensor(out, d);
  return out;
}

/// Appends `name` to `taken`, priming it until it is unique.
std::string fresh_name(std::string name, std::set<std::string>& taken) {
  if (name.empty()) return name;
  while (taken.count(name)) name += "'";
  taken.insert(name);
  return name;
}

}  // namespace

Diagram red_spider(std::size_t n, std::size_t m, Angle angle) {
  return compose(compose(tensor_power(hadamard(), n), z_spider(n, m, angle)),
                 tensor_power(hadamard(), m));
}

Diagram compose(const Diagram& top, const Diagram& bottom) {
  if (top.outputs().size() != bottom.inputs().size())
    throw ArityError("cannot compose: top has " +
                     std::to_string(top.outputs().size()) +
                     " outputs, bottom has " +
                     std::to_string(bottom.inputs().size()) + " inputs");

  std::vector<std::string> names;
  std::set<std::string> taken;
  for (const auto& e : top.edges()) {
    names.push_back(e.name);
    if (!e.name.empty()) taken.insert(e.name);
  }

  // bottom's input edges fuse into top's output edges
  std::vector<std::uint32_t> remap(bottom.num_edges(), kUnset);
  for (std::size_t i = 0; i < bottom.inputs().size(); ++i)
    remap[bottom.inputs()[i].v] = top.outputs()[i].v;
  for (std::uint32_t e = 0; e < bottom.num_edges(); ++e) {
    if (remap[e] != kUnset) continue;
    remap[e] = static_cast<std::uint32_t>(names.size());
    names.push_back(fresh_name(bottom.edges()[e].name, taken));
  }
  auto map_edge = [&](EdgeId e) { return EdgeId{remap[e.v]}; };

  std::vector<Generator> gens = top.generators();
  for (auto g : bottom.generators()) {
    for (auto& e : g.inputs) e = map_edge(e);
    for (auto& e : g.outputs) e = map_edge(e);
    gens.push_back(std::move(g));
  }
  std::vector<EdgeId> outs;
  for (auto e : bottom.outputs()) outs.push_back(map_edge(e));
  return Diagram::from_parts(std::move(gens), std::move(names), top.inputs(),
                             std::move(outs));
}

Diagram tensor(const Diagram& left, const Diagram& right) {
  std::vector<std::string> names;
  std::set<std::string> taken;
  for (const auto& e : left.edges()) {
    names.push_back(e.name);
    if (!e.name.empty()) taken.insert(e.name);
  }
  const auto shift = static_cast<std::uint32_t>(left.num_edges());
  for (const auto& e : right.edges())
    names.push_back(fresh_name(e.name, taken));
  auto map_edge = [&](EdgeId e) { return EdgeId{e.v + shift}; };

  std::vector<Generator> gens = left.generators();
  for (auto g : right.generators()) {
    for (auto& e : g.inputs) e = map_edge(e);
    for (auto& e : g.outputs) e = map_edge(e);
    gens.push_back(std::move(g));
  }
  auto ins = left.inputs();
  for (auto e : right.inputs()) ins.push_back(map_edge(e));
  auto outs = left.outputs();
  for (auto e : right.outputs()) outs.push_back(map_edge(e));
  return Diagram::from_parts(std::move(gens), std::move(names), std::move(ins),
                             std::move(outs));
}

Diagram conjugate(const Diagram& d) {
  auto gens = d.generators();
  for (auto& g : gens)
    if (g.kind == GenKind::ZSpider) g.angle = g.angle.negated();
  std::vector<std::string> names;
  for (const auto& e : d.edges()) names.push_back(e.name);
  return Diagram::from_parts(std::move(gens), std::move(names), d.inputs(),
                             d.outputs());
}

Diagram bend_wire(const Diagram& d, Side side, std::size_t index,
                  std::optional<std::size_t> position) {
  auto ins = d.inputs();
  auto outs = d.outputs();
  auto& from = side == Side::Input ? ins : outs;
  auto& to = side == Side::Input ? outs : ins;
  if (index >= from.size())
    throw ArityError("no boundary slot " + std::to_string(index) + " to bend");
  const std::size_t at = position.value_or(to.size());
  if (at > to.size())
    throw ArityError("bend target position " + std::to_string(at) +
                     " out of range");

  std::vector<std::string> names;
  for (const auto& e : d.edges()) names.push_back(e.name);
  const EdgeId moved = from[index];
  const EdgeId fresh{static_cast<std::uint32_t>(names.size())};
  names.emplace_back();

  // Input -> output: a cap feeds the old input edge and a new output edge.
  // Output -> input: the old output edge and a new input edge meet in a cup.
  Generator g;
  if (side == Side::Input) {
    g.kind = GenKind::Cap;
    g.outputs = {moved, fresh};
  } else {
    g.kind = GenKind::Cup;
    g.inputs = {moved, fresh};
  }
  from.erase(from.begin() + static_cast<std::ptrdiff_t>(index));
  to.insert(to.begin() + static_cast<std::ptrdiff_t>(at), fresh);

  auto gens = d.generators();
  gens.push_back(std::move(g));
  return Diagram::from_parts(std::move(gens), std::move(names), std::move(ins),
                             std::move(outs));
}

bool structurally_equal(const Diagram& a, const Diagram& b) {
  if (a.num_edges() != b.num_edges() ||
      a.num_generators() != b.num_generators() ||
      a.inputs().size() != b.inputs().size() ||
      a.outputs().size() != b.outputs().size())
    return false;
  std::vector<std::uint32_t> fwd(a.num_edges(), kUnset);
  std::vector<std::uint32_t> back(b.num_edges(), kUnset);
  auto bind = [&](EdgeId x, EdgeId y) {
    if (fwd[x.v] == kUnset && back[y.v] == kUnset) {
      fwd[x.v] = y.v;
      back[y.v] = x.v;
      return true;
    }
    return fwd[x.v] == y.v && back[y.v] == x.v;
  };
  auto bind_all = [&](const std::vector<EdgeId>& xs,
                      const std::vector<EdgeId>& ys) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!bind(xs[i], ys[i])) return false;
    return true;
  };
  if (!bind_all(a.inputs(), b.inputs()) || !bind_all(a.outputs(), b.outputs()))
    return false;
  for (std::size_t g = 0; g < a.num_generators(); ++g) {
    const auto& ga = a.generators()[g];
    const auto& gb = b.generators()[g];
    if (ga.kind != gb.kind || !(ga.angle == gb.angle)) return false;
    if (!bind_all(ga.inputs, gb.inputs) || !bind_all(ga.outputs, gb.outputs))
      return false;
  }
  return true;
}

}  // namespace zxtk
