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

#include "zxtk/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "zxtk/error.hpp"

namespace zxtk {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

const EdgeEnd& tail_end(const Edge& e, Dir dir) {
  return dir == Dir::Down ? e.top : e.bottom;
}
const EdgeEnd& head_end(const Edge& e, Dir dir) {
  return dir == Dir::Down ? e.bottom : e.top;
}

/// Edges hosted by the ports of `g`, each with the direction that walks it
/// away from `g`.
std::vector<std::pair<EdgeId, Dir>> leaving(const Generator& g) {
  std::vector<std::pair<EdgeId, Dir>> out;
  for (auto e : g.inputs) out.push_back({e, Dir::Up});
  for (auto e : g.outputs) out.push_back({e, Dir::Down});
  return out;
}

class PathWalker {
 public:
  PathWalker(const Diagram& d, const std::function<bool(const Path&)>& visit)
      : d_(d),
        visit_(visit),
        used_edge_(d.num_edges(), false),
        junction_(d.num_generators(), false) {}

  void run(EdgeId first, Dir dir) {
    const auto& tail = tail_end(d_.edge(first), dir);
    start_gen_ = tail.is_port() ? std::optional<GenId>(tail.gen())
                                : std::nullopt;
    path_.edges = {first};
    path_.orient = {dir};
    used_edge_[first.v] = true;
    if (!visit_(path_)) {
      stopped_ = true;
      return;
    }
    extend();
  }

 private:
  void extend() {
    const Edge& last = d_.edge(path_.edges.back());
    const EdgeEnd& head = head_end(last, path_.orient.back());
    if (!head.is_port()) return;
    const GenId h = head.gen();
    if (start_gen_ && *start_gen_ == h) return;
    if (junction_[h.v]) return;
    junction_[h.v] = true;
    for (auto [f, fdir] : leaving(d_.generator(h))) {
      if (stopped_) break;
      if (used_edge_[f.v]) continue;
      const EdgeEnd& fhead = head_end(d_.edge(f), fdir);
      if (fhead.is_port() && junction_[fhead.gen().v]) continue;
      used_edge_[f.v] = true;
      path_.edges.push_back(f);
      path_.orient.push_back(fdir);
      if (!visit_(path_)) stopped_ = true;
      if (!stopped_) extend();
      path_.edges.pop_back();
      path_.orient.pop_back();
      used_edge_[f.v] = false;
    }
    junction_[h.v] = false;
  }

  const Diagram& d_;
  const std::function<bool(const Path&)>& visit_;
  std::vector<bool> used_edge_;
  std::vector<bool> junction_;
  std::optional<GenId> start_gen_;
  Path path_;
  bool stopped_ = false;
};

void check_cap(std::size_t n, const EnumOptions& opts, const char* what) {
  if (n > opts.cap)
    throw LimitExceeded(std::string(what) + " enumeration exceeded cap of " +
                        std::to_string(opts.cap));
}

}  // namespace

std::optional<GenId> head_generator(const Diagram& d, EdgeId e, Dir dir) {
  const auto& end = head_end(d.edge(e), dir);
  if (!end.is_port()) return std::nullopt;
  return end.gen();
}

// ---------------------------------------------------------------------------
// Components

std::vector<Component> connected_components(const Diagram& d) {
  const std::size_t G = d.num_generators();
  const std::size_t E = d.num_edges();
  DisjointSets sets(G + E);
  for (std::uint32_t e = 0; e < E; ++e) {
    const auto& edge = d.edge(EdgeId{e});
    if (edge.top.is_port()) sets.unite(G + e, edge.top.index);
    if (edge.bottom.is_port()) sets.unite(G + e, edge.bottom.index);
  }

  // Roots are ordered so that generator-bearing pieces come first (a root
  // below G holds a generator, since unite keeps the minimum).
  std::vector<std::size_t> roots;
  std::vector<std::size_t> slot(G + E, SIZE_MAX);
  for (std::size_t x = 0; x < G + E; ++x) {
    const auto r = sets.find(x);
    if (slot[r] == SIZE_MAX) {
      slot[r] = roots.size();
      roots.push_back(r);
    }
  }

  std::vector<Component> comps(roots.size());
  for (std::uint32_t g = 0; g < G; ++g)
    comps[slot[sets.find(g)]].generators.push_back(GenId{g});
  for (std::uint32_t e = 0; e < E; ++e)
    comps[slot[sets.find(G + e)]].edges.push_back(EdgeId{e});
  for (std::size_t i = 0; i < d.inputs().size(); ++i)
    comps[slot[sets.find(G + d.inputs()[i].v)]].input_slots.push_back(i);
  for (std::size_t j = 0; j < d.outputs().size(); ++j)
    comps[slot[sets.find(G + d.outputs()[j].v)]].output_slots.push_back(j);

  for (auto& c : comps) {
    std::vector<std::uint32_t> local(E, 0);
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < c.edges.size(); ++i) {
      local[c.edges[i].v] = i;
      names.push_back(d.edge(c.edges[i]).name);
    }
    auto map_edge = [&](EdgeId e) { return EdgeId{local[e.v]}; };
    std::vector<Generator> gens;
    for (auto g : c.generators) {
      Generator copy = d.generator(g);
      for (auto& e : copy.inputs) e = map_edge(e);
      for (auto& e : copy.outputs) e = map_edge(e);
      gens.push_back(std::move(copy));
    }
    std::vector<EdgeId> ins, outs;
    for (auto i : c.input_slots) ins.push_back(map_edge(d.inputs()[i]));
    for (auto j : c.output_slots) outs.push_back(map_edge(d.outputs()[j]));
    c.diagram = Diagram::from_parts(std::move(gens), std::move(names),
                                    std::move(ins), std::move(outs));
  }
  return comps;
}

std::size_t count_components(const Diagram& d) {
  return connected_components(d).size();
}

bool is_connected(const Diagram& d) { return count_components(d) <= 1; }

// ---------------------------------------------------------------------------
// Paths and cycles

void for_each_path_from(const Diagram& d, EdgeId first, Dir dir,
                        const std::function<bool(const Path&)>& visit) {
  PathWalker(d, visit).run(first, dir);
}

std::vector<Path> paths_between(const Diagram& d, EdgeId from, EdgeId to,
                                EnumOptions opts) {
  std::vector<Path> out;
  if (from == to) {
    out.push_back(Path{{from}, {Dir::Down}});
    return out;
  }
  for (Dir dir : {Dir::Down, Dir::Up}) {
    for_each_path_from(d, from, dir, [&](const Path& p) {
      if (p.edges.back() == to) {
        out.push_back(p);
        check_cap(out.size(), opts, "path");
      }
      return true;
    });
  }
  return out;
}

std::vector<Path> enumerate_paths(const Diagram& d, EnumOptions opts) {
  std::vector<Path> out;
  for (std::uint32_t e = 0; e < d.num_edges(); ++e) {
    for (Dir dir : {Dir::Down, Dir::Up}) {
      for_each_path_from(d, EdgeId{e}, dir, [&](const Path& p) {
        const bool keep = p.size() == 1 ? p.orient[0] == Dir::Down
                                        : p.edges.front() < p.edges.back();
        if (keep) {
          out.push_back(p);
          check_cap(out.size(), opts, "path");
        }
        return true;
      });
    }
  }
  return out;
}

namespace {

class CycleWalker {
 public:
  CycleWalker(const Diagram& d, std::vector<Cycle>& out, EnumOptions opts)
      : d_(d),
        out_(out),
        opts_(opts),
        used_edge_(d.num_edges(), false),
        junction_(d.num_generators(), false) {}

  void run(EdgeId s) {
    const Edge& edge = d_.edge(s);
    if (!edge.top.is_port() || !edge.bottom.is_port()) return;
    start_ = s;
    origin_ = edge.top.gen();
    path_.edges = {s};
    path_.orient = {Dir::Down};
    if (edge.bottom.gen() == origin_) {
      emit();
      return;
    }
    used_edge_[s.v] = true;
    walk(edge.bottom.gen());
    used_edge_[s.v] = false;
  }

 private:
  void emit() {
    out_.push_back(path_);
    check_cap(out_.size(), opts_, "cycle");
  }

  void walk(GenId h) {
    junction_[h.v] = true;
    for (auto [f, fdir] : leaving(d_.generator(h))) {
      if (f.v <= start_.v || used_edge_[f.v]) continue;
      const EdgeEnd& fhead = head_end(d_.edge(f), fdir);
      if (!fhead.is_port()) continue;
      const GenId next = fhead.gen();
      if (next != origin_ && junction_[next.v]) continue;
      used_edge_[f.v] = true;
      path_.edges.push_back(f);
      path_.orient.push_back(fdir);
      if (next == origin_) {
        emit();
      } else {
        walk(next);
      }
      path_.edges.pop_back();
      path_.orient.pop_back();
      used_edge_[f.v] = false;
    }
    junction_[h.v] = false;
  }

  const Diagram& d_;
  std::vector<Cycle>& out_;
  EnumOptions opts_;
  std::vector<bool> used_edge_;
  std::vector<bool> junction_;
  EdgeId start_;
  GenId origin_;
  Path path_;
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const Diagram& d, EnumOptions opts) {
  std::vector<Cycle> out;
  CycleWalker walker(d, out, opts);
  for (std::uint32_t e = 0; e < d.num_edges(); ++e) walker.run(EdgeId{e});
  return out;
}

std::optional<std::size_t> distance(const Diagram& d, EdgeId from,
                                    EdgeId to) {
  std::vector<std::size_t> dist(d.num_edges(), SIZE_MAX);
  std::deque<EdgeId> queue{from};
  dist[from.v] = 0;
  while (!queue.empty()) {
    const EdgeId e = queue.front();
    queue.pop_front();
    if (e == to) return dist[e.v];
    for (const EdgeEnd* end : {&d.edge(e).top, &d.edge(e).bottom}) {
      if (!end->is_port()) continue;
      for (auto [f, fdir] : leaving(d.generator(end->gen()))) {
        (void)fdir;
        if (dist[f.v] != SIZE_MAX) continue;
        dist[f.v] = dist[e.v] + 1;
        queue.push_back(f);
      }
    }
  }
  return std::nullopt;
}

bool is_valid_path(const Diagram& d, const Path& p, bool closed) {
  const std::size_t n = p.edges.size();
  if (n == 0 || p.orient.size() != n) return false;
  std::vector<bool> seen_edge(d.num_edges(), false);
  for (auto e : p.edges) {
    if (e.v >= d.num_edges() || seen_edge[e.v]) return false;
    seen_edge[e.v] = true;
  }
  std::vector<GenId> junctions;
  const std::size_t links = closed ? n : n - 1;
  for (std::size_t i = 0; i < links; ++i) {
    const auto& a = head_end(d.edge(p.edges[i]), p.orient[i]);
    const auto& b = tail_end(d.edge(p.edges[(i + 1) % n]),
                             p.orient[(i + 1) % n]);
    if (!a.is_port() || !b.is_port() || a.gen() != b.gen()) return false;
    junctions.push_back(a.gen());
  }
  auto sorted = junctions;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return false;
  if (closed) return true;
  auto is_junction = [&](const EdgeEnd& end) {
    return end.is_port() &&
           std::binary_search(sorted.begin(), sorted.end(), end.gen());
  };
  return !is_junction(tail_end(d.edge(p.edges.front()), p.orient.front())) &&
         !is_junction(head_end(d.edge(p.edges.back()), p.orient.back()));
}

// ---------------------------------------------------------------------------
// Joining components

Diagram connect_components(const Diagram& d) {
  const auto comps = connected_components(d);
  if (comps.size() <= 1) return d;

  auto gens = d.generators();
  std::vector<std::string> names;
  for (const auto& e : d.edges()) names.push_back(e.name);
  auto ins = d.inputs();
  auto outs = d.outputs();
  auto fresh_edge = [&]() {
    names.emplace_back();
    return EdgeId{static_cast<std::uint32_t>(names.size() - 1)};
  };

  std::vector<EdgeId> legs;
  for (const auto& c : comps) {
    if (c.edges.empty()) {
      // An edgeless component is a lone spider with no legs.
      auto& g = gens[c.generators.front().v];
      const EdgeId leg = fresh_edge();
      g.outputs.push_back(leg);
      legs.push_back(leg);
      continue;
    }
    const EdgeId e = c.edges.front();
    const EdgeId rest = fresh_edge();
    const EdgeId leg = fresh_edge();
    const EdgeEnd bottom = d.edge(e).bottom;
    if (bottom.is_port()) {
      gens[bottom.index].inputs[bottom.port] = rest;
    } else {
      outs[bottom.index] = rest;
    }
    Generator host;
    host.kind = GenKind::ZSpider;
    host.inputs = {e};
    host.outputs = {rest, leg};
    gens.push_back(std::move(host));
    legs.push_back(leg);
  }

  Generator hub;
  hub.kind = GenKind::ZSpider;
  for (auto leg : legs) {
    const EdgeId mid = fresh_edge();
    Generator h;
    h.kind = GenKind::H;
    h.inputs = {leg};
    h.outputs = {mid};
    gens.push_back(std::move(h));
    hub.inputs.push_back(mid);
  }
  std::vector<EdgeId> hub_outs;
  for (std::size_t i = 0; i < legs.size(); ++i) hub_outs.push_back(fresh_edge());
  hub.outputs = hub_outs;
  gens.push_back(std::move(hub));
  for (auto o : hub_outs) {
    const EdgeId tip = fresh_edge();
    Generator h;
    h.kind = GenKind::H;
    h.inputs = {o};
    h.outputs = {tip};
    gens.push_back(std::move(h));
    Generator cap_off;
    cap_off.kind = GenKind::ZSpider;
    cap_off.inputs = {tip};
    gens.push_back(std::move(cap_off));
  }
  return Diagram::from_parts(std::move(gens), std::move(names), std::move(ins),
                             std::move(outs));
}

// ---------------------------------------------------------------------------
// CPM construction

std::string barred(const std::string& name) {
  if (name.empty()) return name;
  std::size_t len = 1;
  const auto lead = static_cast<unsigned char>(name[0]);
  if (lead >= 0xf0) {
    len = 4;
  } else if (lead >= 0xe0) {
    len = 3;
  } else if (lead >= 0xc0) {
    len = 2;
  }
  len = std::min(len, name.size());
  return name.substr(0, len) + "̄" + name.substr(len);
}

Diagram cpm_construct(const Diagram& d) {
  const auto E = static_cast<std::uint32_t>(d.num_edges());
  auto twin = [&](EdgeId e) { return EdgeId{e.v + E}; };

  std::vector<std::string> names;
  for (const auto& e : d.edges()) names.push_back(e.name);
  for (const auto& e : d.edges()) names.push_back(barred(e.name));

  std::vector<Generator> gens;
  for (const auto& g : d.generators()) {
    if (g.kind == GenKind::Ground) {
      Generator join;
      join.kind = GenKind::Cup;
      join.inputs = {g.inputs[0], twin(g.inputs[0])};
      gens.push_back(std::move(join));
    } else {
      gens.push_back(g);
    }
  }
  for (const auto& g : d.generators()) {
    if (g.kind == GenKind::Ground) continue;
    Generator copy = g;
    if (copy.kind == GenKind::ZSpider) copy.angle = copy.angle.negated();
    for (auto& e : copy.inputs) e = twin(e);
    for (auto& e : copy.outputs) e = twin(e);
    gens.push_back(std::move(copy));
  }
  std::vector<EdgeId> ins, outs;
  for (auto e : d.inputs()) {
    ins.push_back(e);
    ins.push_back(twin(e));
  }
  for (auto e : d.outputs()) {
    outs.push_back(e);
    outs.push_back(twin(e));
  }
  return Diagram::from_parts(std::move(gens), std::move(names), std::move(ins),
                             std::move(outs));
}

}  // namespace zxtk
