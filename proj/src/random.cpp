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

#include "zxtk/random.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "zxtk/dsl.hpp"
#include "zxtk/error.hpp"

namespace zxtk {

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ index);
}

namespace {

constexpr int kAttempts = 200;

// Leg requirement: the edge's bottom end sits here (an input port), its top
// end sits here (an output port), or either.
enum Need : std::int8_t { kIn = 1, kOut = -1, kAny = 0 };

struct Draft {
  std::vector<Generator> gens;
  std::vector<std::vector<Need>> free;
  std::vector<EdgeId> inputs, outputs;
  std::uint32_t next_edge = 0;

  EdgeId fresh() { return EdgeId{next_edge++}; }
};

bool fits_out(Need n) { return n != kIn; }
bool fits_in(Need n) { return n != kOut; }

struct Pairing {
  std::size_t leg_a, leg_b;
  bool a_on_top;
};

std::vector<Pairing> pairings(const Draft& d, std::size_t a, std::size_t b) {
  std::vector<Pairing> out;
  for (std::size_t i = 0; i < d.free[a].size(); ++i)
    for (std::size_t j = 0; j < d.free[b].size(); ++j) {
      if (fits_out(d.free[a][i]) && fits_in(d.free[b][j]))
        out.push_back({i, j, true});
      if (fits_in(d.free[a][i]) && fits_out(d.free[b][j]))
        out.push_back({i, j, false});
    }
  return out;
}

void join(Draft& d, std::size_t a, std::size_t b, const Pairing& p) {
  const EdgeId e = d.fresh();
  const std::size_t top = p.a_on_top ? a : b;
  const std::size_t bottom = p.a_on_top ? b : a;
  d.gens[top].outputs.push_back(e);
  d.gens[bottom].inputs.push_back(e);
  d.free[a].erase(d.free[a].begin() + static_cast<std::ptrdiff_t>(p.leg_a));
  d.free[b].erase(d.free[b].begin() + static_cast<std::ptrdiff_t>(p.leg_b));
}

std::optional<Diagram> attempt(const GenConfig& cfg, std::mt19937_64& rng) {
  Draft d;
  const std::size_t k =
      1 + draw_below(rng, std::max<std::size_t>(cfg.max_generators, 1));
  std::size_t grounds = 0;
  for (std::size_t g = 0; g < k; ++g) {
    std::vector<std::pair<GenKind, int>> menu = {{GenKind::ZSpider, 5}};
    if (cfg.allow_hadamard) menu.push_back({GenKind::H, 3});
    if (cfg.allow_cups) {
      menu.push_back({GenKind::Cup, 1});
      menu.push_back({GenKind::Cap, 1});
    }
    if (cfg.allow_ground && grounds < cfg.max_grounds)
      menu.push_back({GenKind::Ground, 2});
    int total = 0;
    for (auto& [kind, w] : menu) total += w;
    auto pick = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(total)));
    GenKind kind = GenKind::ZSpider;
    for (auto& [kk, w] : menu) {
      if (pick < w) {
        kind = kk;
        break;
      }
      pick -= w;
    }
    // Force the remaining slots to grounds when a minimum is requested.
    if (cfg.allow_ground && grounds < cfg.min_grounds &&
        k - g <= cfg.min_grounds - grounds)
      kind = GenKind::Ground;

    Generator gen;
    gen.kind = kind;
    std::vector<Need> legs;
    switch (kind) {
      case GenKind::ZSpider: {
        gen.angle = cfg.angle_pool.empty()
                        ? Angle{}
                        : cfg.angle_pool[draw_below(rng, cfg.angle_pool.size())];
        const std::size_t arity =
            1 + draw_below(rng, std::max<std::size_t>(cfg.max_spider_arity, 1));
        legs.assign(arity, kAny);
        break;
      }
      case GenKind::H:
        legs = {kIn, kOut};
        break;
      case GenKind::Cup:
        legs = {kIn, kIn};
        break;
      case GenKind::Cap:
        legs = {kOut, kOut};
        break;
      case GenKind::Ground:
        legs = {kIn};
        ++grounds;
        break;
    }
    d.gens.push_back(std::move(gen));
    d.free.push_back(std::move(legs));
  }
  if (grounds < cfg.min_grounds) return std::nullopt;

  // Spanning tree.
  for (std::size_t i = 1; i < k; ++i) {
    if (!cfg.require_connected && draw_below(rng, 4) == 0) continue;
    std::vector<std::size_t> order(i);
    for (std::size_t j = 0; j < i; ++j) order[j] = j;
    for (std::size_t j = i; j > 1; --j)
      std::swap(order[j - 1], order[draw_below(rng, j)]);
    bool joined = false;
    for (std::size_t j : order) {
      auto opts = pairings(d, i, j);
      if (opts.empty()) continue;
      join(d, i, j, opts[draw_below(rng, opts.size())]);
      joined = true;
      break;
    }
    if (!joined) return std::nullopt;
  }

  // Extra internal edges close cycles.
  if (!cfg.require_acyclic && k > 1) {
    const std::size_t extra = draw_below(rng, 3);
    for (std::size_t x = 0; x < extra; ++x) {
      const std::size_t a = draw_below(rng, k);
      std::size_t b = draw_below(rng, k - 1);
      if (b >= a) ++b;
      auto opts = pairings(d, a, b);
      if (!opts.empty()) join(d, a, b, opts[draw_below(rng, opts.size())]);
    }
  }

  // Leftover legs go to the boundary.
  std::size_t n_in = 0, n_out = 0;
  for (auto& legs : d.free)
    for (auto& n : legs) {
      if (n == kAny) {
        const bool room_in = n_in < cfg.max_inputs;
        const bool room_out = n_out < cfg.max_outputs;
        if (room_in && room_out)
          n = draw_below(rng, 2) ? kIn : kOut;
        else
          n = room_in ? kIn : kOut;
      }
      (n == kIn ? n_in : n_out)++;
    }
  if (n_in > cfg.max_inputs || n_out > cfg.max_outputs) return std::nullopt;
  for (std::size_t g = 0; g < k; ++g)
    for (auto n : d.free[g]) {
      const EdgeId e = d.fresh();
      if (n == kIn) {
        d.gens[g].inputs.push_back(e);
        d.inputs.push_back(e);
      } else {
        d.gens[g].outputs.push_back(e);
        d.outputs.push_back(e);
      }
    }
  for (auto* slots : {&d.inputs, &d.outputs})
    for (std::size_t j = slots->size(); j > 1; --j)
      std::swap((*slots)[j - 1], (*slots)[draw_below(rng, j)]);

  std::vector<std::string> names(d.next_edge);
  return with_default_labels(Diagram::from_parts(
      std::move(d.gens), std::move(names), std::move(d.inputs),
      std::move(d.outputs)));
}

bool parse_flag(const std::string& v) { return v == "1" || v == "true"; }

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ParseError("bad value '" + v + "' for " + key, 0);
  return out;
}

}  // namespace

Diagram random_diagram(const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < kAttempts; ++i)
    if (auto d = attempt(cfg, rng)) return *d;
  throw Error("no random diagram fits the configured limits");
}

GenConfig parse_gen_config(const std::string& text, GenConfig base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value in '" + item + "'", 0);
    const std::string key = item.substr(0, eq), v = item.substr(eq + 1);
    if (key == "seed") base.seed = parse_u64(key, v);
    else if (key == "gens") base.max_generators = parse_u64(key, v);
    else if (key == "inputs") base.max_inputs = parse_u64(key, v);
    else if (key == "outputs") base.max_outputs = parse_u64(key, v);
    else if (key == "arity") base.max_spider_arity = parse_u64(key, v);
    else if (key == "hadamard") base.allow_hadamard = parse_flag(v);
    else if (key == "cups") base.allow_cups = parse_flag(v);
    else if (key == "ground") base.allow_ground = parse_flag(v);
    else if (key == "grounds") base.max_grounds = parse_u64(key, v);
    else if (key == "min_grounds") base.min_grounds = parse_u64(key, v);
    else if (key == "connected") base.require_connected = parse_flag(v);
    else if (key == "acyclic") base.require_acyclic = parse_flag(v);
    else throw ParseError("unknown key '" + key + "'", 0);
  }
  return base;
}

}  // namespace zxtk
