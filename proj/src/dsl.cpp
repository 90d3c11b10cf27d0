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

#include "zxtk/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "zxtk/error.hpp"

namespace zxtk {

namespace {

constexpr std::size_t kMaxLegs = 64;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DslNode parse() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    DslNode root = expr();
    skip();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return root;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == text_.size())
        throw ParseError(std::string("expected '") + c + "', got end of input",
                         pos_);
      throw ParseError(std::string("expected '") + c + "', got '" +
                           text_[pos_] + "'",
                       pos_);
    }
  }

  DslNode expr() {
    DslNode first = term();
    if (!peek(';')) return first;
    DslNode seq;
    seq.kind = DslNode::Kind::Seq;
    seq.begin = first.begin;
    seq.children.push_back(std::move(first));
    while (accept(';')) seq.children.push_back(term());
    seq.end = seq.children.back().end;
    return seq;
  }

  DslNode term() {
    DslNode first = atom();
    if (!peek('*')) return first;
    DslNode ten;
    ten.kind = DslNode::Kind::Tensor;
    ten.begin = first.begin;
    ten.children.push_back(std::move(first));
    while (accept('*')) ten.children.push_back(atom());
    ten.end = ten.children.back().end;
    return ten;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  DslNode atom() {
    skip();
    const std::size_t start = pos_;
    if (accept('(')) {
      DslNode inner = expr();
      expect(')');
      inner.begin = start;
      inner.end = pos_;
      return inner;
    }
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) {
      if (pos_ == text_.size())
        throw ParseError("expected a generator, got end of input", pos_);
      throw ParseError(std::string("expected a generator, got '") +
                           text_[pos_] + "'",
                       pos_);
    }
    DslNode node;
    node.name = std::string(text_.substr(start, pos_ - start));
    node.begin = start;
    if (node.name == "Z" || node.name == "X") {
      expect('(');
      node.n = count();
      expect(',');
      node.m = count();
      if (accept(',')) node.angle = angle();
      expect(')');
    } else if (node.name != "H" && node.name != "cup" && node.name != "cap" &&
               node.name != "ground" && node.name != "id" &&
               node.name != "swap") {
      throw ParseError("unknown generator '" + node.name + "'", start);
    }
    node.end = pos_;
    return node;
  }

  std::size_t count() {
    skip();
    const std::size_t start = pos_;
    std::size_t v = 0;
    auto res = std::from_chars(text_.data() + pos_,
                               text_.data() + text_.size(), v);
    if (res.ec != std::errc{} || res.ptr == text_.data() + pos_)
      throw ParseError("expected a leg count", start);
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    if (v > kMaxLegs)
      throw ParseError("leg count " + std::to_string(v) + " too large", start);
    return v;
  }

  Angle angle() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != ',' &&
           text_[pos_] != '\n' && text_[pos_] != '#')
      ++pos_;
    try {
      return Angle::parse(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError("bad angle '" +
                           std::string(text_.substr(start, pos_ - start)) + "'",
                       start + e.position());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view span(std::string_view text, std::size_t b, std::size_t e) {
  return text.substr(b, e - b);
}

Diagram build(const DslNode& node, std::string_view text) {
  switch (node.kind) {
    case DslNode::Kind::Atom:
      if (node.name == "Z") return z_spider(node.n, node.m, node.angle);
      if (node.name == "X") return red_spider(node.n, node.m, node.angle);
      if (node.name == "H") return hadamard();
      if (node.name == "cup") return cup();
      if (node.name == "cap") return cap();
      if (node.name == "ground") return ground();
      if (node.name == "id") return identity_wire();
      return swap_wires();
    case DslNode::Kind::Tensor: {
      Diagram acc = build(node.children.front(), text);
      for (std::size_t i = 1; i < node.children.size(); ++i)
        acc = tensor(acc, build(node.children[i], text));
      return acc;
    }
    case DslNode::Kind::Seq: {
      Diagram acc = build(node.children.front(), text);
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        const auto& child = node.children[i];
        Diagram next = build(child, text);
        if (acc.outputs().size() != next.inputs().size()) {
          throw ArityError(
              "cannot compose `" +
              std::string(span(text, node.children.front().begin,
                                node.children[i - 1].end)) +
              "` (" + std::to_string(acc.outputs().size()) +
              " outputs) with `" +
              std::string(span(text, child.begin, child.end)) + "` (" +
              std::to_string(next.inputs().size()) + " inputs)");
        }
        acc = compose(acc, next);
      }
      return acc;
    }
  }
  return {};
}

void format_into(const DslNode& node, std::string& out) {
  switch (node.kind) {
    case DslNode::Kind::Atom:
      out += node.name;
      if (node.name == "Z" || node.name == "X") {
        out += "(" + std::to_string(node.n) + "," + std::to_string(node.m);
        if (!node.angle.is_zero()) out += "," + node.angle.to_string();
        out += ")";
      }
      return;
    case DslNode::Kind::Tensor:
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += " * ";
        const auto& c = node.children[i];
        const bool paren = c.kind == DslNode::Kind::Seq;
        if (paren) out += "(";
        format_into(c, out);
        if (paren) out += ")";
      }
      return;
    case DslNode::Kind::Seq:
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += " ; ";
        format_into(node.children[i], out);
      }
      return;
  }
}

}  // namespace

DslNode parse_dsl_tree(std::string_view text) { return Parser(text).parse(); }

Diagram with_default_labels(const Diagram& d) {
  std::vector<std::string> names(d.num_edges());
  for (std::size_t j = 0; j < d.outputs().size(); ++j)
    names[d.outputs()[j].v] = "b" + std::to_string(j + 1);
  for (std::size_t i = 0; i < d.inputs().size(); ++i)
    names[d.inputs()[i].v] = "a" + std::to_string(i + 1);

  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, EdgeId>>
      internal;
  for (std::uint32_t e = 0; e < d.num_edges(); ++e) {
    const auto& edge = d.edge(EdgeId{e});
    if (edge.top.is_port() && edge.bottom.is_port())
      internal.push_back({{edge.top.index, edge.top.port}, EdgeId{e}});
  }
  std::sort(internal.begin(), internal.end());
  for (std::size_t k = 0; k < internal.size(); ++k)
    names[internal[k].second.v] = "e" + std::to_string(k + 1);
  return d.renamed(std::move(names));
}

Diagram parse_dsl(std::string_view text) {
  return with_default_labels(build(parse_dsl_tree(text), text));
}

std::string format_dsl(const DslNode& node) {
  std::string out;
  format_into(node, out);
  return out;
}

std::string canonical_dsl(std::string_view text) {
  return format_dsl(parse_dsl_tree(text));
}

}  // namespace zxtk
