#include "lpa/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace lpa::expr {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  std::vector<NodePtr> equation() {
    std::vector<NodePtr> parts{sum()};
    while (peek() == '=') {
      ++pos_;
      parts.push_back(sum());
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return parts;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  static NodePtr make(Node::Kind k, std::vector<NodePtr> args) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    return n;
  }

  NodePtr sum() {
    std::vector<NodePtr> terms;
    char c = peek();
    bool negate = false;
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    NodePtr t = product();
    terms.push_back(negate ? make(Node::Kind::neg, {t}) : t);
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      t = product();
      terms.push_back(c == '-' ? make(Node::Kind::neg, {t}) : t);
    }
    return terms.size() == 1 ? terms[0] : make(Node::Kind::add, std::move(terms));
  }

  static bool starts_atom(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '{' || c == '.';
  }

  NodePtr product() {
    std::vector<NodePtr> factors{power()};
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        factors.push_back(power());
      } else if (c == '/') {
        ++pos_;
        NodePtr d = power();
        if (!is_constant(*d)) fail("division by a non-constant");
        NodePtr lhs = factors.size() == 1 ? factors[0] : make(Node::Kind::mul, factors);
        factors = {make(Node::Kind::div, {lhs, d})};
      } else if (starts_atom(c)) {
        factors.push_back(power());
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors[0] : make(Node::Kind::mul, std::move(factors));
  }

  NodePtr power() {
    NodePtr a = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::pow;
      n->exponent = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
      n->args = {a};
      return n;
    }
    return a;
  }

  NodePtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr e = sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '{') {
      ++pos_;
      NodePtr a = sum();
      if (peek() != ',') fail("expected ','");
      ++pos_;
      NodePtr b = sum();
      if (peek() != '}') fail("expected '}'");
      ++pos_;
      return make(Node::Kind::bracket, {a, b});
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpq_class v(s_.substr(start, pos_ - start));
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        std::size_t fs = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (fs == pos_ && start + 1 == pos_) fail("bad number");
        if (pos_ > fs) {
          mpz_class den;
          mpz_ui_pow_ui(den.get_mpz_t(), 10, pos_ - fs);
          v += mpq_class(mpz_class(s_.substr(fs, pos_ - fs)), den);
        }
      }
      v.canonicalize();
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto n = std::make_shared<Node>();
      n->name = s_.substr(start, pos_ - start);
      n->kind = n->name == "i" ? Node::Kind::imag : Node::Kind::name;
      return n;
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void collect(const Node& n, std::set<std::string>& out) {
  if (n.kind == Node::Kind::name) out.insert(n.name);
  for (const auto& a : n.args) collect(*a, out);
}

}  // namespace

NodePtr parse(const std::string& text) {
  auto parts = Parser(text).equation();
  if (parts.size() != 1) throw ParseError("unexpected '='", 0);
  return parts[0];
}

std::vector<NodePtr> parse_equation(const std::string& text) { return Parser(text).equation(); }

bool is_constant(const Node& n) {
  switch (n.kind) {
    case Node::Kind::number:
    case Node::Kind::imag:
      return true;
    case Node::Kind::name:
    case Node::Kind::bracket:
      return false;
    default:
      return std::all_of(n.args.begin(), n.args.end(), [](const NodePtr& a) { return is_constant(*a); });
  }
}

GQ constant_value(const Node& n) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::number:
      return GQ(n.value);
    case K::imag:
      return GQ::imag_unit();
    case K::add: {
      GQ acc;
      for (const auto& a : n.args) acc += constant_value(*a);
      return acc;
    }
    case K::mul: {
      GQ acc(1);
      for (const auto& a : n.args) acc *= constant_value(*a);
      return acc;
    }
    case K::div: {
      GQ d = constant_value(*n.args[1]);
      if (d.is_zero()) throw Error(ErrorKind::parse, "division by zero");
      return constant_value(*n.args[0]) / d;
    }
    case K::neg:
      return -constant_value(*n.args[0]);
    case K::pow: {
      GQ b = constant_value(*n.args[0]), acc(1);
      for (unsigned e = 0; e < n.exponent; ++e) acc *= b;
      return acc;
    }
    default:
      throw Error(ErrorKind::parse, "expression is not constant");
  }
}

std::vector<std::string> names_in(const Node& n) {
  std::set<std::string> s;
  collect(n, s);
  return {s.begin(), s.end()};
}

}  // namespace lpa::expr
