#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/gaussian_rational.hpp"

namespace lpa::expr {

// Grammar:
//   equation := sum ('=' sum)*
//   sum      := ['+'|'-'] product (('+'|'-') product)*
//   product  := power (('*'|'/')? power)*      juxtaposition multiplies
//   power    := atom ('^' integer)?
//   atom     := number | 'i' | name | '(' sum ')' | '{' sum ',' sum '}'
// Names are [A-Za-z_][A-Za-z0-9_]*; the bare name "i" is the imaginary unit.
// Division is only allowed by constant subexpressions.
struct Node {
  enum class Kind { number, imag, name, add, mul, div, neg, pow, bracket };
  Kind kind = Kind::number;
  mpq_class value;  // number
  std::string name;
  unsigned exponent = 0;
  std::vector<std::shared_ptr<const Node>> args;
};
using NodePtr = std::shared_ptr<const Node>;

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(ErrorKind::parse, what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

NodePtr parse(const std::string& text);
// Splits on top-level '='.
std::vector<NodePtr> parse_equation(const std::string& text);

// Value of a subtree without names or brackets; nullopt-like failure throws.
GQ constant_value(const Node& n);
bool is_constant(const Node& n);
// All names occurring in the tree, sorted and unique.
std::vector<std::string> names_in(const Node& n);

template <class T>
struct Interp {
  std::function<T(const std::string&)> name;
  std::function<T(const GQ&)> constant;
  std::function<T(const T&, const T&)> add;
  std::function<T(const T&, const T&)> mul;
  std::function<T(const GQ&, const T&)> scale;
  // Empty means brackets are rejected.
  std::function<T(const T&, const T&)> bracket;
};

template <class T>
T evaluate(const Node& n, const Interp<T>& in) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::number:
    case K::imag:
      return in.constant(constant_value(n));
    case K::name:
      return in.name(n.name);
    case K::add: {
      T acc = evaluate(*n.args[0], in);
      for (std::size_t k = 1; k < n.args.size(); ++k) acc = in.add(acc, evaluate(*n.args[k], in));
      return acc;
    }
    case K::mul: {
      // Constant factors are folded into one scale.
      GQ c(1);
      bool have = false;
      T acc{};
      for (const auto& a : n.args) {
        if (is_constant(*a)) {
          c *= constant_value(*a);
          continue;
        }
        T v = evaluate(*a, in);
        acc = have ? in.mul(acc, v) : v;
        have = true;
      }
      if (!have) return in.constant(c);
      return c.is_one() ? acc : in.scale(c, acc);
    }
    case K::div: {
      GQ d = constant_value(*n.args[1]);
      if (d.is_zero()) throw Error(ErrorKind::parse, "division by zero");
      if (is_constant(*n.args[0])) return in.constant(constant_value(*n.args[0]) / d);
      return in.scale(d.inverse(), evaluate(*n.args[0], in));
    }
    case K::neg:
      if (is_constant(n)) return in.constant(constant_value(n));
      return in.scale(GQ(-1), evaluate(*n.args[0], in));
    case K::pow: {
      if (is_constant(n)) return in.constant(constant_value(n));
      T base = evaluate(*n.args[0], in);
      if (n.exponent == 0) return in.constant(GQ(1));
      T acc = base;
      for (unsigned e = 1; e < n.exponent; ++e) acc = in.mul(acc, base);
      return acc;
    }
    case K::bracket:
      if (!in.bracket) throw Error(ErrorKind::parse, "bracket not allowed here");
      return in.bracket(evaluate(*n.args[0], in), evaluate(*n.args[1], in));
  }
  throw Error(ErrorKind::internal, "bad expression node");
}

}  // namespace lpa::expr
