#ifndef PRIMESYM_CONDITION_DSL_HPP_
#define PRIMESYM_CONDITION_DSL_HPP_

// A small language for integer side conditions, e.g.
//
//   m >= 2 and power_of(m*f, 2) and m*f > 2
//   m == n -> p == 2
//   not (r^2 | n)
//
// Expressions: integers, variables, + - * / ^ and parentheses; '/' is exact
// division (undefined otherwise) and log(x, b) is the exponent e with
// x = b^e (undefined if none). Predicates: prime(x), odd(x), even(x),
// power_of(x, b) (x = b^e for some e >= 0). Relations: == != < <= > >=, and
// a | b for divisibility. Connectives: not, and, or, -> (lowest).
// A condition involving an undefined value is false.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primesym/bignat.hpp"
#include "primesym/errors.hpp"
#include "primesym/primes.hpp"

namespace primesym::dsl {

using Bindings = std::map<std::string, BigNat, std::less<>>;

struct Node {
  enum class Kind {
    number,
    variable,
    add,
    sub,
    mul,
    div,
    pow,
    log,
    prime,
    odd,
    even,
    power_of,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    divides,
    not_,
    and_,
    or_,
    implies
  };
  Kind                  kind;
  BigNat                value;
  std::string           name;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

using Value = std::optional<BigNat>;

inline Value evaluate(Node const& node, Bindings const& env);

namespace detail {

  inline Value log_exact(BigNat x, BigNat const& b) {
    if (x < 1 || b < 2) {
      return std::nullopt;
    }
    BigNat e = 0;
    while (x % b == 0) {
      x /= b;
      ++e;
    }
    if (x != 1) {
      return std::nullopt;
    }
    return e;
  }

  inline Value truth(bool v) { return BigNat(v ? 1 : 0); }

}  // namespace detail

inline Value evaluate(Node const& node, Bindings const& env) {
  using K = Node::Kind;
  auto lhs = [&] { return evaluate(*node.lhs, env); };
  auto rhs = [&] { return evaluate(*node.rhs, env); };
  switch (node.kind) {
    case K::number: return node.value;
    case K::variable: {
      auto it = env.find(node.name);
      if (it == env.end()) {
        throw InvalidParams("unbound variable '" + node.name + "'");
      }
      return it->second;
    }
    case K::not_: {
      auto a = lhs();
      return detail::truth(!(a && *a != 0));
    }
    case K::and_: {
      auto a = lhs();
      if (!(a && *a != 0)) {
        return detail::truth(false);
      }
      auto b = rhs();
      return detail::truth(b && *b != 0);
    }
    case K::or_: {
      auto a = lhs();
      if (a && *a != 0) {
        return detail::truth(true);
      }
      auto b = rhs();
      return detail::truth(b && *b != 0);
    }
    case K::implies: {
      auto a = lhs();
      if (!(a && *a != 0)) {
        return detail::truth(true);
      }
      auto b = rhs();
      return detail::truth(b && *b != 0);
    }
    case K::prime:
    case K::odd:
    case K::even: {
      auto a = lhs();
      if (!a) {
        return std::nullopt;
      }
      if (node.kind == K::prime) {
        return detail::truth(*a >= 2 && is_prime(*a));
      }
      bool odd = (*a % 2) != 0;
      return detail::truth(node.kind == K::odd ? odd : !odd);
    }
    default: break;
  }
  auto a = lhs();
  auto b = rhs();
  if (!a || !b) {
    return std::nullopt;
  }
  switch (node.kind) {
    case K::add: return *a + *b;
    case K::sub: return *a - *b;
    case K::mul: return *a * *b;
    case K::div:
      if (*b == 0 || *a % *b != 0) {
        return std::nullopt;
      }
      return *a / *b;
    case K::pow:
      if (*b < 0 || *b > 100000) {
        return std::nullopt;
      }
      return big_pow(*a, static_cast<unsigned long>(*b));
    case K::log: return detail::log_exact(*a, *b);
    case K::power_of: return detail::truth(detail::log_exact(*a, *b).has_value());
    case K::eq: return detail::truth(*a == *b);
    case K::ne: return detail::truth(*a != *b);
    case K::lt: return detail::truth(*a < *b);
    case K::le: return detail::truth(*a <= *b);
    case K::gt: return detail::truth(*a > *b);
    case K::ge: return detail::truth(*a >= *b);
    case K::divides: return detail::truth(*a != 0 && *b % *a == 0);
    default: break;
  }
  throw InvalidParams("malformed expression node");
}

inline bool holds(Node const& node, Bindings const& env) {
  auto v = evaluate(node, env);
  return v && *v != 0;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<Node> parse() {
    auto node = implication();
    skip();
    if (pos_ != text_.size()) {
      fail("unexpected trailing input");
    }
    return node;
  }

 private:
  using K = Node::Kind;

  [[noreturn]] void fail(std::string const& why) const {
    throw ParseError("condition '" + std::string(text_) + "' col "
                     + std::to_string(pos_ + 1) + ": " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) != token) {
      return false;
    }
    if (std::isalpha(static_cast<unsigned char>(token.back()))) {
      std::size_t end = pos_ + token.size();
      if (end < text_.size()
          && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        return false;
      }
    }
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) {
      fail("expected '" + std::string(token) + "'");
    }
  }

  static std::unique_ptr<Node> make(K kind, std::unique_ptr<Node> a,
                                    std::unique_ptr<Node> b = nullptr) {
    auto n  = std::make_unique<Node>();
    n->kind = kind;
    n->lhs  = std::move(a);
    n->rhs  = std::move(b);
    return n;
  }

  std::unique_ptr<Node> implication() {
    auto a = disjunction();
    if (accept("->")) {
      return make(K::implies, std::move(a), implication());
    }
    return a;
  }

  std::unique_ptr<Node> disjunction() {
    auto a = conjunction();
    while (accept("or")) {
      a = make(K::or_, std::move(a), conjunction());
    }
    return a;
  }

  std::unique_ptr<Node> conjunction() {
    auto a = negation();
    while (accept("and")) {
      a = make(K::and_, std::move(a), negation());
    }
    return a;
  }

  std::unique_ptr<Node> negation() {
    if (accept("not")) {
      return make(K::not_, negation());
    }
    return relation();
  }

  std::unique_ptr<Node> relation() {
    auto a = sum();
    static constexpr std::pair<std::string_view, K> ops[] = {
        {"==", K::eq}, {"!=", K::ne}, {"<=", K::le}, {">=", K::ge},
        {"<", K::lt},  {">", K::gt},  {"|", K::divides}};
    for (auto [token, kind] : ops) {
      skip();
      // "->" must not be read as '-' followed by '>'.
      if (accept(token)) {
        return make(kind, std::move(a), sum());
      }
    }
    return a;
  }

  std::unique_ptr<Node> sum() {
    auto a = product();
    while (true) {
      skip();
      if (pos_ + 1 < text_.size() && text_.substr(pos_, 2) == "->") {
        return a;
      }
      if (accept("+")) {
        a = make(K::add, std::move(a), product());
      } else if (accept("-")) {
        a = make(K::sub, std::move(a), product());
      } else {
        return a;
      }
    }
  }

  std::unique_ptr<Node> product() {
    auto a = power();
    while (true) {
      if (accept("*")) {
        a = make(K::mul, std::move(a), power());
      } else if (accept("/")) {
        a = make(K::div, std::move(a), power());
      } else {
        return a;
      }
    }
  }

  std::unique_ptr<Node> power() {
    auto a = atom();
    if (accept("^")) {
      return make(K::pow, std::move(a), power());
    }
    return a;
  }

  std::unique_ptr<Node> atom() {
    skip();
    if (accept("(")) {
      auto a = implication();
      expect(")");
      return a;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      auto n   = std::make_unique<Node>();
      n->kind  = K::number;
      n->value = BigNat(std::string(text_.substr(start, pos_ - start)));
      return n;
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      std::size_t start = pos_;
      while (pos_ < text_.size()
             && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      static std::map<std::string, std::pair<K, int>, std::less<>> const functions{
          {"prime", {K::prime, 1}}, {"odd", {K::odd, 1}},
          {"even", {K::even, 1}},   {"power_of", {K::power_of, 2}},
          {"log", {K::log, 2}}};
      if (auto it = functions.find(name); it != functions.end()) {
        expect("(");
        auto a = sum();
        std::unique_ptr<Node> b;
        if (it->second.second == 2) {
          expect(",");
          b = sum();
        }
        expect(")");
        return make(it->second.first, std::move(a), std::move(b));
      }
      auto n  = std::make_unique<Node>();
      n->kind = K::variable;
      n->name = std::move(name);
      return n;
    }
    fail("expected a number, variable or '('");
  }

  std::string_view text_;
  std::size_t      pos_ = 0;
};

inline std::unique_ptr<Node> parse(std::string_view text) {
  return Parser(text).parse();
}

}  // namespace primesym::dsl

#endif  // PRIMESYM_CONDITION_DSL_HPP_
