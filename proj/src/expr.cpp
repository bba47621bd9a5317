#include "isom4d/expr.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace isom4d {

struct Expr::Node {
  enum class Kind { Const, Param, Add, Sub, Mul, Neg };
  Kind kind;
  Rational value;    // Const
  std::string name;  // Param
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        const char op = take();
        NodePtr rhs = term();
        auto n = std::make_shared<Expr::Node>();
        n->kind = op == '+' ? Expr::Node::Kind::Add : Expr::Node::Kind::Sub;
        n->lhs = lhs;
        n->rhs = rhs;
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        take();
        NodePtr rhs = factor();
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Mul;
        n->lhs = lhs;
        n->rhs = rhs;
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_ws();
    const char c = peek();
    if (c == '-') {
      take();
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::Kind::Neg;
      n->lhs = factor();
      return n;
    }
    if (c == '(') {
      take();
      NodePtr inner = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      take();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    fail("unexpected character");
    return nullptr;
  }

  NodePtr number() {
    const std::string num = digits();
    std::string den = "1";
    if (peek() == '/') {
      take();
      den = digits();
    }
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Const;
    n->value = Rational::from_string(num + "/" + den);
    return n;
  }

  NodePtr ident() {
    std::string name;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      name += src_[pos_++];
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Param;
    n->name = std::move(name);
    return n;
  }

  std::string digits() {
    std::string out;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      out += src_[pos_++];
    if (out.empty()) fail("expected digits");
    return out;
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  char take() { return src_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("Expr: " + what + " at offset " + std::to_string(pos_) + " in '" +
                                std::string(src_) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

Rational eval_node(const NodePtr& n, const Expr::Env& env) {
  using K = Expr::Node::Kind;
  switch (n->kind) {
    case K::Const: return n->value;
    case K::Param: {
      const auto it = env.find(n->name);
      if (it == env.end()) throw std::invalid_argument("Expr: unbound parameter '" + n->name + "'");
      return it->second;
    }
    case K::Add: return eval_node(n->lhs, env) + eval_node(n->rhs, env);
    case K::Sub: return eval_node(n->lhs, env) - eval_node(n->rhs, env);
    case K::Mul: return eval_node(n->lhs, env) * eval_node(n->rhs, env);
    case K::Neg: return -eval_node(n->lhs, env);
  }
  throw std::logic_error("Expr: bad node");
}

void collect_node(const NodePtr& n, std::set<std::string>& out) {
  using K = Expr::Node::Kind;
  switch (n->kind) {
    case K::Const: return;
    case K::Param: out.insert(n->name); return;
    case K::Neg: collect_node(n->lhs, out); return;
    default:
      collect_node(n->lhs, out);
      collect_node(n->rhs, out);
  }
}

Expr::Monomials expand_node(const NodePtr& n) {
  using K = Expr::Node::Kind;
  Expr::Monomials out;
  auto add_term = [](Expr::Monomials& acc, const std::vector<std::string>& key, const Rational& c) {
    auto [it, inserted] = acc.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    } else if (c.is_zero()) {
      acc.erase(it);
    }
  };
  switch (n->kind) {
    case K::Const:
      add_term(out, {}, n->value);
      return out;
    case K::Param:
      add_term(out, {n->name}, Rational(1));
      return out;
    case K::Neg:
      for (auto& [key, c] : expand_node(n->lhs)) add_term(out, key, -c);
      return out;
    case K::Add: {
      out = expand_node(n->lhs);
      for (auto& [key, c] : expand_node(n->rhs)) add_term(out, key, c);
      return out;
    }
    case K::Sub: {
      out = expand_node(n->lhs);
      for (auto& [key, c] : expand_node(n->rhs)) add_term(out, key, -c);
      return out;
    }
    case K::Mul: {
      const auto a = expand_node(n->lhs), b = expand_node(n->rhs);
      for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
          std::vector<std::string> key = ka;
          key.insert(key.end(), kb.begin(), kb.end());
          std::sort(key.begin(), key.end());
          add_term(out, key, ca * cb);
        }
      return out;
    }
  }
  throw std::logic_error("Expr: bad node");
}

}  // namespace

Expr Expr::parse(std::string_view source) {
  Expr e;
  e.root_ = Parser(source).run();
  e.src_ = std::string(source);
  return e;
}

Expr Expr::constant(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Const;
  n->value = c;
  Expr e;
  e.root_ = n;
  e.src_ = c.str();
  return e;
}

Rational Expr::eval(const Env& env) const {
  if (!root_) throw std::logic_error("Expr: empty");
  return eval_node(root_, env);
}

void Expr::collect_params(std::set<std::string>& out) const {
  if (root_) collect_node(root_, out);
}

Expr::Monomials Expr::expand() const {
  if (!root_) throw std::logic_error("Expr: empty");
  return expand_node(root_);
}

int Expr::degree() const {
  int deg = 0;
  for (const auto& [key, c] : expand()) deg = std::max(deg, static_cast<int>(key.size()));
  return deg;
}

}  // namespace isom4d
