#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "isom4d/rational.hpp"

namespace isom4d {

/// Tiny arithmetic expression over named parameters and rational literals
/// with +, - and *. This is the grammar used by the matrix-family templates
/// and their on-disk export; it is parsed by a hand-written recursive-descent
/// parser and is the only parsing surface in the library.
///
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | '(' expr ')' | NUMBER | IDENT
///   NUMBER := digits ('/' digits)?
class Expr {
 public:
  using Env = std::map<std::string, Rational>;
  /// Monomial expansion: sorted variable multiset -> coefficient.
  using Monomials = std::map<std::vector<std::string>, Rational>;

  Expr() = default;
  static Expr parse(std::string_view source);
  static Expr constant(const Rational& c);

  Rational eval(const Env& env) const;
  void collect_params(std::set<std::string>& out) const;
  Monomials expand() const;
  /// Largest monomial degree; 0 for constants.
  int degree() const;

  const std::string& source() const { return src_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string src_;
};

}  // namespace isom4d
