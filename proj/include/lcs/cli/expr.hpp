#pragma once

#include <string>
#include <vector>

#include "lcs/chart.hpp"
#include "lcs/error.hpp"

namespace lcs::cli {

/// Syntax or name error; `position` is a 0-based character offset.
class ExprError : public Error {
 public:
  ExprError(const std::string& what, std::size_t position) : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' unary)?
///   atom  := number | name | func '(' expr ')' | '(' expr ')'
/// with func in {sin, cos, exp, log} and the constants pi, e. `names[i]`
/// refers to coordinate i of `domain`.
ScalarField parse_expression(const std::string& text, const ModelManifold& domain,
                             const std::vector<std::string>& names);

/// Value of a closed expression (no coordinates).
double parse_constant(const std::string& text);

}  // namespace lcs::cli
