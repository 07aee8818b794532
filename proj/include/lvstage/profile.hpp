#ifndef LVSTAGE_PROFILE_HPP
#define LVSTAGE_PROFILE_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lvstage/grid.hpp"

namespace lvstage {

enum class MplusMode {
  None,     // no positivity requirement
  Strict,   // m > 0 at every node (assumption on the growth rates)
  Relaxed,  // m >= 0 allowed, zeros reported through the warning channel
};

namespace detail {
struct ExprNode;
}

/// Spatial profile: either an immutable expression AST over
///   expr := term (('+'|'-') term)* ;
///   term := factor (('*'|'/') factor)* ;
///   factor := NUMBER | 'x' | ('cos'|'sin'|'exp') '(' expr ')' | '-' factor | '(' expr ')'
/// or tabulated samples with linear interpolation.
class Profile {
 public:
  /// Parses an expression. Syntax and unknown-identifier errors carry the
  /// byte offset in the message.
  static Profile parse(std::string_view text);

  /// Piecewise-linear profile through (xs[i], ys[i]); xs strictly increasing.
  /// Evaluation clamps to the end values outside [xs.front(), xs.back()].
  static Profile tabulated(std::vector<double> xs, std::vector<double> ys);

  double eval(double x) const;

  /// Fully parenthesized text that re-parses to an identical AST. Only
  /// expression profiles are printable.
  std::string print() const;
  bool is_expression() const noexcept { return ast_ != nullptr; }

  Field sample(const Grid& grid) const;

  /// Samples and enforces the requested positivity mode. Violations raise
  /// MplusViolation listing the offending nodes; in Relaxed mode zeros are
  /// tolerated and reported by appending to *warning (when non-null).
  Field sample(const Grid& grid, MplusMode mode, std::string* warning = nullptr) const;

 private:
  Profile() = default;

  std::shared_ptr<const detail::ExprNode> ast_;
  std::shared_ptr<const std::pair<std::vector<double>, std::vector<double>>> table_;
};

}  // namespace lvstage

#endif
