#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lindop/operator.hpp"
#include "lindop/poly.hpp"
#include "lindop/tower.hpp"

namespace lindop {

// Position of a character in the source text, 1-based; columns count Unicode
// code points, not bytes.
struct SrcPos {
  long line = 1;
  long col = 1;
};

// Half-open is awkward for diagnostics, so spans are inclusive on both ends.
struct SrcSpan {
  SrcPos begin;
  SrcPos end;
};

enum class ExprKind {
  number,  // Gaussian rational literal (folded from integer arithmetic)
  z_var,   // the independent variable
  d_op,    // the derivation symbol D
  name,    // a declared generator
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  compose, // the @ operator
};

struct ExprAst;
using ExprPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
  ExprKind kind;
  GaussRat value;   // number
  std::string name; // name
  ExprPtr lhs, rhs; // rhs empty for neg
  SrcSpan span;
};

// Parses an expression over exact rationals, i, z, D, and generator names.
//
// Grammar (loosest to tightest): '+'/'-', then '*'/'/'/'@', then unary '-',
// then '^' (right-associative, base must be an atom). The Unicode signs
// U+00D7 and U+00F7 are accepted for '*' and '/'. Decimal literals are
// rejected; write exact fractions like 3/4 instead. Arithmetic between
// literals is folded, so "3/4" and "1 + i" each parse to a single number
// node.
//
// When `known_names` is given, any name outside it fails immediately; names
// are only ever declared through a tower configuration, so an unknown name
// is a parse error, not an evaluation error. Errors carry ErrorCode::parse
// and a "line L, column C" prefix.
ExprPtr parse_expr(const std::string& text,
                   const std::vector<std::string>* known_names = nullptr);

// Canonical rendering with minimal parentheses; parse_expr(render_expr(e))
// reproduces e up to spans.
std::string render_expr(const ExprPtr& e);

// Structural equality, ignoring spans.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// A differential tower together with the named generators living on it, in
// declaration order. Every element is kept lifted to the full tower.
struct TowerContext {
  TowerPtr tower;
  std::vector<std::pair<std::string, TowerElem>> named;

  TowerContext() : tower(Tower::base()) {}

  const TowerElem* find(const std::string& name) const;
  std::vector<std::string> names() const;
};

// Reads a tower configuration: one `gen NAME : KIND = ARG ;` statement per
// generator, `#` comments to end of line. KIND is one of
//   logderiv  NAME' / NAME = ARG
//   exp       NAME' / NAME = ARG   (alias of logderiv, for exponentials)
//   prim      NAME'        = ARG
//   root      NAME^ARG     = z     (ARG a positive integer literal)
// ARG is an expression over z and the generators declared above it. The
// names z, i, and D are reserved.
TowerContext parse_tower_config(const std::string& text);

// Result of evaluating an expression: either a field element or an operator.
struct Value {
  bool is_op = false;
  TowerElem elem;
  LinOp op;

  static Value of(TowerElem e);
  static Value of(LinOp o);
};

// Evaluates over the context's tower. Mixed sums lift elements to order-zero
// operators; '*' between two operators is rejected (composition is spelled
// '@'); '/' by an operator is rejected; '^' needs an exact integer exponent,
// nonnegative when the base is an operator. Type errors carry
// ErrorCode::parse and the span of the offending node.
Value evaluate(const ExprPtr& e, const TowerContext& ctx);

// Renders a truncated expansion at infinity, e.g. "z^2 - 1/4 + O(z^(-1/2))".
std::string series_str(const InfSeries& s);

} // namespace lindop
