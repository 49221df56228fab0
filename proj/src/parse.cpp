#include "lindop/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "lindop/error.hpp"

namespace lindop {

namespace {

std::string pos_str(const SrcPos& p) {
  return "line " + std::to_string(p.line) + ", column " + std::to_string(p.col);
}

std::string span_str(const SrcSpan& sp) {
  if (sp.begin.line == sp.end.line) {
    if (sp.begin.col == sp.end.col) return pos_str(sp.begin);
    return "line " + std::to_string(sp.begin.line) + ", columns " +
           std::to_string(sp.begin.col) + "-" + std::to_string(sp.end.col);
  }
  return pos_str(sp.begin) + " to " + pos_str(sp.end);
}

[[noreturn]] void parse_fail(const SrcPos& p, const std::string& msg) {
  fail(ErrorCode::parse, pos_str(p) + ": " + msg);
}

[[noreturn]] void type_fail(const SrcSpan& sp, const std::string& msg) {
  fail(ErrorCode::parse, span_str(sp) + ": " + msg);
}

// ---------------------------------------------------------------------------
// Rendering of monomials, shared by Poly::str, RatFun::str and series_str.

std::string power_str(const Rat& e) {
  if (e.is_one()) return "z";
  if (e.is_integer() && e.sign() > 0) return "z^" + e.str();
  return "z^(" + e.str() + ")";
}

// `a` is sign-normalized (leading rational part positive); the caller has
// already emitted the sign.
std::string term_str(const GaussRat& a, const Rat& e) {
  if (e.is_zero()) return a.is_real() ? a.re().str() : "(" + a.str() + ")";
  if (a.is_one()) return power_str(e);
  bool bare = a.is_real() && a.re().is_integer();
  std::string c = bare ? a.re().str() : "(" + a.str() + ")";
  return c + "*" + power_str(e);
}

bool leading_negative(const GaussRat& c) {
  return c.re().sign() < 0 || (c.re().is_zero() && c.im().sign() < 0);
}

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum Kind {
    num,
    name,
    z_kw,
    i_kw,
    d_kw,
    plus,
    minus,
    star,
    slash,
    at,
    caret,
    lpar,
    rpar,
    end,
  } kind;
  std::string text;
  SrcPos pos;  // first character
  SrcPos epos; // last character, inclusive
};

bool word_start(unsigned char b) { return std::isalpha(b) || b == '_'; }
bool word_char(unsigned char b) {
  return std::isalnum(b) || b == '_' || b == '\'';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  long line = 1, col = 1;
  auto push1 = [&](Token::Kind k, size_t bytes) {
    out.push_back({k, s.substr(i, bytes), {line, col}, {line, col}});
    i += bytes;
    ++col;
  };
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    if (b == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (b == ' ' || b == '\t' || b == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (std::isdigit(b)) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      long n = static_cast<long>(j - i);
      if (j < s.size() && s[j] == '.')
        parse_fail({line, col + n},
                   "decimal literals are not supported; use an exact fraction");
      out.push_back(
          {Token::num, s.substr(i, j - i), {line, col}, {line, col + n - 1}});
      i = j;
      col += n;
      continue;
    }
    if (word_start(b)) {
      size_t j = i;
      while (j < s.size() && word_char(static_cast<unsigned char>(s[j]))) ++j;
      long n = static_cast<long>(j - i);
      std::string w = s.substr(i, j - i);
      Token::Kind k = w == "z"   ? Token::z_kw
                      : w == "i" ? Token::i_kw
                      : w == "D" ? Token::d_kw
                                 : Token::name;
      out.push_back({k, std::move(w), {line, col}, {line, col + n - 1}});
      i = j;
      col += n;
      continue;
    }
    switch (b) {
      case '+': push1(Token::plus, 1); continue;
      case '-': push1(Token::minus, 1); continue;
      case '*': push1(Token::star, 1); continue;
      case '/': push1(Token::slash, 1); continue;
      case '@': push1(Token::at, 1); continue;
      case '^': push1(Token::caret, 1); continue;
      case '(': push1(Token::lpar, 1); continue;
      case ')': push1(Token::rpar, 1); continue;
      case '.':
        parse_fail({line, col},
                   "decimal literals are not supported; use an exact fraction");
      default: break;
    }
    if (b == 0xC3 && i + 1 < s.size()) {
      unsigned char b2 = static_cast<unsigned char>(s[i + 1]);
      if (b2 == 0x97) { // multiplication sign
        push1(Token::star, 2);
        continue;
      }
      if (b2 == 0xB7) { // division sign
        push1(Token::slash, 2);
        continue;
      }
    }
    if (b >= 0x80) parse_fail({line, col}, "invalid character");
    parse_fail({line, col},
               std::string("invalid character '") + static_cast<char>(b) + "'");
  }
  out.push_back({Token::end, "", {line, col}, {line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser with constant folding over literals

ExprPtr mk_num(const GaussRat& v, SrcSpan sp) {
  auto e = std::make_shared<ExprAst>();
  e->kind = ExprKind::number;
  e->value = v;
  e->span = sp;
  return e;
}

ExprPtr mk_leaf(ExprKind k, std::string name, SrcSpan sp) {
  auto e = std::make_shared<ExprAst>();
  e->kind = k;
  e->name = std::move(name);
  e->span = sp;
  return e;
}

ExprPtr mk_neg(ExprPtr a, SrcPos begin) {
  SrcSpan sp{begin, a->span.end};
  if (a->kind == ExprKind::number) return mk_num(-a->value, sp);
  auto e = std::make_shared<ExprAst>();
  e->kind = ExprKind::neg;
  e->lhs = std::move(a);
  e->span = sp;
  return e;
}

ExprPtr mk_bin(ExprKind k, ExprPtr l, ExprPtr r) {
  SrcSpan sp{l->span.begin, r->span.end};
  if (l->kind == ExprKind::number && r->kind == ExprKind::number) {
    const GaussRat& a = l->value;
    const GaussRat& b = r->value;
    switch (k) {
      case ExprKind::add: return mk_num(a + b, sp);
      case ExprKind::sub: return mk_num(a - b, sp);
      case ExprKind::mul: return mk_num(a * b, sp);
      case ExprKind::div:
        if (!b.is_zero()) return mk_num(a / b, sp);
        break;
      case ExprKind::pow:
        if (b.is_real() && b.re().is_integer()) {
          Int n = b.re().num();
          if (n.fits_slong_p()) {
            long e = n.get_si();
            if (std::abs(e) <= (1L << 20) && (e >= 0 || !a.is_zero()))
              return mk_num(a.pow(e), sp);
          }
        }
        break;
      default: break;
    }
  }
  auto e = std::make_shared<ExprAst>();
  e->kind = k;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  e->span = sp;
  return e;
}

struct Parser {
  const std::vector<Token>& t;
  const std::vector<std::string>* known;
  size_t p = 0;

  const Token& peek() const { return t[p]; }
  Token take() { return t[p++]; }

  ExprPtr run() {
    ExprPtr e = addsub();
    if (peek().kind != Token::end)
      parse_fail(peek().pos, "unexpected '" + peek().text + "'");
    return e;
  }

  ExprPtr addsub() {
    ExprPtr l = muldiv();
    while (peek().kind == Token::plus || peek().kind == Token::minus) {
      Token op = take();
      l = mk_bin(op.kind == Token::plus ? ExprKind::add : ExprKind::sub,
                 std::move(l), muldiv());
    }
    return l;
  }

  ExprPtr muldiv() {
    ExprPtr l = unary();
    for (;;) {
      Token::Kind k = peek().kind;
      if (k != Token::star && k != Token::slash && k != Token::at) return l;
      take();
      ExprKind ek = k == Token::star    ? ExprKind::mul
                    : k == Token::slash ? ExprKind::div
                                        : ExprKind::compose;
      l = mk_bin(ek, std::move(l), unary());
    }
  }

  ExprPtr unary() {
    if (peek().kind == Token::minus) {
      Token op = take();
      return mk_neg(unary(), op.pos);
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (peek().kind != Token::caret) return base;
    take();
    return mk_bin(ExprKind::pow, std::move(base), unary());
  }

  ExprPtr atom() {
    const Token& tok = peek();
    SrcSpan sp{tok.pos, tok.epos};
    switch (tok.kind) {
      case Token::num: {
        GaussRat v(Rat::of_int(Int(tok.text)));
        take();
        return mk_num(v, sp);
      }
      case Token::i_kw:
        take();
        return mk_num(GaussRat::i(), sp);
      case Token::z_kw:
        take();
        return mk_leaf(ExprKind::z_var, "", sp);
      case Token::d_kw:
        take();
        return mk_leaf(ExprKind::d_op, "", sp);
      case Token::name: {
        if (known &&
            std::find(known->begin(), known->end(), tok.text) == known->end())
          parse_fail(tok.pos, "unknown generator '" + tok.text + "'");
        std::string n = tok.text;
        take();
        return mk_leaf(ExprKind::name, std::move(n), sp);
      }
      case Token::lpar: {
        Token lp = take();
        ExprPtr e = addsub();
        if (peek().kind != Token::rpar)
          parse_fail(peek().pos, "expected ')'");
        Token rp = take();
        auto w = std::make_shared<ExprAst>(*e);
        w->span = {lp.pos, rp.epos};
        return w;
      }
      default:
        parse_fail(tok.pos, "expected an expression");
    }
  }
};

// ---------------------------------------------------------------------------
// Rendering of expressions

// Effective precedence of a rendered literal: 1 if it contains a top-level
// sum, 2 if it needs a '/' or '*i', 3 if it carries a leading minus, else
// atomic.
int num_prec(const GaussRat& v) {
  if (!v.re().is_zero() && !v.im().is_zero()) return 1;
  const Rat& part = v.is_real() ? v.re() : v.im();
  if (!part.is_integer()) return 2;
  if (!v.is_real() && !part.abs().is_one()) return 2;
  if (part.sign() < 0) return 3;
  return 5;
}

std::string num_str(const GaussRat& v) {
  if (v.is_real()) return v.re().str();
  Rat a = v.im().abs();
  std::string im = a.is_one() ? "i" : a.str() + "*i";
  if (v.re().is_zero()) return (v.im().sign() < 0 ? "-" : "") + im;
  return v.re().str() + (v.im().sign() < 0 ? " - " : " + ") + im;
}

int prec(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::number: return num_prec(e->value);
    case ExprKind::z_var:
    case ExprKind::d_op:
    case ExprKind::name: return 5;
    case ExprKind::pow: return 4;
    case ExprKind::neg: return 3;
    case ExprKind::mul:
    case ExprKind::div:
    case ExprKind::compose: return 2;
    case ExprKind::add:
    case ExprKind::sub: return 1;
  }
  return 5;
}

std::string render(const ExprPtr& e);

std::string wrap(const ExprPtr& e, int need) {
  std::string s = render(e);
  if (prec(e) < need) return "(" + s + ")";
  return s;
}

std::string render(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::number: return num_str(e->value);
    case ExprKind::z_var: return "z";
    case ExprKind::d_op: return "D";
    case ExprKind::name: return e->name;
    case ExprKind::neg: return "-" + wrap(e->lhs, 3);
    case ExprKind::add: return wrap(e->lhs, 1) + " + " + wrap(e->rhs, 2);
    case ExprKind::sub: return wrap(e->lhs, 1) + " - " + wrap(e->rhs, 2);
    case ExprKind::mul: return wrap(e->lhs, 2) + "*" + wrap(e->rhs, 3);
    case ExprKind::div: return wrap(e->lhs, 2) + "/" + wrap(e->rhs, 3);
    case ExprKind::compose:
      return wrap(e->lhs, 2) + " @ " + wrap(e->rhs, 3);
    case ExprKind::pow: return wrap(e->lhs, 5) + "^" + wrap(e->rhs, 3);
  }
  fail(ErrorCode::internal, "unhandled expression kind");
}

} // namespace

// ---------------------------------------------------------------------------
// Public entry points

ExprPtr parse_expr(const std::string& text,
                   const std::vector<std::string>* known_names) {
  std::vector<Token> toks = lex(text);
  Parser parser{toks, known_names};
  return parser.run();
}

std::string render_expr(const ExprPtr& e) { return render(e); }

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::number: return a->value == b->value;
    case ExprKind::name: return a->name == b->name;
    default: break;
  }
  return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
}

const TowerElem* TowerContext::find(const std::string& name) const {
  for (const auto& [n, e] : named)
    if (n == name) return &e;
  return nullptr;
}

std::vector<std::string> TowerContext::names() const {
  std::vector<std::string> out;
  out.reserve(named.size());
  for (const auto& [n, e] : named) out.push_back(n);
  return out;
}

Value Value::of(TowerElem e) {
  Value v;
  v.elem = std::move(e);
  return v;
}

Value Value::of(LinOp o) {
  Value v;
  v.is_op = true;
  v.op = std::move(o);
  return v;
}

namespace {

LinOp to_op(const Value& v) {
  return v.is_op ? v.op : LinOp::of_elem(v.elem);
}

} // namespace

Value evaluate(const ExprPtr& e, const TowerContext& ctx) {
  switch (e->kind) {
    case ExprKind::number:
      return Value::of(TowerElem::constant(ctx.tower, e->value));
    case ExprKind::z_var: return Value::of(TowerElem::z(ctx.tower));
    case ExprKind::d_op: return Value::of(LinOp::d(ctx.tower));
    case ExprKind::name: {
      const TowerElem* g = ctx.find(e->name);
      if (!g) type_fail(e->span, "unknown generator '" + e->name + "'");
      return Value::of(*g);
    }
    case ExprKind::neg: {
      Value v = evaluate(e->lhs, ctx);
      return v.is_op ? Value::of(-v.op) : Value::of(-v.elem);
    }
    case ExprKind::add:
    case ExprKind::sub: {
      Value l = evaluate(e->lhs, ctx);
      Value r = evaluate(e->rhs, ctx);
      bool sub = e->kind == ExprKind::sub;
      if (!l.is_op && !r.is_op)
        return Value::of(sub ? l.elem - r.elem : l.elem + r.elem);
      LinOp a = to_op(l), b = to_op(r);
      return Value::of(sub ? a - b : a + b);
    }
    case ExprKind::mul: {
      Value l = evaluate(e->lhs, ctx);
      Value r = evaluate(e->rhs, ctx);
      if (!l.is_op && !r.is_op) return Value::of(l.elem * r.elem);
      if (!l.is_op) return Value::of(r.op * l.elem);
      if (!r.is_op) return Value::of(l.op * LinOp::of_elem(r.elem));
      type_fail(e->span, "'*' cannot compose two operators; use '@'");
    }
    case ExprKind::div: {
      Value l = evaluate(e->lhs, ctx);
      Value r = evaluate(e->rhs, ctx);
      if (r.is_op) type_fail(e->span, "cannot divide by an operator");
      if (!l.is_op) return Value::of(l.elem / r.elem);
      if (!r.elem.is_scalar())
        type_fail(e->span, "an operator can only be divided by a constant");
      GaussRat s = r.elem.scalar_value();
      if (s.is_zero()) fail(ErrorCode::div_zero, "division by zero");
      return Value::of(l.op * (GaussRat(1) / s));
    }
    case ExprKind::pow: {
      Value base = evaluate(e->lhs, ctx);
      Value exp = evaluate(e->rhs, ctx);
      if (exp.is_op || !exp.elem.is_scalar())
        type_fail(e->rhs->span, "exponent must be an exact integer");
      GaussRat s = exp.elem.scalar_value();
      if (!s.is_real() || !s.re().is_integer())
        type_fail(e->rhs->span, "exponent must be an exact integer");
      Int n = s.re().num();
      if (!n.fits_slong_p())
        type_fail(e->rhs->span, "exponent is too large");
      long k = n.get_si();
      if (!base.is_op) return Value::of(base.elem.pow(k));
      if (k < 0)
        type_fail(e->span, "an operator exponent must be nonnegative");
      LinOp acc = LinOp::identity(ctx.tower);
      for (long j = 0; j < k; ++j) acc = acc * base.op;
      return Value::of(acc);
    }
    case ExprKind::compose: {
      Value l = evaluate(e->lhs, ctx);
      Value r = evaluate(e->rhs, ctx);
      return Value::of(to_op(l) * to_op(r));
    }
  }
  fail(ErrorCode::internal, "unhandled expression kind");
}

// ---------------------------------------------------------------------------
// Tower configuration

namespace {

struct ConfigScanner {
  const std::string& s;
  size_t i = 0;
  long line = 1;

  bool at_end() {
    skip_space();
    return i >= s.size();
  }

  void skip_space() {
    while (i < s.size()) {
      char b = s[i];
      if (b == '\n') {
        ++i;
        ++line;
      } else if (b == ' ' || b == '\t' || b == '\r') {
        ++i;
      } else if (b == '#') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void err(const std::string& msg) {
    fail(ErrorCode::parse, "line " + std::to_string(line) + ": " + msg);
  }

  std::string word() {
    skip_space();
    if (i >= s.size() || !word_start(static_cast<unsigned char>(s[i])))
      err("expected a name");
    size_t j = i;
    while (j < s.size() && word_char(static_cast<unsigned char>(s[j]))) ++j;
    std::string w = s.substr(i, j - i);
    i = j;
    return w;
  }

  void expect(char c) {
    skip_space();
    if (i >= s.size() || s[i] != c)
      err(std::string("expected '") + c + "'");
    ++i;
  }

  // Everything up to the closing ';', comments stripped.
  std::string arg() {
    std::string out;
    while (i < s.size() && s[i] != ';') {
      if (s[i] == '#') {
        while (i < s.size() && s[i] != '\n') ++i;
        continue;
      }
      if (s[i] == '\n') ++line;
      out += s[i++];
    }
    if (i >= s.size()) err("missing ';'");
    ++i; // consume ';'
    return out;
  }
};

bool valid_gen_name(const std::string& n) {
  if (n.empty() || !word_start(static_cast<unsigned char>(n[0]))) return false;
  for (char c : n)
    if (!word_char(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

TowerContext parse_tower_config(const std::string& text) {
  TowerContext ctx;
  ConfigScanner sc{text};
  while (!sc.at_end()) {
    long stmt_line = sc.line;
    std::string kw = sc.word();
    if (kw != "gen")
      fail(ErrorCode::parse, "line " + std::to_string(stmt_line) +
                                 ": expected 'gen', got '" + kw + "'");
    std::string name = sc.word();
    if (!valid_gen_name(name)) sc.err("invalid generator name '" + name + "'");
    if (name == "z" || name == "i" || name == "D")
      sc.err("'" + name + "' is reserved");
    if (ctx.find(name)) sc.err("generator '" + name + "' is already declared");
    sc.expect(':');
    std::string kind = sc.word();
    sc.expect('=');
    std::string arg_text = sc.arg();

    ExprPtr arg;
    {
      std::vector<std::string> names = ctx.names();
      try {
        arg = parse_expr(arg_text, &names);
      } catch (const Error& e) {
        fail(ErrorCode::parse,
             "in the declaration of '" + name + "': " + e.what());
      }
    }

    if (kind == "root") {
      if (arg->kind != ExprKind::number || !arg->value.is_real() ||
          !arg->value.re().is_integer() || arg->value.re() < Rat(2))
        sc.err("root index must be an integer literal >= 2");
      Int n = arg->value.re().num();
      if (!n.fits_slong_p()) sc.err("root index is too large");
      ctx.tower = ctx.tower->extend_root(name, n.get_si());
    } else if (kind == "logderiv" || kind == "exp" || kind == "prim") {
      Value v;
      try {
        v = evaluate(arg, ctx);
      } catch (const Error& e) {
        fail(ErrorCode::parse,
             "in the declaration of '" + name + "': " + e.what());
      }
      if (v.is_op) sc.err("a generator rule must be a field element");
      ctx.tower = kind == "prim" ? ctx.tower->extend_prim(name, v.elem)
                                 : ctx.tower->extend_logderiv(name, v.elem);
    } else {
      sc.err("unknown generator kind '" + kind +
             "' (expected logderiv, exp, prim, or root)");
    }

    for (auto& [n, el] : ctx.named) el = el.lifted(ctx.tower);
    ctx.named.emplace_back(name, TowerElem::gen(ctx.tower, name));
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Canonical string forms

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (long t = deg_w(); t >= 0; --t) {
    const GaussRat& c0 = coeff_w(t);
    if (c0.is_zero()) continue;
    bool neg = leading_negative(c0);
    GaussRat a = neg ? -c0 : c0;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += term_str(a, Rat(t, ram_));
    first = false;
  }
  return out;
}

std::string RatFun::str() const {
  if (den_.is_constant()) return num_.str(); // canonical form has den == 1
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::string series_str(const InfSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (long j = 0; j < s.known(); ++j) {
    const GaussRat& c0 = s.c[static_cast<size_t>(j)];
    if (c0.is_zero()) continue;
    bool neg = leading_negative(c0);
    GaussRat a = neg ? -c0 : c0;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += term_str(a, Rat(s.top - j, s.ram));
    first = false;
  }
  Rat next(s.top - s.known(), s.ram);
  std::string tail = "O(z^(" + next.str() + "))";
  if (first) return tail;
  return out + " + " + tail;
}

} // namespace lindop
