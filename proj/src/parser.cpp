#include "metrilog/parser.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace metrilog {

namespace {

const Rat kZero(0, 1);
const Rat kOne(1, 1);

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  ident,
  number,
  lparen,
  rparen,
  lbracket,
  rbracket,
  lbrace,
  rbrace,
  comma,
  dot,
  semi,
  slash,
  plus,
  minus,
  arrow,
  geq,
  leq,
  tilde,
  orop,
  andop,
  plusop,
  eof
};

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  std::int64_t number = 0;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

class Lexer {
 public:
  Lexer(const std::string& text, std::string filename, int first_line = 1)
      : text_(text), file_(std::move(filename)), line_(first_line), last_end_line_(first_line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      Token t = next();
      bool done = t.kind == Tok::eof;
      out.push_back(std::move(t));
      if (done) return out;
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(file_, line_, col_, msg); }

  char peek(size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token make(Tok kind, int line, int col, std::string text) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.col = col;
    last_end_line_ = line_;
    last_end_col_ = col_;
    return t;
  }

  Token next() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      break;
    }
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return make(Tok::eof, last_end_line_, last_end_col_, "");
    char c = peek();
    if (ident_start(c)) {
      std::string word;
      while (pos_ < text_.size() && ident_char(peek())) {
        word += peek();
        advance();
      }
      return make(Tok::ident, line, col, word);
    }
    if (c >= '0' && c <= '9') {
      std::string digits;
      while (pos_ < text_.size() && peek() >= '0' && peek() <= '9') {
        digits += peek();
        advance();
      }
      Token t = make(Tok::number, line, col, digits);
      if (digits.size() > 18) fail("integer literal too large");
      t.number = std::stoll(digits);
      return t;
    }
    switch (c) {
      case '(':
        if (peek(1) == '+' && peek(2) == ')') {
          advance();
          advance();
          advance();
          return make(Tok::plusop, line, col, "(+)");
        }
        advance();
        return make(Tok::lparen, line, col, "(");
      case ')':
        advance();
        return make(Tok::rparen, line, col, ")");
      case '[':
        advance();
        return make(Tok::lbracket, line, col, "[");
      case ']':
        advance();
        return make(Tok::rbracket, line, col, "]");
      case '{':
        advance();
        return make(Tok::lbrace, line, col, "{");
      case '}':
        advance();
        return make(Tok::rbrace, line, col, "}");
      case ',':
        advance();
        return make(Tok::comma, line, col, ",");
      case '.':
        advance();
        return make(Tok::dot, line, col, ".");
      case ';':
        advance();
        return make(Tok::semi, line, col, ";");
      case '~':
        advance();
        return make(Tok::tilde, line, col, "~");
      case '+':
        advance();
        return make(Tok::plus, line, col, "+");
      case '-':
        advance();
        if (peek() == '>') {
          advance();
          return make(Tok::arrow, line, col, "->");
        }
        return make(Tok::minus, line, col, "-");
      case '>':
        advance();
        if (peek() == '=') {
          advance();
          return make(Tok::geq, line, col, ">=");
        }
        fail("expected '>='");
      case '<':
        advance();
        if (peek() == '=') {
          advance();
          return make(Tok::leq, line, col, "<=");
        }
        fail("expected '<='");
      case '\\':
        advance();
        if (peek() == '/') {
          advance();
          return make(Tok::orop, line, col, "\\/");
        }
        fail("expected '\\/'");
      case '/':
        advance();
        if (peek() == '\\') {
          advance();
          return make(Tok::andop, line, col, "/\\");
        }
        return make(Tok::slash, line, col, "/");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
    fail("unreachable");
  }

  const std::string& text_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int last_end_line_ = 1;
  int last_end_col_ = 1;
};

// ---------------------------------------------------------------------------
// Token cursor

class Cursor {
 public:
  Cursor(std::vector<Token> tokens, std::string file) : tokens_(std::move(tokens)), file_(std::move(file)) {}

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& get() {
    const Token& t = peek();
    if (t.kind != Tok::eof) ++pos_;
    return t;
  }

  bool at(Tok kind) const { return peek().kind == kind; }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    get();
    return true;
  }

  Token expect(Tok kind, const std::string& what) {
    if (!at(kind)) fail("expected " + what);
    return get();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(file_, t.line, t.col, msg);
  }

  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(file_, t.line, t.col, msg);
  }

  const std::string& file() const { return file_; }

 private:
  std::vector<Token> tokens_;
  std::string file_;
  size_t pos_ = 0;
};

bool is_keyword(const Token& t, const char* word) { return t.kind == Tok::ident && t.text == word; }

// Words that steer the line-oriented document grammars; they cannot name
// points, so interpretation rows and block terminators stay unambiguous.
bool is_document_keyword(const std::string& word) {
  static const char* kWords[] = {"signature", "structure", "theory",  "type", "registry", "points", "metric",
                                 "function",  "predicate", "constant", "family", "vars",  "end"};
  return std::any_of(std::begin(kWords), std::end(kWords), [&](const char* w) { return word == w; });
}

// Written rationals must be in lowest terms; the grammar owns canonical form.
Rat checked_rational(Cursor& c, std::int64_t num, std::int64_t den, const Token& at) {
  if (den == 0) c.fail_at(at, "rational with zero denominator");
  if (std::gcd(num, den) != 1) {
    c.fail_at(at, "non-reduced rational " + std::to_string(num) + "/" + std::to_string(den));
  }
  return Rat(num, den);
}

// INT [ '/' INT ] with the reduced-form check; no range restriction.
Rat parse_rational_tokens(Cursor& c, bool allow_minus = false) {
  bool negative = false;
  if (allow_minus && c.accept(Tok::minus)) negative = true;
  Token first = c.expect(Tok::number, "a rational");
  std::int64_t num = first.number;
  std::int64_t den = 1;
  if (c.at(Tok::slash) && c.peek(1).kind == Tok::number) {
    c.get();
    den = c.get().number;
  }
  Rat r = checked_rational(c, num, den, first);
  return negative ? -r : r;
}

// ---------------------------------------------------------------------------
// Formula parser

class FormulaParser {
 public:
  FormulaParser(Cursor& cursor, const Signature& sig) : c_(cursor), sig_(sig) {}

  FormulaPtr parse() { return parse_formula(); }

  Term parse_single_term() { return parse_term(); }

 private:
  bool in_scope(const std::string& ivar) const {
    for (const auto& v : index_vars_) {
      if (v == ivar) return true;
    }
    return false;
  }

  bool at_quantifier() const {
    const Token& t = c_.peek();
    return is_keyword(t, "sup") || is_keyword(t, "inf") || is_keyword(t, "Vee") || is_keyword(t, "Wedge");
  }

  FormulaPtr parse_formula() {
    FormulaPtr lhs = parse_or();
    if (c_.accept(Tok::arrow)) return Formula::implies(std::move(lhs), parse_formula());
    bool is_geq = c_.at(Tok::geq);
    if (is_geq || c_.at(Tok::leq)) {
      c_.get();
      FormulaPtr threshold = parse_threshold();
      // A comparison completes its formula.  Letting an operator follow
      // would silently re-attach it outside an enclosing quantifier body,
      // so demand an explicit parenthesization instead.
      switch (c_.peek().kind) {
        case Tok::eof:
        case Tok::rparen:
        case Tok::semi:
        case Tok::rbrace:
          break;
        default:
          c_.fail("nothing may follow a comparison; parenthesize it to combine");
      }
      return is_geq ? geq(std::move(lhs), std::move(threshold)) : leq(std::move(lhs), std::move(threshold));
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (c_.accept(Tok::orop)) f = lor(std::move(f), parse_and());
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_plus();
    while (c_.accept(Tok::andop)) f = land(std::move(f), parse_plus());
    return f;
  }

  FormulaPtr parse_plus() {
    FormulaPtr f = parse_unary();
    while (c_.accept(Tok::plusop)) f = trunc_plus(std::move(f), parse_unary());
    return f;
  }

  FormulaPtr parse_unary() {
    if (c_.accept(Tok::tilde)) return neg(parse_unary());
    if (at_quantifier()) return parse_quantifier();
    return parse_atom();
  }

  FormulaPtr parse_quantifier() {
    Token kw = c_.get();
    bool seq = kw.text == "Vee" || kw.text == "Wedge";
    bool is_inf = kw.text == "inf" || kw.text == "Wedge";
    if (seq && c_.at(Tok::lbrace)) {
      c_.get();
      std::vector<FormulaPtr> members;
      members.push_back(parse_formula());
      while (c_.accept(Tok::semi)) members.push_back(parse_formula());
      c_.expect(Tok::rbrace, "'}'");
      return is_inf ? inf_list(std::move(members)) : Formula::sup_list(std::move(members));
    }
    Token var = c_.expect(Tok::ident, "a variable name after '" + kw.text + "'");
    check_binder_name(var);
    c_.expect(Tok::dot, "'.' after the bound variable");
    if (seq) {
      index_vars_.push_back(var.text);
      FormulaPtr body = parse_formula();
      index_vars_.pop_back();
      return is_inf ? inf_seq(var.text, std::move(body)) : Formula::sup_seq(var.text, std::move(body));
    }
    FormulaPtr body = parse_formula();
    return is_inf ? inf_var(var.text, std::move(body)) : Formula::sup_var(var.text, std::move(body));
  }

  void check_binder_name(const Token& var) {
    if (is_reserved_name(var.text)) c_.fail_at(var, "'" + var.text + "' is reserved");
    if (sig_.has_symbol(var.text)) {
      c_.fail_at(var, "bound variable '" + var.text + "' collides with a declared symbol");
    }
    if (in_scope(var.text)) c_.fail_at(var, "shadowed index variable '" + var.text + "'");
  }

  FormulaPtr parse_atom() {
    const Token& t = c_.peek();
    if (t.kind == Tok::lparen) {
      c_.get();
      FormulaPtr f = parse_formula();
      c_.expect(Tok::rparen, "')'");
      return f;
    }
    if (t.kind == Tok::number) return parse_rational_leaf();
    if (t.kind != Tok::ident) c_.fail("expected a formula");

    if (t.text == "d") {
      c_.get();
      c_.expect(Tok::lparen, "'(' after 'd'");
      Term a = parse_term();
      c_.expect(Tok::comma, "','");
      Term b = parse_term();
      c_.expect(Tok::rparen, "')'");
      return Formula::dist(std::move(a), std::move(b));
    }
    if (t.text == "qenum") return parse_threshold();
    if (t.text == "Disc") {
      c_.get();
      c_.expect(Tok::lparen, "'(' after 'Disc'");
      FormulaPtr f = parse_formula();
      c_.expect(Tok::rparen, "')'");
      return disc(std::move(f));
    }
    if (t.text == "Eq") {
      c_.get();
      c_.expect(Tok::lparen, "'(' after 'Eq'");
      Term a = parse_term();
      c_.expect(Tok::comma, "','");
      Term b = parse_term();
      c_.expect(Tok::rparen, "')'");
      return eq_terms(std::move(a), std::move(b));
    }
    if (t.text == "Half") {
      c_.get();
      c_.expect(Tok::lbracket, "'[' after 'Half'");
      Token n = c_.expect(Tok::number, "a positive integer");
      if (n.number < 1) c_.fail_at(n, "Half needs n >= 1");
      c_.expect(Tok::rbracket, "']'");
      c_.expect(Tok::lparen, "'('");
      FormulaPtr f = parse_formula();
      c_.expect(Tok::rparen, "')'");
      return half_approx(std::move(f), static_cast<int>(n.number));
    }
    if (const PredicateSymbol* p = sig_.find_predicate(t.text)) {
      Token name = c_.get();
      c_.expect(Tok::lparen, "'(' after predicate '" + name.text + "'");
      std::vector<Term> args;
      args.push_back(parse_term());
      while (c_.accept(Tok::comma)) args.push_back(parse_term());
      c_.expect(Tok::rparen, "')'");
      if (static_cast<int>(args.size()) != p->arity) {
        c_.fail_at(name, "predicate '" + name.text + "' expects " + std::to_string(p->arity) + " arguments, got " +
                             std::to_string(args.size()));
      }
      return Formula::pred(name.text, std::move(args));
    }
    if (c_.peek(1).kind == Tok::lparen) c_.fail("unknown predicate '" + t.text + "'");
    c_.fail("expected a formula (a bare term is not a formula)");
  }

  // Rational constants, possibly indexed: q | a/(i+b) | q +|- a/(i+b).
  FormulaPtr parse_rational_leaf() {
    Token first = c_.expect(Tok::number, "a rational");
    if (c_.at(Tok::slash) && c_.peek(1).kind == Tok::lparen) {
      c_.get();
      return parse_affine(kZero, 1, first);
    }
    std::int64_t num = first.number;
    std::int64_t den = 1;
    if (c_.at(Tok::slash) && c_.peek(1).kind == Tok::number) {
      c_.get();
      den = c_.get().number;
    }
    Rat base = checked_rational(c_, num, den, first);
    if (!base.in_unit_interval()) c_.fail_at(first, "rational " + base.str() + " out of range [0, 1]");
    if ((c_.at(Tok::minus) || c_.at(Tok::plus)) && c_.peek(1).kind == Tok::number && c_.peek(2).kind == Tok::slash &&
        c_.peek(3).kind == Tok::lparen) {
      int sign = c_.get().kind == Tok::minus ? -1 : 1;
      Token a = c_.expect(Tok::number, "a numerator");
      c_.expect(Tok::slash, "'/'");
      return parse_affine(base, sign, a);
    }
    return Formula::constant(base);
  }

  FormulaPtr parse_affine(const Rat& base, int sign, const Token& a) {
    c_.expect(Tok::lparen, "'('");
    Token var = c_.expect(Tok::ident, "an index variable");
    if (!in_scope(var.text)) c_.fail_at(var, "unknown index variable '" + var.text + "'");
    c_.expect(Tok::plus, "'+'");
    Token b = c_.expect(Tok::number, "a positive integer");
    c_.expect(Tok::rparen, "')'");
    try {
      return Formula::indexed_rational(RationalSeqExpr::affine(base, sign, a.number, b.number, var.text));
    } catch (const MetrilogError& e) {
      c_.fail_at(a, e.what());
    }
  }

  // Threshold of a comparison: plain or indexed rational, or qenum[...].
  FormulaPtr parse_threshold() {
    if (is_keyword(c_.peek(), "qenum")) {
      c_.get();
      c_.expect(Tok::lbracket, "'[' after 'qenum'");
      IndexExpr idx = parse_index_expr();
      c_.expect(Tok::rbracket, "']'");
      if (idx.is_literal()) return Formula::constant(enumerated_unit_rational(idx.value()));
      return Formula::indexed_rational(RationalSeqExpr::enumeration(std::move(idx)));
    }
    return parse_rational_leaf();
  }

  IndexExpr parse_index_expr() {
    if (c_.at(Tok::number)) {
      Token k = c_.get();
      if (c_.at(Tok::ident)) {
        Token var = c_.get();
        if (!in_scope(var.text)) c_.fail_at(var, "unknown index variable '" + var.text + "'");
        std::int64_t offset = 0;
        if (c_.accept(Tok::plus)) offset = c_.expect(Tok::number, "an offset").number;
        return IndexExpr::affine(var.text, k.number, offset);
      }
      return IndexExpr::literal(k.number);
    }
    Token var = c_.expect(Tok::ident, "an index expression");
    if (!in_scope(var.text)) c_.fail_at(var, "unknown index variable '" + var.text + "'");
    std::int64_t offset = 0;
    if (c_.accept(Tok::plus)) offset = c_.expect(Tok::number, "an offset").number;
    return IndexExpr::affine(var.text, 1, offset);
  }

  Term parse_term() {
    Token t = c_.expect(Tok::ident, "a term");
    if (in_scope(t.text)) c_.fail_at(t, "index variable '" + t.text + "' used as a logic variable");
    if (sig_.has_family(t.text)) {
      c_.expect(Tok::lbracket, "'[' after family '" + t.text + "'");
      IndexExpr idx = parse_index_expr();
      c_.expect(Tok::rbracket, "']'");
      return Term::indexed(t.text, std::move(idx));
    }
    if (const FunctionSymbol* f = sig_.find_function(t.text)) {
      c_.expect(Tok::lparen, "'(' after function '" + t.text + "'");
      std::vector<Term> args;
      args.push_back(parse_term());
      while (c_.accept(Tok::comma)) args.push_back(parse_term());
      c_.expect(Tok::rparen, "')'");
      if (static_cast<int>(args.size()) != f->arity) {
        c_.fail_at(t, "function '" + t.text + "' expects " + std::to_string(f->arity) + " arguments, got " +
                          std::to_string(args.size()));
      }
      return Term::apply(t.text, std::move(args));
    }
    if (sig_.has_constant(t.text)) return Term::constant(t.text);
    if (sig_.find_predicate(t.text)) c_.fail_at(t, "predicate '" + t.text + "' used as a term");
    if (is_reserved_name(t.text)) c_.fail_at(t, "'" + t.text + "' is reserved");
    return Term::variable(t.text);
  }

  Cursor& c_;
  const Signature& sig_;
  std::vector<std::string> index_vars_;
};

FormulaPtr parse_formula_tokens(Cursor& cursor, const Signature& sig) {
  FormulaParser p(cursor, sig);
  FormulaPtr f = p.parse();
  if (!cursor.at(Tok::eof)) cursor.fail("unexpected trailing input after formula");
  return f;
}

// ---------------------------------------------------------------------------
// Line-oriented documents

struct Line {
  int number = 1;
  std::string text;  // comment-stripped, trimmed
};

std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    size_t begin = raw.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    size_t end = raw.find_last_not_of(" \t\r");
    lines.push_back({number, raw.substr(begin, end - begin + 1)});
  }
  return lines;
}

Cursor line_cursor(const Line& line, const std::string& file) {
  Lexer lex(line.text, file, line.number);
  return Cursor(lex.run(), file);
}

[[noreturn]] void fail_line(const std::string& file, const Line& line, const std::string& msg) {
  throw ParseError(file, line.number, 1, msg);
}

Modulus parse_modulus_tokens(Cursor& c) {
  Token kind = c.expect(Tok::ident, "a modulus (identity | linear | constant | table)");
  try {
    if (kind.text == "identity") return Modulus::identity();
    if (kind.text == "linear") return Modulus::linear(parse_rational_tokens(c));
    if (kind.text == "constant") return Modulus::constant(parse_rational_tokens(c));
    if (kind.text == "table") {
      std::vector<std::pair<Rat, Rat>> samples;
      while (c.at(Tok::number)) {
        Rat eps = parse_rational_tokens(c);
        Rat delta = parse_rational_tokens(c);
        samples.emplace_back(eps, delta);
      }
      return Modulus::table(std::move(samples));
    }
  } catch (const MetrilogError& e) {
    c.fail_at(kind, e.what());
  }
  c.fail_at(kind, "unknown modulus kind '" + kind.text + "'");
}

size_t parse_signature_lines(const std::vector<Line>& lines, size_t start, const std::string& file, Signature& sig) {
  if (start >= lines.size()) throw ParseError(file, 1, 1, "expected 'signature'");
  {
    Cursor c = line_cursor(lines[start], file);
    if (!is_keyword(c.peek(), "signature")) c.fail("expected 'signature'");
    c.get();
    if (!c.at(Tok::eof)) c.fail("unexpected input after 'signature'");
  }
  size_t i = start + 1;
  for (; i < lines.size(); ++i) {
    Cursor c = line_cursor(lines[i], file);
    Token head = c.expect(Tok::ident, "a signature item or 'end'");
    try {
      if (head.text == "end") {
        if (!c.at(Tok::eof)) c.fail("unexpected input after 'end'");
        return i + 1;
      }
      if (head.text == "function" || head.text == "predicate") {
        Token name = c.expect(Tok::ident, "a symbol name");
        Token arity = c.expect(Tok::number, "an arity");
        Modulus mod = parse_modulus_tokens(c);
        if (!c.at(Tok::eof)) c.fail("unexpected trailing input");
        if (head.text == "function") {
          sig.add_function({name.text, static_cast<int>(arity.number), std::move(mod)});
        } else {
          sig.add_predicate({name.text, static_cast<int>(arity.number), std::move(mod)});
        }
      } else if (head.text == "constant") {
        Token name = c.expect(Tok::ident, "a constant name");
        if (!c.at(Tok::eof)) c.fail("unexpected trailing input");
        sig.add_constant(name.text);
      } else if (head.text == "family") {
        Token name = c.expect(Tok::ident, "a family name");
        if (!c.at(Tok::eof)) c.fail("unexpected trailing input");
        sig.add_family(name.text);
      } else {
        c.fail_at(head, "unknown signature item '" + head.text + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const MetrilogError& e) {
      c.fail_at(head, e.what());
    }
  }
  throw ParseError(file, lines.back().number, 1, "missing 'end' of signature block");
}

}  // namespace

Signature parse_signature(const std::string& text, const std::string& filename) {
  std::vector<Line> lines = significant_lines(text);
  Signature sig;
  size_t next = parse_signature_lines(lines, 0, filename, sig);
  if (next < lines.size()) fail_line(filename, lines[next], "unexpected content after 'end'");
  return sig;
}

MetricStructure parse_structure(const std::string& text, const std::string& filename) {
  std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) throw ParseError(filename, 1, 1, "expected 'structure'");
  {
    Cursor c = line_cursor(lines[0], filename);
    if (!is_keyword(c.peek(), "structure")) c.fail("expected 'structure'");
    c.get();
    if (!c.at(Tok::eof)) c.fail("unexpected input after 'structure'");
  }

  Signature sig;
  size_t i = parse_signature_lines(lines, 1, filename, sig);

  // points
  if (i >= lines.size()) throw ParseError(filename, lines.back().number, 1, "expected 'points'");
  std::vector<std::string> points;
  {
    Cursor c = line_cursor(lines[i], filename);
    if (!is_keyword(c.peek(), "points")) c.fail("expected 'points'");
    c.get();
    while (c.at(Tok::ident)) {
      Token name = c.get();
      if (is_reserved_name(name.text) || is_document_keyword(name.text)) {
        c.fail_at(name, "'" + name.text + "' cannot name a point");
      }
      points.push_back(name.text);
    }
    if (!c.at(Tok::eof)) c.fail("expected point names");
    if (points.empty()) c.fail("a structure needs at least one point");
    ++i;
  }

  MetricStructure m = [&] {
    try {
      return MetricStructure(sig, points);
    } catch (const MetrilogError& e) {
      fail_line(filename, lines[i - 1], e.what());
    }
  }();

  auto point_id = [&](Cursor& c) {
    Token t = c.expect(Tok::ident, "a point name");
    int id = m.point_id(t.text);
    if (id < 0) c.fail_at(t, "unknown point '" + t.text + "'");
    return id;
  };

  // metric block
  if (i >= lines.size()) throw ParseError(filename, lines.back().number, 1, "expected 'metric'");
  {
    Cursor c = line_cursor(lines[i], filename);
    if (!is_keyword(c.peek(), "metric")) c.fail("expected 'metric'");
    c.get();
    if (!c.at(Tok::eof)) c.fail("unexpected input after 'metric'");
  }
  ++i;
  const int n = m.point_count();
  std::vector<bool> given(static_cast<size_t>(n) * static_cast<size_t>(n), false);
  for (;; ++i) {
    if (i >= lines.size()) throw ParseError(filename, lines.back().number, 1, "missing 'end' of metric block");
    Cursor c = line_cursor(lines[i], filename);
    if (is_keyword(c.peek(), "end")) {
      ++i;
      break;
    }
    int a = point_id(c);
    int b = point_id(c);
    Rat value = parse_rational_tokens(c, /*allow_minus=*/true);
    if (!c.at(Tok::eof)) c.fail("unexpected trailing input");
    size_t slot = static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b);
    if (given[slot]) fail_line(filename, lines[i], "duplicate metric entry");
    given[slot] = true;
    m.set_distance(a, b, value);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      size_t ab = static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b);
      size_t ba = static_cast<size_t>(b) * static_cast<size_t>(n) + static_cast<size_t>(a);
      if (given[ab]) continue;
      if (a == b) continue;  // diagonal defaults to 0
      if (given[ba]) {
        m.set_distance(a, b, m.distance(b, a));
        given[ab] = true;
      } else {
        throw ParseError(filename, lines.empty() ? 1 : lines.back().number, 1,
                         "metric entry missing for (" + m.point_name(a) + ", " + m.point_name(b) + ")");
      }
    }
  }

  // interpretation items
  bool closed = false;
  while (i < lines.size()) {
    Cursor c = line_cursor(lines[i], filename);
    Token head = c.expect(Tok::ident, "an interpretation item or 'end'");
    if (head.text == "end") {
      if (!c.at(Tok::eof)) c.fail("unexpected input after 'end'");
      closed = true;
      ++i;
      break;
    }
    if (head.text == "function" || head.text == "predicate") {
      Token name = c.expect(Tok::ident, "a symbol name");
      if (!c.at(Tok::eof)) c.fail("unexpected trailing input");
      int arity = 0;
      bool is_function = head.text == "function";
      if (is_function) {
        const FunctionSymbol* f = sig.find_function(name.text);
        if (!f) c.fail_at(name, "unknown function symbol '" + name.text + "'");
        arity = f->arity;
      } else {
        const PredicateSymbol* p = sig.find_predicate(name.text);
        if (!p) c.fail_at(name, "unknown predicate symbol '" + name.text + "'");
        arity = p->arity;
      }
      ++i;
      std::vector<int> ftable(m.tuple_count(arity), -1);
      std::vector<Rat> ptable(m.tuple_count(arity), kZero);
      std::vector<bool> seen(m.tuple_count(arity), false);
      for (;; ++i) {
        if (i >= lines.size()) throw ParseError(filename, lines.back().number, 1, "missing 'end'");
        Cursor row = line_cursor(lines[i], filename);
        if (is_keyword(row.peek(), "end")) {
          ++i;
          break;
        }
        std::vector<int> args;
        for (int k = 0; k < arity; ++k) args.push_back(point_id(row));
        size_t slot = m.tuple_index(args);
        if (seen[slot]) fail_line(filename, lines[i], "duplicate interpretation entry");
        seen[slot] = true;
        if (is_function) {
          ftable[slot] = point_id(row);
        } else {
          Token at = row.peek();
          Rat v = parse_rational_tokens(row);
          if (!v.in_unit_interval()) row.fail_at(at, "predicate value " + v.str() + " out of range [0, 1]");
          ptable[slot] = v;
        }
        if (!row.at(Tok::eof)) row.fail("unexpected trailing input");
      }
      for (size_t s = 0; s < seen.size(); ++s) {
        if (!seen[s]) {
          throw ParseError(filename, lines[i - 1].number, 1,
                           "interpretation of '" + name.text + "' is not total");
        }
      }
      if (is_function) {
        m.set_function(name.text, std::move(ftable));
      } else {
        m.set_predicate(name.text, std::move(ptable));
      }
      continue;
    }
    if (head.text == "constant") {
      Token name = c.expect(Tok::ident, "a constant name");
      if (!sig.has_constant(name.text)) c.fail_at(name, "unknown constant symbol '" + name.text + "'");
      int p = point_id(c);
      if (!c.at(Tok::eof)) c.fail("unexpected trailing input");
      m.set_constant(name.text, p);
      ++i;
      continue;
    }
    if (head.text == "family") {
      Token name = c.expect(Tok::ident, "a family name");
      if (!sig.has_family(name.text)) c.fail_at(name, "unknown family '" + name.text + "'");
      FamilyInterp interp;
      while (c.at(Tok::ident) && !is_keyword(c.peek(), "tail")) interp.prefix.push_back(point_id(c));
      if (!is_keyword(c.peek(), "tail")) c.fail("expected 'tail'");
      c.get();
      interp.tail = point_id(c);
      if (!c.at(Tok::eof)) c.fail("unexpected trailing input");
      m.set_family(name.text, std::move(interp));
      ++i;
      continue;
    }
    c.fail_at(head, "unknown structure item '" + head.text + "'");
  }
  if (!closed) throw ParseError(filename, lines.back().number, 1, "missing 'end' of structure");
  if (i < lines.size()) fail_line(filename, lines[i], "unexpected content after 'end'");
  try {
    m.check_complete();
  } catch (const MetrilogError& e) {
    throw ParseError(filename, lines.back().number, 1, e.what());
  }
  return m;
}

FormulaPtr parse_formula(const std::string& text, const Signature& sig, const std::string& filename) {
  Lexer lex(text, filename);
  Cursor cursor(lex.run(), filename);
  return parse_formula_tokens(cursor, sig);
}

Term parse_term(const std::string& text, const Signature& sig, const std::string& filename) {
  Lexer lex(text, filename);
  Cursor cursor(lex.run(), filename);
  FormulaParser p(cursor, sig);
  Term t = p.parse_single_term();
  if (!cursor.at(Tok::eof)) cursor.fail("unexpected trailing input after term");
  return t;
}

Theory parse_theory(const std::string& text, const Signature& sig, const std::string& filename) {
  std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) throw ParseError(filename, 1, 1, "expected 'theory'");
  Theory theory;
  {
    Cursor c = line_cursor(lines[0], filename);
    if (!is_keyword(c.peek(), "theory")) c.fail("expected 'theory'");
    c.get();
    theory.name = c.expect(Tok::ident, "a theory name").text;
    if (!c.at(Tok::eof)) c.fail("unexpected input after the theory name");
  }
  size_t i = 1;
  bool closed = false;
  for (; i < lines.size(); ++i) {
    Cursor c = line_cursor(lines[i], filename);
    if (is_keyword(c.peek(), "end") && c.peek(1).kind == Tok::eof) {
      closed = true;
      ++i;
      break;
    }
    FormulaPtr f = parse_formula_tokens(c, sig);
    std::set<std::string> fv = free_variables(f);
    if (!fv.empty()) {
      fail_line(filename, lines[i], "theory sentence has free variables (first: '" + *fv.begin() + "')");
    }
    theory.sentences.push_back(std::move(f));
  }
  if (!closed) throw ParseError(filename, lines.back().number, 1, "missing 'end' of theory");
  if (i < lines.size()) fail_line(filename, lines[i], "unexpected content after 'end'");
  return theory;
}

PartialType parse_type(const std::string& text, const Signature& sig, const std::string& filename) {
  std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) throw ParseError(filename, 1, 1, "expected 'type'");
  PartialType type;
  {
    Cursor c = line_cursor(lines[0], filename);
    if (!is_keyword(c.peek(), "type")) c.fail("expected 'type'");
    c.get();
    type.name = c.expect(Tok::ident, "a type name").text;
    if (!c.at(Tok::eof)) c.fail("unexpected input after the type name");
  }
  if (lines.size() < 2) throw ParseError(filename, lines.back().number, 1, "expected 'vars'");
  {
    Cursor c = line_cursor(lines[1], filename);
    if (!is_keyword(c.peek(), "vars")) c.fail("expected 'vars'");
    c.get();
    while (c.at(Tok::ident)) {
      Token v = c.get();
      if (is_reserved_name(v.text)) c.fail_at(v, "'" + v.text + "' is reserved");
      if (sig.has_symbol(v.text)) c.fail_at(v, "variable '" + v.text + "' collides with a declared symbol");
      for (const auto& seen : type.variables) {
        if (seen == v.text) c.fail_at(v, "duplicate variable '" + v.text + "'");
      }
      type.variables.push_back(v.text);
    }
    if (!c.at(Tok::eof)) c.fail("expected variable names");
  }
  size_t i = 2;
  bool closed = false;
  for (; i < lines.size(); ++i) {
    Cursor c = line_cursor(lines[i], filename);
    if (is_keyword(c.peek(), "end") && c.peek(1).kind == Tok::eof) {
      closed = true;
      ++i;
      break;
    }
    FormulaPtr f = parse_formula_tokens(c, sig);
    for (const auto& v : free_variables(f)) {
      if (std::find(type.variables.begin(), type.variables.end(), v) == type.variables.end()) {
        fail_line(filename, lines[i], "formula mentions undeclared variable '" + v + "'");
      }
    }
    type.formulas.push_back(std::move(f));
  }
  if (!closed) throw ParseError(filename, lines.back().number, 1, "missing 'end' of type");
  if (i < lines.size()) fail_line(filename, lines[i], "unexpected content after 'end'");
  return type;
}

RegistryFile parse_registry_file(const std::string& text, const std::string& filename) {
  std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) throw ParseError(filename, 1, 1, "expected 'registry'");
  if (lines[0].text != "registry") throw ParseError(filename, lines[0].number, 1, "expected 'registry'");
  RegistryFile reg;
  size_t i = 1;
  bool closed = false;
  for (; i < lines.size(); ++i) {
    if (lines[i].text == "end") {
      closed = true;
      ++i;
      break;
    }
    reg.paths.push_back(lines[i].text);
  }
  if (!closed) throw ParseError(filename, lines.back().number, 1, "missing 'end' of registry");
  if (i < lines.size()) fail_line(filename, lines[i], "unexpected content after 'end'");
  return reg;
}

Rat parse_rational(const std::string& text) {
  Lexer lex(text, "");
  Cursor cursor(lex.run(), "");
  Rat r = parse_rational_tokens(cursor, /*allow_minus=*/true);
  if (!cursor.at(Tok::eof)) cursor.fail("unexpected trailing input after rational");
  return r;
}

}  // namespace metrilog
