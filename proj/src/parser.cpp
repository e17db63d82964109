#include "eclnl/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace eclnl {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class K { Ident, String, Sym, End };
  K kind = K::End;
  std::string text;
  Span span;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_tail(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  uint32_t line = 1, col = 1;
  size_t i = 0;
  auto here = [&](uint32_t len) { return Span{line, col, len}; };
  auto fail = [&](const std::string& msg) {
    throw ParseError(ParseError::Kind::Syntax, here(1), msg);
  };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (is_ident_start(c)) {
      size_t j = i;
      while (j < text.size() && is_ident_tail(text[j])) j++;
      Token t{Token::K::Ident, text.substr(i, j - i), here(static_cast<uint32_t>(j - i))};
      out.push_back(std::move(t));
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) j++;
      std::string num = text.substr(i, j - i);
      if (num != "0")
        throw ParseError(ParseError::Kind::Syntax, here(static_cast<uint32_t>(j - i)),
                         "unexpected number '" + num + "'");
      out.push_back(Token{Token::K::Sym, "0", here(1)});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') j++;
      if (j >= text.size() || text[j] != '"') fail("unterminated string literal");
      out.push_back(Token{Token::K::String, text.substr(i + 1, j - i - 1),
                          here(static_cast<uint32_t>(j - i + 1))});
      advance(j - i + 1);
      continue;
    }
    if (c == '-') {
      if (i + 1 < text.size() && text[i + 1] == 'o') {
        out.push_back(Token{Token::K::Sym, "-o", here(2)});
        advance(2);
        continue;
      }
      if (i + 1 < text.size() && text[i + 1] == '>') {
        out.push_back(Token{Token::K::Sym, "->", here(2)});
        advance(2);
        continue;
      }
      fail("stray '-'");
    }
    static const std::string kSingle = "()[]{}<>,;|.:=\\*+!";
    if (kSingle.find(c) != std::string::npos) {
      out.push_back(Token{Token::K::Sym, std::string(1, c), here(1)});
      advance(1);
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Token::K::End;
  end.span = here(1);
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kKeywords = {
      "let", "in", "case", "of", "left", "right", "box", "apply",
      "lift", "force", "rec", "initial", "def", "signature"};
  return kKeywords.count(s) != 0;
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  // Wire-name mentions in type position, for later signature validation.
  std::vector<std::pair<Name, Span>>* wire_mentions;

  const Token& peek(size_t ahead = 0) const {
    size_t p = pos + ahead;
    return p < toks.size() ? toks[p] : toks.back();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, peek().span, msg);
  }
  bool at_sym(const std::string& s) const {
    return peek().kind == Token::K::Sym && peek().text == s;
  }
  bool at_word(const std::string& s) const {
    return peek().kind == Token::K::Ident && peek().text == s;
  }
  Token take() { return toks[pos++]; }
  Token expect_sym(const std::string& s) {
    if (!at_sym(s)) fail("expected '" + s + "'");
    return take();
  }
  Token expect_word(const std::string& s) {
    if (!at_word(s)) fail("expected '" + s + "'");
    return take();
  }
  Name expect_name() {
    if (peek().kind != Token::K::Ident) fail("expected an identifier");
    if (is_keyword(peek().text)) fail("'" + peek().text + "' is a keyword");
    return Name(take().text);
  }

  // --- types ---------------------------------------------------------------

  Type parse_type_atom() {
    const Token& t = peek();
    if (at_sym("0")) {
      take();
      return Type::zero();
    }
    if (at_sym("!")) {
      take();
      return Type::bang(parse_type_atom());
    }
    if (at_sym("(")) {
      take();
      Type inner = parse_type();
      expect_sym(")");
      return inner;
    }
    if (t.kind == Token::K::Ident) {
      if (t.text == "I") {
        take();
        return Type::unit();
      }
      if (t.text == "Diag") {
        take();
        expect_sym("(");
        Span sp_in = peek().span;
        Type in = parse_type();
        expect_sym(",");
        Span sp_out = peek().span;
        Type out = parse_type();
        expect_sym(")");
        auto min = MType::from_type(in);
        if (!min)
          throw ParseError(ParseError::Kind::Syntax, sp_in,
                           "Diag argument must be built from wires, I and *");
        auto mout = MType::from_type(out);
        if (!mout)
          throw ParseError(ParseError::Kind::Syntax, sp_out,
                           "Diag argument must be built from wires, I and *");
        return Type::diag(*min, *mout);
      }
      if (is_keyword(t.text)) fail("expected a type");
      Token w = take();
      if (wire_mentions) wire_mentions->emplace_back(Name(w.text), w.span);
      return Type::wire(Name(w.text));
    }
    fail("expected a type");
  }

  Type parse_type_tensor() {
    Type acc = parse_type_atom();
    while (at_sym("*")) {
      take();
      acc = Type::tensor(acc, parse_type_atom());
    }
    return acc;
  }

  Type parse_type_sum() {
    Type acc = parse_type_tensor();
    while (at_sym("+")) {
      take();
      acc = Type::sum(acc, parse_type_tensor());
    }
    return acc;
  }

  Type parse_type() {
    Type lhs = parse_type_sum();
    if (at_sym("-o")) {
      take();
      return Type::lolli(lhs, parse_type());  // right associative
    }
    return lhs;
  }

  MType parse_mtype_annotation() {
    Span sp = peek().span;
    Type t = parse_type();
    auto m = MType::from_type(t);
    if (!m)
      throw ParseError(ParseError::Kind::Syntax, sp,
                       "expected a wire type (wires, I and * only)");
    return *m;
  }

  // --- terms ---------------------------------------------------------------

  Term parse_term() {
    const Token& t = peek();
    if (at_sym("\\")) {
      Span sp = take().span;
      Name x = expect_name();
      expect_sym(":");
      Type a = parse_type();
      expect_sym(".");
      return Term::lambda(x, a, parse_term(), sp);
    }
    if (at_word("let")) {
      Span sp = take().span;
      if (at_sym("<")) {
        take();
        Name x = expect_name();
        expect_sym(",");
        Name y = expect_name();
        expect_sym(">");
        expect_sym("=");
        Term bound = parse_term();
        expect_word("in");
        return Term::let_pair(x, y, bound, parse_term(), sp);
      }
      Name x = expect_name();
      expect_sym("=");
      Term bound = parse_term();
      expect_word("in");
      return Term::let(x, bound, parse_term(), sp);
    }
    if (at_word("rec")) {
      Span sp = take().span;
      Name x = expect_name();
      expect_sym(":");
      Type a = parse_type();
      expect_sym(".");
      return Term::rec(x, a, parse_term(), sp);
    }
    (void)t;
    return parse_seq();
  }

  Term parse_seq() {
    Term head = parse_app();
    if (at_sym(";")) {
      Span sp = take().span;
      return Term::seq(head, parse_term(), sp);
    }
    return head;
  }

  bool at_term_start() const {
    if (peek().kind == Token::K::Sym)
      return at_sym("(") || at_sym("<") || at_sym("*") || at_sym("\\");
    if (peek().kind != Token::K::Ident) return false;
    const std::string& w = peek().text;
    if (!is_keyword(w)) return true;
    return w == "lift" || w == "force" || w == "box" || w == "initial" ||
           w == "left" || w == "right" || w == "apply" || w == "case" ||
           w == "let" || w == "rec";
  }

  Term parse_app() {
    Term acc = parse_prefix();
    while (at_term_start() && !at_word("let") && !at_word("rec") && !at_sym("\\")) {
      Span sp = peek().span;
      acc = Term::app(acc, parse_prefix(), sp);
    }
    return acc;
  }

  // Operand of a prefix operator: a statement form swallows the rest of the
  // term, so "lift \x:A. m" means lift (\x:A. m).
  Term parse_prefix_operand() {
    if (at_sym("\\") || at_word("let") || at_word("rec")) return parse_term();
    return parse_prefix();
  }

  Term parse_prefix() {
    if (at_word("lift")) {
      Span sp = take().span;
      return Term::lift(parse_prefix_operand(), sp);
    }
    if (at_word("force")) {
      Span sp = take().span;
      return Term::force(parse_prefix_operand(), sp);
    }
    if (at_word("box")) {
      Span sp = take().span;
      expect_sym("[");
      MType t = parse_mtype_annotation();
      expect_sym("]");
      return Term::box(t, parse_prefix_operand(), sp);
    }
    if (at_word("initial")) {
      Span sp = take().span;
      expect_sym("[");
      Type c = parse_type();
      expect_sym("]");
      return Term::initial(c, parse_prefix_operand(), sp);
    }
    if (at_word("left") || at_word("right")) {
      bool left = at_word("left");
      Span sp = take().span;
      std::optional<Type> a, b;
      if (at_sym("[")) {
        take();
        a = parse_type();
        expect_sym(",");
        b = parse_type();
        expect_sym("]");
      }
      Term arg = parse_prefix_operand();
      if (left) return Term::make(Term::InjLeft{a, b, std::move(arg)}, sp);
      return Term::make(Term::InjRight{a, b, std::move(arg)}, sp);
    }
    return parse_atom();
  }

  Term parse_atom() {
    const Token& t = peek();
    if (at_sym("*")) return Term::star(take().span);
    if (at_sym("(")) {
      take();
      Term inner = parse_term();
      expect_sym(")");
      return inner;
    }
    if (at_sym("<")) {
      Span sp = take().span;
      Term a = parse_term();
      expect_sym(",");
      Term b = parse_term();
      expect_sym(">");
      return Term::pair(a, b, sp);
    }
    if (at_word("apply")) {
      Span sp = take().span;
      expect_sym("(");
      Term d = parse_term();
      expect_sym(",");
      Term a = parse_term();
      expect_sym(")");
      return Term::apply(d, a, sp);
    }
    if (at_word("case")) {
      Span sp = take().span;
      Term scrut = parse_term();
      expect_word("of");
      expect_sym("{");
      expect_word("left");
      Name xl = expect_name();
      expect_sym("->");
      Term nl = parse_term();
      expect_sym("|");
      expect_word("right");
      Name xr = expect_name();
      expect_sym("->");
      Term nr = parse_term();
      expect_sym("}");
      return Term::case_of(scrut, xl, nl, xr, nr, sp);
    }
    if (t.kind == Token::K::Ident && !is_keyword(t.text)) {
      Token tok = take();
      return Term::var(Name(tok.text), tok.span);
    }
    fail("expected a term");
  }

  // --- program -------------------------------------------------------------

  // A file is either one bare term, or a run of definitions whose last item
  // must be "def main = ...". The def keyword delimits items, so definition
  // bodies may span lines freely.
  SourceProgram parse_program() {
    SourceProgram p;
    if (at_word("signature")) {
      take();
      if (peek().kind != Token::K::String) fail("expected a quoted path");
      p.signature_path = take().text;
    }
    if (!at_word("def")) {
      p.main = parse_term();
      if (peek().kind != Token::K::End) fail("trailing input after the main term");
      return p;
    }
    static const Name kMain("main");
    bool have_main = false;
    while (at_word("def")) {
      Span sp = take().span;
      if (have_main)
        throw ParseError(ParseError::Kind::Syntax, sp,
                         "'def main' must be the last definition");
      if (peek().kind != Token::K::Ident || is_keyword(peek().text))
        fail("expected a definition name");
      Name n(peek().text);
      Span name_sp = take().span;
      for (const auto& [prev, body] : p.definitions)
        if (prev == n)
          throw ParseError(ParseError::Kind::Syntax, name_sp,
                           "duplicate definition of '" + n.str() + "'");
      expect_sym("=");
      Term body = parse_term();
      if (n == kMain) {
        have_main = true;
        p.main = std::move(body);
      } else {
        p.definitions.emplace_back(n, std::move(body));
      }
    }
    if (peek().kind != Token::K::End) fail("trailing input after the last definition");
    if (!have_main) fail("a program with definitions needs a final 'def main = ...'");
    return p;
  }
};

struct ParsedFile {
  SourceProgram prog;
  std::vector<std::pair<Name, Span>> wire_mentions;
};

ParsedFile parse_file(const std::string& text) {
  std::vector<Token> toks = lex(text);
  ParsedFile f;
  Parser parser{toks, 0, &f.wire_mentions};
  f.prog = parser.parse_program();
  return f;
}

// Scope-aware rewrite of free variables naming generators into constants.
Term resolve_rec(const Term& t, const Signature& sig, std::set<Name>& bound) {
  auto rec = [&](const Term& s) { return resolve_rec(s, sig, bound); };
  auto under = [&](Name x, const Term& body) {
    bool fresh = bound.insert(x).second;
    Term r = resolve_rec(body, sig, bound);
    if (fresh) bound.erase(x);
    return r;
  };
  return std::visit(
      Overloaded{
          [&](const Term::Var& n) {
            if (!bound.count(n.name) && sig.find(n.name))
              return Term::constant(n.name, t.span());
            return t;
          },
          [&](const Term::Const&) { return t; },
          [&](const Term::Star&) { return t; },
          [&](const Term::Label&) { return t; },
          [&](const Term::BoxedDiag&) { return t; },
          [&](const Term::Let& n) {
            Term b = rec(n.bound);
            return Term::let(n.var, b, under(n.var, n.body), t.span());
          },
          [&](const Term::Initial& n) {
            return Term::initial(n.target, rec(n.arg), t.span());
          },
          [&](const Term::InjLeft& n) {
            return Term::make(Term::InjLeft{n.left_type, n.right_type, rec(n.arg)},
                              t.span());
          },
          [&](const Term::InjRight& n) {
            return Term::make(Term::InjRight{n.left_type, n.right_type, rec(n.arg)},
                              t.span());
          },
          [&](const Term::Case& n) {
            Term s = rec(n.scrutinee);
            return Term::case_of(s, n.left_var, under(n.left_var, n.left_body),
                                 n.right_var, under(n.right_var, n.right_body),
                                 t.span());
          },
          [&](const Term::Seq& n) {
            return Term::seq(rec(n.first), rec(n.second), t.span());
          },
          [&](const Term::Pair& n) {
            return Term::pair(rec(n.first), rec(n.second), t.span());
          },
          [&](const Term::LetPair& n) {
            Term b = rec(n.bound);
            bool f1 = bound.insert(n.first_var).second;
            bool f2 = bound.insert(n.second_var).second;
            Term body = resolve_rec(n.body, sig, bound);
            if (f1) bound.erase(n.first_var);
            if (f2) bound.erase(n.second_var);
            return Term::let_pair(n.first_var, n.second_var, b, body, t.span());
          },
          [&](const Term::Lambda& n) {
            return Term::lambda(n.var, n.annot, under(n.var, n.body), t.span());
          },
          [&](const Term::App& n) {
            return Term::app(rec(n.fn), rec(n.arg), t.span());
          },
          [&](const Term::Lift& n) { return Term::lift(rec(n.inner), t.span()); },
          [&](const Term::Force& n) { return Term::force(rec(n.inner), t.span()); },
          [&](const Term::Box& n) {
            return Term::box(n.input, rec(n.inner), t.span());
          },
          [&](const Term::Apply& n) {
            return Term::apply(rec(n.diag), rec(n.arg), t.span());
          },
          [&](const Term::Rec& n) {
            return Term::rec(n.var, n.annot, under(n.var, n.body), t.span());
          },
      },
      t.node());
}

}  // namespace

SourceProgram parse_program(const std::string& text) {
  return parse_file(text).prog;
}

SourceProgram parse_program(const std::string& text, const Signature& sig) {
  ParsedFile f = parse_file(text);
  for (const auto& [wire, span] : f.wire_mentions)
    if (!sig.has_wire(wire))
      throw ParseError(ParseError::Kind::UnknownWireType, span,
                       "wire type '" + wire.str() + "' is not declared by the signature");
  SourceProgram& p = f.prog;
  std::set<Name> bound;
  for (auto& [name, body] : p.definitions) {
    body = resolve_rec(body, sig, bound);
    bound.insert(name);  // later items and main see this definition
  }
  p.main = resolve_rec(p.main, sig, bound);
  return p;
}

Term parse_term(const std::string& text) {
  SourceProgram p = parse_program(text);
  if (!p.definitions.empty() || p.signature_path)
    throw ParseError(ParseError::Kind::Syntax, Span{1, 1, 1},
                     "expected a bare term");
  return p.main;
}

Term parse_term(const std::string& text, const Signature& sig) {
  SourceProgram p = parse_program(text, sig);
  if (!p.definitions.empty() || p.signature_path)
    throw ParseError(ParseError::Kind::Syntax, Span{1, 1, 1},
                     "expected a bare term");
  return p.main;
}

Type parse_type(const std::string& text) {
  std::vector<Token> toks = lex(text);
  Parser parser{toks, 0, nullptr};
  Type t = parser.parse_type();
  if (parser.peek().kind != Token::K::End) parser.fail("trailing input after type");
  return t;
}

Term resolve_constants(const Term& t, const Signature& sig) {
  std::set<Name> bound;
  return resolve_rec(t, sig, bound);
}

Term desugar(const SourceProgram& p) {
  Term acc = p.main;
  for (auto it = p.definitions.rbegin(); it != p.definitions.rend(); ++it)
    acc = Term::let(it->first, it->second, acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Printer. Levels mirror the grammar: statement forms (lambda/let/rec) bind
// loosest, then ;, application, prefix operators, atoms.

namespace {

enum PrintLevel { kStmt = 0, kSeq = 1, kApp = 2, kPrefix = 3, kAtom = 4 };

// Machine-made labels are already spelled "#l0"; labels from other sources
// get the marker added.
std::string print_label(Name l) {
  std::string s = l.str();
  return s.rfind('#', 0) == 0 ? s : "#" + s;
}

void print_rec(const Term& t, int level, std::string& out);

void wrap(const Term& t, int have, int want, std::string& out) {
  if (have < want) {
    out += "(";
    print_rec(t, kStmt, out);
    out += ")";
  } else {
    print_rec(t, have, out);
  }
}

void print_rec(const Term& t, int level, std::string& out) {
  std::visit(
      Overloaded{
          [&](const Term::Var& n) { out += n.name.str(); },
          [&](const Term::Const& n) { out += n.name.str(); },
          [&](const Term::Star&) { out += "*"; },
          [&](const Term::Label& n) { out += print_label(n.label); },
          [&](const Term::BoxedDiag& n) {
            out += "#diag{";
            const auto& s = n.diagram;
            LabelContext dom = s.dom(), cod = s.cod();
            auto side = [&](const LabelTuple& t, const LabelContext& wires) {
              bool first = true;
              for (Name l : t.labels()) {
                if (!first) out += ", ";
                first = false;
                auto it = wires.find(l);
                out += print_label(l) + ":" +
                       (it == wires.end() ? std::string("?") : it->second.str());
              }
            };
            side(n.dom_tuple, dom);
            out += " -> ";
            side(n.cod_tuple, cod);
            out += "; nodes=" + std::to_string(s.d.nodes.size()) + "}";
          },
          [&](const Term::Lambda& n) {
            bool paren = level > kStmt;
            if (paren) out += "(";
            out += "\\" + n.var.str() + ":" + print_type(n.annot) + ". ";
            print_rec(n.body, kStmt, out);
            if (paren) out += ")";
          },
          [&](const Term::Let& n) {
            bool paren = level > kStmt;
            if (paren) out += "(";
            out += "let " + n.var.str() + " = ";
            print_rec(n.bound, kStmt, out);
            out += " in ";
            print_rec(n.body, kStmt, out);
            if (paren) out += ")";
          },
          [&](const Term::LetPair& n) {
            bool paren = level > kStmt;
            if (paren) out += "(";
            out += "let <" + n.first_var.str() + ", " + n.second_var.str() + "> = ";
            print_rec(n.bound, kStmt, out);
            out += " in ";
            print_rec(n.body, kStmt, out);
            if (paren) out += ")";
          },
          [&](const Term::Rec& n) {
            bool paren = level > kStmt;
            if (paren) out += "(";
            out += "rec " + n.var.str() + ":" + print_type(n.annot) + ". ";
            print_rec(n.body, kStmt, out);
            if (paren) out += ")";
          },
          [&](const Term::Seq& n) {
            bool paren = level > kSeq;
            if (paren) out += "(";
            wrap(n.first, kApp, kApp, out);
            out += "; ";
            print_rec(n.second, kSeq, out);  // tail may be another seq or stmt
            if (paren) out += ")";
          },
          [&](const Term::App& n) {
            bool paren = level > kApp;
            if (paren) out += "(";
            wrap(n.fn, kApp, kApp, out);
            out += " ";
            wrap(n.arg, kPrefix, kPrefix, out);
            if (paren) out += ")";
          },
          [&](const Term::Lift& n) {
            bool paren = level > kPrefix;
            if (paren) out += "(";
            out += "lift ";
            wrap(n.inner, kPrefix, kPrefix, out);
            if (paren) out += ")";
          },
          [&](const Term::Force& n) {
            bool paren = level > kPrefix;
            if (paren) out += "(";
            out += "force ";
            wrap(n.inner, kPrefix, kPrefix, out);
            if (paren) out += ")";
          },
          [&](const Term::Box& n) {
            bool paren = level > kPrefix;
            if (paren) out += "(";
            out += "box[" + print_mtype(n.input) + "] ";
            wrap(n.inner, kPrefix, kPrefix, out);
            if (paren) out += ")";
          },
          [&](const Term::Initial& n) {
            bool paren = level > kPrefix;
            if (paren) out += "(";
            out += "initial[" + print_type(n.target) + "] ";
            wrap(n.arg, kPrefix, kPrefix, out);
            if (paren) out += ")";
          },
          [&](const Term::InjLeft& n) {
            bool paren = level > kPrefix;
            if (paren) out += "(";
            out += "left";
            if (n.left_type && n.right_type)
              out += "[" + print_type(*n.left_type) + ", " + print_type(*n.right_type) + "]";
            out += " ";
            wrap(n.arg, kPrefix, kPrefix, out);
            if (paren) out += ")";
          },
          [&](const Term::InjRight& n) {
            bool paren = level > kPrefix;
            if (paren) out += "(";
            out += "right";
            if (n.left_type && n.right_type)
              out += "[" + print_type(*n.left_type) + ", " + print_type(*n.right_type) + "]";
            out += " ";
            wrap(n.arg, kPrefix, kPrefix, out);
            if (paren) out += ")";
          },
          [&](const Term::Pair& n) {
            out += "<";
            print_rec(n.first, kStmt, out);
            out += ", ";
            print_rec(n.second, kStmt, out);
            out += ">";
          },
          [&](const Term::Apply& n) {
            out += "apply(";
            print_rec(n.diag, kStmt, out);
            out += ", ";
            print_rec(n.arg, kStmt, out);
            out += ")";
          },
          [&](const Term::Case& n) {
            out += "case ";
            print_rec(n.scrutinee, kStmt, out);
            out += " of {left " + n.left_var.str() + " -> ";
            print_rec(n.left_body, kStmt, out);
            out += " | right " + n.right_var.str() + " -> ";
            print_rec(n.right_body, kStmt, out);
            out += "}";
          },
      },
      t.node());
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_rec(t, kStmt, out);
  return out;
}

}  // namespace eclnl
