#include "kripkelab/formula.hpp"

#include <cctype>
#include <optional>

#include "kripkelab/errors.hpp"

namespace kripkelab {

Term Term::variable(std::string name) {
  Term t;
  t.is_variable_ = true;
  t.name_ = std::move(name);
  return t;
}

Term Term::parameter(SetId id) {
  Term t;
  t.id_ = id;
  return t;
}

struct Formula::Node {
  FormulaKind kind;
  Term lhs;
  Term rhs;
  std::string var;
  std::optional<Formula> left;
  std::optional<Formula> right;
};

Formula Formula::bottom() {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::bottom, {}, {}, {}, {}, {}}));
}

Formula Formula::mem(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::mem, std::move(lhs), std::move(rhs), {}, {}, {}}));
}

Formula Formula::eq(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::eq, std::move(lhs), std::move(rhs), {}, {}, {}}));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::conj, {}, {}, {}, std::move(l), std::move(r)}));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::disj, {}, {}, {}, std::move(l), std::move(r)}));
}

Formula Formula::imp(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::imp, {}, {}, {}, std::move(l), std::move(r)}));
}

Formula Formula::neg(Formula f) { return imp(std::move(f), bottom()); }

Formula Formula::iff(Formula l, Formula r) { return conj(imp(l, r), imp(r, l)); }

Formula Formula::top() { return neg(bottom()); }

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::forall, {}, {}, std::move(var), std::move(body), {}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::exists, {}, {}, std::move(var), std::move(body), {}}));
}

Formula Formula::bounded_forall(std::string var, Term bound, Formula body) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::bounded_forall, std::move(bound), {}, std::move(var), std::move(body), {}}));
}

Formula Formula::bounded_exists(std::string var, Term bound, Formula body) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::bounded_exists, std::move(bound), {}, std::move(var), std::move(body), {}}));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_atomic() const noexcept {
  return kind() == FormulaKind::mem || kind() == FormulaKind::eq;
}

bool Formula::is_negation() const noexcept {
  return kind() == FormulaKind::imp && node_->right->kind() == FormulaKind::bottom;
}

bool Formula::is_quantifier() const noexcept {
  switch (kind()) {
    case FormulaKind::forall:
    case FormulaKind::exists:
    case FormulaKind::bounded_forall:
    case FormulaKind::bounded_exists:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const noexcept {
  return kind() == FormulaKind::conj || kind() == FormulaKind::disj ||
         kind() == FormulaKind::imp;
}

const Term& Formula::lhs() const {
  if (!is_atomic()) throw Error("lhs() on a non-atomic formula");
  return node_->lhs;
}

const Term& Formula::rhs() const {
  if (!is_atomic()) throw Error("rhs() on a non-atomic formula");
  return node_->rhs;
}

const Formula& Formula::left() const {
  if (!is_binary()) throw Error("left() on a non-binary formula");
  return *node_->left;
}

const Formula& Formula::right() const {
  if (!is_binary()) throw Error("right() on a non-binary formula");
  return *node_->right;
}

const std::string& Formula::var() const {
  if (!is_quantifier()) throw Error("var() on a non-quantifier");
  return node_->var;
}

const Formula& Formula::body() const {
  if (!is_quantifier()) throw Error("body() on a non-quantifier");
  return *node_->left;
}

const Term& Formula::bound() const {
  if (kind() != FormulaKind::bounded_forall && kind() != FormulaKind::bounded_exists) {
    throw Error("bound() on an unbounded formula");
  }
  return node_->lhs;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.lhs == b.lhs && a.rhs == b.rhs && a.var == b.var &&
         a.left == b.left && a.right == b.right;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string render_term(const Term& t) {
  return t.is_variable() ? t.name() : "#" + std::to_string(t.id().value);
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::bottom:
      out += "false";
      return;
    case FormulaKind::mem:
      out += render_term(f.lhs()) + " in " + render_term(f.rhs());
      return;
    case FormulaKind::eq:
      out += render_term(f.lhs()) + " = " + render_term(f.rhs());
      return;
    case FormulaKind::conj:
    case FormulaKind::disj:
    case FormulaKind::imp: {
      if (f.is_negation()) {
        const Formula& inner = f.left();
        out += '~';
        const bool bare = inner.kind() == FormulaKind::bottom || inner.is_negation();
        if (!bare) out += '(';
        render_into(inner, out);
        if (!bare) out += ')';
        return;
      }
      const char* op = f.kind() == FormulaKind::conj   ? " & "
                       : f.kind() == FormulaKind::disj ? " | "
                                                       : " -> ";
      out += '(';
      render_into(f.left(), out);
      out += op;
      render_into(f.right(), out);
      out += ')';
      return;
    }
    case FormulaKind::forall:
    case FormulaKind::exists:
    case FormulaKind::bounded_forall:
    case FormulaKind::bounded_exists: {
      const bool universal =
          f.kind() == FormulaKind::forall || f.kind() == FormulaKind::bounded_forall;
      out += universal ? "(forall " : "(exists ";
      out += f.var();
      if (f.kind() == FormulaKind::bounded_forall || f.kind() == FormulaKind::bounded_exists) {
        out += " in " + render_term(f.bound());
      }
      out += " . ";
      render_into(f.body(), out);
      out += ')';
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

enum class Tok { ident, param, lparen, rparen, dot, tilde, amp, bar, arrow, equals, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '#') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == start + 1) throw ParseError("expected parameter id after '#'", start);
      if (i - start - 1 > 9) throw ParseError("parameter id too large", start);
      out.push_back({Tok::param, std::string(s.substr(start + 1, i - start - 1)), start});
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", start});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '.': kind = Tok::dot; break;
      case '~': kind = Tok::tilde; break;
      case '&': kind = Tok::amp; break;
      case '|': kind = Tok::bar; break;
      case '=': kind = Tok::equals; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

bool is_keyword(const std::string& word) {
  return word == "false" || word == "true" || word == "in" || word == "forall" ||
         word == "exists";
}

class Parser {
 public:
  Parser(std::string_view text, const Universe* u) : tokens_(tokenize(text)), universe_(u) {}

  Formula parse_all() {
    Formula f = parse_imp();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    if (peek().kind == Tok::end) throw ParseError(what.empty() ? "unexpected end of input" : what, peek().pos);
    throw ParseError(what, peek().pos);
  }

  bool at_keyword(const char* word) const {
    return peek().kind == Tok::ident && peek().text == word;
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + what +
           (peek().kind == Tok::end ? std::string(", found end of input")
                                    : ", found '" + peek().text + "'"));
    }
    next();
  }

  Formula parse_imp() {
    Formula l = parse_disj();
    if (peek().kind == Tok::arrow) {
      next();
      return Formula::imp(std::move(l), parse_imp());
    }
    return l;
  }

  Formula parse_disj() {
    Formula l = parse_conj();
    while (peek().kind == Tok::bar) {
      next();
      l = Formula::disj(std::move(l), parse_conj());
    }
    return l;
  }

  Formula parse_conj() {
    Formula l = parse_unary();
    while (peek().kind == Tok::amp) {
      next();
      l = Formula::conj(std::move(l), parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::tilde) {
      next();
      return Formula::neg(parse_unary());
    }
    if (at_keyword("forall") || at_keyword("exists")) {
      const bool universal = next().text == "forall";
      if (peek().kind != Tok::ident || is_keyword(peek().text)) fail("expected variable name");
      std::string var = next().text;
      std::optional<Term> bound;
      if (at_keyword("in")) {
        next();
        bound = parse_term();
      }
      expect(Tok::dot, "'.'");
      Formula body = parse_imp();
      if (bound) {
        return universal ? Formula::bounded_forall(std::move(var), *bound, std::move(body))
                         : Formula::bounded_exists(std::move(var), *bound, std::move(body));
      }
      return universal ? Formula::forall(std::move(var), std::move(body))
                       : Formula::exists(std::move(var), std::move(body));
    }
    if (at_keyword("false")) {
      next();
      return Formula::bottom();
    }
    if (at_keyword("true")) {
      next();
      return Formula::top();
    }
    if (peek().kind == Tok::lparen) {
      next();
      Formula f = parse_imp();
      expect(Tok::rparen, "')'");
      return f;
    }
    Term lhs = parse_term();
    if (at_keyword("in")) {
      next();
      return Formula::mem(std::move(lhs), parse_term());
    }
    if (peek().kind == Tok::equals) {
      next();
      return Formula::eq(std::move(lhs), parse_term());
    }
    fail("expected 'in' or '=' after term");
  }

  Term parse_term() {
    const Token& t = peek();
    if (t.kind == Tok::param) {
      next();
      const SetId id{static_cast<std::uint32_t>(std::stoul(t.text))};
      if (universe_ && !universe_->contains(id)) {
        throw ParseError("unknown parameter #" + t.text, t.pos);
      }
      return Term::parameter(id);
    }
    if (t.kind == Tok::ident && !is_keyword(t.text)) {
      next();
      return Term::variable(t.text);
    }
    fail(t.kind == Tok::end ? "expected term, found end of input"
                            : "expected term, found '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Universe* universe_;
};

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  auto term = [&](const Term& t) {
    if (t.is_variable() && !bound.count(t.name())) out.insert(t.name());
  };
  switch (f.kind()) {
    case FormulaKind::bottom:
      return;
    case FormulaKind::mem:
    case FormulaKind::eq:
      term(f.lhs());
      term(f.rhs());
      return;
    case FormulaKind::conj:
    case FormulaKind::disj:
    case FormulaKind::imp:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case FormulaKind::bounded_forall:
    case FormulaKind::bounded_exists:
      term(f.bound());
      [[fallthrough]];
    case FormulaKind::forall:
    case FormulaKind::exists: {
      const bool fresh = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
  }
}

void collect_params(const Formula& f, std::set<SetId>& out) {
  auto term = [&](const Term& t) {
    if (!t.is_variable()) out.insert(t.id());
  };
  if (f.is_atomic()) {
    term(f.lhs());
    term(f.rhs());
  } else if (f.is_binary()) {
    collect_params(f.left(), out);
    collect_params(f.right(), out);
  } else if (f.is_quantifier()) {
    if (f.kind() == FormulaKind::bounded_forall || f.kind() == FormulaKind::bounded_exists) {
      term(f.bound());
    }
    collect_params(f.body(), out);
  }
}

Formula rebuild_quantifier(const Formula& f, Term bound, Formula body) {
  switch (f.kind()) {
    case FormulaKind::forall: return Formula::forall(f.var(), std::move(body));
    case FormulaKind::exists: return Formula::exists(f.var(), std::move(body));
    case FormulaKind::bounded_forall:
      return Formula::bounded_forall(f.var(), std::move(bound), std::move(body));
    default:
      return Formula::bounded_exists(f.var(), std::move(bound), std::move(body));
  }
}

Formula rebuild_binary(const Formula& f, Formula l, Formula r) {
  switch (f.kind()) {
    case FormulaKind::conj: return Formula::conj(std::move(l), std::move(r));
    case FormulaKind::disj: return Formula::disj(std::move(l), std::move(r));
    default: return Formula::imp(std::move(l), std::move(r));
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

Formula parse(std::string_view text) { return Parser(text, nullptr).parse_all(); }

Formula parse(std::string_view text, const Universe& u) { return Parser(text, &u).parse_all(); }

bool is_delta0(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::forall:
    case FormulaKind::exists:
      return false;
    case FormulaKind::bounded_forall:
    case FormulaKind::bounded_exists:
      return is_delta0(f.body());
    case FormulaKind::conj:
    case FormulaKind::disj:
    case FormulaKind::imp:
      return is_delta0(f.left()) && is_delta0(f.right());
    default:
      return true;
  }
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

std::set<SetId> parameters(const Formula& f) {
  std::set<SetId> out;
  collect_params(f, out);
  return out;
}

std::size_t formula_size(const Formula& f) {
  if (f.is_binary()) return 1 + formula_size(f.left()) + formula_size(f.right());
  if (f.is_quantifier()) return 1 + formula_size(f.body());
  return 1;
}

Formula substitute(const Formula& f, const std::string& var, SetId id) {
  auto term = [&](const Term& t) {
    return t.is_variable() && t.name() == var ? Term::parameter(id) : t;
  };
  switch (f.kind()) {
    case FormulaKind::bottom:
      return f;
    case FormulaKind::mem:
      return Formula::mem(term(f.lhs()), term(f.rhs()));
    case FormulaKind::eq:
      return Formula::eq(term(f.lhs()), term(f.rhs()));
    case FormulaKind::conj:
    case FormulaKind::disj:
    case FormulaKind::imp:
      return rebuild_binary(f, substitute(f.left(), var, id), substitute(f.right(), var, id));
    default: {
      const bool bounded =
          f.kind() == FormulaKind::bounded_forall || f.kind() == FormulaKind::bounded_exists;
      Term bound = bounded ? term(f.bound()) : Term{};
      if (f.var() == var) return rebuild_quantifier(f, std::move(bound), f.body());
      return rebuild_quantifier(f, std::move(bound), substitute(f.body(), var, id));
    }
  }
}

namespace {

Formula star(const Formula& f, const Formula& psi) {
  switch (f.kind()) {
    case FormulaKind::bottom:
    case FormulaKind::mem:
    case FormulaKind::eq:
      return Formula::disj(f, psi);
    case FormulaKind::conj:
    case FormulaKind::disj:
    case FormulaKind::imp:
      return rebuild_binary(f, star(f.left(), psi), star(f.right(), psi));
    case FormulaKind::forall:
    case FormulaKind::exists:
      return rebuild_quantifier(f, {}, star(f.body(), psi));
    case FormulaKind::bounded_forall:
      return Formula::bounded_forall(f.var(), f.bound(), star(f.body(), psi));
    case FormulaKind::bounded_exists:
      return Formula::disj(Formula::bounded_exists(f.var(), f.bound(), star(f.body(), psi)),
                           psi);
  }
  return f;
}

}  // namespace

Formula star_transform(const Formula& f, const Formula& psi) {
  if (!is_closed(psi)) {
    throw ArityError("psi must be a sentence, but has free variables");
  }
  return star(f, psi);
}

}  // namespace kripkelab
