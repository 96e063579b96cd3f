#include "cospan/morphexpr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "cospan/errors.hpp"

namespace cospan {

// ---------------------------------------------------------------------------
// AST

MorphExpr MorphExpr::gen(std::string name) {
  return MorphExpr(std::make_shared<const Node>(
      Node{Kind::Gen, std::move(name), LabeledSet{}, {}}));
}

MorphExpr MorphExpr::id(LabeledSet object) {
  return MorphExpr(std::make_shared<const Node>(
      Node{Kind::Id, {}, std::move(object), {}}));
}

MorphExpr MorphExpr::compose(MorphExpr first, MorphExpr second) {
  return MorphExpr(std::make_shared<const Node>(
      Node{Kind::Compose, {}, LabeledSet{}, {std::move(first), std::move(second)}}));
}

MorphExpr MorphExpr::tensor(MorphExpr left, MorphExpr right) {
  return MorphExpr(std::make_shared<const Node>(
      Node{Kind::Tensor, {}, LabeledSet{}, {std::move(left), std::move(right)}}));
}

const MorphExpr &MorphExpr::left() const { return node_->children.at(0); }
const MorphExpr &MorphExpr::right() const { return node_->children.at(1); }

bool operator==(const MorphExpr &a, const MorphExpr &b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case MorphExpr::Kind::Gen:
      return a.name() == b.name();
    case MorphExpr::Kind::Id:
      return a.object() == b.object();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

void Environment::bind(std::string name, OpenPetriNet net) {
  if (contains(name))
    throw ValidationError("generator " + name, "defined more than once");
  bindings_.emplace_back(std::move(name), std::move(net));
}

const OpenPetriNet *Environment::find(std::string_view name) const {
  for (const auto &[n, net] : bindings_)
    if (n == name) return &net;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Then, After, Tensor, LParen, RParen, LBracket, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
  std::size_t line;
  std::size_t column;
};

constexpr std::string_view kTensorSym = "⊗";   // ⊗
constexpr std::string_view kAfterSym = "∘";    // ∘
constexpr std::string_view kDotSym = "·";      // ·

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  MorphExpr parse() {
    auto e = parse_sequence();
    if (tok_.kind != Tok::End) fail(tok_, "unexpected input after expression");
    return e;
  }

 private:
  // -- lexing --------------------------------------------------------------

  bool starts_with(std::string_view s) const {
    return text_.substr(pos_).starts_with(s);
  }

  bool at_symbol() const {
    return starts_with(kTensorSym) || starts_with(kAfterSym) ||
           starts_with(kDotSym);
  }

  static bool ident_byte(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
  }

  void bump(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes && pos_ < text_.size(); ++i, ++pos_) {
      auto c = static_cast<unsigned char>(text_[pos_]);
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      bump(1);
  }

  void advance() {
    skip_space();
    tok_ = Token{Tok::End, "end of input", pos_, line_, column_};
    if (pos_ >= text_.size()) return;

    auto single = [&](Tok k, std::size_t len) {
      tok_.kind = k;
      tok_.text = std::string(text_.substr(pos_, len));
      bump(len);
    };
    if (starts_with(kTensorSym)) return single(Tok::Tensor, kTensorSym.size());
    if (starts_with(kAfterSym)) return single(Tok::After, kAfterSym.size());
    if (starts_with(kDotSym)) return single(Tok::Then, kDotSym.size());

    switch (text_[pos_]) {
      case ';': return single(Tok::Then, 1);
      case '*': return single(Tok::Tensor, 1);
      case '(': return single(Tok::LParen, 1);
      case ')': return single(Tok::RParen, 1);
      case '[': return single(Tok::LBracket, 1);
      case ',': return single(Tok::Comma, 1);
      default: break;
    }

    auto c = static_cast<unsigned char>(text_[pos_]);
    if (!ident_byte(c) || std::isdigit(c) || c == '\'') {
      std::size_t len = 1;
      while (pos_ + len < text_.size() &&
             (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80)
        ++len;
      tok_.text = std::string(text_.substr(pos_, len));
      fail(tok_, "unexpected character");
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !at_symbol() &&
           ident_byte(static_cast<unsigned char>(text_[pos_])))
      bump(1);
    tok_.kind = Tok::Ident;
    tok_.text = std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] static void fail(const Token &t, const std::string &reason) {
    throw SyntaxError(t.line, t.column, t.text, reason);
  }

  void expect(Tok kind, const char *what) {
    if (tok_.kind != kind) fail(tok_, std::string("expected ") + what);
    advance();
  }

  // -- grammar -------------------------------------------------------------

  MorphExpr parse_sequence() {
    auto lhs = parse_product();
    while (tok_.kind == Tok::Then || tok_.kind == Tok::After) {
      bool mathematical = tok_.kind == Tok::After;
      advance();
      auto rhs = parse_product();
      lhs = mathematical ? MorphExpr::compose(std::move(rhs), std::move(lhs))
                         : MorphExpr::compose(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  MorphExpr parse_product() {
    auto lhs = parse_atom();
    while (tok_.kind == Tok::Tensor) {
      advance();
      lhs = MorphExpr::tensor(std::move(lhs), parse_atom());
    }
    return lhs;
  }

  MorphExpr parse_atom() {
    if (tok_.kind == Tok::LParen) {
      advance();
      auto e = parse_sequence();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (tok_.kind != Tok::Ident) fail(tok_, "expected an expression");

    Token head = tok_;
    advance();
    if (head.text == "id" && tok_.kind == Tok::LBracket) return parse_object(head);
    if ((head.text == "compose" || head.text == "otimes") &&
        tok_.kind == Tok::LParen)
      return parse_call(head);
    return MorphExpr::gen(head.text);
  }

  // Labels are read raw up to the closing bracket.
  MorphExpr parse_object(const Token &head) {
    std::vector<std::string> labels;
    std::string current;
    Token label_start{Tok::Ident, "", pos_, line_, column_};
    auto finish_label = [&](bool allow_empty) {
      auto b = current.find_first_not_of(" \t\r\n");
      auto e = current.find_last_not_of(" \t\r\n");
      std::string label =
          b == std::string::npos ? std::string{} : current.substr(b, e - b + 1);
      if (label.empty()) {
        if (!allow_empty) fail(label_start, "empty label in identity object");
      } else {
        if (label.find_first_of(" \t\r\n") != std::string::npos)
          fail(label_start, "label contains whitespace");
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
          label_start.text = label;
          fail(label_start, "duplicate label in identity object");
        }
        labels.push_back(std::move(label));
      }
      current.clear();
    };

    while (true) {
      if (pos_ >= text_.size()) {
        Token end{Tok::End, "end of input", pos_, line_, column_};
        fail(end, "unterminated identity object after '" + head.text + "['");
      }
      char c = text_[pos_];
      if (c == ']') {
        finish_label(labels.empty());
        bump(1);
        break;
      }
      if (c == ',') {
        finish_label(false);
        bump(1);
        label_start = Token{Tok::Ident, "", pos_, line_, column_};
        continue;
      }
      if (c == '[' || c == '(' || c == ')') {
        Token bad{Tok::Ident, std::string(1, c), pos_, line_, column_};
        fail(bad, "unexpected character in identity object");
      }
      if (current.empty()) label_start = Token{Tok::Ident, "", pos_, line_, column_};
      current += c;
      bump(1);
    }
    advance();
    return MorphExpr::id(LabeledSet(std::move(labels)));
  }

  // compose(...) and otimes(...) fold left-associatively, both in
  // diagrammatic order: compose(f, g) is f then g.
  MorphExpr parse_call(const Token &head) {
    advance();  // '('
    std::vector<MorphExpr> args;
    args.push_back(parse_sequence());
    while (tok_.kind == Tok::Comma) {
      advance();
      args.push_back(parse_sequence());
    }
    expect(Tok::RParen, "',' or ')'");
    bool is_compose = head.text == "compose";
    MorphExpr acc = args.front();
    for (std::size_t i = 1; i < args.size(); ++i)
      acc = is_compose ? MorphExpr::compose(std::move(acc), args[i])
                       : MorphExpr::tensor(std::move(acc), args[i]);
    return acc;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token tok_{};
};

// Operator precedence: Compose binds loosest. Tensor operands of a
// composition are parenthesized for legibility even though not required.
void print_into(const MorphExpr &e, std::string &out) {
  using K = MorphExpr::Kind;
  auto wrapped = [&](const MorphExpr &sub, bool parens) {
    if (parens) out += '(';
    print_into(sub, out);
    if (parens) out += ')';
  };
  switch (e.kind()) {
    case K::Gen:
      out += e.name();
      return;
    case K::Id: {
      out += "id[";
      const auto &labels = e.object().labels();
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += labels[i];
      }
      out += ']';
      return;
    }
    case K::Compose:
      wrapped(e.left(), e.left().kind() == K::Tensor);
      out += " ; ";
      wrapped(e.right(), e.right().is_binary());
      return;
    case K::Tensor:
      wrapped(e.left(), e.left().kind() == K::Compose);
      out += " * ";
      wrapped(e.right(), e.right().is_binary());
      return;
  }
}

}  // namespace

MorphExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const MorphExpr &e) {
  std::string out;
  print_into(e, out);
  return out;
}

std::vector<std::string> generator_names(const MorphExpr &e) {
  std::vector<std::string> names;
  std::function<void(const MorphExpr &)> walk = [&](const MorphExpr &x) {
    if (x.kind() == MorphExpr::Kind::Gen) {
      if (std::find(names.begin(), names.end(), x.name()) == names.end())
        names.push_back(x.name());
    } else if (x.is_binary()) {
      walk(x.left());
      walk(x.right());
    }
  };
  walk(e);
  return names;
}

// ---------------------------------------------------------------------------
// Typechecking and evaluation

Signature typecheck(const MorphExpr &e, const Environment &env) {
  switch (e.kind()) {
    case MorphExpr::Kind::Gen: {
      const auto *net = env.find(e.name());
      if (!net) throw UnboundGenerator(e.name());
      return {net->dom_object(), net->cod_object()};
    }
    case MorphExpr::Kind::Id:
      return {e.object(), e.object()};
    case MorphExpr::Kind::Compose: {
      auto first = typecheck(e.left(), env);
      auto second = typecheck(e.right(), env);
      if (first.cod != second.dom)
        throw BoundaryMismatch(first.cod.to_string(), second.dom.to_string(),
                               print_expr(e));
      return {std::move(first.dom), std::move(second.cod)};
    }
    case MorphExpr::Kind::Tensor: {
      auto l = typecheck(e.left(), env);
      auto r = typecheck(e.right(), env);
      return {coproduct(l.dom, r.dom).apex, coproduct(l.cod, r.cod).apex};
    }
  }
  throw Error("unreachable expression kind");
}

namespace {

OpenPetriNet fold(const MorphExpr &e, const Environment &env) {
  switch (e.kind()) {
    case MorphExpr::Kind::Gen:
      return *env.find(e.name());
    case MorphExpr::Kind::Id:
      return identity_open(e.object());
    case MorphExpr::Kind::Compose:
      return compose(fold(e.left(), env), fold(e.right(), env));
    case MorphExpr::Kind::Tensor:
      return tensor(fold(e.left(), env), fold(e.right(), env));
  }
  throw Error("unreachable expression kind");
}

}  // namespace

OpenPetriNet evaluate(const MorphExpr &e, const Environment &env) {
  typecheck(e, env);
  return fold(e, env);
}

}  // namespace cospan
