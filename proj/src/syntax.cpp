#include "piw/syntax.hpp"

#include <cctype>

namespace piw {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, bool allow_reserved) : text_(text), allow_reserved_(allow_reserved) {}

  Process parse() {
    Process p = process();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input", 1);
    return p;
  }

 private:
  std::string_view text_;
  bool allow_reserved_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t len) const {
    throw ParseError(msg, pos_, len);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'", 1);
    ++pos_;
  }

  bool at_name() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return ident_start(c) || c == '%';
  }

  // Identifier text at pos_ without consuming; empty if none.
  std::string_view peek_ident(std::size_t at) const {
    std::size_t end = at;
    if (end < text_.size() && ident_start(text_[end])) {
      ++end;
      while (end < text_.size() && ident_char(text_[end])) ++end;
    }
    return text_.substr(at, end - at);
  }

  Name name() {
    skip_ws();
    std::size_t start = pos_;
    bool reserved = false;
    if (pos_ < text_.size() && text_[pos_] == '%') {
      reserved = true;
      ++pos_;
    }
    std::string_view id = peek_ident(pos_);
    if (id.empty()) fail("expected a name", 1);
    if (reserved && !allow_reserved_) {
      pos_ = start;
      fail("reserved name '%" + std::string(id) + "' not allowed in source terms", id.size() + 1);
    }
    pos_ += id.size();
    return Name{std::string(id), reserved ? Namespace::reserved : Namespace::source};
  }

  Process process() {
    Process p = factor();
    while (peek('|')) {
      ++pos_;
      p = Process::par(p, factor());
    }
    return p;
  }

  // True when the text at '(' is a restriction "(nu name)".
  bool at_restriction() {
    std::size_t save = pos_;
    ++pos_;  // '('
    skip_ws();
    bool result = false;
    if (peek_ident(pos_) == "nu") {
      pos_ += 2;
      std::size_t after_nu = pos_;
      skip_ws();
      bool spaced = pos_ > after_nu;
      if (pos_ < text_.size() && (text_[pos_] == '%' || (spaced && ident_start(text_[pos_])))) {
        if (text_[pos_] == '%') ++pos_;
        std::string_view id = peek_ident(pos_);
        if (!id.empty()) {
          pos_ += id.size();
          result = peek(')');
        }
      }
    }
    pos_ = save;
    return result;
  }

  Process factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", 0);
    char c = text_[pos_];
    if (c == '0' && !(pos_ + 1 < text_.size() && ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return Process::nil();
    }
    if (c == '!') {
      ++pos_;
      return Process::repl(factor());
    }
    if (c == '(') {
      if (at_restriction()) {
        ++pos_;
        skip_ws();
        pos_ += 2;  // "nu"
        Name b = name();
        expect(')');
        return Process::restrict(b, factor());
      }
      ++pos_;
      Process p = process();
      expect(')');
      return p;
    }
    if (!at_name()) fail("expected a process", 1);
    std::size_t start = pos_;
    if (peek_ident(pos_) == "ok") {
      std::size_t after = pos_ + 2;
      pos_ = after;
      if (!peek('!') && !peek('?')) return Process::success();
      pos_ = start;
    }
    Name chan = name();
    if (peek('!')) {
      ++pos_;
      Name datum = name();
      if (peek('.')) {
        ++pos_;
        return Process::output(chan, datum, factor());
      }
      return Process::output(chan, datum);
    }
    if (peek('?')) {
      ++pos_;
      expect('(');
      Name binder = name();
      expect(')');
      expect('.');
      return Process::input(chan, binder, factor());
    }
    pos_ = start;
    fail("expected '!' or '?' after channel name", 1);
  }
};

void render_factor(const Process& p, std::string& out);

void render_par(const Process& p, std::string& out) {
  if (p.kind() != Kind::par) {
    render_factor(p, out);
    return;
  }
  render_par(p.left(), out);
  out += " | ";
  render_factor(p.right(), out);
}

void render_factor(const Process& p, std::string& out) {
  switch (p.kind()) {
    case Kind::nil:
      out += '0';
      return;
    case Kind::success:
      out += "ok";
      return;
    case Kind::hole:
      out += "[_" + std::to_string(p.hole_index()) + "]";
      return;
    case Kind::repl:
      out += '!';
      render_factor(p.body(), out);
      return;
    case Kind::restrict:
      out += "(nu " + p.binder().str() + ")";
      render_factor(p.body(), out);
      return;
    case Kind::output:
      out += p.channel().str() + "!" + p.datum().str();
      if (!p.body().is_nil()) {
        out += '.';
        render_factor(p.body(), out);
      }
      return;
    case Kind::input:
      out += p.channel().str() + "?(" + p.binder().str() + ").";
      render_factor(p.body(), out);
      return;
    case Kind::par:
      out += '(';
      render_par(p, out);
      out += ')';
      return;
  }
}

}  // namespace

Process parse_term(std::string_view text, bool allow_reserved) {
  return Parser(text, allow_reserved).parse();
}

std::string render_term(const Process& p) {
  std::string out;
  render_par(p, out);
  return out;
}

}  // namespace piw
