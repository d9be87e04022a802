#include "loopwhile/parser.hpp"

#include <cctype>
#include <vector>

namespace lw {

namespace {

enum class Tok {
  Skip,
  Loop,
  While,
  If,
  Do,
  End,
  Then,
  Else,
  Var,
  Num,
  Assign,
  Plus,
  Minus,
  Semi,
  NotEq,
  Eq,
  Eof,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Skip: return "'skip'";
    case Tok::Loop: return "'loop'";
    case Tok::While: return "'while'";
    case Tok::If: return "'if'";
    case Tok::Do: return "'do'";
    case Tok::End: return "'end'";
    case Tok::Then: return "'then'";
    case Tok::Else: return "'else'";
    case Tok::Var: return "variable";
    case Tok::Num: return "number";
    case Tok::Assign: return "':='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Semi: return "';'";
    case Tok::NotEq: return "'/='";
    case Tok::Eq: return "'='";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  Nat value;  // Var index or Num value
  int line;
  int column;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_trivia();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::Eof;
      t.text = "end of input";
      return t;
    }
    char c = text_[pos_];
    if (c == ';') { advance(); t.kind = Tok::Semi; t.text = ";"; return t; }
    if (c == '+') { advance(); t.kind = Tok::Plus; t.text = "+"; return t; }
    if (c == '-') { advance(); t.kind = Tok::Minus; t.text = "-"; return t; }
    if (c == '=') { advance(); t.kind = Tok::Eq; t.text = "="; return t; }
    if (c == ':') {
      advance();
      if (pos_ < text_.size() && text_[pos_] == '=') {
        advance();
        t.kind = Tok::Assign;
        t.text = ":=";
        return t;
      }
      throw SyntaxError(t.line, t.column, "':='", "':'");
    }
    if (c == '/') {
      advance();
      if (pos_ < text_.size() && text_[pos_] == '=') {
        advance();
        t.kind = Tok::NotEq;
        t.text = "/=";
        return t;
      }
      throw SyntaxError(t.line, t.column, "'/='", "'/'");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = read_digits();
      t.kind = Tok::Num;
      t.value = Nat(digits);
      t.text = digits;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word = read_word();
      t.text = word;
      if (word == "skip") t.kind = Tok::Skip;
      else if (word == "loop") t.kind = Tok::Loop;
      else if (word == "while") t.kind = Tok::While;
      else if (word == "if") t.kind = Tok::If;
      else if (word == "do") t.kind = Tok::Do;
      else if (word == "end") t.kind = Tok::End;
      else if (word == "then") t.kind = Tok::Then;
      else if (word == "else") t.kind = Tok::Else;
      else if (word.size() > 1 && word[0] == 'x' &&
               word.find_first_not_of("0123456789", 1) == std::string::npos) {
        t.kind = Tok::Var;
        t.value = Nat(word.substr(1));
      } else {
        throw SyntaxError(t.line, t.column, "statement", "'" + word + "'");
      }
      return t;
    }
    throw SyntaxError(t.line, t.column, "statement", std::string("'") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  std::string read_word() {
    std::string out;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  Program parse_program() {
    Program p = parse_stmt_list(Tok::Eof);
    expect(Tok::Eof);
    return p;
  }

 private:
  void shift() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(cur_.line, cur_.column, expected, "'" + cur_.text + "'");
  }

  Token expect(Tok kind) {
    if (cur_.kind != kind) fail(tok_name(kind));
    Token t = cur_;
    if (kind != Tok::Eof) shift();
    return t;
  }

  Program parse_stmt_list(Tok terminator) {
    std::vector<Program> stmts;
    stmts.push_back(parse_stmt());
    while (cur_.kind == Tok::Semi) {
      shift();
      // A trailing ';' before a block end is harmless.
      if (cur_.kind == terminator || cur_.kind == Tok::Else || cur_.kind == Tok::End ||
          cur_.kind == Tok::Eof)
        break;
      stmts.push_back(parse_stmt());
    }
    if (cur_.kind != terminator && cur_.kind != Tok::Else && cur_.kind != Tok::End &&
        cur_.kind != Tok::Eof) {
      fail("';' or end of block");
    }
    return Program::seq_of(std::move(stmts));
  }

  Program parse_stmt() {
    switch (cur_.kind) {
      case Tok::Skip:
        shift();
        return Program::skip();
      case Tok::Loop: {
        shift();
        Token guard = expect(Tok::Var);
        expect(Tok::Do);
        Program body = parse_stmt_list(Tok::End);
        expect(Tok::End);
        return Program::loop(guard.value, body);
      }
      case Tok::While: {
        shift();
        Token guard = expect(Tok::Var);
        expect(Tok::NotEq);
        Token zero = expect(Tok::Num);
        if (zero.value != 0) throw SyntaxError(zero.line, zero.column, "'0'", zero.text);
        expect(Tok::Do);
        Program body = parse_stmt_list(Tok::End);
        expect(Tok::End);
        return Program::while_loop(guard.value, body);
      }
      case Tok::If: {
        shift();
        Token guard = expect(Tok::Var);
        expect(Tok::Eq);
        Token zero = expect(Tok::Num);
        if (zero.value != 0) throw SyntaxError(zero.line, zero.column, "'0'", zero.text);
        expect(Tok::Then);
        Program then_branch = parse_stmt_list(Tok::Else);
        expect(Tok::Else);
        Program else_branch = parse_stmt_list(Tok::End);
        expect(Tok::End);
        return Program::if_zero(guard.value, then_branch, else_branch);
      }
      case Tok::Var: {
        Token target = cur_;
        shift();
        expect(Tok::Assign);
        if (cur_.kind == Tok::Num) {
          Token value = cur_;
          shift();
          return Program::const_assign(target.value, value.value);
        }
        Token source = expect(Tok::Var);
        if (cur_.kind == Tok::Plus) {
          shift();
          Token addend = expect(Tok::Num);
          return Program::add_assign(target.value, source.value, addend.value);
        }
        if (cur_.kind == Tok::Minus) {
          shift();
          Token sub = expect(Tok::Num);
          return Program::sub_assign(target.value, source.value, sub.value);
        }
        return Program::copy_assign(target.value, source.value);
      }
      default:
        fail("statement");
    }
  }

  Lexer lexer_;
  Token cur_;
};

std::string var_name(const Nat& index) { return "x" + index.get_str(); }

void render(const Program& p, int indent, std::string& out);

void render_list(const Program& p, int indent, std::string& out) {
  std::vector<Program> stmts = flatten_seq(p);
  for (size_t i = 0; i < stmts.size(); ++i) {
    if (i > 0) out += ";\n";
    render(stmts[i], indent, out);
  }
}

void render(const Program& p, int indent, std::string& out) {
  out.append(static_cast<size_t>(indent) * 2, ' ');
  switch (p.kind()) {
    case NodeKind::AddAssign:
      out += var_name(p.var()) + " := " + var_name(p.source()) + " + " + p.constant().get_str();
      break;
    case NodeKind::SubAssign:
      out += var_name(p.var()) + " := " + var_name(p.source()) + " - " + p.constant().get_str();
      break;
    case NodeKind::ConstAssign:
      out += var_name(p.var()) + " := " + p.constant().get_str();
      break;
    case NodeKind::CopyAssign:
      out += var_name(p.var()) + " := " + var_name(p.source());
      break;
    case NodeKind::Skip:
      out += "skip";
      break;
    case NodeKind::Loop:
      out += "loop " + var_name(p.var()) + " do\n";
      render_list(p.body(), indent + 1, out);
      out += "\n";
      out.append(static_cast<size_t>(indent) * 2, ' ');
      out += "end";
      break;
    case NodeKind::While:
      out += "while " + var_name(p.var()) + " /= 0 do\n";
      render_list(p.body(), indent + 1, out);
      out += "\n";
      out.append(static_cast<size_t>(indent) * 2, ' ');
      out += "end";
      break;
    case NodeKind::If:
      out += "if " + var_name(p.var()) + " = 0 then\n";
      render_list(p.then_branch(), indent + 1, out);
      out += "\n";
      out.append(static_cast<size_t>(indent) * 2, ' ');
      out += "else\n";
      render_list(p.else_branch(), indent + 1, out);
      out += "\n";
      out.append(static_cast<size_t>(indent) * 2, ' ');
      out += "end";
      break;
    case NodeKind::Seq:
      // Unreachable through render_list, but keep render total.
      render_list(p, indent, out);
      break;
  }
}

}  // namespace

Program parse(std::string_view text) { return Parser(text).parse_program(); }

std::string pretty(const Program& p) {
  std::string out;
  render_list(p, 0, out);
  return out;
}

std::string pretty_stmt_head(const Program& p) {
  switch (p.kind()) {
    case NodeKind::Loop:
      return "loop x" + p.var().get_str();
    case NodeKind::While:
      return "while x" + p.var().get_str() + " /= 0";
    case NodeKind::If:
      return "if x" + p.var().get_str() + " = 0";
    case NodeKind::Seq:
      return "seq";
    default: {
      std::string out;
      render(p, 0, out);
      return out;
    }
  }
}

}  // namespace lw
