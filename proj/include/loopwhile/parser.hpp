#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "loopwhile/ast.hpp"

namespace lw {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& expected, const std::string& found)
      : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": expected " + expected + ", found " +
                           found),
        line_(line),
        column_(column),
        expected_(expected) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

// Grammar (LL(1), '#' comments to end of line, whitespace-insensitive):
//   program  := stmt (';' stmt)*
//   stmt     := 'skip'
//             | 'loop' var 'do' program 'end'
//             | 'while' var '/=' '0' 'do' program 'end'
//             | 'if' var '=' '0' 'then' program 'else' program 'end'
//             | var ':=' rhs
//   rhs      := var '+' num | var '-' num | var | num
//   var      := 'x' digits
// Statement lists fold into Seq nodes by midpoint splitting, matching
// Program::seq_of, so parse(pretty(p)) == p for trees built that way.
Program parse(std::string_view text);

// Canonical text. Statements are ';'-separated, one per line, block
// bodies indented two spaces; a trailing ';' before a block end is
// accepted on input but never printed. parse(pretty(p)) == p.
std::string pretty(const Program& p);

// Single-statement rendering (no trailing layout), used by trace events.
std::string pretty_stmt_head(const Program& p);

}  // namespace lw
