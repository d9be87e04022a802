#include "loopwhile/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace lw {

namespace {

void check_nonneg(const Nat& n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + " must be a natural");
}

}  // namespace

Program Program::add_assign(Nat target, Nat source, Nat addend) {
  check_nonneg(target, "target");
  check_nonneg(source, "source");
  check_nonneg(addend, "addend");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::AddAssign;
  n->a = std::move(target);
  n->b = std::move(source);
  n->c = std::move(addend);
  return Program(std::move(n));
}

Program Program::sub_assign(Nat target, Nat source, Nat subtrahend) {
  check_nonneg(target, "target");
  check_nonneg(source, "source");
  check_nonneg(subtrahend, "subtrahend");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::SubAssign;
  n->a = std::move(target);
  n->b = std::move(source);
  n->c = std::move(subtrahend);
  return Program(std::move(n));
}

Program Program::seq(Program first, Program second) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Seq;
  n->left = first.node_;
  n->right = second.node_;
  return Program(std::move(n));
}

Program Program::loop(Nat guard, Program body) {
  check_nonneg(guard, "guard");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Loop;
  n->a = std::move(guard);
  n->left = body.node_;
  return Program(std::move(n));
}

Program Program::while_loop(Nat guard, Program body) {
  check_nonneg(guard, "guard");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::While;
  n->a = std::move(guard);
  n->left = body.node_;
  return Program(std::move(n));
}

Program Program::const_assign(Nat target, Nat value) {
  check_nonneg(target, "target");
  check_nonneg(value, "value");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::ConstAssign;
  n->a = std::move(target);
  n->c = std::move(value);
  return Program(std::move(n));
}

Program Program::copy_assign(Nat target, Nat source) {
  check_nonneg(target, "target");
  check_nonneg(source, "source");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::CopyAssign;
  n->a = std::move(target);
  n->b = std::move(source);
  return Program(std::move(n));
}

Program Program::if_zero(Nat guard, Program then_branch, Program else_branch) {
  check_nonneg(guard, "guard");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::If;
  n->a = std::move(guard);
  n->left = then_branch.node_;
  n->right = else_branch.node_;
  return Program(std::move(n));
}

Program Program::skip() {
  static const Program instance = [] {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Skip;
    return Program(std::move(n));
  }();
  return instance;
}

namespace {

Program fold_span(std::vector<Program>& stmts, size_t lo, size_t hi) {
  if (hi - lo == 1) return stmts[lo];
  size_t mid = lo + (hi - lo) / 2;
  return Program::seq(fold_span(stmts, lo, mid), fold_span(stmts, mid, hi));
}

}  // namespace

Program Program::seq_of(std::vector<Program> stmts) {
  if (stmts.empty()) return skip();
  return fold_span(stmts, 0, stmts.size());
}

bool Program::operator==(const Program& other) const {
  const Node* x = node_.get();
  const Node* y = other.node_.get();
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case NodeKind::AddAssign:
    case NodeKind::SubAssign:
      return x->a == y->a && x->b == y->b && x->c == y->c;
    case NodeKind::Seq:
      return Program(x->left) == Program(y->left) && Program(x->right) == Program(y->right);
    case NodeKind::Loop:
    case NodeKind::While:
      return x->a == y->a && Program(x->left) == Program(y->left);
    case NodeKind::ConstAssign:
      return x->a == y->a && x->c == y->c;
    case NodeKind::CopyAssign:
      return x->a == y->a && x->b == y->b;
    case NodeKind::If:
      return x->a == y->a && Program(x->left) == Program(y->left) &&
             Program(x->right) == Program(y->right);
    case NodeKind::Skip:
      return true;
  }
  return false;
}

bool is_kernel(const Program& p) {
  switch (p.kind()) {
    case NodeKind::AddAssign:
    case NodeKind::SubAssign:
      return true;
    case NodeKind::Seq:
      return is_kernel(p.first()) && is_kernel(p.second());
    case NodeKind::Loop:
    case NodeKind::While:
      return is_kernel(p.body());
    default:
      return false;
  }
}

bool is_for(const Program& p) { return is_kernel(p) && !contains_while(p); }

bool contains_while(const Program& p) {
  switch (p.kind()) {
    case NodeKind::While:
      return true;
    case NodeKind::Seq:
    case NodeKind::If:
      return contains_while(p.first()) || contains_while(p.second());
    case NodeKind::Loop:
      return contains_while(p.body());
    default:
      return false;
  }
}

Nat max_var(const Program& p) {
  switch (p.kind()) {
    case NodeKind::AddAssign:
    case NodeKind::SubAssign:
      return std::max(p.var(), p.source());
    case NodeKind::Seq:
    case NodeKind::If: {
      Nat m = std::max(max_var(p.first()), max_var(p.second()));
      return p.kind() == NodeKind::If ? std::max(p.var(), m) : m;
    }
    case NodeKind::Loop:
    case NodeKind::While:
      return std::max(p.var(), max_var(p.body()));
    case NodeKind::ConstAssign:
      return p.var();
    case NodeKind::CopyAssign:
      return std::max(p.var(), p.source());
    case NodeKind::Skip:
      return 0;
  }
  return 0;
}

Nat count_while(const Program& p) {
  switch (p.kind()) {
    case NodeKind::While:
      return 1 + count_while(p.body());
    case NodeKind::Loop:
      return count_while(p.body());
    case NodeKind::Seq:
    case NodeKind::If:
      return count_while(p.first()) + count_while(p.second());
    default:
      return 0;
  }
}

Nat count_loop(const Program& p) {
  switch (p.kind()) {
    case NodeKind::Loop:
      return 1 + count_loop(p.body());
    case NodeKind::While:
      return count_loop(p.body());
    case NodeKind::Seq:
    case NodeKind::If:
      return count_loop(p.first()) + count_loop(p.second());
    default:
      return 0;
  }
}

Nat nesting_depth(const Program& p) {
  switch (p.kind()) {
    case NodeKind::Loop:
    case NodeKind::While:
      return 1 + nesting_depth(p.body());
    case NodeKind::Seq:
    case NodeKind::If:
      return std::max(nesting_depth(p.first()), nesting_depth(p.second()));
    default:
      return 0;
  }
}

namespace {

void flatten_into(const Program& p, std::vector<Program>& out) {
  if (p.kind() == NodeKind::Seq) {
    flatten_into(p.first(), out);
    flatten_into(p.second(), out);
  } else {
    out.push_back(p);
  }
}

}  // namespace

std::vector<Program> flatten_seq(const Program& p) {
  std::vector<Program> out;
  flatten_into(p, out);
  return out;
}

}  // namespace lw
