#include "loopwhile/transforms.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace lw {

namespace {

Nat goto_max_var(const GotoProgram& g) {
  Nat m = 0;
  for (const GotoInstr& instr : g.instrs) {
    switch (instr.op) {
      case GotoInstr::Op::AddAssign:
      case GotoInstr::Op::SubAssign:
        m = std::max(m, std::max(instr.target, instr.source));
        break;
      case GotoInstr::Op::IfZeroGoto:
        m = std::max(m, instr.target);
        break;
      default:
        break;
    }
  }
  return m;
}

void check_labels(const GotoProgram& g) {
  Nat len = g.instrs.size();
  for (const GotoInstr& instr : g.instrs) {
    if (instr.op == GotoInstr::Op::Goto || instr.op == GotoInstr::Op::IfZeroGoto) {
      if (instr.label > len) throw std::invalid_argument("goto label out of range");
    }
  }
}

}  // namespace

std::string goto_to_text(const GotoProgram& g) {
  std::string out;
  for (size_t i = 0; i < g.instrs.size(); ++i) {
    const GotoInstr& instr = g.instrs[i];
    out += std::to_string(i + 1) + ": ";
    switch (instr.op) {
      case GotoInstr::Op::AddAssign:
        out += "x" + instr.target.get_str() + " := x" + instr.source.get_str() + " + " +
               instr.constant.get_str();
        break;
      case GotoInstr::Op::SubAssign:
        out += "x" + instr.target.get_str() + " := x" + instr.source.get_str() + " - " +
               instr.constant.get_str();
        break;
      case GotoInstr::Op::IfZeroGoto:
        out += "IF x" + instr.target.get_str() + " = 0 GOTO " + instr.label.get_str();
        break;
      case GotoInstr::Op::Goto:
        out += "GOTO " + instr.label.get_str();
        break;
      case GotoInstr::Op::Halt:
        out += "HALT";
        break;
    }
    out += "\n";
  }
  return out;
}

Outcome run_goto(const GotoProgram& g, const std::vector<Nat>& inputs, const Nat& fuel) {
  check_labels(g);
  State state;
  Nat index = 1;
  for (const Nat& value : inputs) {
    state.set(index, value);
    ++index;
  }
  Nat steps = 0;
  size_t pc = 1;
  while (pc >= 1 && pc <= g.instrs.size()) {
    if (steps >= fuel) return Outcome{false, std::move(state), std::move(steps)};
    ++steps;
    const GotoInstr& instr = g.instrs[pc - 1];
    switch (instr.op) {
      case GotoInstr::Op::AddAssign:
        state.set(instr.target, state.get(instr.source) + instr.constant);
        ++pc;
        break;
      case GotoInstr::Op::SubAssign:
        state.set(instr.target, monus(state.get(instr.source), instr.constant));
        ++pc;
        break;
      case GotoInstr::Op::IfZeroGoto:
        pc = state.get(instr.target) == 0 ? instr.label.get_ui() : pc + 1;
        break;
      case GotoInstr::Op::Goto:
        pc = instr.label.get_ui();
        break;
      case GotoInstr::Op::Halt:
        pc = 0;
        break;
    }
  }
  return Outcome{true, std::move(state), std::move(steps)};
}

// ---------------------------------------------------------------------------
// desugar

namespace {

// Removes Skip wherever sequencing makes it redundant.
Program elim_skip(const Program& p) {
  switch (p.kind()) {
    case NodeKind::Seq: {
      Program a = elim_skip(p.first());
      Program b = elim_skip(p.second());
      if (a.kind() == NodeKind::Skip) return b;
      if (b.kind() == NodeKind::Skip) return a;
      return Program::seq(a, b);
    }
    case NodeKind::Loop:
      return Program::loop(p.var(), elim_skip(p.body()));
    case NodeKind::While:
      return Program::while_loop(p.var(), elim_skip(p.body()));
    case NodeKind::If:
      return Program::if_zero(p.var(), elim_skip(p.then_branch()), elim_skip(p.else_branch()));
    default:
      return p;
  }
}

struct DesugarCtx {
  Nat zero_var;    // fresh, never written with a nonzero value
  Nat next_fresh;  // next If flag index

  Nat alloc() { return next_fresh++; }

  Program noop() {
    // Kernel no-op costing exactly 1.
    return Program::add_assign(zero_var, zero_var, 0);
  }

  Program core(const Program& p) {
    switch (p.kind()) {
      case NodeKind::AddAssign:
      case NodeKind::SubAssign:
        return p;
      case NodeKind::Seq:
        return Program::seq(core(p.first()), core(p.second()));
      case NodeKind::Loop:
        // loop x do skip end always costs exactly 1, like the no-op.
        if (p.body().kind() == NodeKind::Skip) return noop();
        return Program::loop(p.var(), core(p.body()));
      case NodeKind::While:
        if (p.body().kind() == NodeKind::Skip)
          return Program::while_loop(p.var(), noop());
        return Program::while_loop(p.var(), core(p.body()));
      case NodeKind::ConstAssign:
        return Program::add_assign(p.var(), zero_var, p.constant());
      case NodeKind::CopyAssign:
        return Program::add_assign(p.var(), p.source(), 0);
      case NodeKind::Skip:
        // Bare skip with no enclosing construct to absorb it; the
        // cheapest kernel realization costs 1 instead of 0.
        return Program::loop(zero_var, noop());
      case NodeKind::If: {
        // Flag encoding: f = [guard == 0], g = [guard != 0], then one
        // 0/1-iteration Loop per branch. Total overhead 5 + 2*guard,
        // which exec() charges for the sugar form.
        Nat f = alloc();
        Nat g = alloc();
        Program scan = Program::loop(
            p.var(), Program::seq_of({Program::add_assign(f, zero_var, 0),
                                      Program::add_assign(g, zero_var, 1)}));
        auto branch = [&](const Nat& flag, const Program& body) {
          if (body.kind() == NodeKind::Skip) return noop();
          return Program::loop(flag, core(body));
        };
        return Program::seq_of({Program::add_assign(f, zero_var, 1),
                                Program::add_assign(g, zero_var, 0), scan,
                                branch(f, p.then_branch()), branch(g, p.else_branch())});
      }
    }
    return p;
  }
};

}  // namespace

Program desugar(const Program& p) {
  if (is_kernel(p)) return p;
  Program slim = elim_skip(p);
  DesugarCtx ctx;
  ctx.zero_var = max_var(p) + 1;
  ctx.next_fresh = ctx.zero_var + 1;
  return ctx.core(slim);
}

// ---------------------------------------------------------------------------
// for_to_while

namespace {

Program eliminate_loops(const Program& p, Nat& next_fresh) {
  switch (p.kind()) {
    case NodeKind::AddAssign:
    case NodeKind::SubAssign:
      return p;
    case NodeKind::Seq: {
      Program a = eliminate_loops(p.first(), next_fresh);
      Program b = eliminate_loops(p.second(), next_fresh);
      return Program::seq(a, b);
    }
    case NodeKind::While:
      return Program::while_loop(p.var(), eliminate_loops(p.body(), next_fresh));
    case NodeKind::Loop: {
      Nat counter = next_fresh++;
      Program body = eliminate_loops(p.body(), next_fresh);
      return Program::seq(
          Program::add_assign(counter, p.var(), 0),
          Program::while_loop(counter,
                              Program::seq(Program::sub_assign(counter, counter, 1), body)));
    }
    default:
      throw std::invalid_argument("for_to_while requires a kernel program");
  }
}

}  // namespace

Program for_to_while(const Program& p) {
  if (!is_kernel(p)) throw std::invalid_argument("for_to_while requires a kernel program");
  Nat next_fresh = max_var(p) + 1;
  return eliminate_loops(p, next_fresh);
}

// ---------------------------------------------------------------------------
// to_goto

namespace {

void flatten_goto(const Program& p, GotoProgram& out) {
  switch (p.kind()) {
    case NodeKind::AddAssign:
      out.instrs.push_back({GotoInstr::Op::AddAssign, p.var(), p.source(), p.constant(), 0});
      break;
    case NodeKind::SubAssign:
      out.instrs.push_back({GotoInstr::Op::SubAssign, p.var(), p.source(), p.constant(), 0});
      break;
    case NodeKind::Seq:
      flatten_goto(p.first(), out);
      flatten_goto(p.second(), out);
      break;
    case NodeKind::While: {
      size_t test_at = out.instrs.size();
      out.instrs.push_back({GotoInstr::Op::IfZeroGoto, p.var(), 0, 0, 0});
      flatten_goto(p.body(), out);
      out.instrs.push_back({GotoInstr::Op::Goto, 0, 0, 0, Nat(test_at + 1)});
      out.instrs[test_at].label = out.instrs.size() + 1;
      break;
    }
    default:
      throw std::invalid_argument("to_goto requires a Loop-free kernel program");
  }
}

}  // namespace

GotoProgram to_goto(const Program& p) {
  GotoProgram out;
  flatten_goto(p, out);
  out.instrs.push_back({GotoInstr::Op::Halt, 0, 0, 0, 0});
  return out;
}

// ---------------------------------------------------------------------------
// from_goto

// The pc is split into a run flag (the single while's guard: 1 while
// running, 0 after Halt) plus a binary block index. Instructions are
// grouped into basic blocks; every cycle of the while snapshots the
// index bits and walks a binary dispatch tree of Loops over them, so
// selecting a block costs O(log #blocks) instead of a linear pc scan.
// Each bit is stored together with its complement (both always 0/1) so
// a branch is two Loop entries; the snapshot is what keeps a jump that
// rewrites the bits from firing a later sibling branch in the same
// cycle. The one unavoidably data-dependent cost is IfZeroGoto, whose
// guard test is a Loop over the guard variable (Ω(value): the kernel
// has no constant-time zero test without a second While).
Program from_goto(const GotoProgram& g) {
  check_labels(g);
  const size_t len = g.instrs.size();
  const Nat m = goto_max_var(g);
  const Nat r = m + 1;   // run flag ("pc != 0"); Halt clears it
  const Nat z = m + 2;   // never written nonzero
  const Nat q = m + 3;   // IfZeroGoto: 1 iff the guard variable is 0
  const Nat nq = m + 4;  // complement of q
  const Nat bit_base = m + 5;
  // Little-endian block-index bits b/nb and their per-cycle snapshots.
  auto bvar = [&](unsigned j) -> Nat { return bit_base + 4 * j; };
  auto nbvar = [&](unsigned j) -> Nat { return bit_base + 4 * j + 1; };
  auto dvar = [&](unsigned j) -> Nat { return bit_base + 4 * j + 2; };
  auto ndvar = [&](unsigned j) -> Nat { return bit_base + 4 * j + 3; };

  // Basic-block leaders: instruction 1, every jump target, and every
  // instruction after a control transfer (numbering is 1-based).
  std::vector<char> leader(len + 1, 0);
  if (len > 0) leader[1] = 1;
  for (size_t i = 1; i <= len; ++i) {
    const GotoInstr& in = g.instrs[i - 1];
    bool jump = in.op == GotoInstr::Op::Goto || in.op == GotoInstr::Op::IfZeroGoto;
    if ((jump || in.op == GotoInstr::Op::Halt) && i + 1 <= len) leader[i + 1] = 1;
    if (jump && in.label >= 1 && in.label <= len) leader[in.label.get_ui()] = 1;
  }
  std::vector<size_t> starts;
  std::vector<size_t> block_of(len + 1, 0);
  for (size_t i = 1; i <= len; ++i) {
    if (leader[i]) starts.push_back(i);
    block_of[i] = starts.size() - 1;
  }
  size_t nblocks = starts.empty() ? 1 : starts.size();
  unsigned nbits = 0;
  while ((size_t(1) << nbits) < nblocks) ++nbits;

  auto write_block = [&](size_t b, std::vector<Program>& out) {
    if (nbits == 0) {
      out.push_back(Program::add_assign(r, z, 1));  // sole block; keep running
      return;
    }
    for (unsigned j = 0; j < nbits; ++j) {
      unsigned bit = unsigned(b >> j) & 1;
      out.push_back(Program::add_assign(bvar(j), z, bit));
      out.push_back(Program::add_assign(nbvar(j), z, 1 - bit));
    }
  };
  // Labels 0 and len+1 both mean "stop".
  auto write_target = [&](const Nat& label, std::vector<Program>& out) {
    if (label >= 1 && label <= len)
      write_block(block_of[label.get_ui()], out);
    else
      out.push_back(Program::add_assign(r, z, 0));
  };

  std::vector<Program> bodies;
  for (size_t b = 0; b < starts.size(); ++b) {
    size_t lo = starts[b];
    size_t hi = b + 1 < starts.size() ? starts[b + 1] : len + 1;
    std::vector<Program> stmts;
    bool closed = false;
    for (size_t i = lo; i < hi && !closed; ++i) {
      const GotoInstr& in = g.instrs[i - 1];
      switch (in.op) {
        case GotoInstr::Op::AddAssign:
          stmts.push_back(Program::add_assign(in.target, in.source, in.constant));
          break;
        case GotoInstr::Op::SubAssign:
          stmts.push_back(Program::sub_assign(in.target, in.source, in.constant));
          break;
        case GotoInstr::Op::Goto:
          write_target(in.label, stmts);
          closed = true;
          break;
        case GotoInstr::Op::Halt:
          stmts.push_back(Program::add_assign(r, z, 0));
          closed = true;
          break;
        case GotoInstr::Op::IfZeroGoto: {
          stmts.push_back(Program::add_assign(q, z, 1));
          stmts.push_back(Program::loop(in.target, Program::add_assign(q, z, 0)));
          stmts.push_back(Program::add_assign(nq, z, 1));
          stmts.push_back(Program::loop(q, Program::add_assign(nq, z, 0)));
          std::vector<Program> taken, fall;
          write_target(in.label, taken);
          if (i + 1 <= len)
            write_block(block_of[i + 1], fall);
          else
            fall.push_back(Program::add_assign(r, z, 0));
          stmts.push_back(Program::loop(q, Program::seq_of(std::move(taken))));
          stmts.push_back(Program::loop(nq, Program::seq_of(std::move(fall))));
          closed = true;
          break;
        }
      }
    }
    if (!closed) {
      // Fell off the block's end: continue at the next block, or halt
      // when the block's last instruction is the program's last.
      if (hi <= len)
        write_block(block_of[hi], stmts);
      else
        stmts.push_back(Program::add_assign(r, z, 0));
    }
    bodies.push_back(Program::seq_of(std::move(stmts)));
  }
  if (bodies.empty()) bodies.push_back(Program::add_assign(r, z, 0));

  // Binary dispatch over the snapshot bits, most significant first.
  // Exactly one of loop(nd)/loop(d) runs at each level.
  std::function<Program(int, size_t)> tree = [&](int bit, size_t base) -> Program {
    if (bit < 0) {
      if (base < bodies.size()) return bodies[base];
      return Program::add_assign(r, z, 0);  // unreachable padding index
    }
    return Program::seq(
        Program::loop(ndvar(unsigned(bit)), tree(bit - 1, base)),
        Program::loop(dvar(unsigned(bit)), tree(bit - 1, base + (size_t(1) << bit))));
  };

  std::vector<Program> cycle;
  for (unsigned j = 0; j < nbits; ++j) {
    cycle.push_back(Program::add_assign(dvar(j), bvar(j), 0));
    cycle.push_back(Program::add_assign(ndvar(j), nbvar(j), 0));
  }
  cycle.push_back(tree(int(nbits) - 1, 0));

  std::vector<Program> top;
  for (unsigned j = 0; j < nbits; ++j)
    top.push_back(Program::add_assign(nbvar(j), z, 1));  // index starts at block 0
  top.push_back(Program::add_assign(r, z, 1));
  top.push_back(Program::while_loop(r, Program::seq_of(std::move(cycle))));
  return Program::seq_of(std::move(top));
}

Program normalize_single_while(const Program& p) {
  return from_goto(to_goto(for_to_while(desugar(p))));
}

// ---------------------------------------------------------------------------
// RecSchema

RecSchema RecSchema::zero() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Zero;
  n->arity = 0;
  return RecSchema(std::move(n));
}

RecSchema RecSchema::succ() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Succ;
  n->arity = 1;
  return RecSchema(std::move(n));
}

RecSchema RecSchema::proj(unsigned k, unsigned n_args) {
  if (k < 1 || k > n_args) throw std::invalid_argument("proj index out of range");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Proj;
  n->arity = n_args;
  n->k = k;
  return RecSchema(std::move(n));
}

RecSchema RecSchema::comp(RecSchema f, std::vector<RecSchema> gs) {
  if (gs.empty()) throw std::invalid_argument("comp requires at least one inner function");
  if (f.arity() != gs.size()) throw std::invalid_argument("comp arity mismatch");
  unsigned inner = gs.front().arity();
  for (const RecSchema& g : gs) {
    if (g.arity() != inner) throw std::invalid_argument("comp inner arities differ");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comp;
  n->arity = inner;
  n->children.push_back(std::move(f));
  n->args = std::move(gs);
  return RecSchema(std::move(n));
}

RecSchema RecSchema::prim_rec(RecSchema base, RecSchema step) {
  if (step.arity() != base.arity() + 2) throw std::invalid_argument("primrec arity mismatch");
  auto n = std::make_shared<Node>();
  n->kind = Kind::PrimRec;
  n->arity = base.arity() + 1;
  n->children.push_back(std::move(base));
  n->children.push_back(std::move(step));
  return RecSchema(std::move(n));
}

RecSchema RecSchema::mu(RecSchema f) {
  if (f.arity() < 1) throw std::invalid_argument("mu requires arity >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mu;
  n->arity = f.arity() - 1;
  n->children.push_back(std::move(f));
  return RecSchema(std::move(n));
}

bool RecSchema::is_primitive() const {
  switch (kind()) {
    case Kind::Mu:
      return false;
    case Kind::Comp:
      if (!fn().is_primitive()) return false;
      for (const RecSchema& g : args()) {
        if (!g.is_primitive()) return false;
      }
      return true;
    case Kind::PrimRec:
      return base().is_primitive() && step().is_primitive();
    default:
      return true;
  }
}

std::optional<Nat> RecSchema::evaluate(const std::vector<Nat>& xs,
                                       const Nat& search_limit) const {
  if (xs.size() != arity()) throw std::invalid_argument("schema arity mismatch");
  switch (kind()) {
    case Kind::Zero:
      return Nat(0);
    case Kind::Succ:
      return xs[0] + 1;
    case Kind::Proj:
      return xs[proj_index() - 1];
    case Kind::Comp: {
      std::vector<Nat> inner;
      for (const RecSchema& g : args()) {
        auto v = g.evaluate(xs, search_limit);
        if (!v) return std::nullopt;
        inner.push_back(std::move(*v));
      }
      return fn().evaluate(inner, search_limit);
    }
    case Kind::PrimRec: {
      std::vector<Nat> prefix(xs.begin(), xs.end() - 1);
      auto acc = base().evaluate(prefix, search_limit);
      if (!acc) return std::nullopt;
      std::vector<Nat> step_args = prefix;
      step_args.push_back(0);
      step_args.push_back(*acc);
      for (Nat y = 0; y < xs.back(); ++y) {
        step_args[prefix.size()] = y;
        step_args[prefix.size() + 1] = *acc;
        acc = step().evaluate(step_args, search_limit);
        if (!acc) return std::nullopt;
      }
      return acc;
    }
    case Kind::Mu: {
      std::vector<Nat> inner;
      inner.push_back(0);
      inner.insert(inner.end(), xs.begin(), xs.end());
      for (Nat y = 0; y <= search_limit; ++y) {
        inner[0] = y;
        auto v = fn().evaluate(inner, search_limit);
        if (!v) return std::nullopt;
        if (*v == 0) return y;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// schema text

namespace {

struct SchemaParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == '#' || text[pos] == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("schema parse error at offset " + std::to_string(pos) + ": " +
                                what);
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string atom() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      ++pos;
    }
    if (start == pos) fail("expected atom");
    return std::string(text.substr(start, pos - start));
  }

  unsigned number() {
    std::string a = atom();
    if (a.empty() || a.find_first_not_of("0123456789") != std::string::npos) {
      fail("expected number, got '" + a + "'");
    }
    return static_cast<unsigned>(std::stoul(a));
  }

  RecSchema schema() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] != '(') {
      std::string a = atom();
      if (a == "zero") return RecSchema::zero();
      if (a == "succ") return RecSchema::succ();
      fail("unknown atom '" + a + "'");
    }
    ++pos;  // '('
    std::string head = atom();
    RecSchema result = RecSchema::zero();
    if (head == "proj") {
      unsigned k = number();
      unsigned n = number();
      result = RecSchema::proj(k, n);
    } else if (head == "comp") {
      RecSchema f = schema();
      if (!eat('(')) fail("expected argument list for comp");
      std::vector<RecSchema> gs;
      while (!eat(')')) gs.push_back(schema());
      result = RecSchema::comp(std::move(f), std::move(gs));
    } else if (head == "primrec") {
      RecSchema g = schema();
      RecSchema h = schema();
      result = RecSchema::prim_rec(std::move(g), std::move(h));
    } else if (head == "mu") {
      result = RecSchema::mu(schema());
    } else {
      fail("unknown form '" + head + "'");
    }
    if (!eat(')')) fail("expected ')'");
    return result;
  }
};

}  // namespace

RecSchema parse_schema(std::string_view text) {
  SchemaParser parser{text};
  RecSchema s = parser.schema();
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing input");
  return s;
}

// ---------------------------------------------------------------------------
// compile_recursive

namespace {

struct RecCompiler {
  Nat next_scratch;

  Nat alloc() { return next_scratch++; }

  void emit(const RecSchema& s, const Nat& result, const std::vector<Nat>& args,
            std::vector<Program>& out) {
    switch (s.kind()) {
      case RecSchema::Kind::Zero:
        out.push_back(Program::const_assign(result, 0));
        break;
      case RecSchema::Kind::Succ:
        out.push_back(Program::add_assign(result, args[0], 1));
        break;
      case RecSchema::Kind::Proj:
        out.push_back(Program::copy_assign(result, args[s.proj_index() - 1]));
        break;
      case RecSchema::Kind::Comp: {
        std::vector<Nat> temps;
        for (const RecSchema& g : s.args()) {
          Nat t = alloc();
          emit(g, t, args, out);
          temps.push_back(std::move(t));
        }
        emit(s.fn(), result, temps, out);
        break;
      }
      case RecSchema::Kind::PrimRec: {
        std::vector<Nat> prefix(args.begin(), args.end() - 1);
        Nat acc = alloc();
        Nat idx = alloc();
        Nat t = alloc();
        emit(s.base(), acc, prefix, out);
        out.push_back(Program::const_assign(idx, 0));
        std::vector<Nat> step_args = prefix;
        step_args.push_back(idx);
        step_args.push_back(acc);
        std::vector<Program> body;
        emit(s.step(), t, step_args, body);
        body.push_back(Program::copy_assign(acc, t));
        body.push_back(Program::add_assign(idx, idx, 1));
        out.push_back(Program::loop(args.back(), Program::seq_of(std::move(body))));
        out.push_back(Program::copy_assign(result, acc));
        break;
      }
      case RecSchema::Kind::Mu: {
        Nat y = alloc();
        Nat t = alloc();
        out.push_back(Program::const_assign(y, 0));
        std::vector<Nat> inner_args;
        inner_args.push_back(y);
        inner_args.insert(inner_args.end(), args.begin(), args.end());
        emit(s.fn(), t, inner_args, out);
        std::vector<Program> body;
        body.push_back(Program::add_assign(y, y, 1));
        emit(s.fn(), t, inner_args, body);
        out.push_back(Program::while_loop(t, Program::seq_of(std::move(body))));
        out.push_back(Program::copy_assign(result, y));
        break;
      }
    }
  }
};

}  // namespace

Program compile_recursive(const RecSchema& s) {
  unsigned n = s.arity();
  std::vector<Nat> args;
  for (unsigned i = 1; i <= n; ++i) args.push_back(i);
  RecCompiler compiler{Nat(n + 1)};
  std::vector<Program> out;
  compiler.emit(s, 0, args, out);
  return Program::seq_of(std::move(out));
}

}  // namespace lw
