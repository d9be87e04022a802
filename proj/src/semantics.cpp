#include "loopwhile/semantics.hpp"

#include <functional>
#include <stdexcept>

#include "loopwhile/parser.hpp"

namespace lw {

const Nat& State::get(const Nat& var) const {
  static const Nat zero = 0;
  auto it = bindings_.find(var);
  return it == bindings_.end() ? zero : it->second;
}

void State::set(const Nat& var, Nat value) {
  if (value == 0) {
    bindings_.erase(var);
  } else {
    bindings_[var] = std::move(value);
  }
}

void State::add_in_place(const Nat& var, const Nat& delta) {
  auto it = bindings_.find(var);
  if (it == bindings_.end()) {
    set(var, delta);
  } else {
    it->second += delta;  // stays positive: it was, and delta >= 0
  }
}

void State::sub_in_place(const Nat& var, const Nat& delta) {
  auto it = bindings_.find(var);
  if (it == bindings_.end()) return;
  if (it->second > delta) {
    it->second -= delta;
  } else {
    bindings_.erase(it);
  }
}

std::string trace_event_json(const TraceEvent& event) {
  std::string out = "{\"step\":" + event.step.get_str() + ",\"stmt\":\"";
  for (char c : event.stmt) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\",\"writes\":{";
  bool first = true;
  for (const auto& [var, value] : event.writes) {
    if (!first) out += ',';
    first = false;
    out += "\"x" + var.get_str() + "\":" + value.get_str();
  }
  out += "}}";
  return out;
}

namespace {

using Observer = std::function<void(TraceEvent&&)>;

enum class FrameKind { Exec, LoopIter, WhileTest };

struct Frame {
  FrameKind kind;
  Program prog;   // statement / loop body / while node
  Nat remaining;  // LoopIter only
};

struct Engine {
  State state;
  Nat steps = 0;
  const Nat* fuel = nullptr;
  bool exhausted = false;
  const Observer* observer = nullptr;

  // Charges k cost units; on fuel exhaustion clips steps to the fuel
  // bound and returns false.
  bool charge(const Nat& k) {
    if (fuel != nullptr && steps + k > *fuel) {
      steps = *fuel;
      exhausted = true;
      return false;
    }
    steps += k;
    return true;
  }

  void emit(const Program& stmt, std::vector<std::pair<Nat, Nat>> writes) {
    if (observer == nullptr) return;
    (*observer)(TraceEvent{steps, pretty_stmt_head(stmt), std::move(writes)});
  }

  void run_program(const Program& top) {
    static const Nat one = 1;
    std::vector<Frame> stack;
    stack.push_back(Frame{FrameKind::Exec, top, 0});
    while (!stack.empty() && !exhausted) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      switch (f.kind) {
        case FrameKind::Exec:
          exec(f.prog, stack);
          break;
        case FrameKind::LoopIter:
          if (f.remaining > 1) {
            Nat rest = f.remaining - 1;
            stack.push_back(Frame{FrameKind::LoopIter, f.prog, std::move(rest)});
          }
          stack.push_back(Frame{FrameKind::Exec, f.prog, 0});
          break;
        case FrameKind::WhileTest:
          if (!charge(one)) break;
          emit(f.prog, {});
          if (state.get(f.prog.var()) != 0) {
            Program body = f.prog.body();
            stack.push_back(std::move(f));
            stack.push_back(Frame{FrameKind::Exec, std::move(body), 0});
          }
          break;
      }
    }
  }

  void exec(const Program& p, std::vector<Frame>& stack) {
    static const Nat one = 1;
    switch (p.kind()) {
      case NodeKind::AddAssign: {
        if (!charge(one)) return;
        if (observer == nullptr && p.var() == p.source()) {
          state.add_in_place(p.var(), p.constant());
          break;
        }
        Nat v = state.get(p.source()) + p.constant();
        state.set(p.var(), v);
        emit(p, {{p.var(), std::move(v)}});
        break;
      }
      case NodeKind::SubAssign: {
        if (!charge(one)) return;
        if (observer == nullptr && p.var() == p.source()) {
          state.sub_in_place(p.var(), p.constant());
          break;
        }
        Nat v = monus(state.get(p.source()), p.constant());
        state.set(p.var(), v);
        emit(p, {{p.var(), std::move(v)}});
        break;
      }
      case NodeKind::ConstAssign: {
        if (!charge(one)) return;
        Nat v = p.constant();
        state.set(p.var(), v);
        emit(p, {{p.var(), std::move(v)}});
        break;
      }
      case NodeKind::CopyAssign: {
        if (!charge(one)) return;
        Nat v = state.get(p.source());
        state.set(p.var(), v);
        emit(p, {{p.var(), std::move(v)}});
        break;
      }
      case NodeKind::Skip:
        break;
      case NodeKind::Seq:
        stack.push_back(Frame{FrameKind::Exec, p.second(), 0});
        stack.push_back(Frame{FrameKind::Exec, p.first(), 0});
        break;
      case NodeKind::Loop: {
        if (!charge(one)) return;
        emit(p, {});
        const Nat& n = state.get(p.var());
        if (n > 0) stack.push_back(Frame{FrameKind::LoopIter, p.body(), n});
        break;
      }
      case NodeKind::While:
        stack.push_back(Frame{FrameKind::WhileTest, p, 0});
        break;
      case NodeKind::If: {
        // Same cost as the kernel flag encoding produced by desugar:
        // two flag setups, the guard-scanning loop (1 + 2*guard), and
        // the two branch-loop entries.
        Nat cost = 5 + 2 * state.get(p.var());
        if (!charge(cost)) return;
        emit(p, {});
        stack.push_back(Frame{FrameKind::Exec,
                              state.get(p.var()) == 0 ? p.then_branch() : p.else_branch(), 0});
        break;
      }
    }
  }
};

Outcome run_with_observer(const Program& p, const std::vector<Nat>& inputs,
                          const std::optional<Nat>& fuel, bool allow_unbounded,
                          const Observer* observer) {
  if (!fuel.has_value() && !allow_unbounded && contains_while(p)) {
    throw std::invalid_argument(
        "fuel may be omitted only for while-free programs (pass allow_unbounded to override)");
  }
  Engine engine;
  engine.observer = observer;
  if (fuel.has_value()) {
    if (*fuel < 0) throw std::invalid_argument("fuel must be a natural");
    engine.fuel = &*fuel;
  }
  Nat index = 1;
  for (const Nat& value : inputs) {
    if (value < 0) throw std::invalid_argument("inputs must be naturals");
    engine.state.set(index, value);
    ++index;
  }
  engine.run_program(p);
  return Outcome{!engine.exhausted, std::move(engine.state), std::move(engine.steps)};
}

}  // namespace

Outcome run(const Program& p, const std::vector<Nat>& inputs, const std::optional<Nat>& fuel,
            bool allow_unbounded) {
  return run_with_observer(p, inputs, fuel, allow_unbounded, nullptr);
}

std::optional<Nat> eval_fn(const Program& p, const std::vector<Nat>& inputs,
                           const std::optional<Nat>& fuel, bool allow_unbounded) {
  Outcome outcome = run(p, inputs, fuel, allow_unbounded);
  if (!outcome.halted) return std::nullopt;
  return outcome.state.get(0);
}

std::vector<TraceEvent> trace(const Program& p, const std::vector<Nat>& inputs,
                              const Nat& limit) {
  std::vector<TraceEvent> events;
  Observer observer = [&events](TraceEvent&& e) { events.push_back(std::move(e)); };
  run_with_observer(p, inputs, std::optional<Nat>(limit), true, &observer);
  return events;
}

}  // namespace lw
