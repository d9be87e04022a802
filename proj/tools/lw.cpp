#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopwhile/complexity.hpp"
#include "loopwhile/encoding.hpp"
#include "loopwhile/parser.hpp"
#include "loopwhile/semantics.hpp"
#include "loopwhile/transforms.hpp"
#include "loopwhile/universal.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSyntax = 2;
constexpr int kExitFuel = 3;

struct FuelExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

lw::Program load_program(const std::string& path) {
  lw::Program p = lw::parse(slurp(path));
  if (has_suffix(path, ".loop") && lw::contains_while(lw::desugar(p)))
    throw lw::SyntaxError(1, 1, "a FOR program in a .loop file", "a while loop");
  return p;
}

lw::Nat parse_nat(const std::string& text) {
  try {
    lw::Nat n(text, 0);  // base 0: decimal or 0x-prefixed hex
    if (n < 0) throw CLI::ValidationError("expected a natural number, got " + text);
    return n;
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("expected a natural number, got " + text);
  }
}

std::vector<lw::Nat> parse_inputs(const std::string& text) {
  std::vector<lw::Nat> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_nat(item));
  return out;
}

void print_outcome(const lw::Outcome& out) {
  if (!out.halted) throw FuelExhausted("fuel exhausted after " + out.steps.get_str() + " steps");
  std::cout << "x0 = " << out.state.get(0) << " (steps=" << out.steps << ")\n";
}

std::pair<unsigned, unsigned> parse_sizes(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    unsigned hi = static_cast<unsigned>(parse_nat(text).get_ui());
    return {0, hi};
  }
  unsigned lo = static_cast<unsigned>(parse_nat(text.substr(0, dots)).get_ui());
  unsigned hi = static_cast<unsigned>(parse_nat(text.substr(dots + 2)).get_ui());
  if (lo > hi) throw CLI::ValidationError("empty size range " + text);
  return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FOR/WHILE toy-language toolchain"};
  app.require_subcommand(1);

  std::string file, inputs_text, number_text, value_text, sizes_text = "0..8";
  std::string format = "text", emit = "while";
  std::string fuel_text;

  auto add_common = [&](CLI::App* cmd, const std::string& default_fuel) {
    cmd->add_option("--fuel", fuel_text, "step budget (default " + default_fuel + ")");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };

  auto* c_run = app.add_subcommand("run", "run a program and print x0");
  c_run->add_option("file", file)->required();
  c_run->add_option("--in", inputs_text, "comma-separated inputs for x1..xn");
  add_common(c_run, "1000000");

  auto* c_trace = app.add_subcommand("trace", "print the step-by-step trace");
  c_trace->add_option("file", file)->required();
  c_trace->add_option("--in", inputs_text);
  add_common(c_trace, "1000000");

  auto* c_desugar = app.add_subcommand("desugar", "rewrite sugar into the kernel");
  c_desugar->add_option("file", file)->required();
  c_desugar->add_option("--emit", emit)->check(CLI::IsMember({"while", "code"}));

  auto* c_for2while = app.add_subcommand("for2while", "eliminate loop in favor of while");
  c_for2while->add_option("file", file)->required();
  c_for2while->add_option("--emit", emit)->check(CLI::IsMember({"while", "code"}));

  auto* c_normalize = app.add_subcommand("normalize", "single-while normal form");
  c_normalize->add_option("file", file)->required();
  c_normalize->add_option("--emit", emit)->check(CLI::IsMember({"while", "goto", "code"}));

  auto* c_encode = app.add_subcommand("encode", "Gödel number of a program");
  c_encode->add_option("file", file)->required();

  auto* c_decode = app.add_subcommand("decode", "program of a Gödel number");
  c_decode->add_option("number", number_text, "decimal or 0x-hex")->required();

  auto* c_smn = app.add_subcommand("smn", "specialize code E on first argument V");
  c_smn->add_option("code", number_text)->required();
  c_smn->add_option("value", value_text)->required();

  auto* c_universal = app.add_subcommand("universal", "run code E through the universal program");
  c_universal->add_option("code", number_text)->required();
  c_universal->add_option("--in", inputs_text, "single input value");
  add_common(c_universal, "10000000");

  auto* c_diagonal = app.add_subcommand("diagonal", "the self-simulating diverger");
  c_diagonal->add_option("--emit", emit, "default: code")
      ->check(CLI::IsMember({"while", "code"}));

  auto* c_bench = app.add_subcommand("bench", "growth profile on diagonal inputs");
  c_bench->add_option("file", file)->required();
  c_bench->add_option("--sizes", sizes_text, "n range, e.g. 0..8");
  c_bench->add_option("--arity", value_text, "input arity (default: max variable index)");
  add_common(c_bench, "100000000");

  auto* c_compile = app.add_subcommand("compile-rec", "compile a recursion schema");
  c_compile->add_option("file", file)->required();
  c_compile->add_option("--emit", emit)->check(CLI::IsMember({"while", "code"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    lw::Nat fuel;
    if (!fuel_text.empty()) fuel = parse_nat(fuel_text);
    else if (c_universal->parsed()) fuel = 10000000;
    else if (c_bench->parsed()) fuel = 100000000;
    else fuel = 1000000;
    if (fuel < 1) throw CLI::ValidationError("--fuel must be at least 1");

    if (c_run->parsed()) {
      print_outcome(lw::run(load_program(file), parse_inputs(inputs_text), fuel));
    } else if (c_trace->parsed()) {
      auto events = lw::trace(load_program(file), parse_inputs(inputs_text), fuel);
      for (const auto& ev : events) {
        if (format == "json") {
          std::cout << lw::trace_event_json(ev) << "\n";
        } else {
          std::cout << ev.step << "  " << ev.stmt;
          for (const auto& [var, val] : ev.writes) std::cout << "  x" << var << "=" << val;
          std::cout << "\n";
        }
      }
    } else if (c_desugar->parsed() || c_for2while->parsed() || c_normalize->parsed()) {
      lw::Program p = lw::desugar(load_program(file));
      if (c_for2while->parsed()) p = lw::for_to_while(p);
      if (c_normalize->parsed()) {
        if (emit == "goto") {
          std::cout << lw::goto_to_text(lw::to_goto(lw::for_to_while(p)));
          return kExitOk;
        }
        p = lw::from_goto(lw::to_goto(lw::for_to_while(p)));
      }
      if (emit == "code") std::cout << lw::encode(p) << "\n";
      else std::cout << lw::pretty(p) << "\n";
    } else if (c_encode->parsed()) {
      std::cout << lw::encode(lw::desugar(load_program(file))) << "\n";
    } else if (c_decode->parsed()) {
      std::cout << lw::pretty(lw::decode(parse_nat(number_text))) << "\n";
    } else if (c_smn->parsed()) {
      std::cout << lw::specialize(parse_nat(number_text), parse_nat(value_text)) << "\n";
    } else if (c_universal->parsed()) {
      auto inputs = parse_inputs(inputs_text);
      if (inputs.size() != 1) throw CLI::ValidationError("universal needs exactly one --in value");
      print_outcome(lw::run(lw::build_universal(), {parse_nat(number_text), inputs[0]}, fuel));
    } else if (c_diagonal->parsed()) {
      const lw::Program& d = lw::build_diagonal();
      if (c_diagonal->count("--emit") && emit == "while") std::cout << lw::pretty(d) << "\n";
      else std::cout << lw::encode(d) << "\n";
    } else if (c_bench->parsed()) {
      lw::Program p = load_program(file);
      unsigned arity = value_text.empty()
          ? static_cast<unsigned>(lw::max_var(p).get_ui())
          : static_cast<unsigned>(parse_nat(value_text).get_ui());
      auto [lo, hi] = parse_sizes(sizes_text);
      auto profile = lw::growth_profile(p, arity, hi, fuel);
      profile.rows.erase(profile.rows.begin(), profile.rows.begin() + lo);
      if (format == "json") std::cout << lw::growth_json(profile) << "\n";
      else std::cout << lw::growth_csv(profile);
    } else if (c_compile->parsed()) {
      lw::Program p = lw::compile_recursive(lw::parse_schema(slurp(file)));
      if (emit == "code") std::cout << lw::encode(lw::desugar(p)) << "\n";
      else std::cout << lw::pretty(p) << "\n";
    }
  } catch (const lw::SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSyntax;
  } catch (const FuelExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFuel;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
