// Command-line front end over the C interface.
//
// Exit codes: 0 success or Equal, 1 the analysis found a failure or
// NotEqual, 2 input error, 3 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polywb/polywb.h"

namespace {

struct Args {
  std::string preset;
  std::string polygraph;
  std::string expr;
  std::vector<std::string> traces;
  std::string interp;
  std::uint64_t bound = 0;
  std::size_t budget = 10000;
  std::size_t max_extra_width = 2;
  std::string format = "text";
  std::string out;
};

struct InputFailure {
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string stem(const std::string& path) {
  auto s = path.substr(path.find_last_of('/') + 1);
  return s.substr(0, s.find('.'));
}

using Handle = std::unique_ptr<pw_workbench, decltype(&pw_close)>;

int fail(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return code;
}

int run(const std::string& verb, const Args& a) {
  if (a.preset.empty() == a.polygraph.empty()) return fail(2, "give exactly one of --preset or --polygraph");
  pw_workbench* raw = nullptr;
  pw_status st;
  std::string text;
  try {
    if (!a.preset.empty()) {
      st = pw_open_preset(a.preset.c_str(), &raw);
    } else {
      text = slurp(a.polygraph);
      st = pw_open_polygraph(text.c_str(), stem(a.polygraph).c_str(), &raw);
    }
  } catch (const InputFailure& e) {
    return fail(2, e.message);
  }
  if (st != PW_OK) return fail(st, pw_last_error());
  Handle wb(raw, &pw_close);

  pw_options opts;
  pw_options_init(&opts);
  opts.budget = a.budget;
  opts.max_extra_width = a.max_extra_width;
  opts.bound = a.bound;
  opts.format = a.format == "json" ? PW_FORMAT_JSON : PW_FORMAT_TEXT;
  std::string interp;
  std::vector<std::string> traces;
  try {
    if (!a.interp.empty()) {
      interp = slurp(a.interp);
      opts.interp = interp.c_str();
    }
    for (const auto& t : a.traces) traces.push_back(slurp(t));
  } catch (const InputFailure& e) {
    return fail(2, e.message);
  }

  char* out = nullptr;
  if (verb == "normalize") {
    if (a.expr.empty()) return fail(2, "normalize needs --expr");
    st = pw_normalize(wb.get(), a.expr.c_str(), &opts, &out);
  } else if (verb == "critical") {
    st = pw_critical(wb.get(), &opts, &out);
  } else if (verb == "confluence") {
    st = pw_confluence(wb.get(), &opts, &out);
  } else if (verb == "termination") {
    st = pw_termination(wb.get(), &opts, &out);
  } else if (verb == "homotopy-basis") {
    st = pw_homotopy_basis(wb.get(), &opts, &out);
  } else if (verb == "decide") {
    if (traces.size() != 2) return fail(2, "decide needs exactly two --trace files");
    st = pw_decide(wb.get(), traces[0].c_str(), traces[1].c_str(), &opts, &out);
  } else if (verb == "info") {
    st = pw_info(wb.get(), &opts, &out);
  } else {
    st = pw_export(wb.get(), &opts, &out);
  }
  if (!out) return fail(st, pw_last_error());
  std::unique_ptr<char, decltype(&pw_free_string)> report(out, &pw_free_string);
  if (a.out.empty()) {
    std::cout << report.get() << std::flush;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f || !(f << report.get())) return fail(2, "cannot write '" + a.out + "'");
  }
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygraphic rewriting workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pw_version()));
  Args a;
  const std::vector<std::pair<std::string, std::string>> verbs{
      {"normalize", "normal form of --expr with its rewriting trace"},
      {"critical", "list the critical branchings"},
      {"confluence", "termination evidence, local confluence and the asphericity verdict"},
      {"termination", "check the termination interpretation"},
      {"homotopy-basis", "confluence diagrams of all critical branchings"},
      {"decide", "decide whether two parallel traces are equal"},
      {"info", "describe the polygraph"},
      {"export", "closed traces generating the identities among relations"}};
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    auto* preset = sub->add_option("--preset", a.preset, "built-in presentation (as, mon, sym, sym_prime, br, perm)");
    auto* file = sub->add_option("--polygraph", a.polygraph, "polygraph file");
    preset->excludes(file);
    sub->add_option("--expr", a.expr, "diagram expression");
    sub->add_option("--trace", a.traces, "trace file (repeatable)");
    sub->add_option("--interp", a.interp, "termination interpretation file");
    sub->add_option("--bound", a.bound, "grid bound for the termination check")->check(CLI::PositiveNumber);
    sub->add_option("--budget", a.budget, "rewriting step budget")->check(CLI::PositiveNumber);
    sub->add_option("--max-extra-width", a.max_extra_width, "extra wires when enumerating branchings");
    sub->add_option("--format", a.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", a.out, "write the report to this file");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return run(app.get_subcommands().front()->get_name(), a);
}
