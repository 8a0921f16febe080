#pragma once

// The analyses behind the command line, each producing a rendered report
// and a status. Status 0 means success or Equal, 1 means the analysis found
// a failure or NotEqual; input problems are thrown as InputError.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polywb/coherence.hpp"

namespace polywb {

enum class Format { text, json };

struct VerbOptions {
  std::size_t budget = kDefaultBudget;
  std::size_t max_extra_width = 2;
  std::optional<std::uint64_t> bound;
  std::optional<std::string> interpretation;  // file contents
  Format format = Format::text;
};

struct VerbResult {
  int status = 0;
  std::string output;
};

// A preset, or a polygraph read from a file and decided through its own
// convergence check.
struct Workbench {
  Preset preset;
  bool builtin = true;
};

Workbench open_preset(std::string_view name);
Workbench open_polygraph(std::string_view text, std::string name);

VerbResult run_normalize(const Workbench& wb, std::string_view expr, const VerbOptions& o);
VerbResult run_critical(const Workbench& wb, const VerbOptions& o);
VerbResult run_confluence(const Workbench& wb, const VerbOptions& o);
VerbResult run_termination(const Workbench& wb, const VerbOptions& o);
VerbResult run_homotopy_basis(const Workbench& wb, const VerbOptions& o);
VerbResult run_decide(const Workbench& wb, std::string_view trace_a, std::string_view trace_b, const VerbOptions& o);
VerbResult run_info(const Workbench& wb, const VerbOptions& o);
VerbResult run_export(const Workbench& wb, const VerbOptions& o);

// Rebuilds a trace from the JSON object the reports use for traces.
Trace trace_from_json(const Polygraph& p, std::string_view json);

}  // namespace polywb
