#pragma once

// Line-oriented text formats for polygraphs and traces.
//
//   polygraph:  [prop] / gen <name> : <m> -> <n> / rule <name> : <expr> => <expr>
//   trace:      trace <name> on <expr>
//               step <rule> <+|-> top=<expr> left=<n> right=<n> bot=<expr>
//
// '#' starts a comment. A polygraph marked prop gets the symmetry
// construction applied to its generators; its rules may then mention tau.

#include <string>
#include <string_view>

#include "polywb/rewrite.hpp"

namespace polywb {

Polygraph parse_polygraph(std::string_view text, std::string name = "user");
std::string print_polygraph(const Polygraph& p);

struct NamedTrace {
  std::string name;
  Trace trace;
};

// Validates the trace; the congruence is prop when the signature is.
NamedTrace parse_trace(std::string_view text, const Polygraph& p);
std::string print_trace(const Polygraph& p, const Trace& t, std::string_view name = "t");

std::string read_file(const std::string& path);

}  // namespace polywb
