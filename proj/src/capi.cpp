#include "polywb/polywb.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "polywb/verbs.hpp"

struct pw_workbench {
  polywb::Workbench wb;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

polywb::VerbOptions convert(const pw_options* o) {
  polywb::VerbOptions v;
  if (!o) return v;
  if (o->budget) v.budget = o->budget;
  v.max_extra_width = o->max_extra_width;
  if (o->bound) v.bound = o->bound;
  if (o->interp) v.interpretation = std::string(o->interp);
  v.format = o->format == PW_FORMAT_JSON ? polywb::Format::json : polywb::Format::text;
  return v;
}

template <class F>
pw_status guarded(char** out, F&& f) {
  if (out) *out = nullptr;
  last_error.clear();
  try {
    if (!out) throw polywb::InputError("output pointer is null");
    polywb::VerbResult r = f();
    *out = dup(r.output);
    if (!*out) throw std::bad_alloc();
    return r.status == 0 ? PW_OK : PW_NEGATIVE;
  } catch (const polywb::InputError& e) {
    last_error = e.what();
    return PW_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PW_INTERNAL;
  }
}

const polywb::Workbench& need(const pw_workbench* wb) {
  if (!wb) throw polywb::InputError("workbench handle is null");
  return wb->wb;
}

const char* need(const char* s, const char* what) {
  if (!s) throw polywb::InputError(std::string(what) + " is null");
  return s;
}

template <class F>
pw_status opening(pw_workbench** out, F&& f) {
  last_error.clear();
  if (!out) {
    last_error = "output pointer is null";
    return PW_INPUT_ERROR;
  }
  *out = nullptr;
  try {
    *out = new pw_workbench{f()};
    return PW_OK;
  } catch (const polywb::InputError& e) {
    last_error = e.what();
    return PW_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PW_INTERNAL;
  }
}

}  // namespace

extern "C" {

void pw_options_init(pw_options* opts) {
  if (!opts) return;
  opts->budget = polywb::kDefaultBudget;
  opts->max_extra_width = 2;
  opts->bound = 0;
  opts->interp = nullptr;
  opts->format = PW_FORMAT_TEXT;
}

pw_status pw_open_preset(const char* name, pw_workbench** out) {
  return opening(out, [&] { return polywb::open_preset(need(name, "preset name")); });
}

pw_status pw_open_polygraph(const char* text, const char* name, pw_workbench** out) {
  return opening(out, [&] { return polywb::open_polygraph(need(text, "polygraph text"), name ? name : "user"); });
}

void pw_close(pw_workbench* wb) { delete wb; }

char* pw_preset_names(void) {
  std::string s;
  for (const auto& n : polywb::preset_names()) s += n + "\n";
  return dup(s);
}

pw_status pw_normalize(const pw_workbench* wb, const char* expr, const pw_options* opts, char** out) {
  return guarded(out, [&] { return polywb::run_normalize(need(wb), need(expr, "expression"), convert(opts)); });
}

pw_status pw_critical(const pw_workbench* wb, const pw_options* opts, char** out) {
  return guarded(out, [&] { return polywb::run_critical(need(wb), convert(opts)); });
}

pw_status pw_confluence(const pw_workbench* wb, const pw_options* opts, char** out) {
  return guarded(out, [&] { return polywb::run_confluence(need(wb), convert(opts)); });
}

pw_status pw_termination(const pw_workbench* wb, const pw_options* opts, char** out) {
  return guarded(out, [&] { return polywb::run_termination(need(wb), convert(opts)); });
}

pw_status pw_homotopy_basis(const pw_workbench* wb, const pw_options* opts, char** out) {
  return guarded(out, [&] { return polywb::run_homotopy_basis(need(wb), convert(opts)); });
}

pw_status pw_decide(const pw_workbench* wb, const char* trace_a, const char* trace_b, const pw_options* opts,
                    char** out) {
  return guarded(out, [&] {
    return polywb::run_decide(need(wb), need(trace_a, "first trace"), need(trace_b, "second trace"), convert(opts));
  });
}

pw_status pw_info(const pw_workbench* wb, const pw_options* opts, char** out) {
  return guarded(out, [&] { return polywb::run_info(need(wb), convert(opts)); });
}

pw_status pw_export(const pw_workbench* wb, const pw_options* opts, char** out) {
  return guarded(out, [&] { return polywb::run_export(need(wb), convert(opts)); });
}

void pw_free_string(char* s) { std::free(s); }

const char* pw_last_error(void) { return last_error.c_str(); }

const char* pw_version(void) { return "0.1.0"; }

}  // extern "C"
