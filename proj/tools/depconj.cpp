// depconj: check, elaborate, derive, fuzz and fmt over files.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "depconj/fuzz.hpp"
#include "depconj/parser.hpp"
#include "depconj/script.hpp"

using namespace depconj;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color_enabled() {
  const char* v = std::getenv("DEPCONJ_COLOR");
  if (v) return std::string(v) == "1";
  return isatty(STDERR_FILENO);
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write `" + path + "`");
  out << text;
}

void report(const std::string& file, const std::string& what) {
  std::cerr << file << ": " << paint("error", "1;31") << ": " << what << "\n";
}

// Parse errors in an input file are usage-level failures.
Script load_script(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_script(text);
  } catch (const DiagnosticError& e) {
    throw UsageError(path + ":" + e.diagnostic().str());
  }
}

int cmd_check(const std::string& path) {
  Script s = load_script(path);
  int status = 0;
  for (const auto& r : check_script(s)) {
    std::cout << (r.ok ? paint("ok", "32") + "    " : paint("FAILED", "31")) << " " << r.label << "\n";
    if (!r.ok) {
      status = 1;
      report(path, r.label + ": " + r.error);
    }
  }
  return status;
}

// The lowered document: every statement, context and claim in explicit
// low-level form, then the warrantors introduced on the way.
int cmd_elaborate(const std::string& path, const std::string& out) {
  Script s = load_script(path);
  Script low;
  low.sig = s.sig;
  std::map<std::string, WarrantorInfo> table;
  auto note = [&](const ElabResult& r) { table.insert(r.warrantors.begin(), r.warrantors.end()); };
  try {
    ElabResult ctx = lower_context(s.sig, s.context);
    note(ctx);
    low.context = ctx.context;
    low.has_context = s.has_context;
    for (const auto& item : s.items) {
      if (const auto* st = std::get_if<ScriptStatement>(&item)) {
        ElabResult r = lower_statement(s.sig, low.context, st->stmt);
        note(r);
        low.items.emplace_back(ScriptStatement{r.statement, st->span});
      } else {
        ScriptClaim c = std::get<ScriptClaim>(item);
        note(lower_context(s.sig, c.stated.ctx));
        c.stated = lower_judgment(s.sig, c.stated);
        c.relative = false;
        c.written = c.stated.ctx;
        low.items.emplace_back(std::move(c));
      }
    }
  } catch (const DiagnosticError& e) {
    report(path, e.diagnostic().str());
    return 1;
  }
  ElabResult summary;
  summary.warrantors = table;
  std::string text = format_script(low, {true});
  if (!table.empty()) text += "\n# warrantors\n" + warrantor_table_text(summary);
  write_output(out, text);
  return 0;
}

int cmd_derive(const std::string& name, const std::string& ctx_file, const std::string& args_file,
               const std::vector<std::string>& inline_args, bool json, const std::string& out) {
  auto rule = derived_rule_from_string(name);
  if (!rule) {
    std::string known;
    for (auto r : all_derived_rules()) known += std::string(" ") + to_string(r);
    throw UsageError("unknown derived rule `" + name + "`; known:" + known);
  }
  // The context file is a document: its signature and context block are used.
  Script doc;
  if (!ctx_file.empty()) doc = load_script(ctx_file);
  std::map<std::string, std::string> raw;
  auto add = [&](const std::string& line, const std::string& where) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') return;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(where + ": expected `key = value`");
    auto trim = [](std::string v) {
      v.erase(0, v.find_first_not_of(" \t\r"));
      v.erase(v.find_last_not_of(" \t\r") + 1);
      return v;
    };
    raw[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  };
  if (!args_file.empty()) {
    std::istringstream in(read_file(args_file));
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) add(line, args_file + ":" + std::to_string(n));
  }
  for (const auto& a : inline_args) add(a, "--arg");
  DeriveArgs args;
  try {
    args = parse_derive_args(raw, &doc.sig);
  } catch (const DiagnosticError& e) {
    throw UsageError(e.diagnostic().str());
  } catch (const DeriveError& e) {
    throw UsageError(std::string(e.what()) + "\nusage: " + derive_usage(*rule));
  }
  DerivP d;
  try {
    d = derive(doc.sig, *rule, lower_context(doc.sig, doc.context).context, args);
  } catch (const DeriveError& e) {
    report(name, std::string(e.what()) + "\nusage: " + derive_usage(*rule));
    return e.kind() == DeriveError::Kind::BadArgs ? 2 : 1;
  } catch (const DiagnosticError& e) {
    report(name, e.diagnostic().str());
    return 1;
  } catch (const KernelError& e) {
    report(name, e.what());
    return 1;
  }
  write_output(out, json ? to_json(*d) + "\n" : to_text(*d));
  return 0;
}

int cmd_fuzz(std::uint64_t seed, std::size_t count, const std::string& models, unsigned threads, bool json,
             const std::string& out) {
  FuzzOptions o;
  o.seed = seed;
  o.count = count;
  o.threads = threads;
  std::vector<HeytingModel> loaded;
  std::vector<std::string> names;
  std::stringstream list(models);
  for (std::string item; std::getline(list, item, ',');)
    if (!item.empty()) names.push_back(item);
  loaded.reserve(names.size());
  for (const auto& n : names) {
    if (const auto* m = catalogue_model(n)) {
      o.models.push_back(m);
      continue;
    }
    try {
      loaded.push_back(parse_model(read_file(n)));
    } catch (const ModelError& e) {
      throw UsageError(n + ": " + e.what());
    }
    o.models.push_back(&loaded.back());
  }
  FuzzReport r = fuzz(o);
  write_output(out, json ? r.json() + "\n" : r.text());
  for (const auto& f : r.failures) report("fuzz", "case " + std::to_string(f.index) + ": " + f.counterexample);
  return r.failures.empty() ? 0 : 1;
}

int cmd_fmt(const std::string& path, bool explicit_form, const std::string& out) {
  Script s = load_script(path);
  write_output(out, format_script(s, {explicit_form}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof kernel and elaborator for dependent conjunction and implication"};
  app.require_subcommand(1);

  std::string file, out, ctx_file, args_file, name, models;
  std::vector<std::string> inline_args;
  bool json = false, explicit_form = false;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  unsigned threads = 0;

  auto* check = app.add_subcommand("check", "kernel-check every claim of a proof script");
  check->add_option("script", file, "proof script (.prf)")->required();

  auto* elab = app.add_subcommand("elaborate", "lower a high-level document and list its warrantors");
  elab->add_option("file", file, "statement file (.hi)")->required();
  elab->add_option("-o,--output", out, "output file (.lo)");

  auto* der = app.add_subcommand("derive", "build a named derived inequality");
  der->add_option("name", name, "derived rule")->required();
  der->add_option("--ctx", ctx_file, "document giving the signature and context");
  der->add_option("--args", args_file, "file of `key = value` lines");
  der->add_option("--arg", inline_args, "a single `key=value`");
  der->add_flag("--json", json, "JSON instead of the text tree");
  der->add_option("-o,--output", out, "output file (.drv)");

  auto* fz = app.add_subcommand("fuzz", "random derivations against the finite models");
  fz->add_option("--seed", seed, "seed");
  fz->add_option("--count", count, "number of derivations");
  fz->add_option("--models", models, "comma-separated catalogue names or model files");
  fz->add_option("--threads", threads, "worker threads, 0 for one per core");
  fz->add_flag("--json", json, "JSON report");
  fz->add_option("-o,--output", out, "report file");

  auto* fm = app.add_subcommand("fmt", "print a document canonically");
  fm->add_option("file", file, "document")->required();
  fm->add_flag("--explicit", explicit_form, "show warrant arguments and binder names");
  fm->add_option("-o,--output", out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(file);
    if (*elab) return cmd_elaborate(file, out);
    if (*der) return cmd_derive(name, ctx_file, args_file, inline_args, json, out);
    if (*fz) return cmd_fuzz(seed, count, models, threads, json, out);
    if (*fm) return cmd_fmt(file, explicit_form, out);
  } catch (const UsageError& e) {
    std::cerr << paint("error", "1;31") << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}
