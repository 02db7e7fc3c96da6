#include <json.hpp>

#include "depconj/kernel.hpp"
#include "depconj/parser.hpp"

namespace depconj {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string value_text(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>)
          return x;
        else if constexpr (std::is_same_v<T, Context> || std::is_same_v<T, ContextEntry>)
          return to_string(x);
        else
          return to_string(x);
      },
      v);
}

const ParamSpec& spec_for(Rule r, const std::string& key, const Parser& p) {
  for (const auto& s : param_schema(r))
    if (s.key == key) return s;
  p.error(std::string("rule ") + to_string(r) + " takes no parameter `" + key + "`");
}

ParamValue read_value(Parser& p, ParamKind kind, const Context* base = nullptr) {
  switch (kind) {
    case ParamKind::Ctx:
      if (base && p.accept("+")) return base->concat(p.context());
      return p.context();
    case ParamKind::Stmt: return p.statement();
    case ParamKind::Term: return p.term();
    case ParamKind::Entry: return p.entry();
    case ParamKind::Name: return p.ident();
  }
  return std::string();
}

ParamValue value_from_string(const std::string& text, ParamKind kind, const Signature* sig) {
  Parser p(text, sig);
  ParamValue v = read_value(p, kind);
  p.expect_end();
  return v;
}

Rule read_rule(Parser& p) {
  Span span = p.peek().span;
  std::string name = p.ident();
  auto r = rule_from_string(name);
  if (!r) fail(DiagKind::Syntax, "unknown rule", name, span);
  return *r;
}

DerivP read_node(Parser& p, const Context* base) {
  int col = p.peek().span.column;
  Rule r = read_rule(p);
  Params params;
  if (p.accept("(")) {
    while (!p.at(")")) {
      std::string key = p.ident();
      const ParamSpec& s = spec_for(r, key, p);
      p.expect("=");
      params[key] = read_value(p, s.kind, base);
      if (!p.accept(",")) break;
    }
    p.expect(")");
  }
  std::vector<DerivP> premises;
  while (!p.at_end() && p.peek().kind == Token::Kind::Ident && p.peek().span.column > col &&
         rule_from_string(p.peek().text))
    premises.push_back(read_node(p, base));
  return make(r, std::move(params), std::move(premises));
}

void write_node(const Derivation& d, int depth, std::string& out) {
  out += std::string(2 * depth, ' ');
  out += to_string(d.rule);
  bool first = true;
  for (const auto& s : param_schema(d.rule)) {
    auto it = d.params.find(s.key);
    if (it == d.params.end()) continue;
    out += first ? "(" : ", ";
    first = false;
    out += s.key + "=" + value_text(it->second);
  }
  if (!first) out += ")";
  out += "\n";
  for (const auto& p : d.premises) write_node(*p, depth + 1, out);
}

ordered_json node_json(const Derivation& d) {
  ordered_json j;
  j["rule"] = to_string(d.rule);
  ordered_json params = ordered_json::object();
  for (const auto& s : param_schema(d.rule)) {
    auto it = d.params.find(s.key);
    if (it != d.params.end()) params[s.key] = value_text(it->second);
  }
  j["params"] = params;
  ordered_json prem = ordered_json::array();
  for (const auto& p : d.premises) prem.push_back(node_json(*p));
  j["premises"] = prem;
  return j;
}

DerivP node_from_json(const ordered_json& j, const Signature* sig) {
  if (!j.is_object() || !j.contains("rule") || !j["rule"].is_string())
    fail(DiagKind::Syntax, "derivation node needs a string `rule`");
  std::string name = j["rule"].get<std::string>();
  auto r = rule_from_string(name);
  if (!r) fail(DiagKind::Syntax, "unknown rule", name);
  Params params;
  if (j.contains("params")) {
    if (!j["params"].is_object()) fail(DiagKind::Syntax, "`params` must be an object", name);
    for (const auto& [key, value] : j["params"].items()) {
      const ParamSpec* spec = nullptr;
      for (const auto& s : param_schema(*r))
        if (s.key == key) spec = &s;
      if (!spec) fail(DiagKind::Syntax, "rule " + name + " takes no parameter `" + key + "`");
      if (!value.is_string()) fail(DiagKind::Syntax, "parameter `" + key + "` must be a string", name);
      params[key] = value_from_string(value.get<std::string>(), spec->kind, sig);
    }
  }
  std::vector<DerivP> premises;
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) fail(DiagKind::Syntax, "`premises` must be an array", name);
    for (const auto& p : j["premises"]) premises.push_back(node_from_json(p, sig));
  }
  return make(*r, std::move(params), std::move(premises));
}

}  // namespace

std::string to_text(const Derivation& d) {
  std::string out;
  write_node(d, 0, out);
  return out;
}

DerivP parse_derivation(std::string_view text, const Signature* sig) {
  Parser p(text, sig);
  DerivP d = read_node(p, nullptr);
  p.expect_end();
  return d;
}

DerivP read_derivation(Parser& p, const Context* base) { return read_node(p, base); }

std::string to_json(const Derivation& d, int indent) { return node_json(d).dump(indent); }

DerivP derivation_from_json(std::string_view json, const Signature* sig) {
  ordered_json j;
  try {
    j = ordered_json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    fail(DiagKind::Syntax, std::string("invalid JSON: ") + e.what());
  }
  return node_from_json(j, sig);
}

Judgment parse_judgment(std::string_view text, const Signature* sig) {
  Parser p(text, sig);
  Context ctx = p.context();
  p.expect("|-");
  std::size_t start = p.mark();
  try {
    StmtP e = p.statement();
    p.expect("<=");
    StmtP f = p.statement();
    p.expect_end();
    return Judgment::leq(std::move(ctx), std::move(e), std::move(f));
  } catch (const DiagnosticError& leq_error) {
    p.reset(start);
    try {
      TermP a = p.term();
      p.expect("sub");
      TermP b = p.term();
      p.expect_end();
      return Judgment::incl(std::move(ctx), std::move(a), std::move(b));
    } catch (const DiagnosticError&) {
      throw leq_error;
    }
  }
}

}  // namespace depconj
