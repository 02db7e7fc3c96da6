#include "depconj/script.hpp"

#include "depconj/parser.hpp"

namespace depconj {

namespace {

Judgment read_judgment(Parser& p, Context ctx) {
  std::size_t start = p.mark();
  try {
    StmtP e = p.statement();
    p.expect("<=");
    StmtP f = p.statement();
    return Judgment::leq(std::move(ctx), std::move(e), std::move(f));
  } catch (const DiagnosticError& leq_error) {
    p.reset(start);
    try {
      TermP a = p.term();
      p.expect("sub");
      TermP b = p.term();
      return Judgment::incl(std::move(ctx), std::move(a), std::move(b));
    } catch (const DiagnosticError&) {
      throw leq_error;
    }
  }
}

ParamValue read_arg(Parser& p, ParamKind kind) {
  switch (kind) {
    case ParamKind::Ctx: return p.context();
    case ParamKind::Stmt: return p.statement();
    case ParamKind::Term: return p.term();
    case ParamKind::Entry: return p.entry();
    case ParamKind::Name: return p.ident();
  }
  return std::string();
}

std::string arg_text(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>)
          return x;
        else
          return to_string(x);
      },
      v);
}

// `S(Nat)` or `lower_bound(x : Nat, A : Set(Nat))`; names are optional.
std::vector<TypeP> read_pred_params(Parser& p) {
  std::vector<TypeP> out;
  if (!p.accept("(")) return out;
  while (!p.at(")")) {
    if (p.peek().kind == Token::Kind::Ident && p.at(":", 1)) {
      p.next();
      p.next();
    }
    out.push_back(p.type());
    if (!p.accept(",")) break;
  }
  p.expect(")");
  return out;
}

std::vector<Param> read_fun_params(Parser& p) {
  std::vector<Param> out;
  if (!p.accept("(")) return out;
  while (!p.at(")")) {
    Param param;
    param.name = p.ident();
    p.expect(":");
    if (p.at("warrant") && p.at("(", 1)) {
      p.next();
      p.next();
      param.schema = p.statement();
      p.expect(")");
    } else {
      param.type = p.type();
    }
    out.push_back(std::move(param));
    if (!p.accept(",")) break;
  }
  p.expect(")");
  return out;
}

ScriptClaim read_claim(Parser& p, const Script& s) {
  ScriptClaim c;
  c.span = p.peek().span;
  c.name = p.ident();
  p.expect(":");
  c.relative = p.accept("+");
  c.written = p.context();
  Context full = c.relative ? s.context.concat(c.written) : c.written;
  p.expect("|-");
  c.stated = read_judgment(p, full);
  if (p.accept("by")) {
    c.by = ScriptClaim::By::Derived;
    if (p.ident() != "derived") p.error("expected `derived(...)` after `by`");
    p.expect("(");
    Span at = p.peek().span;
    std::string rule = p.ident();
    auto r = derived_rule_from_string(rule);
    if (!r) fail(DiagKind::Syntax, "unknown derived rule", rule, at);
    c.rule = *r;
    while (p.accept(",")) {
      Span key_at = p.peek().span;
      std::string key = p.ident();
      if (key == "ctx") {
        p.expect("=");
        if (c.derive_ctx) fail(DiagKind::DuplicateName, "argument given twice", key, key_at);
        c.derive_ctx_relative = p.accept("+");
        c.derive_ctx = p.context();
        continue;
      }
      auto kind = derive_arg_kind(key);
      if (!kind) fail(DiagKind::Syntax, "unknown argument", key, key_at);
      p.expect("=");
      if (c.args.count(key)) fail(DiagKind::DuplicateName, "argument given twice", key, key_at);
      c.args[key] = read_arg(p, *kind);
    }
    p.expect(")");
    p.expect(";");
    return c;
  }
  if (!p.at("proof")) p.error("expected `proof` or `by` after the judgment");
  p.next();
  Context base = full;
  try {
    base = lower_context(s.sig, full).context;
  } catch (const DiagnosticError&) {
    // reported when the claim is checked
  }
  c.tree = read_derivation(p, &base);
  if (!p.at("qed")) p.error("expected `qed`");
  p.next();
  return c;
}

std::string signature_text(const Signature& sig) {
  std::string out;
  for (const auto& b : sig.base_types()) out += "type " + b + ";\n";
  for (const auto& pr : sig.predicates()) {
    out += "pred " + pr.name;
    if (!pr.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < pr.params.size(); ++i) out += (i ? ", " : "") + to_string(*pr.params[i]);
      out += ")";
    }
    out += ";\n";
  }
  for (const auto& f : sig.functions()) {
    out += "fun " + f.name;
    if (!f.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < f.params.size(); ++i) {
        const Param& pa = f.params[i];
        out += (i ? ", " : "") + pa.name + " : ";
        out += pa.is_warrant() ? "warrant(" + to_string(*pa.schema) + ")" : to_string(*pa.type);
      }
      out += ")";
    }
    out += " : " + to_string(*f.result) + ";\n";
  }
  return out;
}

std::string sides_text(const Judgment& j, PrintOptions o) {
  if (j.kind == Judgment::Kind::Leq) return to_string(*j.lhs, o) + " <= " + to_string(*j.rhs, o);
  return to_string(*j.lset, o) + " sub " + to_string(*j.rset, o);
}

std::string indent(const std::string& text, const std::string& pad) {
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    out += pad + text.substr(start, end - start) + "\n";
    start = end + 1;
  }
  return out;
}

// A resolution failure means the written statement is missing a warrantor.
StmtP resolve(const Signature& sig, const Context& ctx, const StmtP& e) {
  try {
    return resolve_warrantors(sig, ctx, align_warrant_slots(sig, e));
  } catch (const DiagnosticError& err) {
    if (err.diagnostic().kind != DiagKind::NoWarrantorInScope) throw;
    Diagnostic d = err.diagnostic();
    d.kind = DiagKind::UnboundWarrantor;
    throw DiagnosticError(d);
  }
}

// Statement arguments may leave warrant slots to the claim's context. One
// that mentions a variable the rule binds is passed through unchanged.
DeriveArgs resolve_args(const Signature& sig, const Context& ctx, DeriveArgs args) {
  for (auto& [key, value] : args) {
    auto* e = std::get_if<StmtP>(&value);
    if (!e) continue;
    try {
      *e = resolve(sig, ctx, *e);
    } catch (const DiagnosticError&) {
    }
  }
  return args;
}

std::string kernel_error_text(const KernelError& e) {
  std::string out = std::string(to_string(e.kind())) + " at " + to_string(e.rule());
  if (!e.path().empty()) {
    out += " (premise path";
    for (auto i : e.path()) out += " " + std::to_string(i);
    out += ")";
  }
  return out + ": " + e.detail();
}

}  // namespace

ElabResult lower_statement(const Signature& sig, const Context& ctx, const StmtP& e) {
  ElabResult r = elaborate_statement(sig, ctx, e);
  r.statement = resolve(sig, r.context, r.statement);
  require_meaningful(sig, r.context, *r.statement);
  return r;
}

std::vector<const ScriptClaim*> Script::claims() const {
  std::vector<const ScriptClaim*> out;
  for (const auto& item : items)
    if (const auto* c = std::get_if<ScriptClaim>(&item)) out.push_back(c);
  return out;
}

Script parse_script(std::string_view text) {
  Script s;
  Parser p(text, &s.sig);
  std::set<std::string> claim_names;
  while (!p.at_end()) {
    Span at = p.peek().span;
    std::string kw = p.ident();
    if (kw == "type") {
      s.sig.add_base_type(p.ident(), at);
    } else if (kw == "pred") {
      PredicateSymbol sym;
      sym.span = p.peek().span;
      sym.name = p.ident();
      sym.params = read_pred_params(p);
      s.sig.add_predicate(std::move(sym));
    } else if (kw == "fun") {
      FunctionSymbol sym;
      sym.span = p.peek().span;
      sym.name = p.ident();
      sym.params = read_fun_params(p);
      p.expect(":");
      sym.result = p.type();
      s.sig.add_function(std::move(sym));
    } else if (kw == "context") {
      if (s.has_context) fail(DiagKind::DuplicateName, "second context block", {}, at);
      s.context = p.context();
      s.has_context = true;
    } else if (kw == "stmt") {
      s.items.emplace_back(ScriptStatement{p.statement(), at});
    } else if (kw == "claim") {
      ScriptClaim c = read_claim(p, s);
      if (!claim_names.insert(c.name).second) fail(DiagKind::DuplicateName, "claim name used twice", c.name, c.span);
      s.items.emplace_back(std::move(c));
      continue;
    } else {
      fail(DiagKind::Syntax, "expected `type`, `pred`, `fun`, `context`, `stmt` or `claim`", kw, at);
    }
    p.expect(";");
  }
  return s;
}

std::string format_script(const Script& s, ScriptFormat f) {
  PrintOptions o{!f.explicit_form};
  std::string out = signature_text(s.sig);
  if (s.has_context) out += "context " + to_string(s.context, o) + ";\n";
  for (const auto& item : s.items) {
    if (const auto* st = std::get_if<ScriptStatement>(&item)) {
      out += "stmt " + to_string(*st->stmt, o) + ";\n";
      continue;
    }
    const auto& c = std::get<ScriptClaim>(item);
    out += "\nclaim " + c.name + " : " + (c.relative ? "+" : "") + to_string(c.written, o) + " |- " +
           sides_text(c.stated, o);
    if (c.by == ScriptClaim::By::Derived) {
      out += "\n  by derived(" + std::string(to_string(c.rule));
      if (c.derive_ctx) out += std::string(", ctx=") + (c.derive_ctx_relative ? "+" : "") + to_string(*c.derive_ctx, o);
      for (const auto& [k, v] : c.args) out += ", " + k + "=" + arg_text(v);
      out += ");\n";
    } else {
      out += "\nproof\n" + indent(to_text(*c.tree), "  ") + "qed\n";
    }
  }
  return out;
}

ElabResult lower_context(const Signature& sig, const Context& ctx) {
  ElabResult r = elaborate_context(sig, ctx);
  std::vector<ContextEntry> entries;
  for (const auto& e : r.context) {
    ContextEntry copy = e;
    if (e.kind == ContextEntry::Kind::Assume) copy.stmt = resolve(sig, Context(entries), e.stmt);
    entries.push_back(std::move(copy));
  }
  r.context = Context(std::move(entries));
  validate_context(sig, r.context);
  return r;
}

Judgment lower_judgment(const Signature& sig, const Judgment& j) {
  Context ctx = lower_context(sig, j.ctx).context;
  if (j.kind == Judgment::Kind::Leq)
    return Judgment::leq(ctx, lower_statement(sig, ctx, j.lhs).statement, lower_statement(sig, ctx, j.rhs).statement);
  // Both sides at once, so their fresh names stay apart.
  StmtP both = lower_statement(sig, ctx, st::eq(j.lset, j.rset)).statement;
  return Judgment::incl(ctx, both->left, both->right);
}

std::vector<ItemResult> check_script(const Script& s) {
  std::vector<ItemResult> out;
  std::size_t stmt_no = 0;
  for (const auto& item : s.items) {
    ItemResult r;
    auto record = [&](std::string error, std::optional<Diagnostic> d = std::nullopt) {
      r.ok = false;
      r.error = std::move(error);
      r.diagnostic = std::move(d);
    };
    try {
      if (const auto* st = std::get_if<ScriptStatement>(&item)) {
        r.label = "stmt " + std::to_string(++stmt_no);
        Context ctx = lower_context(s.sig, s.context).context;
        r.statement = lower_statement(s.sig, ctx, st->stmt).statement;
        r.ok = true;
      } else {
        const auto& c = std::get<ScriptClaim>(item);
        r.label = "claim " + c.name;
        Judgment want = lower_judgment(s.sig, c.stated);
        r.judgment = want;
        if (c.by == ScriptClaim::By::Tree) {
          r.derivation = c.tree;
        } else {
          Context base = want.ctx;
          if (c.derive_ctx) {
            Context written = c.derive_ctx_relative ? s.context.concat(*c.derive_ctx) : *c.derive_ctx;
            base = lower_context(s.sig, written).context;
          }
          r.derivation = derive(s.sig, c.rule, base, resolve_args(s.sig, want.ctx, c.args));
        }
        Judgment got = check(s.sig, *r.derivation);
        if (!judgment_eq(got, want)) {
          record("derivation proves `" + to_string(got) + "`, claim states `" + to_string(want) + "`");
        } else {
          DerivP text = parse_derivation(to_text(*r.derivation), &s.sig);
          DerivP json = derivation_from_json(to_json(*r.derivation), &s.sig);
          if (!judgment_eq(check(s.sig, *text), want) || !judgment_eq(check(s.sig, *json), want))
            record("derivation does not survive serialization");
          else
            r.ok = true;
        }
      }
    } catch (const DiagnosticError& e) {
      record(e.diagnostic().str(), e.diagnostic());
    } catch (const KernelError& e) {
      record(kernel_error_text(e));
    } catch (const DeriveError& e) {
      record(e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace depconj
