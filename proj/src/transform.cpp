#include <functional>

#include "depconj/kernel.hpp"

namespace depconj {

namespace {

struct Mapper {
  std::function<StmtP(const StmtP&)> stmt;
  std::function<TermP(const TermP&)> term;
  std::function<Context(const Context&)> ctx;
  std::function<std::string(const std::string&)> name;
};

ContextEntry map_entry(const ContextEntry& e, const Mapper& m) {
  Context c = m.ctx(Context({e}));
  return c[0];
}

DerivP map_tree(const Derivation& d, const Mapper& m) {
  Params params;
  for (const auto& [key, value] : d.params) {
    params[key] = std::visit(
        [&](const auto& x) -> ParamValue {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Context>)
            return m.ctx(x);
          else if constexpr (std::is_same_v<T, StmtP>)
            return m.stmt(x);
          else if constexpr (std::is_same_v<T, TermP>)
            return m.term(x);
          else if constexpr (std::is_same_v<T, ContextEntry>)
            return map_entry(x, m);
          else
            return m.name(x);
        },
        value);
  }
  std::vector<DerivP> premises;
  for (const auto& p : d.premises) premises.push_back(map_tree(*p, m));
  return make(d.rule, std::move(params), std::move(premises));
}

void collect(const Stmt& e, std::set<std::string>& out);

void collect(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const auto& a : t.args) {
    if (a.term) collect(*a.term, out);
    if (!a.warrant.empty()) out.insert(a.warrant);
  }
  if (t.set) collect(*t.set, out);
  if (t.body) collect(*t.body, out);
}

void collect(const Stmt& e, std::set<std::string>& out) {
  if (!e.name.empty()) out.insert(e.name);
  for (const auto* s : {&e.lhs, &e.rhs, &e.body})
    if (*s) collect(**s, out);
  for (const auto* t : {&e.set, &e.left, &e.right})
    if (*t) collect(**t, out);
  for (const auto& a : e.args) collect(*a, out);
}

void collect(const Context& c, std::set<std::string>& out) {
  for (const auto& e : c) {
    out.insert(e.name);
    if (e.set) collect(*e.set, out);
    if (e.stmt) collect(*e.stmt, out);
  }
}

}  // namespace

DerivP rename_in_derivation(const Derivation& d, const std::string& from, const std::string& to) {
  Mapper m;
  m.stmt = [&](const StmtP& s) { return rename_everywhere(s, from, to); };
  m.term = [&](const TermP& t) { return rename_everywhere(t, from, to); };
  m.ctx = [&](const Context& c) {
    std::vector<ContextEntry> out;
    for (auto e : c) {
      if (e.name == from) e.name = to;
      e.set = rename_everywhere(e.set, from, to);
      e.stmt = rename_everywhere(e.stmt, from, to);
      out.push_back(std::move(e));
    }
    return Context(std::move(out));
  };
  m.name = [&](const std::string& n) { return n == from ? to : n; };
  return map_tree(d, m);
}

DerivP redirect_warrant(const Derivation& d, const std::string& from, const std::string& to) {
  SubstMap sub{{from, Replacement::warrantor(to)}};
  Mapper m;
  m.stmt = [&](const StmtP& s) { return substitute(s, sub); };
  m.term = [&](const TermP& t) { return substitute(t, sub); };
  m.ctx = [&](const Context& c) {
    std::vector<ContextEntry> out;
    bool seen = false;
    for (auto e : c) {
      if (seen) {
        if (e.set) e.set = substitute(e.set, sub);
        if (e.stmt) e.stmt = substitute(e.stmt, sub);
      }
      seen |= e.name == to;
      out.push_back(std::move(e));
    }
    return Context(std::move(out));
  };
  m.name = [](const std::string& n) { return n; };
  return map_tree(d, m);
}

std::set<std::string> names_in(const Derivation& d) {
  std::set<std::string> out;
  for (const auto& [key, value] : d.params) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Context>)
            collect(x, out);
          else if constexpr (std::is_same_v<T, StmtP> || std::is_same_v<T, TermP>)
            collect(*x, out);
          else if constexpr (std::is_same_v<T, ContextEntry>)
            collect(Context({x}), out);
          else
            out.insert(x);
        },
        value);
  }
  for (const auto& p : d.premises) out.merge(names_in(*p));
  return out;
}

}  // namespace depconj
