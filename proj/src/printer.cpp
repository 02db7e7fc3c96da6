#include "depconj/syntax.hpp"

namespace depconj {
namespace {

// Binding strength; binders extend as far right as possible and sit below
// every connective.
constexpr int kBinder = 0;
constexpr int kImp = 1;
constexpr int kOr = 2;
constexpr int kAnd = 3;
constexpr int kAtom = 4;

int precedence(Stmt::Kind k) {
  using K = Stmt::Kind;
  switch (k) {
    case K::Imp:
    case K::DepImp: return kImp;
    case K::Or: return kOr;
    case K::And:
    case K::DepAnd: return kAnd;
    case K::ForallT:
    case K::ExistsT:
    case K::ExistsUniqueT:
    case K::ForallS:
    case K::ExistsS: return kBinder;
    default: return kAtom;
  }
}

class Printer {
 public:
  explicit Printer(PrintOptions opts) : opts_(opts) {}

  void term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Var: out += t.name; return;
      case Term::Kind::App: {
        std::vector<const Arg*> shown;
        for (const auto& a : t.args)
          if (!(opts_.vernacular && a.is_warrant())) shown.push_back(&a);
        out += t.name;
        if (shown.empty()) return;
        out += "(";
        for (std::size_t i = 0; i < shown.size(); ++i) {
          if (i) out += ", ";
          if (shown[i]->term)
            term(*shown[i]->term);
          else
            out += "@" + (shown[i]->warrant.empty() ? std::string("_") : shown[i]->warrant);
        }
        out += ")";
        return;
      }
      case Term::Kind::Compr:
        out += "{ " + t.name + " : " + to_string(*t.type) + " | ";
        stmt(*t.body, kBinder, true);
        out += " }";
        return;
      case Term::Kind::ComprSet:
        out += "{ " + t.name + " in ";
        term(*t.set);
        out += " | ";
        stmt(*t.body, kBinder, true);
        out += " }";
        return;
      case Term::Kind::Desc: out += "desc(" + t.name + ")"; return;
    }
  }

  // `tail` is true when nothing follows this statement at its level, so a
  // binder may extend to the end without parentheses.
  void stmt(const Stmt& e, int min_prec, bool tail) {
    using K = Stmt::Kind;
    const int p = precedence(e.kind);
    const bool paren = p == kBinder ? (!tail && min_prec > kBinder) : p < min_prec;
    if (paren) {
      out += "(";
      tail = true;
    }
    switch (e.kind) {
      case K::Top: out += "top"; break;
      case K::And: binary(e, " /\\ ", kAnd, tail); break;
      case K::Or: binary(e, " \\/ ", kOr, tail); break;
      case K::Imp: binary(e, " => ", kImp, tail); break;
      case K::DepAnd: dependent(e, " /\\ ", kAnd, tail); break;
      case K::DepImp: dependent(e, " => ", kImp, tail); break;
      case K::ForallT: typed("forall ", e); break;
      case K::ExistsT: typed("exists ", e); break;
      case K::ExistsUniqueT: typed("exists! ", e); break;
      case K::ForallS: ranged("forall ", e); break;
      case K::ExistsS: ranged("exists ", e); break;
      case K::Eq:
        term(*e.left);
        out += " = ";
        term(*e.right);
        break;
      case K::Mem:
        term(*e.left);
        out += " in ";
        term(*e.set);
        break;
      case K::Pred:
        out += e.name;
        if (!e.args.empty()) {
          out += "(";
          for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i) out += ", ";
            term(*e.args[i]);
          }
          out += ")";
        }
        break;
    }
    if (paren) out += ")";
  }

  std::string out;

 private:
  void binary(const Stmt& e, const char* op, int p, bool tail) {
    stmt(*e.lhs, p + 1, false);
    out += op;
    stmt(*e.rhs, p, tail);
  }

  void dependent(const Stmt& e, const char* op, int p, bool tail) {
    if (opts_.vernacular && occurs_free(e.name, *e.rhs)) {
      // The warrantor is recoverable from the assumed statement.
      stmt(*e.lhs, p + 1, false);
    } else {
      out += "[";
      if (!opts_.vernacular) out += e.name + " |- ";
      stmt(*e.lhs, kBinder, true);
      out += "]";
    }
    out += op;
    stmt(*e.rhs, p, tail);
  }

  void typed(const char* q, const Stmt& e) {
    out += q + e.name + " : " + to_string(*e.type) + " . ";
    stmt(*e.body, kBinder, true);
  }

  void ranged(const char* q, const Stmt& e) {
    out += q + e.name + " in ";
    term(*e.set);
    out += " . ";
    stmt(*e.body, kBinder, true);
  }

  PrintOptions opts_;
};

}  // namespace

std::string to_string(const Stmt& e, PrintOptions opts) {
  Printer p(opts);
  p.stmt(e, kBinder, true);
  return p.out;
}

std::string to_string(const Term& t, PrintOptions opts) {
  Printer p(opts);
  p.term(t);
  return p.out;
}

std::string to_string(const StmtP& e, PrintOptions opts) { return e ? to_string(*e, opts) : "<null>"; }
std::string to_string(const TermP& t, PrintOptions opts) { return t ? to_string(*t, opts) : "<null>"; }

std::string to_string(const ContextEntry& e, PrintOptions opts) {
  switch (e.kind) {
    case ContextEntry::Kind::TypeDecl: return e.name + " : " + to_string(*e.type);
    case ContextEntry::Kind::SetDecl: return e.name + " in " + to_string(*e.set, opts);
    case ContextEntry::Kind::Assume: return e.name + " |- " + to_string(*e.stmt, opts);
  }
  return {};
}

std::string to_string(const Context& c, PrintOptions opts) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += "; ";
    out += to_string(c[i], opts);
  }
  return out + "]";
}

}  // namespace depconj
