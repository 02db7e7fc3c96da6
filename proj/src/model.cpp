#include "depconj/model.hpp"

#include <sstream>

namespace depconj {

ModelError::ModelError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

namespace {

[[noreturn]] void bad(ModelError::Kind k, const std::string& msg) { throw ModelError(k, msg); }

constexpr std::uint64_t kHuge = std::uint64_t{1} << 62;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kHuge / base) bad(ModelError::Kind::UnsupportedJudgment, "carrier too large to enumerate");
    r *= base;
  }
  return r;
}

std::uint64_t digit(std::uint64_t code, std::uint64_t pos, std::uint64_t base) {
  for (std::uint64_t i = 0; i < pos; ++i) code /= base;
  return code % base;
}

}  // namespace

// ---------------------------------------------------------------------------
// Posets

FinitePoset FinitePoset::from_order(std::vector<std::string> names, const std::vector<std::pair<int, int>>& less) {
  FinitePoset p;
  const int n = static_cast<int>(names.size());
  p.names = std::move(names);
  p.le.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) p.le[i][i] = true;
  for (auto [a, b] : less) {
    if (a < 0 || b < 0 || a >= n || b >= n) bad(ModelError::Kind::BadModel, "order pair out of range");
    p.le[a][b] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.le[i][k] && p.le[k][j]) p.le[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.le[i][j] && p.le[j][i])
        bad(ModelError::Kind::BadModel, "order has a cycle through `" + p.names[i] + "` and `" + p.names[j] + "`");
  return p;
}

FinitePoset FinitePoset::chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> less;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i) less.push_back({i - 1, i});
  }
  return from_order(names, less);
}

FinitePoset FinitePoset::product(const FinitePoset& a, const FinitePoset& b) {
  FinitePoset p;
  const int n = a.size() * b.size();
  p.le.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) p.names.push_back("(" + a.names[i] + "," + b.names[j] + ")");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      p.le[x][y] = a.leq(x / b.size(), y / b.size()) && b.leq(x % b.size(), y % b.size());
  return p;
}

std::optional<int> FinitePoset::meet_of(const std::vector<int>& xs) const {
  for (int m = 0; m < size(); ++m) {
    bool lower = true;
    for (int x : xs) lower = lower && leq(m, x);
    if (!lower) continue;
    bool greatest = true;
    for (int c = 0; c < size() && greatest; ++c) {
      bool lc = true;
      for (int x : xs) lc = lc && leq(c, x);
      if (lc && !leq(c, m)) greatest = false;
    }
    if (greatest) return m;
  }
  return std::nullopt;
}

std::optional<int> FinitePoset::join_of(const std::vector<int>& xs) const {
  for (int m = 0; m < size(); ++m) {
    bool upper = true;
    for (int x : xs) upper = upper && leq(x, m);
    if (!upper) continue;
    bool least = true;
    for (int c = 0; c < size() && least; ++c) {
      bool uc = true;
      for (int x : xs) uc = uc && leq(x, c);
      if (uc && !leq(m, c)) least = false;
    }
    if (least) return m;
  }
  return std::nullopt;
}

bool MonotoneMap::is_monotone() const {
  for (int a = 0; a < from.size(); ++a)
    for (int b = 0; b < from.size(); ++b)
      if (from.leq(a, b) && !to.leq(table[a], table[b])) return false;
  return true;
}

MonotoneMap compute_adjoint(AdjointSide side, const MonotoneMap& f, SearchOrder order) {
  if (!f.is_monotone()) bad(ModelError::Kind::BadModel, "map is not monotone");
  const FinitePoset& P = f.from;
  const FinitePoset& Q = f.to;
  MonotoneMap g{Q, P, std::vector<int>(Q.size(), -1)};
  auto candidates = [&] {
    std::vector<int> xs(P.size());
    for (int i = 0; i < P.size(); ++i) xs[i] = order == SearchOrder::Ascending ? i : P.size() - 1 - i;
    return xs;
  }();
  for (int y = 0; y < Q.size(); ++y) {
    // Right: greatest x with f(x) <= y. Left: least x with y <= f(x).
    auto in = [&](int x) { return side == AdjointSide::Right ? Q.leq(f(x), y) : Q.leq(y, f(x)); };
    for (int m : candidates) {
      if (!in(m)) continue;
      bool extreme = true;
      for (int x = 0; x < P.size() && extreme; ++x)
        if (in(x) && !(side == AdjointSide::Right ? P.leq(x, m) : P.leq(m, x))) extreme = false;
      if (extreme) {
        g.table[y] = m;
        break;
      }
    }
    if (g.table[y] < 0)
      bad(ModelError::Kind::NoAdjoint, std::string(side == AdjointSide::Right ? "right" : "left") +
                                           " adjoint fails at `" + Q.names[y] + "`: no extreme element");
  }
  for (int x = 0; x < P.size(); ++x)
    for (int y = 0; y < Q.size(); ++y) {
      const bool ok = side == AdjointSide::Right ? (Q.leq(f(x), y) == P.leq(x, g(y)))
                                                 : (P.leq(g(y), x) == Q.leq(y, f(x)));
      if (!ok) bad(ModelError::Kind::NoAdjoint, "adjunction law fails");
    }
  return g;
}

// ---------------------------------------------------------------------------
// Heyting algebras

HeytingModel::HeytingModel(std::string name, FinitePoset order) : name_(std::move(name)), order_(std::move(order)) {
  const int n = order_.size();
  if (n == 0) bad(ModelError::Kind::BadModel, "empty carrier");
  meet_.assign(n, std::vector<int>(n));
  join_.assign(n, std::vector<int>(n));
  imp_.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto m = order_.meet_of({a, b});
      auto j = order_.join_of({a, b});
      if (!m || !j) bad(ModelError::Kind::BadModel, "`" + name_ + "` is not a lattice");
      meet_[a][b] = *m;
      join_[a][b] = *j;
    }
  top_ = *order_.meet_of({});
  bottom_ = *order_.join_of({});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> below;
      for (int c = 0; c < n; ++c)
        if (leq(meet_[a][c], b)) below.push_back(c);
      auto i = order_.join_of(below);
      if (!i || !leq(meet_[a][*i], b)) bad(ModelError::Kind::BadModel, "`" + name_ + "` has no implication");
      imp_[a][b] = *i;
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (leq(meet_[a][c], b) != leq(c, imp_[a][b]))
          bad(ModelError::Kind::BadModel, "`" + name_ + "` breaks the implication law");
}

std::optional<int> HeytingModel::element(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (order_.names[i] == name) return i;
  return std::nullopt;
}

std::uint64_t HeytingModel::base_carrier(const std::string& type) const {
  auto it = carriers_.find(type);
  return it == carriers_.end() ? 2 : it->second;
}

void HeytingModel::set_base_carrier(const std::string& type, std::uint64_t n) {
  if (n == 0) bad(ModelError::Kind::BadModel, "carrier of `" + type + "` must be nonempty");
  carriers_[type] = n;
}

void HeytingModel::set_table(const std::string& symbol, std::vector<std::uint64_t> values) {
  tables_[symbol] = std::move(values);
}

std::string HeytingModel::to_text() const {
  std::ostringstream out;
  out << "model " << name_ << "\nelements";
  for (const auto& e : order_.names) out << ' ' << e;
  out << "\norder";
  bool first = true;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) {
      if (a == b || !leq(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < size(); ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
      if (!cover) continue;
      out << (first ? " " : ", ") << order_.names[a] << " < " << order_.names[b];
      first = false;
    }
  out << "\n";
  for (const auto& [t, n] : carriers_) out << "carrier " << t << ' ' << n << "\n";
  for (const auto& [s, vals] : tables_) {
    out << "table " << s << " =";
    for (auto v : vals) out << ' ' << v;
    out << "\n";
  }
  return out.str();
}

const std::vector<HeytingModel>& catalogue() {
  static const std::vector<HeytingModel> models = [] {
    std::vector<HeytingModel> ms;
    ms.emplace_back("chain2", FinitePoset::from_order({"0", "1"}, {{0, 1}}));
    ms.emplace_back("chain3", FinitePoset::from_order({"0", "h", "1"}, {{0, 1}, {1, 2}}));
    ms.emplace_back("diamond", FinitePoset::from_order({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    ms.emplace_back("raised-diamond",
                    FinitePoset::from_order({"0", "l", "h", "m", "1"}, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}}));
    return ms;
  }();
  return models;
}

const HeytingModel* catalogue_model(const std::string& name) {
  for (const auto& m : catalogue())
    if (m.name() == name) return &m;
  return nullptr;
}

HeytingModel parse_model(std::string_view text) {
  std::string name = "custom";
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::pair<std::string, std::uint64_t>> carriers;
  struct Table {
    std::string symbol;
    bool truth;
    std::vector<std::string> values;
  };
  std::vector<Table> tables;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail_at = [&](const std::string& msg) {
    bad(ModelError::Kind::BadModel, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    const std::string& kw = w[0];
    if (kw == "model" && w.size() == 2) {
      name = w[1];
    } else if (kw == "elements") {
      elements.assign(w.begin() + 1, w.end());
    } else if (kw == "order") {
      if ((w.size() - 1) % 3 != 0) fail_at("order expects `a < b` pairs");
      for (std::size_t i = 1; i + 2 < w.size(); i += 3) {
        if (w[i + 1] != "<") fail_at("order expects `a < b` pairs");
        pairs.push_back({w[i], w[i + 2]});
      }
    } else if (kw == "carrier" && w.size() == 3) {
      try {
        carriers.push_back({w[1], std::stoull(w[2])});
      } catch (const std::exception&) {
        fail_at("carrier size must be a number");
      }
    } else if ((kw == "pred" || kw == "fun" || kw == "table") && w.size() >= 3 && w[2] == "=") {
      tables.push_back({w[1], kw == "pred", {w.begin() + 3, w.end()}});
    } else {
      fail_at("cannot read `" + line + "`");
    }
  }
  auto index = [&](const std::string& e) {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == e) return static_cast<int>(i);
    bad(ModelError::Kind::BadModel, "unknown element `" + e + "`");
  };
  std::vector<std::pair<int, int>> less;
  for (const auto& [a, b] : pairs) less.push_back({index(a), index(b)});
  HeytingModel m(name, FinitePoset::from_order(elements, less));
  for (const auto& [t, n] : carriers) m.set_base_carrier(t, n);
  for (const auto& t : tables) {
    std::vector<std::uint64_t> vals;
    for (const auto& v : t.values) {
      if (t.truth) {
        vals.push_back(static_cast<std::uint64_t>(index(v)));
      } else {
        try {
          vals.push_back(std::stoull(v));
        } catch (const std::exception&) {
          bad(ModelError::Kind::BadModel, "function table values must be indices");
        }
      }
    }
    m.set_table(t.symbol, std::move(vals));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Evaluation

std::uint64_t carrier_size(const HeytingModel& m, const Type& t) {
  if (t.kind == Type::Kind::Base) return m.base_carrier(t.name);
  return checked_pow(static_cast<std::uint64_t>(m.size()), carrier_size(m, *t.elem));
}

namespace {

struct SymbolShape {
  std::vector<TypeP> args;  // term arguments only
  TypeP result;             // null for predicates
};

SymbolShape shape_of(const Signature& sig, const std::string& name, bool predicate) {
  SymbolShape s;
  if (predicate) {
    const PredicateSymbol* p = sig.predicate(name);
    if (!p) bad(ModelError::Kind::UnboundVar, "unknown predicate `" + name + "`");
    s.args = p->params;
  } else {
    const FunctionSymbol* f = sig.function(name);
    if (!f) bad(ModelError::Kind::UnboundVar, "unknown function `" + name + "`");
    for (const auto& p : f->params)
      if (!p.is_warrant()) s.args.push_back(p.type);
    s.result = f->result;
  }
  return s;
}


// A statement or term compiled against fixed variable slots and symbol
// tables, so that evaluating it under many valuations does no lookups.
class Program {
 public:
  enum class Op { Top, Meet, Join, Imp, Forall, Exists, Unique, Eq, Mem, Pred, Var, App, Compr };

  struct Node {
    Op op = Op::Top;
    int a = -1, b = -1;
    int slot = -1;           // Var; the bound slot of a binder
    std::uint64_t n = 0;     // binder range
    int sym = -1;            // Pred / App
    std::vector<int> args;
  };

  struct Symbol {
    std::string name;
    bool predicate = true;
    std::vector<std::uint64_t> weights;  // per argument, for the tuple index
    std::uint64_t tuples = 1;
    std::uint64_t base = 0;              // values per entry
    std::uint64_t code_space = 0;        // base ^ tuples, when free
    bool fixed = false;
    std::vector<std::uint64_t> table;
  };

  Program(const Signature& sig, const HeytingModel& m) : sig_(sig), m_(m) {
    std::uint64_t p = 1;
    for (int i = 0; i < 64; ++i) {
      pow_.push_back(p);
      if (p > kHuge / static_cast<std::uint64_t>(m.size())) break;
      p *= static_cast<std::uint64_t>(m.size());
    }
  }

  int declare(const std::string& name) {
    int s = static_cast<int>(slots_.size());
    slots_.push_back(0);
    scope_.push_back({name, s});
    return s;
  }

  int stmt(const Stmt& e) {
    using K = Stmt::Kind;
    Node n;
    switch (e.kind) {
      case K::Top: n.op = Op::Top; break;
      case K::And:
      case K::DepAnd:
      case K::Or:
      case K::Imp:
      case K::DepImp:
        n.op = e.kind == K::Or ? Op::Join : (e.kind == K::Imp || e.kind == K::DepImp) ? Op::Imp : Op::Meet;
        n.a = stmt(*e.lhs);
        n.b = stmt(*e.rhs);
        break;
      case K::ForallT:
      case K::ExistsT:
      case K::ExistsUniqueT:
        n.op = e.kind == K::ForallT ? Op::Forall : e.kind == K::ExistsT ? Op::Exists : Op::Unique;
        n.n = carrier_size(m_, *e.type);
        n.slot = declare(e.name);
        n.a = stmt(*e.body);
        scope_.pop_back();
        break;
      case K::ForallS:
      case K::ExistsS: bad(ModelError::Kind::UnsupportedJudgment, "high-level quantifier `" + to_string(e) + "`");
      case K::Eq:
        n.op = Op::Eq;
        n.a = term(*e.left);
        n.b = term(*e.right);
        break;
      case K::Mem:
        n.op = Op::Mem;
        n.a = term(*e.left);
        n.b = term(*e.set);
        break;
      case K::Pred:
        n.op = Op::Pred;
        n.sym = symbol(e.name, true);
        for (const auto& a : e.args) n.args.push_back(term(*a));
        break;
    }
    return push(std::move(n));
  }

  int term(const Term& t) {
    Node n;
    switch (t.kind) {
      case Term::Kind::Var:
        n.op = Op::Var;
        for (auto it = scope_.rbegin(); it != scope_.rend() && n.slot < 0; ++it)
          if (it->first == t.name) n.slot = it->second;
        if (n.slot < 0) bad(ModelError::Kind::UnboundVar, "no value for `" + t.name + "`");
        break;
      case Term::Kind::App:
        n.op = Op::App;
        n.sym = symbol(t.name, false);
        for (const auto& a : t.args) {
          if (a.is_warrant()) bad(ModelError::Kind::ContainsDescription, "warrant reference in `" + to_string(t) + "`");
          n.args.push_back(term(*a.term));
        }
        break;
      case Term::Kind::Compr:
        n.op = Op::Compr;
        n.n = carrier_size(m_, *t.type);
        if (n.n >= pow_.size()) bad(ModelError::Kind::UnsupportedJudgment, "comprehension over too large a type");
        n.slot = declare(t.name);
        n.a = stmt(*t.body);
        scope_.pop_back();
        break;
      case Term::Kind::ComprSet: bad(ModelError::Kind::UnsupportedJudgment, "high-level comprehension");
      case Term::Kind::Desc: bad(ModelError::Kind::ContainsDescription, "description `" + to_string(t) + "`");
    }
    return push(std::move(n));
  }

  std::vector<Symbol>& symbols() { return symbols_; }
  void set(int slot, std::uint64_t v) { slots_[slot] = v; }
  // Decodes a mixed-radix table code for a free symbol.
  void set_code(int sym, std::uint64_t code) {
    Symbol& s = symbols_[sym];
    for (std::uint64_t i = 0; i < s.tuples; ++i) {
      s.table[i] = code % s.base;
      code /= s.base;
    }
  }

  int truth(int i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::Top: return m_.top();
      case Op::Meet: return m_.meet(truth(n.a), truth(n.b));
      case Op::Join: return m_.join(truth(n.a), truth(n.b));
      case Op::Imp: return m_.imp(truth(n.a), truth(n.b));
      case Op::Forall:
      case Op::Exists: {
        const bool all = n.op == Op::Forall;
        int acc = all ? m_.top() : m_.bottom();
        for (std::uint64_t v = 0; v < n.n; ++v) {
          slots_[n.slot] = v;
          int t = truth(n.a);
          acc = all ? m_.meet(acc, t) : m_.join(acc, t);
        }
        return acc;
      }
      case Op::Unique: {
        // exists x . E(x) /\ forall y . E(y) => y = x
        std::vector<int> at(n.n);
        for (std::uint64_t v = 0; v < n.n; ++v) {
          slots_[n.slot] = v;
          at[v] = truth(n.a);
        }
        int acc = m_.bottom();
        for (std::uint64_t x = 0; x < n.n; ++x) {
          int only = m_.top();
          for (std::uint64_t y = 0; y < n.n; ++y) only = m_.meet(only, m_.imp(at[y], x == y ? m_.top() : m_.bottom()));
          acc = m_.join(acc, m_.meet(at[x], only));
        }
        return acc;
      }
      case Op::Eq: return value(n.a) == value(n.b) ? m_.top() : m_.bottom();
      case Op::Mem: {
        std::uint64_t x = value(n.a);
        std::uint64_t set = value(n.b);
        return static_cast<int>(x < pow_.size() ? set / pow_[x] % m_.size() : 0);
      }
      case Op::Pred: return static_cast<int>(lookup(n));
      default: bad(ModelError::Kind::BadModel, "term where a statement was expected");
    }
  }

  std::uint64_t value(int i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::Var: return slots_[n.slot];
      case Op::App: return lookup(n);
      case Op::Compr: {
        std::uint64_t code = 0;
        for (std::uint64_t v = 0; v < n.n; ++v) {
          slots_[n.slot] = v;
          code += pow_[v] * static_cast<std::uint64_t>(truth(n.a));
        }
        return code;
      }
      default: bad(ModelError::Kind::BadModel, "statement where a term was expected");
    }
  }

 private:
  int push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int symbol(const std::string& name, bool predicate) {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name == name && symbols_[i].predicate == predicate) return static_cast<int>(i);
    SymbolShape shape = shape_of(sig_, name, predicate);
    Symbol s;
    s.name = name;
    s.predicate = predicate;
    for (const auto& a : shape.args) {
      s.weights.push_back(s.tuples);
      const std::uint64_t n = carrier_size(m_, *a);
      if (n > 0 && s.tuples > (1u << 16) / n) bad(ModelError::Kind::UnsupportedJudgment, "table of `" + name + "` too large");
      s.tuples *= n;
    }
    s.base = predicate ? static_cast<std::uint64_t>(m_.size()) : carrier_size(m_, *shape.result);
    s.table.assign(s.tuples, 0);
    if (auto it = m_.tables().find(name); it != m_.tables().end()) {
      if (it->second.size() < s.tuples) bad(ModelError::Kind::BadModel, "table for `" + name + "` is too short");
      s.fixed = true;
      s.table.assign(it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(s.tuples));
    } else {
      s.code_space = checked_pow(s.base, s.tuples);
    }
    symbols_.push_back(std::move(s));
    return static_cast<int>(symbols_.size()) - 1;
  }

  std::uint64_t lookup(const Node& n) {
    const Symbol& s = symbols_[n.sym];
    std::uint64_t tuple = 0;
    for (std::size_t i = 0; i < n.args.size(); ++i) tuple += s.weights[i] * value(n.args[i]);
    return s.table[tuple];
  }

  const Signature& sig_;
  const HeytingModel& m_;
  std::vector<Node> nodes_;
  std::vector<std::uint64_t> slots_;
  std::vector<std::pair<std::string, int>> scope_;
  std::vector<Symbol> symbols_;
  std::vector<std::uint64_t> pow_;
};

// Compiles against a valuation: its variables become slots and its symbol
// codes are decoded.
void load(Program& p, const Valuation& env) {
  for (const auto& [name, v] : env.vars) p.set(p.declare(name), v);
}

void load_symbols(Program& p, const Valuation& env) {
  for (std::size_t i = 0; i < p.symbols().size(); ++i) {
    auto& s = p.symbols()[i];
    if (s.fixed) continue;
    auto it = env.symbols.find(s.name);
    if (it == env.symbols.end()) bad(ModelError::Kind::UnboundVar, "no interpretation of `" + s.name + "`");
    p.set_code(static_cast<int>(i), it->second);
  }
}

std::string show_value(const HeytingModel& m, const Type& t, std::uint64_t v) {
  if (t.kind == Type::Kind::Base) return std::to_string(v);
  std::string out = "{";
  const std::uint64_t n = carrier_size(m, *t.elem);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i) out += " ";
    out += m.element_name(static_cast<int>(digit(v, i, m.size())));
  }
  return out + "}";
}

}  // namespace

int eval(const Signature& sig, const HeytingModel& m, const Valuation& env, const Stmt& e) {
  Program p(sig, m);
  load(p, env);
  int root = p.stmt(e);
  load_symbols(p, env);
  return p.truth(root);
}

std::uint64_t eval(const Signature& sig, const HeytingModel& m, const Valuation& env, const Term& t) {
  Program p(sig, m);
  load(p, env);
  int root = p.term(t);
  load_symbols(p, env);
  return p.value(root);
}

std::string Counterexample::str() const {
  std::string out = "counterexample in " + model + ":";
  for (const auto& [k, v] : env) out += " " + k + "=" + v;
  out += "; hypotheses " + hypothesis + ", left " + lhs + ", right " + rhs;
  return out;
}

std::optional<Counterexample> check_soundness(const Signature& sig, const HeytingModel& m, const Judgment& j) {
  using MK = ModelError::Kind;
  auto supported = [](const auto& x) {
    if (!is_delta_free(x)) bad(MK::UnsupportedJudgment, "`" + to_string(x) + "` mentions a warrantor");
    if (!is_low_level(x)) bad(MK::UnsupportedJudgment, "`" + to_string(x) + "` is high level");
  };

  Program p(sig, m);
  struct VarDim {
    int slot;
    std::string name;
    TypeP type;
    std::uint64_t size;
  };
  std::vector<VarDim> vars;
  std::vector<int> assumptions;
  // Each assumption sees exactly the declarations before it.
  for (const auto& e : j.ctx) {
    switch (e.kind) {
      case ContextEntry::Kind::SetDecl: bad(MK::UnsupportedJudgment, "high-level context");
      case ContextEntry::Kind::TypeDecl:
        vars.push_back({p.declare(e.name), e.name, e.type, carrier_size(m, *e.type)});
        break;
      case ContextEntry::Kind::Assume:
        supported(*e.stmt);
        assumptions.push_back(p.stmt(*e.stmt));
        break;
    }
  }
  int lhs = -1, rhs = -1;
  std::uint64_t elems = 0;
  if (j.kind == Judgment::Kind::Leq) {
    supported(*j.lhs);
    supported(*j.rhs);
    lhs = p.stmt(*j.lhs);
    rhs = p.stmt(*j.rhs);
  } else {
    supported(*j.lset);
    supported(*j.rset);
    lhs = p.term(*j.lset);
    rhs = p.term(*j.rset);
    elems = carrier_size(m, *synth_type(sig, j.ctx, *j.lset)->elem);
  }

  // Dimensions: context variables first, then free symbols.
  std::vector<std::uint64_t> sizes;
  for (const auto& v : vars) sizes.push_back(v.size);
  std::vector<int> free_syms;
  for (std::size_t i = 0; i < p.symbols().size(); ++i)
    if (!p.symbols()[i].fixed) {
      free_syms.push_back(static_cast<int>(i));
      sizes.push_back(p.symbols()[i].code_space);
    }
  std::uint64_t total = 1;
  for (auto s : sizes) {
    if (s > kMaxValuations || total > kMaxValuations / s)
      bad(MK::UnsupportedJudgment, "more than " + std::to_string(kMaxValuations) + " valuations");
    total *= s;
  }

  std::vector<std::uint64_t> counter(sizes.size(), 0);
  for (const auto& v : vars) p.set(v.slot, 0);
  for (int s : free_syms) p.set_code(s, 0);
  auto digit_of = [&](std::uint64_t code, std::uint64_t i) { return static_cast<int>(digit(code, i, m.size())); };
  for (std::uint64_t step = 0; step < total; ++step) {
    int hyp = m.top();
    for (int a : assumptions) hyp = m.meet(hyp, p.truth(a));
    std::optional<std::pair<int, int>> broken;
    if (j.kind == Judgment::Kind::Leq) {
      int l = p.truth(lhs);
      if (!m.leq(m.meet(hyp, l), p.truth(rhs))) broken = {l, p.truth(rhs)};
    } else {
      std::uint64_t a = p.value(lhs), b = p.value(rhs);
      for (std::uint64_t x = 0; x < elems && !broken; ++x)
        if (!m.leq(m.meet(hyp, digit_of(a, x)), digit_of(b, x))) broken = {digit_of(a, x), digit_of(b, x)};
    }
    if (broken) {
      Counterexample c;
      c.model = m.name();
      for (std::size_t i = 0; i < vars.size(); ++i) c.env.push_back({vars[i].name, show_value(m, *vars[i].type, counter[i])});
      for (std::size_t k = 0; k < free_syms.size(); ++k) {
        const auto& s = p.symbols()[free_syms[k]];
        std::string shown;
        for (std::uint64_t t = 0; t < s.tuples; ++t) {
          if (t) shown += " ";
          shown += s.predicate ? m.element_name(static_cast<int>(s.table[t])) : std::to_string(s.table[t]);
        }
        c.env.push_back({s.name, s.tuples > 1 ? "[" + shown + "]" : shown});
      }
      c.hypothesis = m.element_name(hyp);
      c.lhs = m.element_name(broken->first);
      c.rhs = m.element_name(broken->second);
      return c;
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const bool wrap = ++counter[i] == sizes[i];
      if (wrap) counter[i] = 0;
      if (i < vars.size())
        p.set(vars[i].slot, counter[i]);
      else
        p.set_code(free_syms[i - vars.size()], counter[i]);
      if (!wrap) break;
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> check_soundness(const Signature& sig, const HeytingModel& m, const Derivation& d) {
  return check_soundness(sig, m, judgment_of(sig, d));
}

}  // namespace depconj
