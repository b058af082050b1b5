#include "spekkens/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace spekkens::circuit {

struct Condition::Node {
  enum class Kind { Literal, Var, Not, And, Xor } kind;
  int value = 0;
  std::string name;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Condition::Node>;

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

  NodePtr parse() {
    auto node = parse_xor();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, offset_ + pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  NodePtr parse_xor() {
    auto lhs = parse_and();
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        auto rhs = parse_and();
        lhs = std::make_shared<Condition::Node>(Condition::Node{Condition::Node::Kind::Xor, 0, "", lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_and() {
    auto lhs = parse_unary();
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        auto rhs = parse_unary();
        lhs = std::make_shared<Condition::Node>(Condition::Node{Condition::Node::Kind::And, 0, "", lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected an operand");
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      auto inner = parse_unary();
      return std::make_shared<Condition::Node>(Condition::Node{Condition::Node::Kind::Not, 0, "", inner, nullptr});
    }
    if (c == '(') {
      ++pos_;
      auto inner = parse_xor();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return std::make_shared<Condition::Node>(Condition::Node{Condition::Node::Kind::Literal, c - '0', "", nullptr, nullptr});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return std::make_shared<Condition::Node>(Condition::Node{
          Condition::Node::Kind::Var, 0, std::string(text_.substr(start, pos_ - start)), nullptr, nullptr});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

int eval_node(const Condition::Node& node, const std::map<std::string, int>& vars) {
  using K = Condition::Node::Kind;
  switch (node.kind) {
    case K::Literal: return node.value;
    case K::Var: {
      auto it = vars.find(node.name);
      if (it == vars.end()) throw InvalidInput("condition references unknown outcome '" + node.name + "'");
      return it->second != 0 ? 1 : 0;
    }
    case K::Not: return 1 - eval_node(*node.lhs, vars);
    case K::And: return eval_node(*node.lhs, vars) & eval_node(*node.rhs, vars);
    case K::Xor: return eval_node(*node.lhs, vars) ^ eval_node(*node.rhs, vars);
  }
  return 0;
}

void collect_vars(const Condition::Node& node, std::vector<std::string>& out) {
  if (node.kind == Condition::Node::Kind::Var) out.push_back(node.name);
  if (node.lhs) collect_vars(*node.lhs, out);
  if (node.rhs) collect_vars(*node.rhs, out);
}

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

int parse_wire(const Token& t) {
  if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ParseError("expected a wire index, got '" + t.text + "'", t.column);
  }
  if (t.text.size() > 3) throw ParseError("wire index too large", t.column);
  return std::stoi(t.text);
}

}  // namespace

Condition Condition::parse(std::string_view text, std::size_t column_offset) {
  Condition c;
  c.root_ = ExprParser(text, column_offset).parse();
  c.text_ = std::string(text);
  return c;
}

bool Condition::evaluate(const std::map<std::string, int>& vars) const {
  if (!root_) return true;
  return eval_node(*root_, vars) != 0;
}

std::vector<std::string> Condition::variables() const {
  std::vector<std::string> out;
  if (root_) collect_vars(*root_, out);
  return out;
}

int Circuit::wire_count() const {
  int n = 0;
  for (const auto& op : ops) {
    std::visit([&](const auto& o) {
      for (int w : o.wires) n = std::max(n, w + 1);
    }, op);
  }
  return n;
}

std::string Circuit::to_text() const {
  std::ostringstream os;
  auto wires = [&](const std::vector<int>& ws) {
    for (int w : ws) os << ' ' << w;
  };
  for (const auto& op : ops) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      os << "GATE " << g->name;
      wires(g->wires);
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      os << "MEAS " << m->basis;
      wires(m->wires);
      os << " -> " << m->var;
    } else {
      const auto& c = std::get<CorrectionOp>(op);
      os << "CORR " << c.name;
      wires(c.wires);
      os << " IF " << c.condition.text();
    }
    os << '\n';
  }
  return os.str();
}

Circuit parse_circuit(std::string_view text, int d) {
  Circuit circuit;
  circuit.d = d;
  std::set<std::string> defined;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      const std::string& kw = toks[0].text;
      if (kw == "GATE") {
        if (toks.size() < 3) throw ParseError("GATE needs a name and wires", toks[0].column);
        GateOp g{toks[1].text, {}};
        if (!dense::is_known_gate(g.name, d)) throw ParseError("unknown gate '" + g.name + "'", toks[1].column);
        for (std::size_t i = 2; i < toks.size(); ++i) g.wires.push_back(parse_wire(toks[i]));
        if (static_cast<int>(g.wires.size()) != dense::gate_arity(g.name)) {
          throw ParseError("gate " + g.name + " takes " + std::to_string(dense::gate_arity(g.name)) + " wire(s)",
                           toks[1].column);
        }
        circuit.ops.emplace_back(std::move(g));
      } else if (kw == "MEAS") {
        auto arrow = std::find_if(toks.begin(), toks.end(), [](const Token& t) { return t.text == "->"; });
        if (arrow == toks.end() || arrow + 2 != toks.end()) {
          throw ParseError("MEAS must end with '-> <var>'", toks.back().column);
        }
        if (toks.size() < 5) throw ParseError("MEAS needs a basis, wires and a variable", toks[0].column);
        MeasureOp m{toks[1].text, {}, (arrow + 1)->text, std::nullopt};
        for (auto it = toks.begin() + 2; it != arrow; ++it) m.wires.push_back(parse_wire(*it));
        if (m.basis.size() != m.wires.size()) {
          throw ParseError("basis has " + std::to_string(m.basis.size()) + " letters for " +
                               std::to_string(m.wires.size()) + " wire(s)",
                           toks[1].column);
        }
        for (std::size_t i = 0; i < m.basis.size(); ++i) {
          const char c = m.basis[i];
          if (c != 'X' && c != 'Y' && c != 'Z' && c != 'I') {
            throw ParseError(std::string("bad basis letter '") + c + "'", toks[1].column + i);
          }
          if (c == 'Y' && d != 2) throw ParseError("Y basis is only defined for qubits", toks[1].column + i);
        }
        if (!defined.insert(m.var).second) {
          throw ParseError("outcome variable '" + m.var + "' assigned twice", (arrow + 1)->column);
        }
        circuit.ops.emplace_back(std::move(m));
      } else if (kw == "CORR") {
        auto if_tok = std::find_if(toks.begin(), toks.end(), [](const Token& t) { return t.text == "IF"; });
        if (if_tok == toks.end() || if_tok + 1 == toks.end()) throw ParseError("CORR needs 'IF <expr>'", toks.back().column);
        if (toks.size() < 5) throw ParseError("CORR needs a name, wires and a condition", toks[0].column);
        CorrectionOp c{toks[1].text, {}, {}};
        if (!dense::is_known_gate(c.name, d)) throw ParseError("unknown gate '" + c.name + "'", toks[1].column);
        for (auto it = toks.begin() + 2; it != if_tok; ++it) c.wires.push_back(parse_wire(*it));
        if (static_cast<int>(c.wires.size()) != dense::gate_arity(c.name)) {
          throw ParseError("gate " + c.name + " takes " + std::to_string(dense::gate_arity(c.name)) + " wire(s)",
                           toks[1].column);
        }
        const std::size_t expr_col = (if_tok + 1)->column;
        c.condition = Condition::parse(line.substr(expr_col - 1), expr_col - 1);
        for (const auto& v : c.condition.variables()) {
          if (!defined.count(v)) throw ParseError("condition uses '" + v + "' before it is measured", expr_col);
        }
        circuit.ops.emplace_back(std::move(c));
      } else {
        throw ParseError("unknown instruction '" + kw + "'", toks[0].column);
      }
    } catch (const ParseError& e) {
      throw ParseError(where + e.message(), e.column());
    }
    if (end == text.size()) break;
  }
  return circuit;
}

dense::PauliLabel measured_label(const MeasureOp& op, int n, int d) {
  if (op.label) {
    if (op.label->n() != n || op.label->d != d) throw DimensionMismatch("measured label does not match register");
    return *op.label;
  }
  std::string letters(static_cast<std::size_t>(n), 'I');
  for (std::size_t i = 0; i < op.wires.size(); ++i) {
    const int w = op.wires[i];
    if (w < 0 || w >= n) throw InvalidInput("measured wire outside register");
    letters[static_cast<std::size_t>(w)] = op.basis[i];
  }
  return dense::PauliLabel::parse(letters, d);
}

std::string Branch::outcome_string() const {
  std::string s;
  for (const auto& [name, value] : outcomes) s += std::to_string(value);
  return s;
}

std::vector<Branch> run_circuit(const Circuit& circuit, const dense::DenseState& input, double prune) {
  const int n = input.n();
  const int d = input.d();
  if (circuit.d != d) throw DimensionMismatch("circuit and input differ in d");
  if (circuit.wire_count() > n) throw DimensionMismatch("circuit uses more wires than the input has");
  std::vector<Branch> frontier{{{}, 1.0, input}};
  for (const auto& op : circuit.ops) {
    std::vector<Branch> next;
    if (const auto* g = std::get_if<GateOp>(&op)) {
      const auto u = dense::gate(g->name, g->wires, n, d);
      for (auto& b : frontier) next.push_back({b.outcomes, b.probability, b.state.evolved(u)});
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      const auto label = measured_label(*m, n, d);
      for (auto& b : frontier) {
        for (const auto& o : dense::born(b.state, label)) {
          const double p = b.probability * o.probability;
          if (p < prune || !o.post) continue;
          auto outs = b.outcomes;
          outs.emplace_back(m->var, o.label);
          next.push_back({std::move(outs), p, *o.post});
        }
      }
    } else {
      const auto& c = std::get<CorrectionOp>(op);
      const auto u = dense::gate(c.name, c.wires, n, d);
      for (auto& b : frontier) {
        std::map<std::string, int> vars(b.outcomes.begin(), b.outcomes.end());
        if (c.condition.evaluate(vars)) {
          next.push_back({b.outcomes, b.probability, b.state.evolved(u)});
        } else {
          next.push_back(b);
        }
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace spekkens::circuit
