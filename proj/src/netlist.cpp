#include "scpdp/netlist.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <sstream>

namespace scpdp {

namespace {

constexpr int32_t kNoDriver = -1;
constexpr int32_t kInputDriver = -2;
constexpr int32_t kConstDriver = -3;

const std::pair<std::string_view, GateOp> kOpNames[] = {
    {"and", GateOp::And},   {"or", GateOp::Or},     {"xor", GateOp::Xor},
    {"nand", GateOp::Nand}, {"nor", GateOp::Nor},   {"xnor", GateOp::Xnor},
    {"not", GateOp::Not},   {"buf", GateOp::Buf},
};

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  if (!alpha(s[0])) return false;
  for (char c : s.substr(1)) {
    if (!alnum(c)) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(GateOp op) {
  for (const auto& [name, o] : kOpNames) {
    if (o == op) return name;
  }
  return "?";
}

int arity(GateOp op) {
  return (op == GateOp::Not || op == GateOp::Buf) ? 1 : 2;
}

ParseError::ParseError(int line_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
      line(line_) {}

SingleRailNetlist parse_netlist(std::string_view text) {
  SingleRailNetlist n;
  std::vector<int> first_use_line;
  std::vector<std::pair<uint32_t, int>> declared_outputs;

  auto intern = [&](const std::string& name, int line) -> uint32_t {
    auto it = n.ids_.find(name);
    if (it != n.ids_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(n.names_.size());
    n.ids_.emplace(name, id);
    n.names_.push_back(name);
    n.driver_.push_back(kNoDriver);
    first_use_line.push_back(line);
    if (name == "const0") {
      n.const0_ = id;
      n.driver_[id] = kConstDriver;
    } else if (name == "const1") {
      n.const1_ = id;
      n.driver_[id] = kConstDriver;
    }
    return id;
  };

  auto set_driver = [&](uint32_t id, int32_t driver, int line) {
    if (n.driver_[id] == kConstDriver) {
      throw ParseError(line, "cannot drive reserved constant signal '" +
                                 n.names_[id] + "'");
    }
    if (n.driver_[id] != kNoDriver) {
      throw ParseError(line,
                       "duplicate driver for signal '" + n.names_[id] + "'");
    }
    n.driver_[id] = driver;
  };

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string> tok;
    {
      std::string cur;
      for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') {
          if (!cur.empty()) tok.push_back(std::move(cur)), cur.clear();
        } else {
          cur += c;
        }
      }
      if (!cur.empty()) tok.push_back(std::move(cur));
    }
    if (tok.empty()) continue;

    const std::string& head = tok[0];
    if (head == "input" || head == "output") {
      if (tok.size() < 2) {
        throw ParseError(line_no, "'" + head + "' needs at least one name");
      }
      for (size_t i = 1; i < tok.size(); ++i) {
        if (!valid_name(tok[i])) {
          throw ParseError(line_no, "invalid signal name '" + tok[i] + "'");
        }
        uint32_t id = intern(tok[i], line_no);
        if (head == "input") {
          set_driver(id, kInputDriver, line_no);
          n.inputs_.push_back(id);
        } else {
          for (const auto& [prev, _] : declared_outputs) {
            if (prev == id) {
              throw ParseError(line_no,
                               "output '" + tok[i] + "' declared twice");
            }
          }
          declared_outputs.emplace_back(id, line_no);
        }
      }
    } else if (head == "gate") {
      if (tok.size() < 3) {
        throw ParseError(line_no, "'gate' needs a kind and an output");
      }
      GateOp op;
      bool found = false;
      for (const auto& [name, o] : kOpNames) {
        if (name == tok[1]) {
          op = o;
          found = true;
          break;
        }
      }
      if (!found) throw ParseError(line_no, "unknown gate kind '" + tok[1] + "'");
      int want = arity(op);
      if (static_cast<int>(tok.size()) != 3 + want) {
        throw ParseError(line_no, "gate '" + tok[1] + "' takes " +
                                      std::to_string(want) + " input(s), got " +
                                      std::to_string(tok.size() - 3));
      }
      for (size_t i = 2; i < tok.size(); ++i) {
        if (!valid_name(tok[i])) {
          throw ParseError(line_no, "invalid signal name '" + tok[i] + "'");
        }
      }
      uint32_t out = intern(tok[2], line_no);
      uint32_t in0 = intern(tok[3], line_no);
      uint32_t in1 = want == 2 ? intern(tok[4], line_no) : in0;
      set_driver(out, static_cast<int32_t>(n.gates_.size()), line_no);
      n.gates_.push_back({op, out, in0, in1, line_no});
    } else {
      throw ParseError(line_no, "unknown directive '" + head + "'");
    }
  }

  for (const auto& [id, line] : declared_outputs) n.outputs_.push_back(id);

  // Every referenced signal needs a driver.
  for (uint32_t id = 0; id < n.names_.size(); ++id) {
    if (n.driver_[id] == kNoDriver) {
      throw ParseError(first_use_line[id],
                       "signal '" + n.names_[id] + "' has no driver");
    }
  }

  n.validate_and_sort();
  return n;
}

void SingleRailNetlist::validate_and_sort() {
  // Kahn's algorithm with a min-index ready queue gives one canonical order.
  size_t g = gates_.size();
  std::vector<int> pending(g, 0);
  std::vector<std::vector<uint32_t>> consumers(names_.size());
  for (size_t i = 0; i < g; ++i) {
    const NetGate& gate = gates_[i];
    uint32_t ins[2] = {gate.in0, gate.in1};
    int n_in = arity(gate.op);
    for (int k = 0; k < n_in; ++k) {
      if (driver_[ins[k]] >= 0) {
        ++pending[i];
        consumers[ins[k]].push_back(static_cast<uint32_t>(i));
      }
    }
    if (n_in == 2 && gate.in0 == gate.in1 && driver_[gate.in0] >= 0) {
      // counted twice above; a gate reading the same driven signal twice
      // still waits on one producer
      --pending[i];
      consumers[gate.in0].pop_back();
    }
  }
  std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> ready;
  for (size_t i = 0; i < g; ++i) {
    if (pending[i] == 0) ready.push(static_cast<uint32_t>(i));
  }
  topo_.clear();
  while (!ready.empty()) {
    uint32_t i = ready.top();
    ready.pop();
    topo_.push_back(i);
    for (uint32_t c : consumers[gates_[i].out]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (topo_.size() != g) {
    for (size_t i = 0; i < g; ++i) {
      if (pending[i] > 0) {
        throw ParseError(gates_[i].line,
                         "combinational cycle through signal '" +
                             names_[gates_[i].out] + "'");
      }
    }
  }
}

std::vector<bool> SingleRailNetlist::simulate(
    const std::vector<bool>& input_bits) const {
  if (input_bits.size() != inputs_.size()) {
    throw std::invalid_argument("simulate: expected " +
                                std::to_string(inputs_.size()) + " input bits");
  }
  std::vector<uint8_t> val(names_.size(), 0);
  for (size_t i = 0; i < inputs_.size(); ++i) val[inputs_[i]] = input_bits[i];
  if (const1_ != UINT32_MAX) val[const1_] = 1;
  for (uint32_t gi : topo_) {
    const NetGate& gate = gates_[gi];
    bool a = val[gate.in0];
    bool b = val[gate.in1];
    bool y;
    switch (gate.op) {
      case GateOp::And: y = a && b; break;
      case GateOp::Or: y = a || b; break;
      case GateOp::Xor: y = a != b; break;
      case GateOp::Nand: y = !(a && b); break;
      case GateOp::Nor: y = !(a || b); break;
      case GateOp::Xnor: y = a == b; break;
      case GateOp::Not: y = !a; break;
      default: y = a; break;
    }
    val[gate.out] = y;
  }
  std::vector<bool> out(outputs_.size());
  for (size_t i = 0; i < outputs_.size(); ++i) out[i] = val[outputs_[i]];
  return out;
}

bool SingleRailNetlist::operator==(const SingleRailNetlist& other) const {
  auto names_of = [](const SingleRailNetlist& n, const std::vector<uint32_t>& ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (uint32_t id : ids) out.push_back(n.names_[id]);
    return out;
  };
  if (names_of(*this, inputs_) != names_of(other, other.inputs_)) return false;
  if (names_of(*this, outputs_) != names_of(other, other.outputs_)) return false;
  if (topo_.size() != other.topo_.size()) return false;
  for (size_t i = 0; i < topo_.size(); ++i) {
    const NetGate& a = gates_[topo_[i]];
    const NetGate& b = other.gates_[other.topo_[i]];
    if (a.op != b.op || names_[a.out] != other.names_[b.out] ||
        names_[a.in0] != other.names_[b.in0] ||
        names_[a.in1] != other.names_[b.in1]) {
      return false;
    }
  }
  return true;
}

std::string serialize(const SingleRailNetlist& n) {
  std::ostringstream os;
  if (!n.inputs().empty()) {
    os << "input";
    for (uint32_t id : n.inputs()) os << ' ' << n.name(id);
    os << '\n';
  }
  if (!n.outputs().empty()) {
    os << "output";
    for (uint32_t id : n.outputs()) os << ' ' << n.name(id);
    os << '\n';
  }
  for (uint32_t gi : n.topo_order()) {
    const NetGate& g = n.gates()[gi];
    os << "gate " << to_string(g.op) << ' ' << n.name(g.out) << ' '
       << n.name(g.in0);
    if (arity(g.op) == 2) os << ' ' << n.name(g.in1);
    os << '\n';
  }
  return os.str();
}

std::string NetlistBuilder::unique(const std::string& base) {
  auto [it, fresh_name] = used_.emplace(base, 0);
  if (fresh_name) return base;
  std::string name;
  do {
    name = base + "_" + std::to_string(++it->second);
  } while (used_.count(name));
  used_.emplace(name, 0);
  return name;
}

std::string NetlistBuilder::add_input(const std::string& name) {
  std::string n = unique(name);
  input_lines_.push_back(n);
  return n;
}

void NetlistBuilder::mark_output(const std::string& name) {
  output_names_.push_back(name);
}

std::string NetlistBuilder::add_gate(GateOp op, const std::string& out,
                                     const std::string& a,
                                     const std::string& b) {
  std::string o = unique(out);
  std::string line = "gate " + std::string(to_string(op)) + " " + o + " " + a;
  if (arity(op) == 2) line += " " + b;
  gate_lines_.push_back(line);
  return o;
}

std::string NetlistBuilder::fresh(const std::string& prefix) {
  return unique(prefix);
}

std::string NetlistBuilder::xor_tree(const std::string& prefix,
                                     const std::vector<std::string>& terms) {
  if (terms.empty()) throw std::invalid_argument("xor_tree: no terms");
  std::string acc = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) {
    acc = add_gate(GateOp::Xor, prefix, acc, terms[i]);
  }
  return acc;
}

std::string NetlistBuilder::and_tree(const std::string& prefix,
                                     const std::vector<std::string>& terms) {
  if (terms.empty()) throw std::invalid_argument("and_tree: no terms");
  std::string acc = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) {
    acc = add_gate(GateOp::And, prefix, acc, terms[i]);
  }
  return acc;
}

SingleRailNetlist NetlistBuilder::build() {
  std::ostringstream os;
  if (!input_lines_.empty()) {
    os << "input";
    for (const auto& n : input_lines_) os << ' ' << n;
    os << '\n';
  }
  if (!output_names_.empty()) {
    os << "output";
    for (const auto& n : output_names_) os << ' ' << n;
    os << '\n';
  }
  for (const auto& l : gate_lines_) os << l << '\n';
  return parse_netlist(os.str());
}

std::string netlist_hash(const SingleRailNetlist& n) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(n)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace scpdp
