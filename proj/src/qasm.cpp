// Copyright 2026 The surfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenQASM 2.0 subset reader. Only cx structure survives: single-qubit gates,
// measurements, barriers and resets are dropped, and user gates are inlined
// only for the cx statements in their bodies.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "surfc/circuit.hpp"
#include "surfc/error.hpp"

namespace surfc {
namespace {

struct Statement {
  std::string text;
  std::size_t line = 0;
  std::vector<Statement> body;  // gate definitions only
  bool is_block = false;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Splits the source into ';'-terminated statements and '{...}' gate bodies,
// dropping // comments. Line numbers refer to the first character.
std::vector<Statement> split_statements(std::string_view src) {
  std::vector<Statement> top;
  std::vector<std::vector<Statement>*> stack{&top};
  std::string cur;
  std::size_t line = 1, start_line = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const char c = src[i];
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      if (i < src.size()) ++line;
      continue;
    }
    if (c == '\n') ++line;
    if (c == ';') {
      if (trim(cur).empty()) throw ParseError(line, "empty statement");
      stack.back()->push_back({trim(cur), start_line, {}, false});
      cur.clear();
      start_line = 0;
      continue;
    }
    if (c == '{') {
      stack.back()->push_back({trim(cur), start_line ? start_line : line, {}, true});
      stack.push_back(&stack.back()->back().body);
      cur.clear();
      start_line = 0;
      continue;
    }
    if (c == '}') {
      if (stack.size() == 1) throw ParseError(line, "unbalanced '}'");
      if (!trim(cur).empty()) throw ParseError(line, "missing ';' before '}'");
      stack.pop_back();
      cur.clear();
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c)) && start_line == 0) start_line = line;
    cur.push_back(c);
  }
  if (stack.size() != 1) throw ParseError(line, "unterminated gate body");
  if (!trim(cur).empty()) throw ParseError(start_line, "missing ';'");
  return top;
}

struct Operand {
  std::string reg;
  int index = -1;  // -1: whole register
};

struct Call {
  std::string name;
  std::vector<Operand> args;
};

Call parse_call(const Statement& st) {
  const std::string& s = st.text;
  std::size_t i = 0;
  while (i < s.size() && is_ident_char(s[i])) ++i;
  if (i == 0) throw ParseError(st.line, "expected gate name in '" + s + "'");
  Call call{s.substr(0, i), {}};
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i < s.size() && s[i] == '(') {
    int depth = 0;
    for (; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0) break;
    }
    if (i == s.size()) throw ParseError(st.line, "unbalanced parameter list");
    ++i;
  }
  std::string rest = s.substr(i);
  std::stringstream ss(rest);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    Operand op;
    const auto lb = tok.find('[');
    if (lb == std::string::npos) {
      op.reg = tok;
    } else {
      const auto rb = tok.find(']', lb);
      if (rb == std::string::npos || rb != tok.size() - 1) {
        throw ParseError(st.line, "malformed operand '" + tok + "'");
      }
      op.reg = trim(tok.substr(0, lb));
      const std::string idx = trim(tok.substr(lb + 1, rb - lb - 1));
      if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char ch) {
            return std::isdigit(static_cast<unsigned char>(ch));
          })) {
        throw ParseError(st.line, "non-integer index in '" + tok + "'");
      }
      op.index = std::stoi(idx);
    }
    if (op.reg.empty() || !std::all_of(op.reg.begin(), op.reg.end(), is_ident_char)) {
      throw ParseError(st.line, "malformed operand '" + tok + "'");
    }
    call.args.push_back(op);
  }
  return call;
}

struct GateDef {
  std::vector<std::string> params;
  std::vector<Statement> body;
};

class Reader {
 public:
  LogicalCircuit run(std::string_view src) {
    auto stmts = split_statements(src);
    // First pass: registers so the circuit can be sized up front.
    for (const auto& st : stmts) {
      if (st.is_block) continue;
      const std::string kw = keyword(st.text);
      if (kw == "qreg") declare(st);
    }
    circuit_ = LogicalCircuit(total_);
    for (const auto& st : stmts) top_level(st);
    return std::move(circuit_);
  }

 private:
  static std::string keyword(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && is_ident_char(s[i])) ++i;
    return s.substr(0, i);
  }

  void declare(const Statement& st) {
    const std::string rest = trim(st.text.substr(4));
    const auto lb = rest.find('[');
    const auto rb = rest.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
      throw ParseError(st.line, "malformed qreg declaration");
    }
    const std::string name = trim(rest.substr(0, lb));
    const std::string size = trim(rest.substr(lb + 1, rb - lb - 1));
    if (name.empty() || size.empty() ||
        !std::all_of(size.begin(), size.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError(st.line, "malformed qreg declaration");
    }
    if (regs_.count(name)) throw ParseError(st.line, "duplicate register '" + name + "'");
    const int n = std::stoi(size);
    regs_[name] = {total_, n};
    total_ += n;
  }

  void top_level(const Statement& st) {
    if (st.is_block) {
      define(st);
      return;
    }
    const std::string kw = keyword(st.text);
    static const char* ignored[] = {"OPENQASM", "include", "qreg", "creg", "barrier",
                                    "measure",  "reset",   "opaque", "if"};
    for (const char* k : ignored) {
      if (kw == k) return;
    }
    apply(parse_call(st), st.line, {});
  }

  void define(const Statement& st) {
    std::string head = st.text;
    if (keyword(head) != "gate") throw ParseError(st.line, "unexpected block");
    head = trim(head.substr(4));
    std::size_t i = 0;
    while (i < head.size() && is_ident_char(head[i])) ++i;
    const std::string name = head.substr(0, i);
    if (name.empty()) throw ParseError(st.line, "gate definition without a name");
    std::string rest = head.substr(i);
    const auto rp = rest.find(')');
    if (trim(rest).rfind("(", 0) == 0) {
      if (rp == std::string::npos) throw ParseError(st.line, "unbalanced parameter list");
      rest = rest.substr(rp + 1);
    }
    GateDef def;
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), is_ident_char)) {
        throw ParseError(st.line, "malformed gate argument list");
      }
      def.params.push_back(tok);
    }
    def.body = st.body;
    defs_[name] = std::move(def);
  }

  using Binding = std::unordered_map<std::string, int>;

  int resolve_single(const Operand& op, const Binding& bind, std::size_t line) const {
    if (!bind.empty()) {
      auto it = bind.find(op.reg);
      if (it == bind.end() || op.index != -1) {
        throw ParseError(line, "unknown gate argument '" + op.reg + "'");
      }
      return it->second;
    }
    auto it = regs_.find(op.reg);
    if (it == regs_.end()) throw ParseError(line, "unknown register '" + op.reg + "'");
    if (op.index >= it->second.second) {
      throw ValidationError("line " + std::to_string(line) + ": qubit index " +
                            std::to_string(op.index) + " out of range for '" + op.reg + "'");
    }
    return it->second.first + op.index;
  }

  // Expands whole-register operands into per-index calls.
  std::vector<std::vector<int>> expand(const Call& call, const Binding& bind, std::size_t line) const {
    int width = 1;
    for (const auto& a : call.args) {
      if (bind.empty() && a.index < 0) {
        auto it = regs_.find(a.reg);
        if (it == regs_.end()) throw ParseError(line, "unknown register '" + a.reg + "'");
        if (width != 1 && width != it->second.second) {
          throw ParseError(line, "register size mismatch in broadcast");
        }
        width = it->second.second;
      }
    }
    std::vector<std::vector<int>> out(static_cast<std::size_t>(width));
    for (int k = 0; k < width; ++k) {
      for (const auto& a : call.args) {
        if (bind.empty() && a.index < 0) {
          out[k].push_back(regs_.at(a.reg).first + k);
        } else {
          out[k].push_back(resolve_single(a, bind, line));
        }
      }
    }
    return out;
  }

  void apply(const Call& call, std::size_t line, const Binding& bind, int depth = 0) {
    if (depth > 64) throw ParseError(line, "gate definitions nest too deeply");
    if (call.args.empty()) throw ParseError(line, "gate '" + call.name + "' has no operands");
    const bool is_cx = call.name == "cx" || call.name == "CX";
    auto def = defs_.find(call.name);
    if (!is_cx && def == defs_.end()) {
      // Unknown or single-qubit gate: still check operands are well formed.
      expand(call, bind, line);
      return;
    }
    for (const auto& qs : expand(call, bind, line)) {
      if (is_cx) {
        if (qs.size() != 2) throw ParseError(line, "cx takes two operands");
        try {
          circuit_.add_cnot(qs[0], qs[1]);
        } catch (const ValidationError& e) {
          throw ValidationError("line " + std::to_string(line) + ": " + e.what());
        }
        continue;
      }
      if (qs.size() != def->second.params.size()) {
        throw ParseError(line, "wrong operand count for '" + call.name + "'");
      }
      Binding inner;
      for (std::size_t k = 0; k < qs.size(); ++k) inner[def->second.params[k]] = qs[k];
      for (const auto& st : def->second.body) {
        const std::string kw = keyword(st.text);
        if (kw == "barrier") continue;
        apply(parse_call(st), st.line, inner, depth + 1);
      }
    }
  }

  std::unordered_map<std::string, std::pair<int, int>> regs_;
  std::unordered_map<std::string, GateDef> defs_;
  int total_ = 0;
  LogicalCircuit circuit_;
};

}  // namespace

LogicalCircuit parse_qasm(std::string_view text) { return Reader().run(text); }

LogicalCircuit parse_qasm(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  return parse_qasm(std::string_view(text));
}

LogicalCircuit load_qasm_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  return parse_qasm(f);
}

}  // namespace surfc
