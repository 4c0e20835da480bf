#include "banopt/netfile.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "banopt/errors.hpp"

namespace banopt {

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '*') {
      return false;
    }
  }
  return true;
}

std::string strip(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ": " + message,
                   static_cast<std::size_t>(line));
}

// Splits off the first whitespace-delimited word.
std::pair<std::string, std::string> word_rest(const std::string& s) {
  std::size_t split = s.find_first_of(" \t");
  if (split == std::string::npos) return {s, ""};
  return {s.substr(0, split), strip(s.substr(split + 1))};
}

}  // namespace

NetworkFile parse_network_file(const std::string& text) {
  struct NodeLine {
    int line;
    std::string id;
    std::string expr;
  };
  struct WireLine {
    int line;
    std::string input;
    std::string node;
  };

  NetworkFile file;
  std::vector<NodeLine> node_lines;
  std::vector<WireLine> wire_lines;
  bool named = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = strip(raw);
    if (line.empty()) continue;

    auto [directive, rest] = word_rest(line);
    if (directive == "network") {
      if (named) fail(line_no, "duplicate network line");
      if (!valid_ident(rest)) fail(line_no, "bad network name '" + rest + "'");
      file.network.name = rest;
      named = true;
    } else if (directive == "input") {
      if (!named) fail(line_no, "expected 'network NAME' first");
      if (!valid_ident(rest)) fail(line_no, "bad input label '" + rest + "'");
      file.network.inputs.push_back(rest);
    } else if (directive == "node") {
      if (!named) fail(line_no, "expected 'network NAME' first");
      const std::size_t eq = rest.find('=');
      if (eq == std::string::npos) fail(line_no, "expected 'node IDENT = EXPR'");
      const std::string id = strip(rest.substr(0, eq));
      const std::string expr = strip(rest.substr(eq + 1));
      if (!valid_ident(id)) fail(line_no, "bad node id '" + id + "'");
      if (expr.empty()) fail(line_no, "missing expression for node '" + id + "'");
      node_lines.push_back({line_no, id, expr});
    } else if (directive == "wire") {
      if (!named) fail(line_no, "expected 'network NAME' first");
      const std::size_t arrow = rest.find("->");
      if (arrow == std::string::npos) fail(line_no, "expected 'wire INPUT -> NODE'");
      const std::string input = strip(rest.substr(0, arrow));
      const std::string node = strip(rest.substr(arrow + 2));
      if (!valid_ident(input) || !valid_ident(node)) {
        fail(line_no, "expected 'wire INPUT -> NODE'");
      }
      wire_lines.push_back({line_no, input, node});
    } else {
      fail(line_no, "unrecognized directive '" + directive + "'");
    }
  }
  if (!named) fail(line_no, "missing 'network NAME' line");
  if (node_lines.empty()) fail(line_no, "a network needs at least one node");

  std::set<std::string> node_ids;
  for (const auto& n : node_lines) {
    if (!node_ids.insert(n.id).second) fail(n.line, "duplicate node '" + n.id + "'");
    file.network.nodes.push_back(n.id);
  }
  std::set<std::string> input_labels;
  for (const auto& l : file.network.inputs) {
    if (node_ids.count(l) || !input_labels.insert(l).second) {
      fail(1, "input '" + l + "' collides with another declaration");
    }
  }

  for (const auto& n : node_lines) {
    try {
      file.network.locals.push_back(parse_expr(n.expr, node_ids, input_labels));
    } catch (const ParseError& e) {
      fail(n.line, std::string(e.what()) + " (column " +
                       std::to_string(e.position + 1) + " of the expression)");
    }
  }

  for (const auto& w : wire_lines) {
    if (!input_labels.count(w.input)) {
      fail(w.line, "wire references undeclared input '" + w.input + "'");
    }
    if (!node_ids.count(w.node)) {
      fail(w.line, "wire targets undeclared node '" + w.node + "'");
    }
    if (file.wiring.count(w.input)) {
      fail(w.line, "input '" + w.input + "' is wired twice");
    }
    file.wiring[w.input] = w.node;
  }

  file.network.validate();
  return file;
}

NetworkFile load_network_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BanError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network_file(buffer.str());
}

std::string print_network_file(const NetworkFile& file) {
  std::string out = "network " + file.network.name + "\n";
  for (const auto& label : file.network.inputs) out += "input " + label + "\n";
  for (std::size_t i = 0; i < file.network.nodes.size(); ++i) {
    out += "node " + file.network.nodes[i] + " = " +
           file.network.locals[i].to_string() + "\n";
  }
  for (const auto& label : file.network.inputs) {
    const auto it = file.wiring.find(label);
    if (it != file.wiring.end()) {
      out += "wire " + label + " -> " + it->second + "\n";
    }
  }
  return out;
}

NetworkDef closed_network(const NetworkFile& file) {
  if (file.network.is_closed()) return file.network;
  NetworkDef closed = recursive_wiring(file.network, file.wiring);
  if (!closed.is_closed()) {
    std::string open;
    for (const auto& label : closed.inputs) open += " " + label;
    throw OpenInputsError("inputs left open:" + open);
  }
  return closed;
}

}  // namespace banopt
