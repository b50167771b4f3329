#include "unarydt/netlist.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace unarydt {

namespace {

std::string input_net(int feature) { return "I" + std::to_string(feature); }

std::string cmp_id(int feature, int level) {
  return "cmp_f" + std::to_string(feature) + "_t" + std::to_string(level);
}

std::string inv_id(int feature, int level) {
  return "inv_f" + std::to_string(feature) + "_t" + std::to_string(level);
}

std::string and_id(int label, int term) {
  return "and_l" + std::to_string(label) + "_t" + std::to_string(term);
}

std::string or_id(int label) { return "or_l" + std::to_string(label); }

std::string output_id(int label) { return "label" + std::to_string(label); }

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) {
    out.insert(out.begin(), 'm');
  }
  return out;
}

}  // namespace

Netlist emit_netlist(const std::vector<AdcSpec>& adcs, const LabelLogic& logic,
                     const NetlistMeta& meta) {
  Netlist n;
  n.dataset = meta.dataset;
  n.tree_hash = meta.tree_hash;
  n.bits = meta.bits;
  n.num_features = meta.num_features;
  n.num_labels = logic.num_labels;

  std::set<std::pair<int, int>> available;
  for (const auto& spec : adcs) {
    for (int k : spec.retained) {
      available.insert({spec.feature, k});
    }
  }
  std::set<std::pair<int, int>> negated;
  for (const auto& label_terms : logic.terms) {
    for (const auto& term : label_terms) {
      for (const Literal& lit : term) {
        if (available.count({lit.feature, lit.digit}) == 0) {
          throw std::invalid_argument("netlist: logic reads digit " +
                                      std::to_string(lit.digit) + " of feature " +
                                      std::to_string(lit.feature) +
                                      " that no ADC produces");
        }
        if (!lit.positive) {
          negated.insert({lit.feature, lit.digit});
        }
      }
    }
  }

  for (const auto& spec : adcs) {
    n.cells.push_back({input_net(spec.feature), CellKind::input, {}, spec.feature, -1});
  }
  for (const auto& spec : adcs) {
    for (int k : spec.retained) {
      n.cells.push_back({cmp_id(spec.feature, k),
                         CellKind::comparator,
                         {input_net(spec.feature)},
                         spec.feature,
                         k});
      ++n.comparator_count;
    }
  }
  for (const auto& [feature, level] : negated) {
    n.cells.push_back(
        {inv_id(feature, level), CellKind::not_gate, {cmp_id(feature, level)}, -1, -1});
  }

  for (int label = 0; label < logic.num_labels; ++label) {
    const auto& terms = logic.terms[static_cast<std::size_t>(label)];
    std::vector<std::string> term_nets;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const ProductTerm& term = terms[t];
      std::vector<std::string> literal_nets;
      for (const Literal& lit : term) {
        literal_nets.push_back(lit.positive ? cmp_id(lit.feature, lit.digit)
                                            : inv_id(lit.feature, lit.digit));
      }
      if (literal_nets.empty()) {
        term_nets.push_back("const1");
      } else if (literal_nets.size() == 1) {
        term_nets.push_back(literal_nets.front());
      } else {
        n.cells.push_back({and_id(label, static_cast<int>(t)), CellKind::and_gate,
                           literal_nets, -1, -1});
        term_nets.push_back(and_id(label, static_cast<int>(t)));
      }
    }
    std::string driver;
    if (term_nets.empty()) {
      driver = "const0";
    } else if (term_nets.size() == 1) {
      driver = term_nets.front();
    } else {
      n.cells.push_back({or_id(label), CellKind::or_gate, term_nets, -1, -1});
      driver = or_id(label);
    }
    n.cells.push_back({output_id(label), CellKind::output, {driver}, -1, -1});
  }
  return n;
}

Netlist emit_netlist(const DecisionTree& tree, const std::vector<AdcSpec>& adcs,
                     const LabelLogic& logic) {
  return emit_netlist(adcs, logic,
                      {tree.dataset_name, tree_fingerprint(tree), tree.bits,
                       tree.num_features});
}

namespace {

struct Evaluator {
  const Netlist& netlist;
  std::span<const int> sample;
  std::map<std::string, const Cell*> driver;
  std::map<std::string, int> value;
  std::set<std::string> in_progress;

  int net_value(const std::string& net) {
    if (net == "const0") {
      return 0;
    }
    if (net == "const1") {
      return 1;
    }
    auto cached = value.find(net);
    if (cached != value.end()) {
      return cached->second;
    }
    auto it = driver.find(net);
    if (it == driver.end()) {
      throw std::logic_error("netlist: net '" + net + "' has no driver");
    }
    if (!in_progress.insert(net).second) {
      throw std::logic_error("netlist: combinational cycle through '" + net + "'");
    }
    const Cell& cell = *it->second;
    int out = 0;
    switch (cell.kind) {
      case CellKind::input:
        out = sample[static_cast<std::size_t>(cell.feature)];
        break;
      case CellKind::comparator:
        out = net_value(cell.inputs.front()) >= cell.level ? 1 : 0;
        break;
      case CellKind::not_gate:
        out = net_value(cell.inputs.front()) ? 0 : 1;
        break;
      case CellKind::and_gate: {
        out = 1;
        for (const auto& in : cell.inputs) {
          out &= net_value(in) ? 1 : 0;
        }
        break;
      }
      case CellKind::or_gate: {
        out = 0;
        for (const auto& in : cell.inputs) {
          out |= net_value(in) ? 1 : 0;
        }
        break;
      }
      case CellKind::output:
        out = net_value(cell.inputs.front()) ? 1 : 0;
        break;
    }
    in_progress.erase(net);
    value[net] = out;
    return out;
  }
};

}  // namespace

int simulate_netlist(const Netlist& netlist, std::span<const int> sample) {
  if (static_cast<int>(sample.size()) != netlist.num_features) {
    throw std::invalid_argument("sample length does not match netlist feature count");
  }
  const int max_level = (1 << netlist.bits) - 1;
  for (int v : sample) {
    if (v < 0 || v > max_level) {
      throw std::invalid_argument("sample value outside the quantized grid");
    }
  }

  Evaluator eval{netlist, sample, {}, {}, {}};
  for (const Cell& cell : netlist.cells) {
    if (cell.kind != CellKind::input && cell.inputs.empty()) {
      throw std::logic_error("netlist: cell '" + cell.id + "' has no inputs");
    }
    if (!eval.driver.emplace(cell.id, &cell).second) {
      throw std::logic_error("netlist: net '" + cell.id + "' driven more than once");
    }
  }

  int asserted = -1;
  for (const Cell& cell : netlist.cells) {
    if (cell.kind != CellKind::output) {
      continue;
    }
    if (eval.net_value(cell.id) == 1) {
      if (asserted >= 0) {
        throw std::logic_error("netlist asserted more than one label output");
      }
      asserted = static_cast<int>(std::stol(cell.id.substr(5)));
    }
  }
  if (asserted < 0) {
    throw std::logic_error("netlist asserted no label output");
  }
  return asserted;
}

std::string to_structural_hdl(const Netlist& netlist) {
  std::ostringstream out;
  out << "// structural netlist (generated)\n";
  out << "// dataset: " << netlist.dataset << "\n";
  out << "// tree: " << netlist.tree_hash << "\n";
  out << "// bits: " << netlist.bits << "\n";
  out << "// features: " << netlist.num_features << "\n";
  out << "// labels: " << netlist.num_labels << "\n";
  out << "// comparators: " << netlist.comparator_count << "\n";

  std::vector<const Cell*> inputs, outputs, gates;
  for (const Cell& cell : netlist.cells) {
    if (cell.kind == CellKind::input) {
      inputs.push_back(&cell);
    } else if (cell.kind == CellKind::output) {
      outputs.push_back(&cell);
    } else {
      gates.push_back(&cell);
    }
  }

  out << "module " << sanitize(netlist.dataset) << "_classifier (\n";
  bool first = true;
  for (const Cell* cell : inputs) {
    out << (first ? "" : ",\n") << "  input [" << netlist.bits - 1 << ":0] "
        << cell->id;
    first = false;
  }
  for (const Cell* cell : outputs) {
    out << (first ? "" : ",\n") << "  output " << cell->id;
    first = false;
  }
  out << "\n);\n\n";

  for (const Cell* cell : gates) {
    out << "  wire n_" << cell->id << ";\n";
  }
  if (!gates.empty()) {
    out << "\n";
  }

  auto net_ref = [&](const std::string& net) -> std::string {
    if (net == "const0") {
      return "1'b0";
    }
    if (net == "const1") {
      return "1'b1";
    }
    if (net.rfind("I", 0) == 0 && net.size() > 1 &&
        std::isdigit(static_cast<unsigned char>(net[1]))) {
      return net;  // input port
    }
    return "n_" + net;
  };

  for (const Cell* cell : gates) {
    switch (cell->kind) {
      case CellKind::comparator:
        out << "  bespoke_cmp #(.FEATURE(" << cell->feature << "), .LEVEL("
            << cell->level << ")) " << cell->id << " (.in(" << cell->inputs.front()
            << "), .out(n_" << cell->id << "));\n";
        break;
      case CellKind::not_gate:
        out << "  not " << cell->id << " (n_" << cell->id << ", "
            << net_ref(cell->inputs.front()) << ");\n";
        break;
      case CellKind::and_gate:
      case CellKind::or_gate: {
        out << "  " << (cell->kind == CellKind::and_gate ? "and" : "or") << " "
            << cell->id << " (n_" << cell->id;
        for (const auto& in : cell->inputs) {
          out << ", " << net_ref(in);
        }
        out << ");\n";
        break;
      }
      default:
        break;
    }
  }

  if (!outputs.empty()) {
    out << "\n";
  }
  for (const Cell* cell : outputs) {
    out << "  assign " << cell->id << " = " << net_ref(cell->inputs.front()) << ";\n";
  }
  out << "endmodule\n";
  return out.str();
}

void export_structural_hdl(const Netlist& netlist, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << to_structural_hdl(netlist);
  if (!out) {
    throw std::runtime_error("failed writing netlist HDL to " + path);
  }
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// "n_foo" -> "foo", port names and constants pass through
std::string unref(const std::string& token) {
  if (token == "1'b0") {
    return "const0";
  }
  if (token == "1'b1") {
    return "const1";
  }
  if (token.rfind("n_", 0) == 0) {
    return token.substr(2);
  }
  return token;
}

std::vector<std::string> split_args(const std::string& body) {
  std::vector<std::string> args;
  std::string current;
  for (char c : body) {
    if (c == ',') {
      args.push_back(strip(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!strip(current).empty()) {
    args.push_back(strip(current));
  }
  return args;
}

int metadata_int(const std::string& line) {
  std::size_t colon = line.find(':');
  return std::stoi(strip(line.substr(colon + 1)));
}

}  // namespace

Netlist parse_structural_hdl(const std::string& text) {
  Netlist n;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = strip(line);
    if (t.rfind("// dataset:", 0) == 0) {
      n.dataset = strip(t.substr(11));
    } else if (t.rfind("// tree:", 0) == 0) {
      n.tree_hash = strip(t.substr(8));
    } else if (t.rfind("// bits:", 0) == 0) {
      n.bits = metadata_int(t);
    } else if (t.rfind("// features:", 0) == 0) {
      n.num_features = metadata_int(t);
    } else if (t.rfind("// labels:", 0) == 0) {
      n.num_labels = metadata_int(t);
    } else if (t.rfind("input ", 0) == 0) {
      std::size_t name_at = t.find_last_of(" ");
      std::string name = strip(t.substr(name_at + 1));
      if (!name.empty() && name.back() == ',') {
        name.pop_back();
      }
      n.cells.push_back(
          {name, CellKind::input, {}, static_cast<int>(std::stol(name.substr(1))), -1});
    } else if (t.rfind("output ", 0) == 0) {
      std::string name = strip(t.substr(7));
      if (!name.empty() && name.back() == ',') {
        name.pop_back();
      }
      n.cells.push_back({name, CellKind::output, {}, -1, -1});
    } else if (t.rfind("bespoke_cmp", 0) == 0) {
      std::size_t f_at = t.find(".FEATURE(");
      std::size_t l_at = t.find(".LEVEL(");
      int feature = std::stoi(t.substr(f_at + 9));
      int level = std::stoi(t.substr(l_at + 7));
      std::size_t close_params = t.find(')', l_at);
      std::size_t close_params2 = t.find(')', close_params + 1);
      std::string rest = t.substr(close_params2 + 1);
      std::size_t paren = rest.find('(');
      std::string id = strip(rest.substr(0, paren));
      std::size_t in_at = rest.find(".in(");
      std::string input = rest.substr(in_at + 4, rest.find(')', in_at) - in_at - 4);
      n.cells.push_back({id, CellKind::comparator, {strip(input)}, feature, level});
      ++n.comparator_count;
    } else if (t.rfind("not ", 0) == 0 || t.rfind("and ", 0) == 0 ||
               t.rfind("or ", 0) == 0) {
      std::size_t space = t.find(' ');
      std::string kind_token = t.substr(0, space);
      std::size_t open = t.find('(', space);
      std::string id = strip(t.substr(space + 1, open - space - 1));
      std::string body = t.substr(open + 1, t.rfind(')') - open - 1);
      auto args = split_args(body);
      if (args.size() < 2) {
        throw std::runtime_error("malformed gate instance: " + t);
      }
      std::vector<std::string> cell_inputs;
      for (std::size_t i = 1; i < args.size(); ++i) {
        cell_inputs.push_back(unref(args[i]));
      }
      CellKind kind = kind_token == "not"   ? CellKind::not_gate
                      : kind_token == "and" ? CellKind::and_gate
                                            : CellKind::or_gate;
      n.cells.push_back({id, kind, cell_inputs, -1, -1});
    } else if (t.rfind("assign ", 0) == 0) {
      std::size_t eq = t.find('=');
      std::string name = strip(t.substr(7, eq - 7));
      std::string rhs = strip(t.substr(eq + 1));
      if (!rhs.empty() && rhs.back() == ';') {
        rhs.pop_back();
      }
      for (auto& cell : n.cells) {
        if (cell.kind == CellKind::output && cell.id == name) {
          cell.inputs = {unref(strip(rhs))};
        }
      }
    }
  }
  return n;
}

bool isomorphic(const Netlist& a, const Netlist& b) {
  auto canonical = [](const Netlist& n) {
    std::vector<Cell> cells = n.cells;
    std::sort(cells.begin(), cells.end(),
              [](const Cell& x, const Cell& y) { return x.id < y.id; });
    return cells;
  };
  auto ca = canonical(a);
  auto cb = canonical(b);
  if (ca.size() != cb.size() || a.num_labels != b.num_labels || a.bits != b.bits ||
      a.num_features != b.num_features || a.comparator_count != b.comparator_count) {
    return false;
  }
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].id != cb[i].id || ca[i].kind != cb[i].kind ||
        ca[i].inputs != cb[i].inputs || ca[i].feature != cb[i].feature ||
        ca[i].level != cb[i].level) {
      return false;
    }
  }
  return true;
}

}  // namespace unarydt
