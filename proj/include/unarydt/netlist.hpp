#pragma once

#include <span>
#include <string>
#include <vector>

#include "unarydt/adc.hpp"
#include "unarydt/cost_model.hpp"

namespace unarydt {

enum class CellKind { input, comparator, not_gate, and_gate, or_gate, output };

/// One structural cell. Every cell drives the net named after its own id;
/// `inputs` lists the nets it reads. "const0"/"const1" are reserved nets
/// with implicit constant drivers. Input cells carry the feature index they
/// sample; comparators additionally carry their reference level.
struct Cell {
  std::string id;
  CellKind kind = CellKind::input;
  std::vector<std::string> inputs;
  int feature = -1;
  int level = -1;
};

struct Netlist {
  std::string dataset;
  std::string tree_hash;
  int bits = 4;
  int num_features = 0;
  int num_labels = 0;
  int comparator_count = 0;
  std::vector<Cell> cells;
};

struct NetlistMeta {
  std::string dataset;
  std::string tree_hash;
  int bits = 4;
  int num_features = 0;
};

/// Build the full classifier netlist: one comparator per retained digit, a
/// NOT per complemented digit, an AND per multi-literal product term, an OR
/// per multi-term label, plus input/output cells. Single-literal terms and
/// single-term labels pass through; termless labels are tied to const0 and
/// an empty (always-true) term to const1. Cell naming is deterministic.
Netlist emit_netlist(const std::vector<AdcSpec>& adcs, const LabelLogic& logic,
                     const NetlistMeta& meta);

/// Convenience wrapper that lowers and prices nothing — just derives the
/// metadata from the tree.
Netlist emit_netlist(const DecisionTree& tree, const std::vector<AdcSpec>& adcs,
                     const LabelLogic& logic);

/// Topological evaluation on a quantized sample; exactly one output must
/// assert, and its label index is returned.
int simulate_netlist(const Netlist& netlist, std::span<const int> sample);

std::string to_structural_hdl(const Netlist& netlist);
void export_structural_hdl(const Netlist& netlist, const std::string& path);

/// Parse text produced by to_structural_hdl back into a netlist.
Netlist parse_structural_hdl(const std::string& text);

/// Structural equality up to cell ordering.
bool isomorphic(const Netlist& a, const Netlist& b);

}  // namespace unarydt
