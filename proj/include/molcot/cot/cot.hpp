//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLCOT_COT_COT_HPP_
#define MOLCOT_COT_COT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "molcot/core/graph.hpp"
#include "molcot/support/parse_error.hpp"

namespace molcot {

// Bond vocabulary of the traversal text: the four orders plus wedge and
// dash, which normalize to Single order + display internally.
enum class CotBondKind { Single, Double, Triple, Aromatic, Wedge, Dash };

struct QuantizedCoords {
  int x = 0;
  int y = 0;
  friend bool operator==(const QuantizedCoords &, const QuantizedCoords &) =
      default;
};

struct VisitAtom {
  int atom_index = 0;
  std::string label;
  int charge = 0;
  std::optional<int> isotope;
  bool aromatic = false;
  QuantizedCoords coords;
  friend bool operator==(const VisitAtom &, const VisitAtom &) = default;
};

struct TraverseBond {
  CotBondKind kind = CotBondKind::Single;
  int from_index = 0;
  int to_index = 0;
  bool closes_ring = false;
  friend bool operator==(const TraverseBond &, const TraverseBond &) = default;
};

using TraversalStep = std::variant<VisitAtom, TraverseBond>;

// Ordered traversal covering every atom and bond exactly once; every
// non-ring TraverseBond is immediately followed by the VisitAtom of its
// target.
struct CotScript {
  std::vector<TraversalStep> steps;
};

struct ResponseText {
  std::string cot_block;
  std::string smiles_line;
};

// Coordinates quantized onto a 0..999 grid: shared scale across axes
// (aspect preserved), minor axis centered; a degenerate range maps to 500.
std::vector<QuantizedCoords> quantize_coords(const MolGraph &graph);

// Deterministic depth-first traversal in reading order: start at the
// minimal (quantized y, then x) atom, neighbors explored in ascending
// key, ring closures emitted when the later endpoint processes its
// adjacency, components in ascending start-key order. Coordinate-free
// graphs use canonical ranks as pseudo-coords. Throws
// std::invalid_argument on invalid graphs.
CotScript encode_cot(const MolGraph &graph);

// One step per line, wrapped in <graph>/</graph> sentinels:
//   atom <idx> <label>[<+n|-n>] (<x>,<y>)
//   bond <kind> <from>-><to>[ ring]
// An isotope is a leading-digits label prefix (e.g. 13C).
std::string render_cot_text(const CotScript &script);

struct CotDecode {
  MolGraph graph;
  std::vector<std::string> warnings;  // recoverable issues, e.g. skipped duplicates
};

// Parses rendered traversal text (either mode) back into a graph;
// tolerant of whitespace and a trailing SMILES line, strict on
// structure. Throws ParseError carrying a 1-based line number.
CotDecode decode_cot(std::string_view text);

// All atom lines in index order, then all bond lines in (from,to)
// lexicographic order, flagged by a "mode atoms-then-bonds" header.
std::string encode_atoms_then_bonds(const MolGraph &graph);

// cot_block plus "SMILES: <canonical>" final line.
ResponseText render_response(const MolGraph &graph);

}  // namespace molcot

#endif  // MOLCOT_COT_COT_HPP_
