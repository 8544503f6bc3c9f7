//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLCOT_CORE_GRAPH_HPP_
#define MOLCOT_CORE_GRAPH_HPP_

#include <optional>
#include <string>
#include <vector>

namespace molcot {

enum class BondOrder { Single, Double, Triple, Aromatic };

// Wedge/dash depiction attribute; legal on Single bonds only,
// direction runs from `from` to `to`.
enum class BondDisplay { Plain, BeginWedge, BeginDash };

struct Coords {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Coords &, const Coords &) = default;
};

// One atom: an element symbol from the periodic-table registry, the "*"
// wildcard, or a superatom/abbreviation label (anything else).
struct AtomNode {
  int index = 0;
  std::string label;
  int formal_charge = 0;
  std::optional<int> isotope;
  std::optional<int> explicit_h;
  bool aromatic = false;
  // "@" / "@@" bracket annotation; carried through serialization, never
  // perceived from geometry.
  std::string chirality;
  std::optional<Coords> coords;

  friend bool operator==(const AtomNode &, const AtomNode &) = default;
};

struct BondEdge {
  int from = 0;
  int to = 0;
  BondOrder order = BondOrder::Single;
  BondDisplay display = BondDisplay::Plain;
  // '/' or '\\' directional SMILES annotation, 0 when absent.
  char slash = 0;

  friend bool operator==(const BondEdge &, const BondEdge &) = default;
};

struct MolGraph {
  std::vector<AtomNode> atoms;
  std::vector<BondEdge> bonds;

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int bond_count() const { return static_cast<int>(bonds.size()); }
  bool has_coords() const {
    return !atoms.empty() && atoms.front().coords.has_value();
  }

  friend bool operator==(const MolGraph &, const MolGraph &) = default;
};

struct Violation {
  std::string message;
  int atom_index = -1;
  int bond_index = -1;
};

// Every invariant breach, with the offending atom/bond index; empty
// means the graph is valid. Violations are data, not failures.
std::vector<Violation> validate(const MolGraph &graph);

bool is_valid(const MolGraph &graph);

// Throws std::invalid_argument citing the first violation.
void require_valid(const MolGraph &graph);

// Partition of atom indices by bond connectivity, ordered by smallest
// member index; each component's indices are ascending.
std::vector<std::vector<int>> connected_components(const MolGraph &graph);

// Relabels atoms so that new index perm[i] holds old atom i; bond
// endpoints are remapped. Throws std::invalid_argument unless perm is a
// bijection on 0..p-1.
MolGraph permute(const MolGraph &graph, const std::vector<int> &perm);

// Neighbor lists indexed by atom; bond index lists in bond order.
std::vector<std::vector<int>> adjacency_list(const MolGraph &graph);

// Median Euclidean bond length; 0 when the graph has no bonds or no coords.
double median_bond_length(const MolGraph &graph);

// Concatenates two graphs into one with b's indices shifted; coords are
// kept only if both sides carry them.
MolGraph disjoint_union(const MolGraph &a, const MolGraph &b);

}  // namespace molcot

#endif  // MOLCOT_CORE_GRAPH_HPP_
