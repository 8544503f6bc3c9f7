//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLCOT_MOLFILE_MOLFILE_HPP_
#define MOLCOT_MOLFILE_MOLFILE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "molcot/core/graph.hpp"
#include "molcot/support/parse_error.hpp"

namespace molcot {

// One MDL MOL V2000 connection table. Charge (M  CHG), isotope (M  ISO)
// and alias blocks are folded into the graph; every other property line
// is preserved verbatim in `properties` (without the terminating M  END).
struct MolfileDocument {
  std::string title;
  MolGraph graph;  // coords mandatory
  std::vector<std::string> properties;

  int atom_count() const { return graph.atom_count(); }
  int bond_count() const { return graph.bond_count(); }

  friend bool operator==(const MolfileDocument &, const MolfileDocument &) =
      default;
};

// Fixed-column V2000 parsing. Atom aliases ("A  " lines) override the
// atom symbol, which is how superatoms arrive in MOL files. Throws
// ParseError carrying a 1-based line number. V3000 input is rejected.
MolfileDocument parse_molfile(std::string_view text);

// Inverse of parse_molfile; coords written at 4 decimals, superatoms
// emitted via alias lines, charges via M  CHG. Throws
// std::invalid_argument on coordinate-free graphs or out-of-range data.
std::string write_molfile(const MolfileDocument &doc);

// Unparsed structural features worth surfacing, e.g. Sgroup SUP blocks
// kept as raw property lines.
std::vector<std::string> molfile_warnings(const MolfileDocument &doc);

// Splits SDF text on "$$$$" record separators; keeps record text as-is
// (data fields included), drops empty records.
std::vector<std::string> split_sdf(std::string_view text);

}  // namespace molcot

#endif  // MOLCOT_MOLFILE_MOLFILE_HPP_
