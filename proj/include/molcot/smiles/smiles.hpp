//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLCOT_SMILES_SMILES_HPP_
#define MOLCOT_SMILES_SMILES_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "molcot/core/graph.hpp"
#include "molcot/support/parse_error.hpp"

namespace molcot {

enum class SmilesTokenKind {
  OrganicAtom,   // bare organic-subset atom, aromatic lowercase, or '*'
  BracketAtom,   // '[...]' including the brackets
  BondSymbol,    // - = # : / backslash
  BranchOpen,
  BranchClose,
  RingClosure,   // single digit or %nn
  Dot
};

struct SmilesToken {
  SmilesTokenKind kind;
  std::string lexeme;
  std::size_t position;  // character offset of the first lexeme byte
};

// Tokenizes; lexemes concatenate back to the input. Throws ParseError
// with a character offset on unexpected bytes.
std::vector<SmilesToken> lex_smiles(std::string_view text);

// Builds a coordinate-free graph with atoms in first-appearance order.
// Bracket labels outside the element registry become superatoms; an
// optional trailing charge is still split off (e.g. "[Boc+1]").
// Throws ParseError with a character offset.
MolGraph parse_smiles(std::string_view text);

// Depth-first emission starting at atom 0, neighbors by ascending index,
// components joined by ".". Superatoms serialize as bracket atoms with
// their raw label. Throws std::invalid_argument on invalid graphs.
std::string write_smiles(const MolGraph &graph);

// Hydrogens implied by default valences (B3 C4 N3 O2 P3 S2, halogens 1):
// valence minus the floor of the bond-order sum (aromatic counts 1.5),
// clamped at 0. Bracket-fixed counts are returned as-is; superatoms,
// wildcards and non-organic-subset elements give 0.
int implicit_h_count(int atom_index, const MolGraph &graph);

}  // namespace molcot

#endif  // MOLCOT_SMILES_SMILES_HPP_
