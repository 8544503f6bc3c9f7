//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLCOT_CANON_CANONICAL_HPP_
#define MOLCOT_CANON_CANONICAL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "molcot/core/graph.hpp"

namespace molcot {

struct CanonOptions {
  // Compatibility switch: rank all superatom labels as one opaque
  // placeholder, restoring the endpoint-abbreviation ambiguity that the
  // default label-aware ranking fixes.
  bool plain_superatom_rank = false;
};

struct CanonicalForm {
  std::string canonical_smiles;
  std::vector<int> ranks;  // permutation of 0..p-1, one rank per atom
};

// Morgan-style iterative invariant refinement with deterministic
// tie-breaking (lowest rank class, lowest original index, full
// re-refinement after each split).
std::vector<int> canonical_ranks(const MolGraph &graph,
                                 const CanonOptions &options = {});

// Writes the graph following rank order: depth-first from the rank-0
// atom, neighbors in ascending rank.
CanonicalForm canonicalize_graph(const MolGraph &graph,
                                 const CanonOptions &options = {});

// parse + canonicalize_graph; parse errors propagate.
std::string canonicalize_smiles(std::string_view text,
                                const CanonOptions &options = {});

}  // namespace molcot

#endif  // MOLCOT_CANON_CANONICAL_HPP_
