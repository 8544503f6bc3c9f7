//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLCOT_CORE_ELEMENTS_HPP_
#define MOLCOT_CORE_ELEMENTS_HPP_

#include <string_view>

namespace molcot {

// Case-sensitive lookup against the fixed periodic-table registry
// (H..Og). Any other non-empty label is a superatom, except the "*"
// wildcard which is neither.
bool is_element(std::string_view symbol);

bool is_superatom_label(std::string_view label);

bool is_wildcard_label(std::string_view label);

// Elements that may carry the aromatic flag: B, C, N, O, P, S, Se, As.
bool is_aromatic_capable(std::string_view symbol);

// Organic subset writable without brackets in SMILES.
bool is_organic_subset(std::string_view symbol);

// Default valence for the organic subset (B3 C4 N3 O2 P3 S2, halogens 1);
// -1 for anything else.
int organic_subset_valence(std::string_view symbol);

}  // namespace molcot

#endif  // MOLCOT_CORE_ELEMENTS_HPP_
