//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "molcot/core/elements.hpp"

#include <array>
#include <unordered_set>

namespace molcot {

namespace {

constexpr std::array<std::string_view, 118> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

const std::unordered_set<std::string_view> &element_set() {
  static const std::unordered_set<std::string_view> set(kElements.begin(),
                                                        kElements.end());
  return set;
}

}  // namespace

bool is_element(std::string_view symbol) {
  return element_set().count(symbol) != 0;
}

bool is_wildcard_label(std::string_view label) { return label == "*"; }

bool is_superatom_label(std::string_view label) {
  return !label.empty() && !is_wildcard_label(label) && !is_element(label);
}

bool is_aromatic_capable(std::string_view symbol) {
  return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O" ||
         symbol == "P" || symbol == "S" || symbol == "Se" || symbol == "As";
}

bool is_organic_subset(std::string_view symbol) {
  return organic_subset_valence(symbol) >= 0;
}

int organic_subset_valence(std::string_view symbol) {
  if (symbol == "B") return 3;
  if (symbol == "C") return 4;
  if (symbol == "N") return 3;
  if (symbol == "O") return 2;
  if (symbol == "P") return 3;
  if (symbol == "S") return 2;
  if (symbol == "F" || symbol == "Cl" || symbol == "Br" || symbol == "I")
    return 1;
  return -1;
}

}  // namespace molcot
