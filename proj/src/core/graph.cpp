//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "molcot/core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include "molcot/core/elements.hpp"

namespace molcot {

std::vector<Violation> validate(const MolGraph &graph) {
  std::vector<Violation> out;
  const int p = graph.atom_count();

  int with_coords = 0;
  for (int i = 0; i < p; ++i) {
    const AtomNode &atom = graph.atoms[static_cast<std::size_t>(i)];
    if (atom.index != i)
      out.push_back({"atom index " + std::to_string(atom.index) +
                         " does not match list position " + std::to_string(i),
                     i, -1});
    if (atom.label.empty()) out.push_back({"empty atom label", i, -1});
    const bool element = is_element(atom.label);
    if (atom.aromatic && !(element && is_aromatic_capable(atom.label)))
      out.push_back({"aromatic flag on non-aromatic-capable label '" +
                         atom.label + "'",
                     i, -1});
    if (!element && atom.isotope)
      out.push_back({"isotope on non-element label '" + atom.label + "'", i,
                     -1});
    if (atom.isotope && *atom.isotope <= 0)
      out.push_back({"non-positive isotope", i, -1});
    if (atom.explicit_h && *atom.explicit_h < 0)
      out.push_back({"negative explicit hydrogen count", i, -1});
    if (atom.coords) {
      ++with_coords;
      if (!std::isfinite(atom.coords->x) || !std::isfinite(atom.coords->y))
        out.push_back({"non-finite coordinates", i, -1});
    }
  }
  if (with_coords != 0 && with_coords != p)
    out.push_back({"mixed coordinate presence (" +
                       std::to_string(with_coords) + " of " +
                       std::to_string(p) + " atoms have coords)",
                   -1, -1});

  std::set<std::pair<int, int>> seen_pairs;
  for (int j = 0; j < graph.bond_count(); ++j) {
    const BondEdge &bond = graph.bonds[static_cast<std::size_t>(j)];
    if (bond.from < 0 || bond.from >= p || bond.to < 0 || bond.to >= p) {
      out.push_back({"bond endpoint out of range at bond " + std::to_string(j),
                     -1, j});
      continue;
    }
    if (bond.from == bond.to)
      out.push_back({"self-loop at bond " + std::to_string(j), -1, j});
    const auto key = std::minmax(bond.from, bond.to);
    if (!seen_pairs.insert({key.first, key.second}).second)
      out.push_back({"duplicate bond between atoms " +
                         std::to_string(key.first) + " and " +
                         std::to_string(key.second),
                     -1, j});
    if (bond.display != BondDisplay::Plain && bond.order != BondOrder::Single)
      out.push_back({"display requires single order at bond " +
                         std::to_string(j),
                     -1, j});
  }
  return out;
}

bool is_valid(const MolGraph &graph) { return validate(graph).empty(); }

void require_valid(const MolGraph &graph) {
  const auto violations = validate(graph);
  if (!violations.empty())
    throw std::invalid_argument("invalid graph: " + violations.front().message);
}

std::vector<std::vector<int>> adjacency_list(const MolGraph &graph) {
  std::vector<std::vector<int>> adj(graph.atoms.size());
  for (const BondEdge &bond : graph.bonds) {
    adj[static_cast<std::size_t>(bond.from)].push_back(bond.to);
    adj[static_cast<std::size_t>(bond.to)].push_back(bond.from);
  }
  return adj;
}

std::vector<std::vector<int>> connected_components(const MolGraph &graph) {
  const int p = graph.atom_count();
  const auto adj = adjacency_list(graph);
  std::vector<bool> visited(static_cast<std::size_t>(p), false);
  std::vector<std::vector<int>> components;
  for (int start = 0; start < p; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    std::vector<int> component;
    std::vector<int> stack{start};
    visited[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (!visited[static_cast<std::size_t>(v)]) {
          visited[static_cast<std::size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

MolGraph permute(const MolGraph &graph, const std::vector<int> &perm) {
  const std::size_t p = graph.atoms.size();
  if (perm.size() != p)
    throw std::invalid_argument("permutation size does not match atom count");
  std::vector<bool> hit(p, false);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= p || hit[static_cast<std::size_t>(v)])
      throw std::invalid_argument("permutation is not a bijection on 0..p-1");
    hit[static_cast<std::size_t>(v)] = true;
  }

  MolGraph out;
  out.atoms.resize(p);
  for (std::size_t i = 0; i < p; ++i) {
    AtomNode atom = graph.atoms[i];
    atom.index = perm[i];
    out.atoms[static_cast<std::size_t>(perm[i])] = std::move(atom);
  }
  out.bonds.reserve(graph.bonds.size());
  for (BondEdge bond : graph.bonds) {
    bond.from = perm[static_cast<std::size_t>(bond.from)];
    bond.to = perm[static_cast<std::size_t>(bond.to)];
    out.bonds.push_back(bond);
  }
  return out;
}

double median_bond_length(const MolGraph &graph) {
  if (graph.bonds.empty() || !graph.has_coords()) return 0.0;
  std::vector<double> lengths;
  lengths.reserve(graph.bonds.size());
  for (const BondEdge &bond : graph.bonds) {
    const Coords a = *graph.atoms[static_cast<std::size_t>(bond.from)].coords;
    const Coords b = *graph.atoms[static_cast<std::size_t>(bond.to)].coords;
    lengths.push_back(std::hypot(a.x - b.x, a.y - b.y));
  }
  std::sort(lengths.begin(), lengths.end());
  const std::size_t n = lengths.size();
  if (n % 2 == 1) return lengths[n / 2];
  return 0.5 * (lengths[n / 2 - 1] + lengths[n / 2]);
}

MolGraph disjoint_union(const MolGraph &a, const MolGraph &b) {
  MolGraph out = a;
  const int shift = a.atom_count();
  const bool keep_coords = a.has_coords() && b.has_coords();
  if (!keep_coords)
    for (AtomNode &atom : out.atoms) atom.coords.reset();
  for (AtomNode atom : b.atoms) {
    atom.index += shift;
    if (!keep_coords) atom.coords.reset();
    out.atoms.push_back(std::move(atom));
  }
  for (BondEdge bond : b.bonds) {
    bond.from += shift;
    bond.to += shift;
    out.bonds.push_back(bond);
  }
  return out;
}

}  // namespace molcot
