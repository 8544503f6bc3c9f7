//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "molcot/canon/canonical.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

#include "molcot/core/elements.hpp"
#include "molcot/smiles/smiles.hpp"

namespace molcot {

namespace {

int order_code(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1;
    case BondOrder::Double: return 2;
    case BondOrder::Triple: return 3;
    case BondOrder::Aromatic: return 4;
  }
  return 0;
}

using SeedKey = std::tuple<std::string, int, int, bool, int, int, int>;

// (label, charge, isotope, aromatic, degree, 2x bond order sum, explicit_h)
SeedKey seed_key(const MolGraph &graph, int atom_index,
                 const CanonOptions &options) {
  const AtomNode &atom = graph.atoms[static_cast<std::size_t>(atom_index)];
  std::string label = atom.label;
  if (options.plain_superatom_rank && is_superatom_label(label)) label = "*";
  int degree = 0;
  int order_sum_halves = 0;
  for (const BondEdge &bond : graph.bonds) {
    if (bond.from != atom_index && bond.to != atom_index) continue;
    ++degree;
    switch (bond.order) {
      case BondOrder::Single: order_sum_halves += 2; break;
      case BondOrder::Double: order_sum_halves += 4; break;
      case BondOrder::Triple: order_sum_halves += 6; break;
      case BondOrder::Aromatic: order_sum_halves += 3; break;
    }
  }
  return {label,
          atom.formal_charge,
          atom.isotope.value_or(0),
          atom.aromatic,
          degree,
          order_sum_halves,
          atom.explicit_h ? *atom.explicit_h : -1};
}

int distinct_count(const std::vector<int> &ranks) {
  std::vector<int> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return static_cast<int>(sorted.size());
}

// One neighborhood-refinement pass to a fixpoint.
void refine(const MolGraph &graph,
            const std::vector<std::vector<std::pair<int, int>>> &incidence,
            std::vector<int> &ranks) {
  const std::size_t p = graph.atoms.size();
  int distinct = distinct_count(ranks);
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> keyed(p);
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<int> key;
      key.push_back(ranks[i]);
      std::vector<std::pair<int, int>> env;
      for (const auto &[neighbor, bond_idx] : incidence[i])
        env.push_back({order_code(
                           graph.bonds[static_cast<std::size_t>(bond_idx)].order),
                       ranks[static_cast<std::size_t>(neighbor)]});
      std::sort(env.begin(), env.end());
      for (const auto &[code, rank] : env) {
        key.push_back(code);
        key.push_back(rank);
      }
      keyed[i] = {std::move(key), static_cast<int>(i)};
    }
    std::vector<std::pair<std::vector<int>, int>> sorted = keyed;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> next(p, 0);
    int rank = -1;
    for (std::size_t s = 0; s < sorted.size(); ++s) {
      if (s == 0 || sorted[s].first != sorted[s - 1].first) ++rank;
      next[static_cast<std::size_t>(sorted[s].second)] = rank;
    }
    const int next_distinct = rank + 1;
    ranks = std::move(next);
    if (next_distinct == distinct) break;
    distinct = next_distinct;
  }
}

}  // namespace

std::vector<int> canonical_ranks(const MolGraph &graph,
                                 const CanonOptions &options) {
  const std::size_t p = graph.atoms.size();
  if (p == 0) return {};

  std::vector<std::vector<std::pair<int, int>>> incidence(p);
  for (int j = 0; j < graph.bond_count(); ++j) {
    const BondEdge &bond = graph.bonds[static_cast<std::size_t>(j)];
    incidence[static_cast<std::size_t>(bond.from)].push_back({bond.to, j});
    incidence[static_cast<std::size_t>(bond.to)].push_back({bond.from, j});
  }

  // initial ranks from the seed invariant
  std::vector<std::pair<SeedKey, int>> seeds(p);
  for (std::size_t i = 0; i < p; ++i)
    seeds[i] = {seed_key(graph, static_cast<int>(i), options),
                static_cast<int>(i)};
  std::vector<std::pair<SeedKey, int>> sorted = seeds;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ranks(p, 0);
  {
    int rank = -1;
    for (std::size_t s = 0; s < sorted.size(); ++s) {
      if (s == 0 || sorted[s].first != sorted[s - 1].first) ++rank;
      ranks[static_cast<std::size_t>(sorted[s].second)] = rank;
    }
  }

  refine(graph, incidence, ranks);

  // tie-breaking: split the lowest tied rank class at its lowest
  // original index, then refine again
  while (distinct_count(ranks) != static_cast<int>(p)) {
    std::map<int, std::vector<int>> classes;
    for (std::size_t i = 0; i < p; ++i)
      classes[ranks[i]].push_back(static_cast<int>(i));
    int chosen = -1;
    for (const auto &[rank, members] : classes) {
      if (members.size() > 1) {
        chosen = members.front();
        break;
      }
    }
    // give the chosen atom a rank of its own, just below its class
    std::vector<std::pair<std::pair<int, int>, int>> rerank(p);
    for (std::size_t i = 0; i < p; ++i)
      rerank[i] = {{ranks[i], static_cast<int>(i) == chosen ? 0 : 1},
                   static_cast<int>(i)};
    std::vector<std::pair<std::pair<int, int>, int>> resorted = rerank;
    std::sort(resorted.begin(), resorted.end());
    int rank = -1;
    for (std::size_t s = 0; s < resorted.size(); ++s) {
      if (s == 0 || resorted[s].first != resorted[s - 1].first) ++rank;
      ranks[static_cast<std::size_t>(resorted[s].second)] = rank;
    }
    refine(graph, incidence, ranks);
  }
  return ranks;
}

CanonicalForm canonicalize_graph(const MolGraph &graph,
                                 const CanonOptions &options) {
  require_valid(graph);
  CanonicalForm form;
  form.ranks = canonical_ranks(graph, options);
  if (graph.atoms.empty()) return form;
  form.canonical_smiles = write_smiles(permute(graph, form.ranks));
  return form;
}

std::string canonicalize_smiles(std::string_view text,
                                const CanonOptions &options) {
  return canonicalize_graph(parse_smiles(text), options).canonical_smiles;
}

}  // namespace molcot
