//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "molcot/cot/cot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "molcot/canon/canonical.hpp"
#include "molcot/core/elements.hpp"

namespace molcot {

namespace {

bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool ascii_alpha(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

std::string line_msg(const std::string &what, std::size_t line_no) {
  return what + " (line " + std::to_string(line_no) + ")";
}

CotBondKind bond_kind(const BondEdge &bond) {
  if (bond.display == BondDisplay::BeginWedge) return CotBondKind::Wedge;
  if (bond.display == BondDisplay::BeginDash) return CotBondKind::Dash;
  switch (bond.order) {
    case BondOrder::Single: return CotBondKind::Single;
    case BondOrder::Double: return CotBondKind::Double;
    case BondOrder::Triple: return CotBondKind::Triple;
    case BondOrder::Aromatic: return CotBondKind::Aromatic;
  }
  return CotBondKind::Single;
}

std::string kind_text(CotBondKind kind) {
  switch (kind) {
    case CotBondKind::Single: return "single";
    case CotBondKind::Double: return "double";
    case CotBondKind::Triple: return "triple";
    case CotBondKind::Aromatic: return "aromatic";
    case CotBondKind::Wedge: return "wedge";
    case CotBondKind::Dash: return "dash";
  }
  return "single";
}

std::string lowercase_copy(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string atom_label_token(const VisitAtom &atom) {
  std::string token;
  if (atom.isotope) token += std::to_string(*atom.isotope);
  token += atom.aromatic ? lowercase_copy(atom.label) : atom.label;
  if (atom.charge != 0) {
    token += atom.charge > 0 ? '+' : '-';
    token += std::to_string(atom.charge > 0 ? atom.charge : -atom.charge);
  }
  return token;
}

}  // namespace

std::vector<QuantizedCoords> quantize_coords(const MolGraph &graph) {
  const std::size_t p = graph.atoms.size();
  std::vector<QuantizedCoords> out(p);
  if (p == 0) return out;

  std::vector<double> xs(p), ys(p);
  if (graph.has_coords()) {
    for (std::size_t i = 0; i < p; ++i) {
      xs[i] = graph.atoms[i].coords->x;
      ys[i] = graph.atoms[i].coords->y;
    }
  } else {
    // canonical ranks as pseudo-coords along the grid diagonal
    const auto ranks = canonical_ranks(graph);
    for (std::size_t i = 0; i < p; ++i)
      xs[i] = ys[i] = static_cast<double>(ranks[i]);
  }

  const auto [min_x_it, max_x_it] = std::minmax_element(xs.begin(), xs.end());
  const auto [min_y_it, max_y_it] = std::minmax_element(ys.begin(), ys.end());
  const double range_x = *max_x_it - *min_x_it;
  const double range_y = *max_y_it - *min_y_it;
  const double max_range = std::max(range_x, range_y);
  const double scale = max_range > 0 ? 999.0 / max_range : 0.0;
  const double pad_x = (999.0 - range_x * scale) / 2.0;
  const double pad_y = (999.0 - range_y * scale) / 2.0;
  for (std::size_t i = 0; i < p; ++i) {
    const long qx = std::lround((xs[i] - *min_x_it) * scale + pad_x);
    const long qy = std::lround((ys[i] - *min_y_it) * scale + pad_y);
    out[i] = {static_cast<int>(std::clamp(qx, 0L, 999L)),
              static_cast<int>(std::clamp(qy, 0L, 999L))};
  }
  return out;
}

CotScript encode_cot(const MolGraph &graph) {
  require_valid(graph);
  CotScript script;
  const std::size_t p = graph.atoms.size();
  if (p == 0) return script;

  const auto quantized = quantize_coords(graph);
  auto key = [&](int i) {
    return std::tuple<int, int, int>(quantized[static_cast<std::size_t>(i)].y,
                                     quantized[static_cast<std::size_t>(i)].x,
                                     i);
  };

  std::vector<std::vector<std::pair<int, int>>> neighbors(p);  // (atom, bond)
  for (int j = 0; j < graph.bond_count(); ++j) {
    const BondEdge &bond = graph.bonds[static_cast<std::size_t>(j)];
    neighbors[static_cast<std::size_t>(bond.from)].push_back({bond.to, j});
    neighbors[static_cast<std::size_t>(bond.to)].push_back({bond.from, j});
  }
  for (auto &list : neighbors)
    std::sort(list.begin(), list.end(),
              [&](const std::pair<int, int> &a, const std::pair<int, int> &b) {
                return key(a.first) < key(b.first);
              });

  std::vector<bool> visited(p, false);
  std::vector<bool> bond_emitted(graph.bonds.size(), false);

  auto push_atom = [&](int i) {
    const AtomNode &atom = graph.atoms[static_cast<std::size_t>(i)];
    script.steps.push_back(VisitAtom{i, atom.label, atom.formal_charge,
                                     atom.isotope, atom.aromatic,
                                     quantized[static_cast<std::size_t>(i)]});
  };

  // recursive DFS; adjacency in reading order, ring closures emitted at
  // the later endpoint
  auto visit = [&](auto &&self, int u) -> void {
    push_atom(u);
    for (const auto &[v, bond_idx] : neighbors[static_cast<std::size_t>(u)]) {
      if (bond_emitted[static_cast<std::size_t>(bond_idx)]) continue;
      const BondEdge &bond = graph.bonds[static_cast<std::size_t>(bond_idx)];
      if (visited[static_cast<std::size_t>(v)]) {
        bond_emitted[static_cast<std::size_t>(bond_idx)] = true;
        script.steps.push_back(TraverseBond{bond_kind(bond), u, v, true});
      } else {
        bond_emitted[static_cast<std::size_t>(bond_idx)] = true;
        visited[static_cast<std::size_t>(v)] = true;
        script.steps.push_back(TraverseBond{bond_kind(bond), u, v, false});
        self(self, v);
      }
    }
  };

  const auto components = connected_components(graph);
  std::vector<int> starts;
  starts.reserve(components.size());
  for (const auto &component : components) {
    int best = component.front();
    for (int i : component)
      if (key(i) < key(best)) best = i;
    starts.push_back(best);
  }
  std::sort(starts.begin(), starts.end(),
            [&](int a, int b) { return key(a) < key(b); });

  for (int start : starts) {
    visited[static_cast<std::size_t>(start)] = true;
    visit(visit, start);
  }
  return script;
}

MolGraph align_display_to_traversal(const MolGraph &graph) {
  MolGraph out = graph;
  if (graph.atoms.empty()) return out;
  const CotScript script = encode_cot(graph);
  std::map<std::pair<int, int>, std::size_t> bond_index;
  for (std::size_t j = 0; j < out.bonds.size(); ++j) {
    const auto key = std::minmax(out.bonds[j].from, out.bonds[j].to);
    bond_index[{key.first, key.second}] = j;
  }
  for (const TraversalStep &step : script.steps) {
    const auto *traverse = std::get_if<TraverseBond>(&step);
    if (traverse == nullptr) continue;
    const auto key = std::minmax(traverse->from_index, traverse->to_index);
    BondEdge &bond = out.bonds[bond_index.at({key.first, key.second})];
    if (bond.display == BondDisplay::Plain) continue;
    if (bond.from != traverse->from_index) {
      std::swap(bond.from, bond.to);
      if (bond.slash != 0) bond.slash = bond.slash == '/' ? '\\' : '/';
    }
  }
  return out;
}

std::string render_cot_text(const CotScript &script) {
  std::string out = "<graph>\n";
  for (const TraversalStep &step : script.steps) {
    if (const auto *atom = std::get_if<VisitAtom>(&step)) {
      out += "atom " + std::to_string(atom->atom_index) + " " +
             atom_label_token(*atom) + " (" + std::to_string(atom->coords.x) +
             "," + std::to_string(atom->coords.y) + ")\n";
    } else {
      const auto &bond = std::get<TraverseBond>(step);
      out += "bond " + kind_text(bond.kind) + " " +
             std::to_string(bond.from_index) + "->" +
             std::to_string(bond.to_index);
      if (bond.closes_ring) out += " ring";
      out += "\n";
    }
  }
  out += "</graph>\n";
  return out;
}

std::string encode_atoms_then_bonds(const MolGraph &graph) {
  require_valid(graph);
  const auto quantized = quantize_coords(graph);
  std::string out = "<graph>\nmode atoms-then-bonds\n";
  for (const AtomNode &atom : graph.atoms) {
    VisitAtom visit{atom.index, atom.label, atom.formal_charge, atom.isotope,
                    atom.aromatic,
                    quantized[static_cast<std::size_t>(atom.index)]};
    out += "atom " + std::to_string(atom.index) + " " +
           atom_label_token(visit) + " (" + std::to_string(visit.coords.x) +
           "," + std::to_string(visit.coords.y) + ")\n";
  }
  std::vector<BondEdge> bonds = graph.bonds;
  std::sort(bonds.begin(), bonds.end(),
            [](const BondEdge &a, const BondEdge &b) {
              return std::tie(a.from, a.to) < std::tie(b.from, b.to);
            });
  for (const BondEdge &bond : bonds)
    out += "bond " + kind_text(bond_kind(bond)) + " " +
           std::to_string(bond.from) + "->" + std::to_string(bond.to) + "\n";
  out += "</graph>\n";
  return out;
}

ResponseText render_response(const MolGraph &graph) {
  ResponseText response;
  response.cot_block = render_cot_text(encode_cot(graph));
  response.smiles_line =
      "SMILES: " + canonicalize_graph(graph).canonical_smiles;
  return response;
}

namespace {

struct ParsedAtomLine {
  int index;
  AtomNode atom;  // without index/coords applied
  int qx, qy;
};

// label token: [isotope digits][label][+n|-n]
void apply_label_token(std::string_view token, AtomNode &atom,
                       std::size_t line_no) {
  // trailing charge
  std::string_view rest = token;
  const std::size_t sign_pos = rest.find_first_of("+-");
  if (sign_pos != std::string_view::npos) {
    const std::string_view charge_part = rest.substr(sign_pos);
    for (std::size_t k = 1; k < charge_part.size(); ++k)
      if (!ascii_digit(charge_part[k]))
        throw ParseError(line_msg("invalid charge suffix '" +
                                      std::string(charge_part) + "'",
                                  line_no),
                         line_no);
    int magnitude = 1;
    if (charge_part.size() > 1) {
      magnitude = 0;
      for (std::size_t k = 1; k < charge_part.size(); ++k)
        magnitude = magnitude * 10 + (charge_part[k] - '0');
    }
    atom.formal_charge = charge_part[0] == '+' ? magnitude : -magnitude;
    rest = rest.substr(0, sign_pos);
  }

  // leading isotope digits
  std::size_t k = 0;
  while (k < rest.size() && ascii_digit(rest[k])) ++k;
  std::optional<int> isotope;
  if (k > 0) {
    int value = 0;
    for (std::size_t i = 0; i < k; ++i) value = value * 10 + (rest[i] - '0');
    isotope = value;
    rest = rest.substr(k);
  }

  if (rest.empty())
    throw ParseError(line_msg("empty atom label", line_no), line_no);

  if (rest == "*") {
    atom.label = "*";
  } else if (is_element(rest)) {
    atom.label = std::string(rest);
  } else if (rest == "se" || rest == "as") {
    atom.label = rest == "se" ? "Se" : "As";
    atom.aromatic = true;
  } else if (rest.size() == 1 &&
             (rest[0] == 'b' || rest[0] == 'c' || rest[0] == 'n' ||
              rest[0] == 'o' || rest[0] == 'p' || rest[0] == 's')) {
    atom.label = std::string(1, static_cast<char>(rest[0] - 'a' + 'A'));
    atom.aromatic = true;
  } else {
    if (!ascii_alpha(rest[0]))
      throw ParseError(
          line_msg("invalid atom label '" + std::string(token) + "'", line_no),
          line_no);
    for (char c : rest)
      if (!ascii_alpha(c) && !ascii_digit(c))
        throw ParseError(line_msg("invalid atom label '" + std::string(token) +
                                      "'",
                                  line_no),
                         line_no);
    if (isotope)
      throw ParseError(
          line_msg("isotope prefix on superatom label '" +
                       std::string(token) + "'",
                   line_no),
          line_no);
    atom.label = std::string(rest);
  }
  if (isotope) {
    if (*isotope <= 0)
      throw ParseError(line_msg("non-positive isotope", line_no), line_no);
    atom.isotope = isotope;
  }
}

std::pair<int, int> parse_coord_token(const std::string &token,
                                      std::size_t line_no) {
  std::string compact;
  for (char c : token)
    if (c != ' ' && c != '\t') compact += c;
  if (compact.size() < 5 || compact.front() != '(' || compact.back() != ')')
    throw ParseError(
        line_msg("malformed coordinates '" + token + "'", line_no), line_no);
  const std::string inner = compact.substr(1, compact.size() - 2);
  const std::size_t comma = inner.find(',');
  if (comma == std::string::npos)
    throw ParseError(
        line_msg("malformed coordinates '" + token + "'", line_no), line_no);
  auto parse_component = [&](std::string_view s) {
    if (s.empty())
      throw ParseError(
          line_msg("malformed coordinates '" + token + "'", line_no), line_no);
    int value = 0;
    for (char c : s) {
      if (!ascii_digit(c))
        throw ParseError(line_msg("non-integer coordinate '" + token + "'",
                                  line_no),
                         line_no);
      value = value * 10 + (c - '0');
      if (value > 9999) break;
    }
    if (value > 999)
      throw ParseError(line_msg("coordinate out of 0..999 range", line_no),
                       line_no);
    return value;
  };
  return {parse_component(inner.substr(0, comma)),
          parse_component(inner.substr(comma + 1))};
}

std::optional<CotBondKind> kind_from_text(std::string_view text) {
  if (text == "single") return CotBondKind::Single;
  if (text == "double") return CotBondKind::Double;
  if (text == "triple") return CotBondKind::Triple;
  if (text == "aromatic") return CotBondKind::Aromatic;
  if (text == "wedge") return CotBondKind::Wedge;
  if (text == "dash") return CotBondKind::Dash;
  return std::nullopt;
}

std::vector<std::string> whitespace_split(const std::string &line) {
  std::vector<std::string> fields;
  std::istringstream stream(line);
  std::string field;
  while (stream >> field) fields.push_back(field);
  return fields;
}

std::optional<int> parse_nonneg_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long value = 0;
  for (char c : s) {
    if (!ascii_digit(c)) return std::nullopt;
    value = value * 10 + (c - '0');
    if (value > 100000000L) return std::nullopt;
  }
  return static_cast<int>(value);
}

}  // namespace

CotDecode decode_cot(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        lines.emplace_back(text.substr(start));
        break;
      }
      lines.emplace_back(text.substr(start, end - start));
      start = end + 1;
    }
    for (std::string &line : lines)
      if (!line.empty() && line.back() == '\r') line.pop_back();
  }

  auto is_blank = [](const std::string &line) {
    return line.find_first_not_of(" \t") == std::string::npos;
  };

  std::size_t idx = 0;
  while (idx < lines.size() && is_blank(lines[idx])) ++idx;
  if (idx >= lines.size())
    throw ParseError(line_msg("no steps", 1), 1);
  if (whitespace_split(lines[idx]) != std::vector<std::string>{"<graph>"})
    throw ParseError(line_msg("expected <graph> sentinel", idx + 1), idx + 1);
  ++idx;

  CotDecode result;
  bool atoms_then_bonds = false;
  bool closed = false;
  bool first_content_line = true;

  struct PendingAtom {
    bool expected = false;
    int index = -1;
    std::size_t bond_line = 0;
  };
  PendingAtom pending;

  std::map<int, AtomNode> atoms;
  std::map<int, Coords> coords;
  std::set<std::pair<int, int>> bond_pairs;
  std::vector<BondEdge> bonds;
  std::vector<std::pair<std::size_t, BondEdge>> forward_bonds;  // line, bond

  for (; idx < lines.size(); ++idx) {
    const std::size_t line_no = idx + 1;
    const std::string &line = lines[idx];
    if (is_blank(line)) continue;
    const auto fields = whitespace_split(line);
    if (fields[0] == "</graph>") {
      closed = true;
      ++idx;
      break;
    }
    if (first_content_line && fields[0] == "mode") {
      if (fields.size() == 2 && fields[1] == "atoms-then-bonds") {
        atoms_then_bonds = true;
        first_content_line = false;
        continue;
      }
      throw ParseError(line_msg("unknown mode line", line_no), line_no);
    }

    if (fields[0] == "atom") {
      if (fields.size() < 4)
        throw ParseError(line_msg("malformed atom line", line_no), line_no);
      const auto index = parse_nonneg_int(fields[1]);
      if (!index)
        throw ParseError(line_msg("invalid atom index '" + fields[1] + "'",
                                  line_no),
                         line_no);
      AtomNode atom;
      apply_label_token(fields[2], atom, line_no);
      std::string coord_token;
      for (std::size_t f = 3; f < fields.size(); ++f) coord_token += fields[f];
      const auto [qx, qy] = parse_coord_token(coord_token, line_no);

      if (!atoms_then_bonds && pending.expected) {
        if (*index != pending.index)
          throw ParseError(
              line_msg("bond at line " + std::to_string(pending.bond_line) +
                           " expects atom " + std::to_string(pending.index),
                       line_no),
              line_no);
        pending = PendingAtom{};
      } else if (!atoms_then_bonds && !first_content_line &&
                 atoms.count(*index) == 0) {
        // a new atom may only follow the bond that reaches it
        throw ParseError(
            line_msg("atom " + std::to_string(*index) +
                         " is not reached by a preceding bond",
                     line_no),
            line_no);
      }

      const auto existing = atoms.find(*index);
      if (existing != atoms.end()) {
        const Coords existing_coords = coords.at(*index);
        if (existing->second == atom &&
            existing_coords.x == static_cast<double>(qx) &&
            existing_coords.y == static_cast<double>(qy)) {
          result.warnings.push_back(
              "duplicate atom line skipped (line " + std::to_string(line_no) +
              ")");
          first_content_line = false;
          continue;
        }
        throw ParseError(line_msg("conflicting redeclaration of atom " +
                                      std::to_string(*index),
                                  line_no),
                         line_no);
      }
      atoms.emplace(*index, std::move(atom));
      coords.emplace(*index,
                     Coords{static_cast<double>(qx), static_cast<double>(qy)});
      first_content_line = false;
      continue;
    }

    if (fields[0] == "bond") {
      if (first_content_line && !atoms_then_bonds)
        throw ParseError(line_msg("first step must be an atom", line_no),
                         line_no);
      if (pending.expected)
        throw ParseError(
            line_msg("bond at line " + std::to_string(pending.bond_line) +
                         " expects atom " + std::to_string(pending.index),
                     line_no),
            line_no);
      if (fields.size() < 3)
        throw ParseError(line_msg("malformed bond line", line_no), line_no);
      const auto kind = kind_from_text(fields[1]);
      if (!kind)
        throw ParseError(
            line_msg("unknown bond kind '" + fields[1] + "'", line_no),
            line_no);
      bool ring = false;
      std::size_t payload_end = fields.size();
      if (fields.back() == "ring") {
        ring = true;
        --payload_end;
      }
      std::string arrow;
      for (std::size_t f = 2; f < payload_end; ++f) arrow += fields[f];
      const std::size_t arrow_pos = arrow.find("->");
      if (arrow_pos == std::string::npos)
        throw ParseError(
            line_msg("malformed bond endpoints '" + arrow + "'", line_no),
            line_no);
      const auto from = parse_nonneg_int(arrow.substr(0, arrow_pos));
      const auto to = parse_nonneg_int(arrow.substr(arrow_pos + 2));
      if (!from || !to)
        throw ParseError(
            line_msg("malformed bond endpoints '" + arrow + "'", line_no),
            line_no);
      if (*from == *to)
        throw ParseError(line_msg("bond endpoints are equal", line_no),
                         line_no);

      BondEdge bond;
      bond.from = *from;
      bond.to = *to;
      switch (*kind) {
        case CotBondKind::Single: bond.order = BondOrder::Single; break;
        case CotBondKind::Double: bond.order = BondOrder::Double; break;
        case CotBondKind::Triple: bond.order = BondOrder::Triple; break;
        case CotBondKind::Aromatic: bond.order = BondOrder::Aromatic; break;
        case CotBondKind::Wedge:
          bond.order = BondOrder::Single;
          bond.display = BondDisplay::BeginWedge;
          break;
        case CotBondKind::Dash:
          bond.order = BondOrder::Single;
          bond.display = BondDisplay::BeginDash;
          break;
      }

      const auto pair_key = std::minmax(*from, *to);
      if (bond_pairs.count({pair_key.first, pair_key.second}) != 0) {
        result.warnings.push_back("duplicate bond line skipped (line " +
                                  std::to_string(line_no) + ")");
        first_content_line = false;
        continue;
      }

      if (atoms_then_bonds) {
        bond_pairs.insert({pair_key.first, pair_key.second});
        forward_bonds.push_back({line_no, bond});
      } else {
        if (atoms.count(*from) == 0)
          throw ParseError(line_msg("bond from undeclared atom " +
                                        std::to_string(*from),
                                    line_no),
                           line_no);
        if (ring) {
          if (atoms.count(*to) == 0)
            throw ParseError(line_msg("ring bond to undeclared atom " +
                                          std::to_string(*to),
                                      line_no),
                             line_no);
        } else {
          if (atoms.count(*to) != 0)
            throw ParseError(
                line_msg("non-ring bond to already-visited atom " +
                             std::to_string(*to),
                         line_no),
                line_no);
          pending.expected = true;
          pending.index = *to;
          pending.bond_line = line_no;
        }
        bond_pairs.insert({pair_key.first, pair_key.second});
        bonds.push_back(bond);
      }
      first_content_line = false;
      continue;
    }

    throw ParseError(
        line_msg("unknown step keyword '" + fields[0] + "'", line_no),
        line_no);
  }

  if (!closed)
    throw ParseError(line_msg("missing </graph> sentinel", lines.size()),
                     lines.size());
  if (pending.expected)
    throw ParseError(
        line_msg("bond at line " + std::to_string(pending.bond_line) +
                     " expects atom " + std::to_string(pending.index),
                 pending.bond_line),
        pending.bond_line);

  for (const auto &[line_no, bond] : forward_bonds) {
    if (atoms.count(bond.from) == 0)
      throw ParseError(line_msg("bond from undeclared atom " +
                                    std::to_string(bond.from),
                                line_no),
                       line_no);
    if (atoms.count(bond.to) == 0)
      throw ParseError(
          line_msg("bond to undeclared atom " + std::to_string(bond.to),
                   line_no),
          line_no);
    bonds.push_back(bond);
  }

  // dense index check and graph assembly
  const int p = static_cast<int>(atoms.size());
  for (const auto &[index, atom] : atoms) {
    (void)atom;
    if (index >= p)
      throw ParseError("atom indices are not dense 0..p-1 (missing index " +
                           std::to_string(index < p ? p : p) + ")",
                       lines.size());
  }
  MolGraph graph;
  graph.atoms.reserve(atoms.size());
  for (auto &[index, atom] : atoms) {
    atom.index = index;
    atom.coords = coords.at(index);
    graph.atoms.push_back(std::move(atom));
  }
  graph.bonds = std::move(bonds);

  const auto violations = validate(graph);
  if (!violations.empty())
    throw ParseError("decoded graph is invalid: " + violations.front().message,
                     lines.size());
  result.graph = std::move(graph);
  return result;
}

}  // namespace molcot
