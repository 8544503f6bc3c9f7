//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "molcot/smiles/smiles.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "molcot/core/elements.hpp"

namespace molcot {

namespace {

bool ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool ascii_alpha(char c) { return ascii_upper(c) || ascii_lower(c); }
bool ascii_alnum(char c) { return ascii_alpha(c) || ascii_digit(c); }
bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string offset_msg(const std::string &what, std::size_t offset) {
  return what + " (offset " + std::to_string(offset) + ")";
}

bool is_bare_organic(std::string_view s) {
  return s == "B" || s == "C" || s == "N" || s == "O" || s == "P" ||
         s == "S" || s == "F" || s == "Cl" || s == "Br" || s == "I";
}

bool is_bare_aromatic(char c) {
  return c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's';
}

std::optional<int> take_digits(std::string_view s, std::size_t &k) {
  const std::size_t start = k;
  long value = 0;
  while (k < s.size() && ascii_digit(s[k])) {
    value = value * 10 + (s[k] - '0');
    if (value > 1000000) value = 1000000;
    ++k;
  }
  if (k == start) return std::nullopt;
  return static_cast<int>(value);
}

struct BracketAtomSpec {
  std::string label;
  bool aromatic = false;
  std::optional<int> isotope;
  std::optional<int> explicit_h;
  int charge = 0;
  std::string chirality;
};

bool try_standard_bracket(std::string_view inner, BracketAtomSpec &out) {
  BracketAtomSpec spec;
  std::size_t k = 0;

  if (auto iso = take_digits(inner, k)) {
    if (*iso <= 0) return false;
    spec.isotope = *iso;
  }

  if (k >= inner.size()) return false;
  if (inner[k] == '*') {
    spec.label = "*";
    ++k;
  } else if (ascii_upper(inner[k])) {
    if (k + 1 < inner.size() && ascii_lower(inner[k + 1]) &&
        is_element(inner.substr(k, 2))) {
      spec.label = std::string(inner.substr(k, 2));
      k += 2;
    } else if (is_element(inner.substr(k, 1))) {
      spec.label = std::string(inner.substr(k, 1));
      k += 1;
    } else {
      return false;
    }
  } else if (ascii_lower(inner[k])) {
    if (inner.substr(k).starts_with("se")) {
      spec.label = "Se";
      spec.aromatic = true;
      k += 2;
    } else if (inner.substr(k).starts_with("as")) {
      spec.label = "As";
      spec.aromatic = true;
      k += 2;
    } else if (is_bare_aromatic(inner[k])) {
      spec.label = std::string(1, static_cast<char>(inner[k] - 'a' + 'A'));
      spec.aromatic = true;
      k += 1;
    } else {
      return false;
    }
  } else {
    return false;
  }

  if (k < inner.size() && inner[k] == '@') {
    ++k;
    if (k < inner.size() && inner[k] == '@') {
      spec.chirality = "@@";
      ++k;
    } else {
      spec.chirality = "@";
    }
  }

  if (k < inner.size() && inner[k] == 'H') {
    ++k;
    auto h = take_digits(inner, k);
    spec.explicit_h = h ? *h : 1;
  } else {
    spec.explicit_h = 0;  // bracket atoms fix their hydrogen count
  }

  if (k < inner.size() && (inner[k] == '+' || inner[k] == '-')) {
    const char sign = inner[k];
    ++k;
    if (k < inner.size() && ascii_digit(inner[k])) {
      auto magnitude = take_digits(inner, k);
      spec.charge = (sign == '+') ? *magnitude : -*magnitude;
    } else {
      int count = 1;
      while (k < inner.size() && inner[k] == sign) {
        ++count;
        ++k;
      }
      spec.charge = (sign == '+') ? count : -count;
    }
  }

  if (k != inner.size()) return false;
  out = spec;
  return true;
}

// Superatom fallback: the whole bracket text is the label, after an
// optional trailing charge is split off.
bool try_superatom_bracket(std::string_view inner, BracketAtomSpec &out) {
  std::string_view label = inner;
  int charge = 0;

  std::size_t k = inner.size();
  while (k > 0 && ascii_digit(inner[k - 1])) --k;
  if (k < inner.size() && k > 0 && (inner[k - 1] == '+' || inner[k - 1] == '-')) {
    int magnitude = 0;
    for (std::size_t i = k; i < inner.size(); ++i)
      magnitude = magnitude * 10 + (inner[i] - '0');
    charge = (inner[k - 1] == '+') ? magnitude : -magnitude;
    label = inner.substr(0, k - 1);
  } else {
    std::size_t j = inner.size();
    while (j > 0 && inner[j - 1] == '+') --j;
    if (j < inner.size()) {
      charge = static_cast<int>(inner.size() - j);
      label = inner.substr(0, j);
    } else {
      j = inner.size();
      while (j > 0 && inner[j - 1] == '-') --j;
      if (j < inner.size()) {
        charge = -static_cast<int>(inner.size() - j);
        label = inner.substr(0, j);
      }
    }
  }

  if (label.empty() || !ascii_alpha(label[0])) return false;
  for (char c : label)
    if (!ascii_alnum(c)) return false;

  out = BracketAtomSpec{};
  out.label = std::string(label);
  out.charge = charge;
  return true;
}

BracketAtomSpec parse_bracket(std::string_view lexeme, std::size_t position) {
  const std::string_view inner = lexeme.substr(1, lexeme.size() - 2);
  if (inner.empty()) throw ParseError(offset_msg("empty bracket", position), position);
  BracketAtomSpec spec;
  if (try_standard_bracket(inner, spec)) return spec;
  if (try_superatom_bracket(inner, spec)) return spec;
  const bool chargeish =
      inner.find('+') != std::string_view::npos ||
      inner.find('-') != std::string_view::npos;
  const std::string what =
      chargeish ? "invalid charge syntax in bracket atom '[" +
                      std::string(inner) + "]'"
                : "invalid bracket atom '[" + std::string(inner) + "]'";
  throw ParseError(offset_msg(what, position), position);
}

struct PendingBond {
  bool present = false;
  BondOrder order = BondOrder::Single;
  char slash = 0;
  std::size_t position = 0;
};

BondOrder bond_symbol_order(char c) {
  switch (c) {
    case '=': return BondOrder::Double;
    case '#': return BondOrder::Triple;
    case ':': return BondOrder::Aromatic;
    default: return BondOrder::Single;  // '-', '/', '\\'
  }
}

}  // namespace

std::vector<SmilesToken> lex_smiles(std::string_view text) {
  std::vector<SmilesToken> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '[') {
      std::size_t j = i + 1;
      while (j < n && text[j] != ']' && text[j] != '[') ++j;
      if (j >= n || text[j] != ']')
        throw ParseError(offset_msg("unterminated bracket atom", i), i);
      tokens.push_back({SmilesTokenKind::BracketAtom,
                        std::string(text.substr(i, j - i + 1)), i});
      i = j + 1;
    } else if (c == '(') {
      tokens.push_back({SmilesTokenKind::BranchOpen, "(", i});
      ++i;
    } else if (c == ')') {
      tokens.push_back({SmilesTokenKind::BranchClose, ")", i});
      ++i;
    } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' ||
               c == '\\') {
      tokens.push_back({SmilesTokenKind::BondSymbol, std::string(1, c), i});
      ++i;
    } else if (c == '.') {
      tokens.push_back({SmilesTokenKind::Dot, ".", i});
      ++i;
    } else if (ascii_digit(c)) {
      tokens.push_back({SmilesTokenKind::RingClosure, std::string(1, c), i});
      ++i;
    } else if (c == '%') {
      if (i + 2 >= n || !ascii_digit(text[i + 1]) || !ascii_digit(text[i + 2]))
        throw ParseError(
            offset_msg("'%' ring closure requires two digits", i), i);
      tokens.push_back({SmilesTokenKind::RingClosure,
                        std::string(text.substr(i, 3)), i});
      i += 3;
    } else if (c == '*') {
      tokens.push_back({SmilesTokenKind::OrganicAtom, "*", i});
      ++i;
    } else if (ascii_upper(c)) {
      std::string two;
      if (i + 1 < n) two = std::string(text.substr(i, 2));
      if (two == "Cl" || two == "Br") {
        tokens.push_back({SmilesTokenKind::OrganicAtom, two, i});
        i += 2;
      } else if (is_bare_organic(std::string_view(&c, 1))) {
        tokens.push_back({SmilesTokenKind::OrganicAtom, std::string(1, c), i});
        ++i;
      } else {
        throw ParseError(
            offset_msg(std::string("atom '") + c +
                           "' must be written as a bracket atom",
                       i),
            i);
      }
    } else if (ascii_lower(c)) {
      if (is_bare_aromatic(c)) {
        tokens.push_back({SmilesTokenKind::OrganicAtom, std::string(1, c), i});
        ++i;
      } else {
        throw ParseError(
            offset_msg(std::string("unexpected character '") + c + "'", i), i);
      }
    } else {
      throw ParseError(
          offset_msg(std::string("unexpected character '") + c + "'", i), i);
    }
  }
  return tokens;
}

MolGraph parse_smiles(std::string_view text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && ascii_space(text[begin])) ++begin;
  while (end > begin && ascii_space(text[end - 1])) --end;
  const std::string_view body = text.substr(begin, end - begin);
  if (body.empty()) throw ParseError(offset_msg("empty SMILES input", 0), 0);
  for (std::size_t k = 0; k < body.size(); ++k)
    if (ascii_space(body[k]))
      throw ParseError(offset_msg("whitespace inside SMILES", begin + k),
                       begin + k);

  auto tokens = lex_smiles(body);
  for (SmilesToken &token : tokens) token.position += begin;

  MolGraph graph;
  std::vector<int> branch_stack;
  std::vector<std::size_t> branch_positions;
  int prev = -1;
  PendingBond pending;
  bool last_was_dot = false;

  struct RingOpen {
    int atom;
    PendingBond pending;
    std::size_t position;
  };
  std::map<int, RingOpen> rings;
  std::set<std::pair<int, int>> bond_pairs;

  auto add_bond = [&](int u, int v, const PendingBond &pb, std::size_t pos) {
    if (u == v) throw ParseError(offset_msg("ring bond to self", pos), pos);
    const auto key = std::minmax(u, v);
    if (!bond_pairs.insert({key.first, key.second}).second)
      throw ParseError(offset_msg("duplicate bond between atoms " +
                                      std::to_string(key.first) + " and " +
                                      std::to_string(key.second),
                                  pos),
                       pos);
    BondEdge bond;
    bond.from = u;
    bond.to = v;
    if (pb.present) {
      bond.order = pb.order;
      bond.slash = pb.slash;
    } else {
      const bool both_aromatic =
          graph.atoms[static_cast<std::size_t>(u)].aromatic &&
          graph.atoms[static_cast<std::size_t>(v)].aromatic;
      bond.order = both_aromatic ? BondOrder::Aromatic : BondOrder::Single;
    }
    graph.bonds.push_back(bond);
  };

  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const SmilesToken &token = tokens[t];
    last_was_dot = false;
    switch (token.kind) {
      case SmilesTokenKind::OrganicAtom:
      case SmilesTokenKind::BracketAtom: {
        AtomNode atom;
        if (token.kind == SmilesTokenKind::OrganicAtom) {
          if (token.lexeme == "*") {
            atom.label = "*";
          } else if (ascii_lower(token.lexeme[0])) {
            atom.label =
                std::string(1, static_cast<char>(token.lexeme[0] - 'a' + 'A'));
            atom.aromatic = true;
          } else {
            atom.label = token.lexeme;
          }
        } else {
          const BracketAtomSpec spec = parse_bracket(token.lexeme, token.position);
          atom.label = spec.label;
          atom.aromatic = spec.aromatic;
          atom.isotope = spec.isotope;
          atom.explicit_h = spec.explicit_h;
          atom.formal_charge = spec.charge;
          atom.chirality = spec.chirality;
        }
        atom.index = graph.atom_count();
        graph.atoms.push_back(std::move(atom));
        const int cur = graph.atom_count() - 1;
        if (prev >= 0) {
          add_bond(prev, cur, pending, token.position);
        } else if (pending.present) {
          throw ParseError(offset_msg("bond symbol with no preceding atom",
                                      pending.position),
                           pending.position);
        }
        pending = PendingBond{};
        prev = cur;
        break;
      }
      case SmilesTokenKind::BondSymbol: {
        if (prev < 0)
          throw ParseError(offset_msg("bond symbol with no preceding atom",
                                      token.position),
                           token.position);
        if (pending.present)
          throw ParseError(
              offset_msg("two consecutive bond symbols", token.position),
              token.position);
        pending.present = true;
        pending.order = bond_symbol_order(token.lexeme[0]);
        pending.slash = (token.lexeme[0] == '/' || token.lexeme[0] == '\\')
                            ? token.lexeme[0]
                            : 0;
        pending.position = token.position;
        break;
      }
      case SmilesTokenKind::BranchOpen: {
        if (prev < 0)
          throw ParseError(
              offset_msg("branch with no preceding atom", token.position),
              token.position);
        if (pending.present)
          throw ParseError(
              offset_msg("bond symbol before '('", pending.position),
              pending.position);
        branch_stack.push_back(prev);
        branch_positions.push_back(token.position);
        break;
      }
      case SmilesTokenKind::BranchClose: {
        if (branch_stack.empty())
          throw ParseError(
              offset_msg("unbalanced ')'", token.position), token.position);
        if (pending.present)
          throw ParseError(
              offset_msg("dangling bond symbol before ')'", pending.position),
              pending.position);
        prev = branch_stack.back();
        branch_stack.pop_back();
        branch_positions.pop_back();
        break;
      }
      case SmilesTokenKind::RingClosure: {
        if (prev < 0)
          throw ParseError(offset_msg("ring closure with no preceding atom",
                                      token.position),
                           token.position);
        const int digit =
            token.lexeme[0] == '%'
                ? (token.lexeme[1] - '0') * 10 + (token.lexeme[2] - '0')
                : token.lexeme[0] - '0';
        auto it = rings.find(digit);
        if (it == rings.end()) {
          rings.emplace(digit, RingOpen{prev, pending, token.position});
        } else {
          const RingOpen open = it->second;
          rings.erase(it);
          PendingBond effective;
          if (open.pending.present && pending.present) {
            if (open.pending.order != pending.order)
              throw ParseError(offset_msg("ring closure bond symbols disagree",
                                          token.position),
                               token.position);
            effective = pending;
          } else {
            effective = open.pending.present ? open.pending : pending;
          }
          add_bond(open.atom, prev, effective, token.position);
        }
        pending = PendingBond{};
        break;
      }
      case SmilesTokenKind::Dot: {
        if (pending.present)
          throw ParseError(
              offset_msg("bond symbol before '.'", pending.position),
              pending.position);
        if (prev < 0)
          throw ParseError(
              offset_msg("'.' with no preceding atom", token.position),
              token.position);
        prev = -1;
        last_was_dot = true;
        break;
      }
    }
  }

  if (pending.present)
    throw ParseError(
        offset_msg("dangling bond symbol at end of input", pending.position),
        pending.position);
  if (!branch_stack.empty())
    throw ParseError(
        offset_msg("unbalanced '('", branch_positions.back()),
        branch_positions.back());
  if (!rings.empty()) {
    const auto &first = *rings.begin();
    throw ParseError(offset_msg("unmatched ring closure digit " +
                                    std::to_string(first.first),
                                first.second.position),
                     first.second.position);
  }
  if (last_was_dot) {
    const std::size_t pos = tokens.back().position;
    throw ParseError(offset_msg("trailing '.'", pos), pos);
  }
  return graph;
}

namespace {

std::string lowercase_copy(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    if (ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string charge_suffix(int charge) {
  if (charge == 0) return "";
  std::string out(1, charge > 0 ? '+' : '-');
  const int magnitude = charge > 0 ? charge : -charge;
  if (magnitude != 1) out += std::to_string(magnitude);
  return out;
}

bool needs_bracket(const AtomNode &atom) {
  if (is_superatom_label(atom.label)) return true;
  if (is_wildcard_label(atom.label))
    return atom.formal_charge != 0 || !atom.chirality.empty() ||
           (atom.explicit_h && *atom.explicit_h > 0);
  if (!is_organic_subset(atom.label)) return true;
  if (atom.isotope || atom.formal_charge != 0 || atom.explicit_h.has_value() ||
      !atom.chirality.empty())
    return true;
  if (atom.aromatic && !is_bare_aromatic(lowercase_copy(atom.label)[0]))
    return true;
  return false;
}

std::string atom_token(const AtomNode &atom) {
  if (!needs_bracket(atom))
    return atom.aromatic ? lowercase_copy(atom.label) : atom.label;
  std::string out = "[";
  if (is_superatom_label(atom.label)) {
    // superatoms carry label and charge only
    out += atom.label;
    out += charge_suffix(atom.formal_charge);
    out += "]";
    return out;
  }
  if (atom.isotope) out += std::to_string(*atom.isotope);
  out += atom.aromatic ? lowercase_copy(atom.label) : atom.label;
  out += atom.chirality;
  if (atom.explicit_h && *atom.explicit_h > 0) {
    out += "H";
    if (*atom.explicit_h > 1) out += std::to_string(*atom.explicit_h);
  }
  out += charge_suffix(atom.formal_charge);
  out += "]";
  return out;
}

struct WriterState {
  const MolGraph &graph;
  std::vector<std::vector<std::pair<int, int>>> neighbors;  // (atom, bond idx)
  std::vector<bool> visited;
  std::vector<std::vector<int>> tree_children;    // bond indices
  std::vector<std::vector<int>> ring_closes;      // bond idx closing at atom
  std::vector<std::vector<int>> ring_opens;       // bond idx opening at atom
  std::vector<int> ring_digit;                    // digit per bond idx
  std::vector<bool> digit_in_use;
  std::string out;

  explicit WriterState(const MolGraph &g)
      : graph(g),
        neighbors(g.atoms.size()),
        visited(g.atoms.size(), false),
        tree_children(g.atoms.size()),
        ring_closes(g.atoms.size()),
        ring_opens(g.atoms.size()),
        ring_digit(g.bonds.size(), -1),
        digit_in_use(100, false) {
    for (int j = 0; j < g.bond_count(); ++j) {
      const BondEdge &bond = g.bonds[static_cast<std::size_t>(j)];
      neighbors[static_cast<std::size_t>(bond.from)].push_back({bond.to, j});
      neighbors[static_cast<std::size_t>(bond.to)].push_back({bond.from, j});
    }
    for (auto &list : neighbors) std::sort(list.begin(), list.end());
  }

  int other_end(int bond_idx, int from) const {
    const BondEdge &bond = graph.bonds[static_cast<std::size_t>(bond_idx)];
    return bond.from == from ? bond.to : bond.from;
  }

  // Pass 1: classify tree vs ring edges in emission order.
  void classify(int root) {
    std::vector<bool> edge_seen(graph.bonds.size(), false);
    struct Frame {
      int atom;
      std::size_t next = 0;
    };
    std::vector<Frame> stack{{root}};
    visited[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
      Frame &frame = stack.back();
      const auto &adj = neighbors[static_cast<std::size_t>(frame.atom)];
      if (frame.next >= adj.size()) {
        stack.pop_back();
        continue;
      }
      const auto [next_atom, bond_idx] = adj[frame.next++];
      if (edge_seen[static_cast<std::size_t>(bond_idx)]) continue;
      edge_seen[static_cast<std::size_t>(bond_idx)] = true;
      if (visited[static_cast<std::size_t>(next_atom)]) {
        // ring closure: opens at the earlier endpoint, closes here
        ring_opens[static_cast<std::size_t>(next_atom)].push_back(bond_idx);
        ring_closes[static_cast<std::size_t>(frame.atom)].push_back(bond_idx);
      } else {
        visited[static_cast<std::size_t>(next_atom)] = true;
        tree_children[static_cast<std::size_t>(frame.atom)].push_back(bond_idx);
        stack.push_back({next_atom});
      }
    }
  }

  std::string bond_string(int bond_idx, int from_atom) const {
    const BondEdge &bond = graph.bonds[static_cast<std::size_t>(bond_idx)];
    const bool both_aromatic =
        graph.atoms[static_cast<std::size_t>(bond.from)].aromatic &&
        graph.atoms[static_cast<std::size_t>(bond.to)].aromatic;
    switch (bond.order) {
      case BondOrder::Double: return "=";
      case BondOrder::Triple: return "#";
      case BondOrder::Aromatic: return both_aromatic ? "" : ":";
      case BondOrder::Single:
        if (bond.slash != 0) {
          const bool forward = bond.from == from_atom;
          const char c = forward ? bond.slash
                                 : (bond.slash == '/' ? '\\' : '/');
          return std::string(1, c);
        }
        return both_aromatic ? "-" : "";
    }
    return "";
  }

  std::string digit_token(int digit) const {
    if (digit <= 9) return std::to_string(digit);
    return "%" + std::to_string(digit);
  }

  int allocate_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!digit_in_use[static_cast<std::size_t>(d)]) {
        digit_in_use[static_cast<std::size_t>(d)] = true;
        return d;
      }
    }
    throw std::invalid_argument("too many simultaneously open ring closures");
  }

  // Pass 2: emit, allocating ring digits at open ends.
  void emit(int atom) {
    out += atom_token(graph.atoms[static_cast<std::size_t>(atom)]);
    for (int bond_idx : ring_closes[static_cast<std::size_t>(atom)]) {
      const int digit = ring_digit[static_cast<std::size_t>(bond_idx)];
      out += bond_string(bond_idx, atom);
      out += digit_token(digit);
      digit_in_use[static_cast<std::size_t>(digit)] = false;
    }
    for (int bond_idx : ring_opens[static_cast<std::size_t>(atom)]) {
      const int digit = allocate_digit();
      ring_digit[static_cast<std::size_t>(bond_idx)] = digit;
      out += digit_token(digit);
    }
    const auto &children = tree_children[static_cast<std::size_t>(atom)];
    for (std::size_t i = 0; i < children.size(); ++i) {
      const int bond_idx = children[i];
      const int child = other_end(bond_idx, atom);
      const bool last = i + 1 == children.size();
      if (!last) out += "(";
      out += bond_string(bond_idx, atom);
      emit(child);
      if (!last) out += ")";
    }
  }
};

}  // namespace

std::string write_smiles(const MolGraph &graph) {
  require_valid(graph);
  if (graph.atoms.empty()) return "";

  WriterState state(graph);
  bool first = true;
  for (int start = 0; start < graph.atom_count(); ++start) {
    if (state.visited[static_cast<std::size_t>(start)]) continue;
    if (!first) state.out += ".";
    first = false;
    state.classify(start);
    state.emit(start);
  }
  return state.out;
}

int implicit_h_count(int atom_index, const MolGraph &graph) {
  const AtomNode &atom = graph.atoms.at(static_cast<std::size_t>(atom_index));
  if (atom.explicit_h) return *atom.explicit_h;
  if (!is_element(atom.label)) return 0;
  const int valence = organic_subset_valence(atom.label);
  if (valence < 0) return 0;

  int order_sum_halves = 0;  // bond orders in half units
  for (const BondEdge &bond : graph.bonds) {
    if (bond.from != atom_index && bond.to != atom_index) continue;
    switch (bond.order) {
      case BondOrder::Single: order_sum_halves += 2; break;
      case BondOrder::Double: order_sum_halves += 4; break;
      case BondOrder::Triple: order_sum_halves += 6; break;
      case BondOrder::Aromatic: order_sum_halves += 3; break;
    }
  }
  const int used = order_sum_halves / 2;
  return std::max(valence - used, 0);
}

}  // namespace molcot
