//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "molcot/molfile/molfile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "molcot/core/elements.hpp"

namespace molcot {

namespace {

std::string line_msg(const std::string &what, std::size_t line_no) {
  return what + " (line " + std::to_string(line_no) + ")";
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
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
  // a trailing newline produces one empty tail entry; drop it
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trimmed(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(b, e - b);
}

std::string_view field(const std::string &line, std::size_t col,
                       std::size_t width) {
  if (col >= line.size()) return {};
  return trimmed(std::string_view(line).substr(col, width));
}

std::optional<int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  const char *begin = s.data();
  const char *end = s.data() + s.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

int legacy_charge(int code) {
  switch (code) {
    case 1: return 3;
    case 2: return 2;
    case 3: return 1;
    case 5: return -1;
    case 6: return -2;
    case 7: return -3;
    default: return 0;  // 0 = none, 4 = doublet radical
  }
}

std::vector<int> parse_property_ints(const std::string &line,
                                     std::size_t line_no) {
  std::istringstream stream(line.substr(6));
  std::vector<int> values;
  int v = 0;
  while (stream >> v) values.push_back(v);
  if (values.empty() ||
      values.front() * 2 + 1 != static_cast<int>(values.size()))
    throw ParseError(line_msg("malformed property count", line_no), line_no);
  return values;
}

}  // namespace

MolfileDocument parse_molfile(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 4)
    throw ParseError(line_msg("truncated header", lines.size() + 1),
                     lines.size() + 1);

  MolfileDocument doc;
  doc.title = lines[0];

  const std::string &counts = lines[3];
  if (counts.find("V3000") != std::string::npos)
    throw ParseError(line_msg("V3000 connection tables are unsupported", 4), 4);
  const auto natoms = parse_int(field(counts, 0, 3));
  const auto nbonds = parse_int(field(counts, 3, 3));
  if (!natoms || !nbonds || *natoms < 0 || *nbonds < 0)
    throw ParseError(line_msg("malformed counts line", 4), 4);

  std::size_t line_idx = 4;
  for (int i = 0; i < *natoms; ++i, ++line_idx) {
    if (line_idx >= lines.size())
      throw ParseError(line_msg("truncated atom block", line_idx + 1),
                       line_idx + 1);
    const std::string &line = lines[line_idx];
    const auto x = parse_double(field(line, 0, 10));
    const auto y = parse_double(field(line, 10, 10));
    const auto z = parse_double(field(line, 20, 10));
    const std::string symbol(field(line, 31, 3));
    if (!x || !y || !z || symbol.empty())
      throw ParseError(line_msg("malformed atom line", line_idx + 1),
                       line_idx + 1);
    AtomNode atom;
    atom.index = i;
    atom.label = symbol;
    atom.coords = Coords{*x, *y};  // z ignored, 2D task
    if (const auto code = parse_int(field(line, 36, 3)))
      atom.formal_charge = legacy_charge(*code);
    doc.graph.atoms.push_back(std::move(atom));
  }

  for (int j = 0; j < *nbonds; ++j, ++line_idx) {
    if (line_idx >= lines.size())
      throw ParseError(line_msg("truncated bond block", line_idx + 1),
                       line_idx + 1);
    const std::string &line = lines[line_idx];
    const auto from = parse_int(field(line, 0, 3));
    const auto to = parse_int(field(line, 3, 3));
    const auto type = parse_int(field(line, 6, 3));
    const auto stereo = parse_int(field(line, 9, 3));
    if (!from || !to || !type)
      throw ParseError(line_msg("malformed bond line", line_idx + 1),
                       line_idx + 1);
    if (*from < 1 || *from > *natoms || *to < 1 || *to > *natoms)
      throw ParseError(
          line_msg("bond references out-of-range atom", line_idx + 1),
          line_idx + 1);
    BondEdge bond;
    bond.from = *from - 1;
    bond.to = *to - 1;
    switch (*type) {
      case 1: bond.order = BondOrder::Single; break;
      case 2: bond.order = BondOrder::Double; break;
      case 3: bond.order = BondOrder::Triple; break;
      case 4: bond.order = BondOrder::Aromatic; break;
      default:
        throw ParseError(line_msg("unsupported bond type " +
                                      std::to_string(*type),
                                  line_idx + 1),
                         line_idx + 1);
    }
    if (stereo && *stereo == 1) bond.display = BondDisplay::BeginWedge;
    if (stereo && *stereo == 6) bond.display = BondDisplay::BeginDash;
    doc.graph.bonds.push_back(bond);
  }

  bool charges_reset = false;
  bool isotopes_reset = false;
  for (; line_idx < lines.size(); ++line_idx) {
    const std::string &line = lines[line_idx];
    if (line.rfind("M  END", 0) == 0) break;
    if (line.rfind("M  CHG", 0) == 0) {
      const auto values = parse_property_ints(line, line_idx + 1);
      if (!charges_reset) {
        for (AtomNode &atom : doc.graph.atoms) atom.formal_charge = 0;
        charges_reset = true;
      }
      for (std::size_t k = 1; k + 1 < values.size(); k += 2) {
        const int idx = values[k];
        if (idx < 1 || idx > *natoms)
          throw ParseError(
              line_msg("charge references out-of-range atom", line_idx + 1),
              line_idx + 1);
        doc.graph.atoms[static_cast<std::size_t>(idx - 1)].formal_charge =
            values[k + 1];
      }
      continue;
    }
    if (line.rfind("M  ISO", 0) == 0) {
      const auto values = parse_property_ints(line, line_idx + 1);
      if (!isotopes_reset) {
        for (AtomNode &atom : doc.graph.atoms) atom.isotope.reset();
        isotopes_reset = true;
      }
      for (std::size_t k = 1; k + 1 < values.size(); k += 2) {
        const int idx = values[k];
        if (idx < 1 || idx > *natoms)
          throw ParseError(
              line_msg("isotope references out-of-range atom", line_idx + 1),
              line_idx + 1);
        doc.graph.atoms[static_cast<std::size_t>(idx - 1)].isotope =
            values[k + 1];
      }
      continue;
    }
    if (line.rfind("A  ", 0) == 0) {
      const auto idx = parse_int(trimmed(std::string_view(line).substr(3)));
      if (!idx || *idx < 1 || *idx > *natoms)
        throw ParseError(
            line_msg("alias references out-of-range atom", line_idx + 1),
            line_idx + 1);
      ++line_idx;
      if (line_idx >= lines.size())
        throw ParseError(line_msg("alias line without alias text", line_idx),
                         line_idx);
      const std::string alias(trimmed(lines[line_idx]));
      if (alias.empty())
        throw ParseError(line_msg("empty alias text", line_idx + 1),
                         line_idx + 1);
      doc.graph.atoms[static_cast<std::size_t>(*idx - 1)].label = alias;
      continue;
    }
    doc.properties.push_back(line);
  }

  return doc;
}

std::string write_molfile(const MolfileDocument &doc) {
  require_valid(doc.graph);
  const int natoms = doc.graph.atom_count();
  const int nbonds = doc.graph.bond_count();
  if (natoms > 0 && !doc.graph.has_coords())
    throw std::invalid_argument("molfile atoms require coordinates");
  if (natoms > 999 || nbonds > 999)
    throw std::invalid_argument("counts exceed V2000 fixed columns");
  if (doc.title.find('\n') != std::string::npos)
    throw std::invalid_argument("molfile title must be a single line");

  std::string out;
  char buf[128];
  out += doc.title;
  out += "\n  molcot            2D\n\n";
  std::snprintf(buf, sizeof(buf), "%3d%3d  0  0  0  0  0  0  0  0999 V2000\n",
                natoms, nbonds);
  out += buf;

  for (const AtomNode &atom : doc.graph.atoms) {
    const Coords c = *atom.coords;
    if (std::abs(c.x) >= 100000.0 || std::abs(c.y) >= 100000.0)
      throw std::invalid_argument("coordinate exceeds V2000 fixed columns");
    const bool plain_element = is_element(atom.label);
    const char *symbol = plain_element ? atom.label.c_str() : "*";
    std::snprintf(buf, sizeof(buf),
                  "%10.4f%10.4f%10.4f %-3s 0  0  0  0  0  0  0  0  0  0  0  0\n",
                  c.x, c.y, 0.0, symbol);
    out += buf;
  }

  for (const BondEdge &bond : doc.graph.bonds) {
    int type = 1;
    switch (bond.order) {
      case BondOrder::Single: type = 1; break;
      case BondOrder::Double: type = 2; break;
      case BondOrder::Triple: type = 3; break;
      case BondOrder::Aromatic: type = 4; break;
    }
    int stereo = 0;
    if (bond.display == BondDisplay::BeginWedge) stereo = 1;
    if (bond.display == BondDisplay::BeginDash) stereo = 6;
    std::snprintf(buf, sizeof(buf), "%3d%3d%3d%3d  0  0  0\n", bond.from + 1,
                  bond.to + 1, type, stereo);
    out += buf;
  }

  for (const AtomNode &atom : doc.graph.atoms) {
    if (is_element(atom.label) || is_wildcard_label(atom.label)) continue;
    std::snprintf(buf, sizeof(buf), "A  %3d\n", atom.index + 1);
    out += buf;
    out += atom.label;
    out += "\n";
  }

  auto write_pairs = [&](const char *tag, const std::vector<std::pair<int, int>> &pairs) {
    for (std::size_t start = 0; start < pairs.size(); start += 8) {
      const std::size_t count = std::min<std::size_t>(8, pairs.size() - start);
      std::snprintf(buf, sizeof(buf), "M  %s%3d", tag,
                    static_cast<int>(count));
      out += buf;
      for (std::size_t k = start; k < start + count; ++k) {
        std::snprintf(buf, sizeof(buf), "%4d%4d", pairs[k].first,
                      pairs[k].second);
        out += buf;
      }
      out += "\n";
    }
  };

  std::vector<std::pair<int, int>> charges;
  std::vector<std::pair<int, int>> isotopes;
  for (const AtomNode &atom : doc.graph.atoms) {
    if (atom.formal_charge != 0)
      charges.push_back({atom.index + 1, atom.formal_charge});
    if (atom.isotope) isotopes.push_back({atom.index + 1, *atom.isotope});
  }
  write_pairs("CHG", charges);
  write_pairs("ISO", isotopes);

  for (const std::string &line : doc.properties) {
    out += line;
    out += "\n";
  }
  out += "M  END\n";
  return out;
}

std::vector<std::string> molfile_warnings(const MolfileDocument &doc) {
  std::vector<std::string> warnings;
  for (const std::string &line : doc.properties) {
    if (line.rfind("M  S", 0) == 0)
      warnings.push_back("unparsed Sgroup property line: " + line);
  }
  return warnings;
}

std::vector<std::string> split_sdf(std::string_view text) {
  std::vector<std::string> records;
  std::string current;
  std::size_t start = 0;
  auto flush = [&]() {
    if (current.find_first_not_of(" \t\r\n") != std::string::npos)
      records.push_back(current);
    current.clear();
  };
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = end == std::string_view::npos
                                ? text.substr(start)
                                : text.substr(start, end - start);
    std::string_view stripped = line;
    if (!stripped.empty() && stripped.back() == '\r')
      stripped.remove_suffix(1);
    if (trimmed(stripped) == "$$$$") {
      flush();
    } else {
      current += line;
      current += "\n";
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  flush();
  return records;
}

}  // namespace molcot
