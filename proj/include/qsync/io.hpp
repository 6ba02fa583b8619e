#pragma once

// JSON and CSV encodings shared by the command-line tool and tests.

#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qsync/automata.hpp"
#include "qsync/circuit.hpp"
#include "qsync/kraus.hpp"
#include "qsync/walk.hpp"

namespace qsync::io {

using nlohmann::json;

// --- DFA / word -------------------------------------------------------------

inline json to_json(const Dfa& d) { return {{"n", d.n()}, {"delta_a", d.delta_a()}, {"delta_b", d.delta_b()}}; }

inline Dfa dfa_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  Dfa d(j.at("delta_a").get<std::vector<int>>(), j.at("delta_b").get<std::vector<int>>());
  if (d.n() != n) throw std::invalid_argument("DFA field n disagrees with table length");
  return d;
}

inline json to_json(const Word& w) { return {{"letters", w.str()}, {"order", std::string(to_string(w.order()))}}; }

inline Word word_from_json(const json& j) {
  return Word::parse(j.at("letters").get<std::string>(), parse_order(j.at("order").get<std::string>()));
}

// --- Circuit ----------------------------------------------------------------

inline json to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates()) {
    json controls = json::array();
    for (const Control& ctl : g.controls)
      controls.push_back(json::array({ctl.qubit, ctl.polarity == Polarity::positive ? "+" : "-"}));
    gates.push_back({{"kind", g.kind == GateKind::x ? "x" : "mcx"}, {"target", g.target}, {"controls", controls}});
  }
  return {{"qubits", c.qubits()}, {"gates", gates}};
}

inline Circuit circuit_from_json(const json& j) {
  Circuit c(j.at("qubits").get<int>());
  for (const json& g : j.at("gates")) {
    const auto kind = g.at("kind").get<std::string>();
    const int target = g.at("target").get<int>();
    std::vector<Control> controls;
    if (g.contains("controls"))
      for (const json& ctl : g.at("controls")) {
        const auto pol = ctl.at(1).get<std::string>();
        if (pol != "+" && pol != "-") throw std::invalid_argument("control polarity must be '+' or '-'");
        controls.push_back({ctl.at(0).get<int>(), pol == "+" ? Polarity::positive : Polarity::negative});
      }
    if (kind == "x") {
      if (!controls.empty()) throw std::invalid_argument("x gate cannot have controls");
      c.add(Gate::x(target));
    } else if (kind == "mcx") {
      c.add(Gate::mcx(target, std::move(controls)));
    } else {
      throw std::invalid_argument("unknown gate kind '" + kind + "'");
    }
  }
  return c;
}

// --- Numbers and CSV ----------------------------------------------------------

/// Nine significant digits, locale independent.
inline std::string fmt9(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(9) << v;
  return os.str();
}

inline std::string walk_sweep_csv(const std::vector<SweepPoint>& rows) {
  std::string out = "theta,fidelity\n";
  for (const auto& r : rows) out += fmt9(r.theta) + "," + fmt9(r.fidelity) + "\n";
  return out;
}

inline std::string walk_evolve_csv(const WalkTrace& trace) {
  std::string out = "step,position,probability\n";
  for (std::size_t s = 0; s < trace.distributions.size(); ++s)
    for (std::size_t p = 0; p < trace.distributions[s].size(); ++p)
      out += std::to_string(s) + "," + std::to_string(p) + "," + fmt9(trace.distributions[s][p]) + "\n";
  return out;
}

/// `comments` become leading `# ` lines.
inline std::string kraus_sweep_csv(const std::vector<KrausPoint>& rows, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "phi_a,phi_b,fidelity,purity\n";
  for (const auto& r : rows)
    out += fmt9(r.phi_a) + "," + fmt9(r.phi_b) + "," + fmt9(r.fidelity) + "," + fmt9(r.purity) + "\n";
  return out;
}

/// Parses a CSV body with the given header, skipping `#` comment lines.
inline std::vector<std::vector<double>> parse_csv(std::string_view text, std::string_view expected_header) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != expected_header) throw std::invalid_argument("unexpected CSV header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("CSV header missing");
  return rows;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string checksum(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace qsync::io
