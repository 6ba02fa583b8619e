#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsync/io.hpp"
#include "qsync/qsync.hpp"

namespace qsync::cli {
namespace {

using nlohmann::json;

/// Reads nested JSON objects as option values; nesting follows the
/// subcommand path, e.g. {"kraus": {"run": {"n": 5}}}.
class ConfigJson : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("JSON config must be an object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static void flatten(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        auto next = parents;
        next.push_back(it.key());
        flatten(*it, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_string())
        item.inputs = {it->get<std::string>()};
      else if (it->is_boolean())
        item.inputs = {it->get<bool>() ? "true" : "false"};
      else if (it->is_number())
        item.inputs = {it->dump()};
      else
        throw CLI::ConversionError("unsupported config value for '" + it.key() + "'");
      items.push_back(std::move(item));
    }
  }
};

/// Validation failure that maps to exit code 1.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Domain-level negative result, exit code 2.
struct NegativeResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError("invalid integer '" + cell + "' in list");
    }
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + cell + "' in list");
    }
  }
  return out;
}

/// "uniform", "basis:k", or comma-separated real amplitudes (normalized).
StateVector parse_pure_init(const std::string& spec, int n) {
  const auto dim = static_cast<std::size_t>(n);
  if (spec == "uniform") return StateVector::uniform(dim);
  if (spec.rfind("basis:", 0) == 0) {
    const auto k = parse_int_list(spec.substr(6));
    if (k.size() != 1 || k[0] < 0 || k[0] >= n) throw UsageError("basis index out of range in '" + spec + "'");
    return StateVector::basis(dim, static_cast<std::size_t>(k[0]));
  }
  const auto amps = parse_real_list(spec);
  if (amps.size() != dim)
    throw UsageError("expected " + std::to_string(n) + " amplitudes, got " + std::to_string(amps.size()));
  std::vector<Complex> c(amps.begin(), amps.end());
  StateVector s(std::move(c));
  if (s.norm_squared() == 0.0) throw UsageError("initial amplitudes are all zero");
  return s.normalize();
}

InitialState parse_mixed_init(const std::string& s) {
  if (s == "mixed") return InitialState::maximally_mixed;
  if (s == "uniform") return InitialState::uniform_superposition;
  throw UsageError("init must be 'mixed' or 'uniform'");
}

/// Options naming a member of the DFA family.
struct FamilyOptions {
  int n = 4;
  std::string preset = "basic";
  std::string pi;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of states")->capture_default_str();
    cmd->add_option("--preset", preset, "relabelling preset: basic | reversed")->capture_default_str();
    cmd->add_option("--pi", pi, "custom relabelling, comma separated (overrides --preset)");
  }

  PermutationSpec spec() const {
    if (!pi.empty()) {
      auto values = parse_int_list(pi);
      if (static_cast<int>(values.size()) != n)
        throw UsageError("--pi has " + std::to_string(values.size()) + " entries, --n is " + std::to_string(n));
      return PermutationSpec(std::move(values));
    }
    return PermutationSpec::preset(preset, n);
  }

  json describe(const PermutationSpec& s) const { return {{"n", n}, {"pi", s.values()}}; }
};

/// Where the primary output goes, plus an optional manifest.
struct OutputOptions {
  std::string out_path;
  std::string manifest_path;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write primary output to this file");
    cmd->add_option("--manifest", manifest_path, "write a run manifest (JSON) to this file");
  }

  void emit(const std::string& name, const json& params, const std::string& body, std::ostream& out) const {
    if (out_path.empty()) {
      out << body;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw UsageError("cannot open '" + out_path + "' for writing");
      f << body;
    }
    if (!manifest_path.empty()) {
      const auto now = std::chrono::system_clock::now().time_since_epoch();
      json m = {{"subcommand", name},
                {"parameters", params},
                {"version", kVersion},
                {"checksum", io::checksum(body)},
                {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(now).count()}};
      std::ofstream f(manifest_path, std::ios::binary);
      if (!f) throw UsageError("cannot open '" + manifest_path + "' for writing");
      f << m.dump(2) << '\n';
    }
  }
};

/// Word given explicitly, or derived from the DFA when absent.
struct WordOptions {
  std::string letters;
  std::string order;
  std::string default_order;

  explicit WordOptions(std::string def) : order(def), default_order(std::move(def)) {}

  void add_to(CLI::App* cmd) {
    cmd->add_option("--word", letters, "word over {a,b}");
    cmd->add_option("--order", order, "how --word is read: operator | application")->capture_default_str();
  }

  Order parsed_order() const {
    try {
      return parse_order(order);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  std::optional<Word> given() const {
    if (letters.empty()) return std::nullopt;
    try {
      return Word::parse(letters, parsed_order());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

Word oracle_word(const Dfa& dfa) {
  auto w = shortest_sync_word(dfa);
  if (!w) throw NegativeResult("no synchronizing word exists for this DFA");
  return *w;
}

// --- dfa word ---------------------------------------------------------------

struct DfaWordCmd {
  FamilyOptions family;
  bool custom_cycle = false;
  std::string dfa_file;
  int max_states = kDefaultSearchBound;
  OutputOptions output;

  void add_to(CLI::App* parent) {
    auto* cmd = parent->add_subcommand("word", "shortest synchronizing word (breadth-first search)");
    family.add_to(cmd);
    cmd->add_flag("--custom-cycle", custom_cycle, "use the pure rotation DFA (both letters rotate)");
    cmd->add_option("--dfa", dfa_file, "load the DFA from a JSON file {n, delta_a, delta_b}");
    cmd->add_option("--max-states", max_states, "search bound on the number of states")->capture_default_str();
    output.add_to(cmd);
    cmd->callback([this] { ran = true; });
  }

  bool ran = false;

  int execute(std::ostream& out) const {
    json params;
    std::optional<PermutationSpec> spec;
    Dfa dfa = [&] {
      if (!dfa_file.empty()) {
        std::ifstream f(dfa_file);
        if (!f) throw UsageError("cannot read '" + dfa_file + "'");
        try {
          json j = json::parse(f);
          params = {{"dfa", j}};
          return io::dfa_from_json(j);
        } catch (const json::exception& e) {
          throw UsageError(std::string("invalid DFA JSON: ") + e.what());
        }
      }
      if (custom_cycle) {
        if (family.n < 1) throw UsageError("--n must be positive");
        params = {{"n", family.n}, {"custom_cycle", true}};
        return pure_cycle(family.n);
      }
      spec = family.spec();
      params = family.describe(*spec);
      return build_family(*spec);
    }();
    params["max_states"] = max_states;

    auto w = shortest_sync_word(dfa, max_states);
    if (!w) {
      json body = {{"word", nullptr}, {"length", nullptr}, {"target", nullptr}, {"synchronizing", false}};
      output.emit("dfa word", params, body.dump(2) + "\n", out);
      return kNegative;
    }
    const Word op = w->converted(Order::operator_order);
    const int target = *is_synchronizing(dfa, *w);
    bool matches = false;
    json closed = nullptr;
    if (dfa.n() >= 2) {
      const Word cf = closed_form_word(dfa.n());
      closed = cf.str();
      matches = cf.size() == w->size() && is_synchronizing(dfa, cf).has_value();
    }
    json body = {{"word", op.str()},
                 {"order", std::string(to_string(op.order()))},
                 {"length", op.size()},
                 {"target", target},
                 {"synchronizing", true},
                 {"closed_form", closed},
                 {"matches_closed_form", matches}};
    output.emit("dfa word", params, body.dump(2) + "\n", out);
    return kSuccess;
  }
};

// --- unitary run ------------------------------------------------------------

struct UnitaryRunCmd {
  FamilyOptions family;
  WordOptions word{"operator"};
  std::string init = "uniform";
  OutputOptions output;
  bool ran = false;

  static constexpr int kMaxJointNodes = 16;

  void add_to(CLI::App* parent) {
    auto* cmd = parent->add_subcommand("run", "ancilla protocol on a system state");
    family.add_to(cmd);
    word.add_to(cmd);
    cmd->add_option("--init", init, "uniform | basis:k | comma-separated amplitudes")->capture_default_str();
    output.add_to(cmd);
    cmd->callback([this] { ran = true; });
  }

  int execute(std::ostream& out) const {
    const PermutationSpec spec = family.spec();
    const Dfa dfa = build_family(spec);
    const auto given = word.given();
    const Word w = given ? *given : oracle_word(dfa);
    const StateVector psi = parse_pure_init(init, spec.n());
    const std::optional<int> target = is_synchronizing(dfa, w);

    json params = family.describe(spec);
    params["word"] = io::to_json(w);
    params["init"] = init;

    json body;
    body["word"] = io::to_json(w.converted(Order::operator_order));
    body["steps"] = w.size();
    body["target"] = target ? json(*target) : json(nullptr);

    DensityMatrix reduced;
    json amplitudes = nullptr;
    bool joint_ok = spec.n() <= kMaxJointNodes;
    if (joint_ok) {
      try {
        check_joint_capacity(w.size(), spec.n());
      } catch (const CapacityError&) {
        joint_ok = false;
      }
    }
    if (joint_ok) {
      const ProtocolRun run = run_protocol(spec, w, psi);
      reduced = run.reduced_system;
      amplitudes = json::array();
      const std::size_t regs = std::size_t{1} << w.size();
      for (std::size_t r = 0; r < regs; ++r)
        for (int p = 0; p < spec.n(); ++p) {
          const Complex a = run.amplitude(r, p);
          if (std::abs(a) <= 1e-12) continue;
          amplitudes.push_back({{"ancillas", ancilla_string(r, w.size())},
                                {"position", p},
                                {"re", std::stod(io::fmt9(a.real()))},
                                {"im", std::stod(io::fmt9(a.imag()))}});
        }
    } else {
      reduced = run_traced(spec, w, DensityMatrix::pure(psi));
    }

    std::vector<double> diag;
    for (double d : reduced.diagonal()) diag.push_back(std::stod(io::fmt9(d)));
    body["diagonal"] = diag;
    body["fidelity"] =
        target ? json(std::stod(io::fmt9(basis_fidelity(reduced, static_cast<std::size_t>(*target))))) : json(nullptr);
    body["purity"] = std::stod(io::fmt9(purity(reduced)));
    body["ancilla_amplitudes"] = amplitudes;
    output.emit("unitary run", params, body.dump(2) + "\n", out);
    return kSuccess;
  }
};

// --- circuit emit / check ---------------------------------------------------

struct CircuitCmd {
  FamilyOptions family;
  std::string format = "qasm";
  std::string part = "full";
  OutputOptions output;
  bool emit_ran = false;
  bool check_ran = false;

  void add_to(CLI::App* parent) {
    auto* emit = parent->add_subcommand("emit", "write the compiled step circuit");
    family.add_to(emit);
    emit->add_option("--format", format, "json | qasm")->capture_default_str();
    emit->add_option("--part", part, "full | T | S")->capture_default_str();
    output.add_to(emit);
    emit->callback([this] { emit_ran = true; });

    auto* check = parent->add_subcommand("check", "compare the compiled circuit with the step permutation");
    family.add_to(check);
    output.add_to(check);
    check->callback([this] { check_ran = true; });
  }

  int emit(std::ostream& out) const {
    const PermutationSpec spec = family.spec();
    const CompiledStep step = build_step_circuit(spec);
    const Circuit* c = &step.full;
    if (part == "T" || part == "t")
      c = &step.t_circuit;
    else if (part == "S" || part == "s")
      c = &step.s_circuit;
    else if (part != "full")
      throw UsageError("--part must be full, T or S");

    json params = family.describe(spec);
    params["format"] = format;
    params["part"] = part;
    std::string body;
    if (format == "qasm") {
      auto header = qasm_header(spec);
      header.push_back("part: " + part);
      body = export_qasm(*c, header);
    } else if (format == "json") {
      body = io::to_json(*c).dump(2) + "\n";
    } else {
      throw UsageError("--format must be json or qasm");
    }
    output.emit("circuit emit", params, body, out);
    return kSuccess;
  }

  int check(std::ostream& out) const {
    const PermutationSpec spec = family.spec();
    const CompiledStep step = build_step_circuit(spec);
    const double dev = max_abs_diff(unitary_of(step.full).matrix(), build_step_unitary(spec).op.matrix());
    const bool ok = dev <= kAlgebraTol;
    std::ostringstream devs;
    devs << std::scientific << std::setprecision(3) << dev;
    json body = {{"n", spec.n()},
                 {"pi", spec.values()},
                 {"qubits", step.full.qubits()},
                 {"gates", step.full.size()},
                 {"max_deviation", devs.str()},
                 {"equivalent", ok}};
    output.emit("circuit check", family.describe(spec), body.dump(2) + "\n", out);
    return ok ? kSuccess : kNegative;
  }
};

// --- walk sweep / evolve ----------------------------------------------------

// Upper angle bounds accept values rounded to four decimals (1.5708 for pi/2)
// and clamp them to the exact bound.
constexpr double kAngleSlack = 5e-5;

struct WalkCmd {
  int n = 11;
  WordOptions word{"operator"};
  std::string word_source = "oracle";
  std::optional<int> target;
  double theta_min = 0.0;
  double theta_max = M_PI / 2;
  int points = 64;
  double theta = M_PI / 11;
  std::string init = "uniform";
  OutputOptions output;
  bool sweep_ran = false;
  bool evolve_ran = false;

  void add_common(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of nodes (>= 4)")->capture_default_str();
    word.add_to(cmd);
    cmd->add_option("--word-source", word_source, "default word when --word is absent: oracle | pattern")
        ->capture_default_str();
    cmd->add_option("--target", target, "basis state for fidelity (default: the word's classical target)");
    output.add_to(cmd);
  }

  void add_to(CLI::App* parent) {
    auto* sweep = parent->add_subcommand("sweep", "final fidelity as a function of the coin angle");
    add_common(sweep);
    sweep->add_option("--theta-min", theta_min, "first grid angle (radians)")->capture_default_str();
    sweep->add_option("--theta-max", theta_max, "last grid angle (radians)")->capture_default_str();
    sweep->add_option("--points", points, "number of grid points")->capture_default_str();
    sweep->callback([this] { sweep_ran = true; });

    auto* evolve = parent->add_subcommand("evolve", "position distribution after every step");
    add_common(evolve);
    evolve->add_option("--theta", theta, "coin angle (radians)")->capture_default_str();
    evolve->add_option("--init", init, "uniform | basis:k | comma-separated amplitudes")->capture_default_str();
    evolve->callback([this] { evolve_ran = true; });
  }

  Word resolve_word() const {
    if (n < 4) throw UsageError("walk needs --n >= 4");
    if (auto w = word.given()) return *w;
    if (word_source == "oracle") return default_walk_word(n);
    if (word_source == "pattern") return pattern_walk_word(n);
    throw UsageError("--word-source must be oracle or pattern");
  }

  json base_params(const Word& w) const {
    json p = {{"n", n}, {"word", io::to_json(w)}};
    p["target"] = target ? json(*target) : json(nullptr);
    return p;
  }

  int sweep(std::ostream& out) const {
    const Word w = resolve_word();
    if (points < 1) throw UsageError("--points must be positive");
    if (theta_min < 0 || theta_max > M_PI / 2 + kAngleSlack || theta_min > theta_max)
      throw UsageError("theta range must lie within [0, pi/2]");
    auto grid = linspace(theta_min, std::min(theta_max, M_PI / 2), static_cast<std::size_t>(points));
    const auto rows = fidelity_sweep(n, w, grid, target, threads_from_env());
    json params = base_params(w);
    params["theta_min"] = theta_min;
    params["theta_max"] = theta_max;
    params["points"] = points;
    output.emit("walk sweep", params, io::walk_sweep_csv(rows), out);
    return kSuccess;
  }

  int evolve(std::ostream& out) const {
    const Word w = resolve_word();
    const WalkConfig cfg{n, w, theta, target};
    const WalkTrace trace = qsync::evolve(cfg, parse_pure_init(init, n));
    json params = base_params(w);
    params["theta"] = theta;
    params["init"] = init;
    output.emit("walk evolve", params, io::walk_evolve_csv(trace), out);
    return kSuccess;
  }
};

// --- kraus run / sweep ------------------------------------------------------

struct KrausCmd {
  int n = 5;
  double phi_a = M_PI / 2;
  double phi_b = M_PI / 2;
  std::string init = "mixed";
  WordOptions word{"application"};
  std::optional<int> target;
  int grid = 101;
  double phi_max = M_PI;
  OutputOptions output;
  bool run_ran = false;
  bool sweep_ran = false;

  void add_common(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of states (>= 3)")->capture_default_str();
    cmd->add_option("--init", init, "mixed | uniform")->capture_default_str();
    word.add_to(cmd);
    cmd->add_option("--target", target, "basis state for fidelity (default: the word's classical target)");
    output.add_to(cmd);
  }

  void add_to(CLI::App* parent) {
    auto* run = parent->add_subcommand("run", "apply the channel word once");
    add_common(run);
    run->add_option("--phia", phi_a, "angle of the A channel (radians)")->capture_default_str();
    run->add_option("--phib", phi_b, "angle of the B channel (radians)")->capture_default_str();
    run->callback([this] { run_ran = true; });

    auto* sweep = parent->add_subcommand("sweep", "fidelity and purity over a (phi_a, phi_b) grid");
    add_common(sweep);
    sweep->add_option("--grid", grid, "points per axis")->capture_default_str();
    sweep->add_option("--phi-max", phi_max, "largest grid angle (radians, <= pi)")->capture_default_str();
    sweep->callback([this] { sweep_ran = true; });
  }

  Word resolve_word() const {
    if (n < 3) throw UsageError("kraus needs --n >= 3");
    return word.given().value_or(Word::parse("abab", word.parsed_order()));
  }

  int resolve_target(const Word& w) const {
    const int t = target.value_or(channel_target(w, n));
    if (t < 0 || t >= n) throw UsageError("--target out of range");
    return t;
  }

  int run(std::ostream& out) const {
    const Word w = resolve_word();
    const int t = resolve_target(w);
    const DensityMatrix rho = run_channel_word(initial_state(parse_mixed_init(init), n), w, phi_a, phi_b, n);
    json params = {{"n", n}, {"phi_a", phi_a}, {"phi_b", phi_b}, {"init", init}, {"word", io::to_json(w)}};
    std::vector<double> diag;
    for (double d : rho.diagonal()) diag.push_back(std::stod(io::fmt9(d)));
    json body = {{"target", t},
                 {"word", io::to_json(w.converted(Order::application))},
                 {"fidelity", std::stod(io::fmt9(basis_fidelity(rho, static_cast<std::size_t>(t))))},
                 {"purity", std::stod(io::fmt9(purity(rho)))},
                 {"diagonal", diag}};
    output.emit("kraus run", params, body.dump(2) + "\n", out);
    return kSuccess;
  }

  int sweep(std::ostream& out) const {
    const Word w = resolve_word();
    const int t = resolve_target(w);
    if (grid < 1) throw UsageError("--grid must be positive");
    if (phi_max < 0 || phi_max > M_PI + kAngleSlack) throw UsageError("--phi-max must lie within [0, pi]");
    const auto axis = linspace(0.0, std::min(phi_max, M_PI), static_cast<std::size_t>(grid));
    const auto rows = qsync::sweep(n, axis, parse_mixed_init(init), w, t, threads_from_env());
    const Word app = w.converted(Order::application);
    std::vector<std::string> comments = {
        "n=" + std::to_string(n), "init=" + init, "word=" + app.str() + " order=application",
        "target=" + std::to_string(t)};
    json params = {{"n", n}, {"grid", grid}, {"phi_max", phi_max}, {"init", init}, {"word", io::to_json(w)}};
    params["target"] = t;
    output.emit("kraus sweep", params, io::kraus_sweep_csv(rows, comments), out);
    return kSuccess;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synchronizing-word reset protocols: automata, ancilla unitaries, circuits, walks, Kraus channels",
               "qsync"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.config_formatter(std::make_shared<ConfigJson>());
  app.set_config("--config", "", "JSON file mirroring the command-line flags, nested by subcommand");

  DfaWordCmd dfa_word;
  UnitaryRunCmd unitary_run;
  CircuitCmd circuit;
  WalkCmd walk;
  KrausCmd kraus;

  auto* dfa = app.add_subcommand("dfa", "classical automata");
  dfa->require_subcommand(1);
  dfa_word.add_to(dfa);
  auto* unitary = app.add_subcommand("unitary", "ancilla-qubit protocol");
  unitary->require_subcommand(1);
  unitary_run.add_to(unitary);
  auto* circ = app.add_subcommand("circuit", "gate-level step circuit");
  circ->require_subcommand(1);
  circuit.add_to(circ);
  auto* wlk = app.add_subcommand("walk", "quantum-walk reading with a coin");
  wlk->require_subcommand(1);
  walk.add_to(wlk);
  auto* krs = app.add_subcommand("kraus", "noisy-channel reset");
  krs->require_subcommand(1);
  kraus.add_to(krs);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (dfa_word.ran) return dfa_word.execute(out);
    if (unitary_run.ran) return unitary_run.execute(out);
    if (circuit.emit_ran) return circuit.emit(out);
    if (circuit.check_ran) return circuit.check(out);
    if (walk.sweep_ran) return walk.sweep(out);
    if (walk.evolve_ran) return walk.evolve(out);
    if (kraus.run_ran) return kraus.run(out);
    if (kraus.sweep_ran) return kraus.sweep(out);
  } catch (const NegativeResult& e) {
    err << e.what() << '\n';
    return kNegative;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace qsync::cli
