#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cohtorus/cohtorus.hpp"

#ifndef COHTORUS_VERSION
#define COHTORUS_VERSION "0.0.0"
#endif

namespace cohtorus::cli {

namespace {

using json = nlohmann::json;

const std::map<std::string, Command> kCommands{
    {"classify", Command::Classify},     {"dual", Command::Dual},
    {"gram", Command::Gram},             {"frame-scan", Command::FrameScan},
    {"theta-basis", Command::ThetaBasis}, {"theta-gram", Command::ThetaGram},
    {"degeneracy", Command::Degeneracy}, {"cross-check", Command::CrossCheck}};

// Default tolerances and truncations per command; only these names are accepted.
struct Defaults {
  std::map<std::string, double> tolerances;
  std::map<std::string, long> truncations;
};

Defaults defaults_for(Command c) {
  switch (c) {
    case Command::Classify:
      return {{{"integer", 1e-9}}, {}};
    case Command::Dual:
      return {{{"integer", 1e-9}, {"pairing", 1e-9}}, {}};
    case Command::Gram:
      return {{{"radius", 3.0}}, {}};
    case Command::FrameScan:
      return {{{"rank", 1e-8}}, {{"n_min", 10}, {"n_max", 30}, {"n_step", 10}}};
    case Command::ThetaBasis:
      return {{{"residual", 1e-10}, {"rank", 1e-8}, {"angle", 1e-6}},
              {{"level", 2}, {"samples", 20}}};
    case Command::ThetaGram:
      return {{{"orthogonality", 1e-6}, {"doubling", 1e-8}, {"periodicity", 1e-10}},
              {{"level", 2}, {"grid", 128}}};
    case Command::Degeneracy:
      return {{{"gap_tol", 0.2}}, {{"lx", 12}, {"ly", 12}, {"p", 1}, {"q", 4}}};
    case Command::CrossCheck:
      return {{{"gap_tol", 0.2}, {"rank", 1e-8}},
              {{"k", 4}, {"lx", 4}, {"ly", 4}, {"p", 1}, {"q", 4}}};
  }
  return {};
}

bool is_input_error(const Error& e) {
  return dynamic_cast<const TruncationOverflow*>(&e) == nullptr &&
         dynamic_cast<const NonConvergent*>(&e) == nullptr &&
         dynamic_cast<const NoClearGap*>(&e) == nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* what) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError(std::string("expected NAME=VALUE for ") + what + ", got '" + text + "'");
  }
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError("not a number: '" + text + "'");
  return v;
}

long parse_long(const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not an integer: '" + text + "'");
  return v;
}

// Raw option values in the order they were given; later values override earlier ones.
struct RawOptions {
  std::optional<std::string> command;
  std::optional<std::string> w1, w2, tau, out, format, expect;
  std::optional<std::vector<std::string>> deletions;
  std::vector<std::string> tols;
  std::vector<std::string> truncs;
};

void overlay(RawOptions& base, const RawOptions& top) {
  const auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.command, top.command);
  take(base.w1, top.w1);
  take(base.w2, top.w2);
  take(base.tau, top.tau);
  take(base.out, top.out);
  take(base.format, top.format);
  take(base.expect, top.expect);
  take(base.deletions, top.deletions);
  base.tols.insert(base.tols.end(), top.tols.begin(), top.tols.end());
  base.truncs.insert(base.truncs.end(), top.truncs.begin(), top.truncs.end());
}

RawOptions read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  RawOptions raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "command") raw.command = value;
    else if (key == "w1") raw.w1 = value;
    else if (key == "w2") raw.w2 = value;
    else if (key == "tau") raw.tau = value;
    else if (key == "out") raw.out = value;
    else if (key == "format") raw.format = value;
    else if (key == "expect") raw.expect = value;
    else if (key == "delete") {
      if (!raw.deletions) raw.deletions.emplace();
      raw.deletions->push_back(value);
    } else if (key == "tol") raw.tols.push_back(value);
    else if (key == "trunc") raw.truncs.push_back(value);
    else throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return raw;
}

RunConfig build_config(const RawOptions& raw) {
  RunConfig cfg;
  if (!raw.command) throw UsageError("missing command");
  const auto it = kCommands.find(*raw.command);
  if (it == kCommands.end()) throw UsageError("unknown command '" + *raw.command + "'");
  cfg.command = it->second;

  if (raw.w1) cfg.w1 = parse_complex(*raw.w1);
  if (raw.w2) cfg.w2 = parse_complex(*raw.w2);
  if (raw.tau) cfg.tau = parse_complex(*raw.tau);
  if (raw.deletions)
    for (const auto& d : *raw.deletions) cfg.deletions.push_back(parse_complex(d));
  if (raw.out) cfg.output_path = *raw.out;
  if (raw.format) {
    if (*raw.format == "json") cfg.format = Format::Json;
    else if (*raw.format == "csv") cfg.format = Format::Csv;
    else throw UsageError("format must be json or csv");
  }
  if (raw.expect) {
    if (*raw.expect == "fullrank") cfg.expect = RankVerdict::FullRank;
    else if (*raw.expect == "rankdeficient") cfg.expect = RankVerdict::RankDeficient;
    else throw UsageError("expect must be fullrank or rankdeficient");
  }

  const Defaults d = defaults_for(cfg.command);
  cfg.tolerances = d.tolerances;
  cfg.truncations = d.truncations;
  for (const auto& t : raw.tols) {
    const auto [name, value] = split_assignment(t, "--tol");
    if (!cfg.tolerances.count(name)) {
      throw UsageError("unknown tolerance '" + name + "' for " + to_string(cfg.command));
    }
    const double v = parse_double(value);
    if (!(v > 0.0)) throw UsageError("tolerance '" + name + "' must be positive");
    cfg.tolerances[name] = v;
  }
  for (const auto& t : raw.truncs) {
    const auto [name, value] = split_assignment(t, "--trunc");
    if (!cfg.truncations.count(name)) {
      throw UsageError("unknown truncation '" + name + "' for " + to_string(cfg.command));
    }
    const long v = parse_long(value);
    if (v < 1) throw UsageError("truncation '" + name + "' must be at least 1");
    cfg.truncations[name] = v;
  }
  return cfg;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

int as_int(long v, const char* name) {
  if (v > 1'000'000) throw UsageError(std::string("truncation '") + name + "' is too large");
  return static_cast<int>(v);
}

LatticeBasis require_lattice(const RunConfig& cfg) {
  if (!cfg.w1 || !cfg.w2) throw UsageError("this command needs --w1 and --w2");
  return LatticeBasis(*cfg.w1, *cfg.w2);
}

// Result of one command: the JSON results block, pass flag and optional spectrum.
struct Outcome {
  json inputs = json::object();
  json results = json::object();
  bool pass = true;
  std::optional<std::vector<double>> spectrum;
};

json lattice_json(const LatticeBasis& b) {
  return {{"w1", complex_json(b.w1())}, {"w2", complex_json(b.w2())}, {"swapped", b.swapped()}};
}

Outcome run_classify(const RunConfig& cfg) {
  Outcome o;
  const auto basis = require_lattice(cfg);
  const auto c = classify(basis, cfg.tolerances.at("integer"));
  o.inputs["lattice"] = lattice_json(basis);
  o.results = {{"area", c.area},
               {"kind", std::string(to_string(c.kind))},
               {"ratio", c.ratio},
               {"integer_level", c.integer_level ? json(*c.integer_level) : json(nullptr)}};
  return o;
}

Outcome run_dual(const RunConfig& cfg) {
  Outcome o;
  const auto basis = require_lattice(cfg);
  o.inputs["lattice"] = lattice_json(basis);
  const auto dual = dual_lattice(basis, cfg.tolerances.at("integer"));
  const int k = static_cast<int>(std::lround(std::sqrt(dual.index)));
  const double residual = coset_pairing_residual(coset_representatives(basis, k), basis);
  o.results = {{"dual", lattice_json(dual.basis)},
               {"index", dual.index},
               {"area", basis.cell_area()},
               {"dual_area", dual.basis.cell_area()},
               {"pairing_residual", residual}};
  o.pass = residual <= cfg.tolerances.at("pairing");
  return o;
}

Outcome run_gram(const RunConfig& cfg) {
  Outcome o;
  const auto basis = require_lattice(cfg);
  const double radius = cfg.tolerances.at("radius");
  o.inputs["lattice"] = lattice_json(basis);
  const auto points = lattice_points_within(basis, radius, cfg.deletions);
  if (points.empty()) throw EmptyLattice("no lattice point within the radius");
  const auto e = hermitian_spectrum(gram_matrix(points));
  o.results = {{"points", points.size()},
               {"min_eigenvalue", e(0)},
               {"max_eigenvalue", e(e.size() - 1)},
               {"eigenvalues", to_vector(e)}};
  o.spectrum = to_vector(e);
  return o;
}

Outcome run_frame_scan(const RunConfig& cfg) {
  Outcome o;
  const auto basis = require_lattice(cfg);
  const int lo = as_int(cfg.truncations.at("n_min"), "n_min");
  const int hi = as_int(cfg.truncations.at("n_max"), "n_max");
  const int step = as_int(cfg.truncations.at("n_step"), "n_step");
  if (lo < 2 || hi < lo) throw UsageError("frame-scan needs 2 <= n_min <= n_max");
  if (hi > 400) throw UsageError("n_max above 400 is not supported");
  std::vector<int> sizes;
  for (int n = lo; n <= hi; n += step) sizes.push_back(n);
  if (sizes.back() != hi) sizes.push_back(hi);

  o.inputs["lattice"] = lattice_json(basis);
  json dels = json::array();
  for (const Complex d : cfg.deletions) dels.push_back(complex_json(d));
  o.inputs["deletions"] = dels;
  o.inputs["expect"] = cfg.expect ? json(std::string(to_string(*cfg.expect))) : json(nullptr);

  const auto r = completeness_diagnostic(basis, sizes, cfg.deletions, cfg.tolerances.at("rank"));
  json rows = json::array();
  for (std::size_t i = 0; i < r.truncation_sizes.size(); ++i) {
    rows.push_back({{"n", r.truncation_sizes[i]},
                    {"min_eigenvalue", r.min_eigs[i]},
                    {"max_eigenvalue", r.max_eigs[i]},
                    {"ratio", r.min_eigs[i] / r.max_eigs[i]}});
  }
  o.results = {{"kind", std::string(to_string(classify(basis).kind))},
               {"truncations", rows},
               {"verdict", std::string(to_string(r.verdict))},
               {"final_spectrum", to_vector(r.final_spectrum)}};
  o.spectrum = to_vector(r.final_spectrum);
  o.pass = !cfg.expect || *cfg.expect == r.verdict;
  return o;
}

TorusGeometry theta_geometry(const RunConfig& cfg, Outcome& o) {
  const int level = as_int(cfg.truncations.at("level"), "level");
  if (cfg.w1 || cfg.w2) {
    if (cfg.tau) throw UsageError("give either --tau or --w1/--w2, not both");
    const auto basis = require_lattice(cfg);
    const auto k = nearest_positive_integer(basis.cell_area() / kPi, kIntegerTolerance);
    if (!k || *k != level) {
      throw UsageError("lattice area must equal level * pi for the theta commands");
    }
    o.inputs["lattice"] = lattice_json(basis);
    return TorusGeometry(basis, level);
  }
  const Complex tau = cfg.tau.value_or(Complex(0.0, 1.0));
  o.inputs["tau"] = complex_json(tau);
  return TorusGeometry::from_tau(tau, level);
}

Outcome run_theta_basis(const RunConfig& cfg) {
  Outcome o;
  const auto g = theta_geometry(cfg, o);
  const int k = g.level();
  const int count = as_int(cfg.truncations.at("samples"), "samples");
  const auto samples = sample_points(g, count);
  const auto basis = level_basis(g);

  double worst = 0.0;
  json sections = json::array();
  for (const auto& s : basis) {
    double r = 0.0;
    for (const auto [m1, m2] : std::array<std::pair<long, long>, 2>{{{1, 0}, {0, 1}}}) {
      r = std::max(r, verify_invariance(s, g.basis().point(m1, m2), s.character_exponent(m1, m2),
                                        samples));
    }
    worst = std::max(worst, r);
    sections.push_back({{"a", s.characteristic_a()}, {"b", s.characteristic_b()}, {"residual", r}});
  }

  const auto translates = generate_characteristics(basis[0], coset_representatives(g.basis(), k));
  const auto points = sample_points(g, std::max(4 * k + 4, count));
  const MatrixXc a = sample_matrix(translates, g, points);
  const MatrixXc b = sample_matrix(as_functions(basis), g, points);
  const double rank_tol = cfg.tolerances.at("rank");
  const int rank = numerical_rank(a, rank_tol);
  const double angle = max_principal_angle(a, b, rank_tol);
  const long rr = riemann_roch_dim(make_chern({k}));

  o.results = {{"level", k},
               {"tau", complex_json(g.tau())},
               {"sections", sections},
               {"max_residual", worst},
               {"translates", translates.size()},
               {"span_rank", rank},
               {"riemann_roch", rr},
               {"max_principal_angle", angle}};
  o.pass = worst <= cfg.tolerances.at("residual") && rank == rr &&
           angle <= cfg.tolerances.at("angle");
  return o;
}

Outcome run_theta_gram(const RunConfig& cfg) {
  Outcome o;
  const auto g = theta_geometry(cfg, o);
  QuadratureControl ctl;
  ctl.grid = as_int(cfg.truncations.at("grid"), "grid");
  ctl.doubling_target = cfg.tolerances.at("doubling");
  ctl.periodicity_tol = cfg.tolerances.at("periodicity");
  const auto fs = as_functions(level_basis(g));
  const auto r = theta_gram(fs, g, ctl);
  double off = 0.0;
  json rows = json::array();
  for (Eigen::Index i = 0; i < r.gram.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < r.gram.cols(); ++j) {
      row.push_back(complex_json(r.gram(i, j)));
      if (i != j) {
        off = std::max(off, std::abs(r.gram(i, j)) /
                                std::sqrt(r.gram(i, i).real() * r.gram(j, j).real()));
      }
    }
    rows.push_back(row);
  }
  o.results = {{"level", g.level()},
               {"gram", rows},
               {"max_offdiagonal_ratio", off},
               {"doubling_change", r.relative_change}};
  o.pass = off <= cfg.tolerances.at("orthogonality") &&
           r.relative_change <= ctl.doubling_target;
  return o;
}

HofstadterConfig hofstadter_from(const RunConfig& cfg) {
  const HofstadterConfig h{as_int(cfg.truncations.at("lx"), "lx"),
                           as_int(cfg.truncations.at("ly"), "ly"),
                           as_int(cfg.truncations.at("p"), "p"),
                           as_int(cfg.truncations.at("q"), "q")};
  if (static_cast<long>(h.lx) * h.ly > 1024) throw UsageError("Lx * Ly above 1024 is not supported");
  h.validate();
  return h;
}

Outcome run_degeneracy(const RunConfig& cfg) {
  Outcome o;
  const auto h = hofstadter_from(cfg);
  const double gap_tol = cfg.tolerances.at("gap_tol");
  if (gap_tol >= 1.0) throw UsageError("gap_tol must be below 1");
  const auto r = lowest_band_degeneracy(h, gap_tol);
  const long n = h.flux_quanta();
  const long rr = riemann_roch_dim(make_chern({static_cast<int>(n)}));
  const long formula = degeneracy_formula(n, 1);
  json clusters = json::array();
  for (const auto& c : r.clusters) clusters.push_back({{"center", c.center}, {"multiplicity", c.multiplicity}});
  o.results = {{"flux_quanta", n},
               {"lowest_multiplicity", r.lowest_multiplicity},
               {"riemann_roch", rr},
               {"formula", formula},
               {"gap_ratio", r.gap_ratio},
               {"reference_gap", r.reference_gap},
               {"clusters", clusters},
               {"eigenvalues", to_vector(r.eigenvalues)}};
  o.spectrum = to_vector(r.eigenvalues);
  o.pass = r.lowest_multiplicity == n && rr == n && formula == n;
  return o;
}

Outcome run_cross_check(const RunConfig& cfg) {
  Outcome o;
  const auto h = hofstadter_from(cfg);
  const int k = as_int(cfg.truncations.at("k"), "k");
  const Complex tau = cfg.tau.value_or(Complex(0.0, 1.0));
  o.inputs["tau"] = complex_json(tau);
  const double gap_tol = cfg.tolerances.at("gap_tol");
  if (gap_tol >= 1.0) throw UsageError("gap_tol must be below 1");
  const auto r = cross_check(k, tau, h, gap_tol, cfg.tolerances.at("rank"));
  o.results = {{"level", r.level},
               {"riemann_roch", r.riemann_roch},
               {"theta_span", r.theta_span},
               {"theta_generated", r.theta_generated},
               {"lowest_band", r.lowest_band},
               {"formula", r.formula}};
  o.pass = r.pass;
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Classify: return run_classify(cfg);
    case Command::Dual: return run_dual(cfg);
    case Command::Gram: return run_gram(cfg);
    case Command::FrameScan: return run_frame_scan(cfg);
    case Command::ThetaBasis: return run_theta_basis(cfg);
    case Command::ThetaGram: return run_theta_gram(cfg);
    case Command::Degeneracy: return run_degeneracy(cfg);
    case Command::CrossCheck: return run_cross_check(cfg);
  }
  throw UsageError("unknown command");
}

json echo_inputs(const RunConfig& cfg, json inputs) {
  if (cfg.w1) inputs["w1"] = complex_json(*cfg.w1);
  if (cfg.w2) inputs["w2"] = complex_json(*cfg.w2);
  json truncs = json::object();
  for (const auto& [name, v] : cfg.truncations) truncs[name] = v;
  inputs["truncations"] = truncs;
  return inputs;
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [name, value] : kCommands)
    if (value == c) return name;
  return "unknown";
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw UsageError("expected re,im but got '" + text + "'");
  }
  return {parse_double(trim(text.substr(0, comma))), parse_double(trim(text.substr(comma + 1)))};
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Coherent-state lattices, theta functions and Landau levels"};
  RawOptions cmdline;
  std::string command, w1, w2, tau, out, format, expect, config;
  std::vector<std::string> deletions;
  app.add_option("command", command, "classify | dual | gram | frame-scan | theta-basis | "
                                     "theta-gram | degeneracy | cross-check");
  auto* o_w1 = app.add_option("--w1", w1, "first generator re,im");
  auto* o_w2 = app.add_option("--w2", w2, "second generator re,im");
  auto* o_tau = app.add_option("--tau", tau, "torus modulus re,im");
  auto* o_del = app.add_option("--delete", deletions, "lattice point to remove, re,im (repeatable)")
                    ->take_all();
  app.add_option("--tol", cmdline.tols, "NAME=VALUE tolerance (repeatable)");
  app.add_option("--trunc", cmdline.truncs, "NAME=N truncation (repeatable)");
  auto* o_out = app.add_option("--out", out, "output file (default: standard output)");
  auto* o_fmt = app.add_option("--format", format, "json | csv");
  auto* o_exp = app.add_option("--expect", expect, "fullrank | rankdeficient (frame-scan)");
  auto* o_cfg = app.add_option("--config", config, "key=value file; the command line overrides it");
  app.allow_extras(false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!command.empty()) cmdline.command = command;
  if (o_w1->count()) cmdline.w1 = w1;
  if (o_w2->count()) cmdline.w2 = w2;
  if (o_tau->count()) cmdline.tau = tau;
  if (o_del->count()) cmdline.deletions = deletions;
  if (o_out->count()) cmdline.out = out;
  if (o_fmt->count()) cmdline.format = format;
  if (o_exp->count()) cmdline.expect = expect;

  RawOptions raw;
  if (o_cfg->count()) raw = read_config_file(config);
  overlay(raw, cmdline);
  return build_config(raw);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    o = dispatch(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e) ? 2 : 1;
  }

  std::string text;
  if (cfg.format == Format::Csv) {
    if (!o.spectrum) {
      err << "error: " << to_string(cfg.command) << " has no spectrum for CSV output\n";
      return 2;
    }
    text = spectrum_csv(*o.spectrum);
  } else {
    json tolerances = json::object();
    for (const auto& [name, v] : cfg.tolerances) tolerances[name] = v;
    const json report = {{"command", to_string(cfg.command)},
                         {"inputs", echo_inputs(cfg, std::move(o.inputs))},
                         {"tolerances", tolerances},
                         {"results", std::move(o.results)},
                         {"pass", o.pass},
                         {"version", COHTORUS_VERSION}};
    text = canonical_json(report);
  }

  if (cfg.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write '" << cfg.output_path << "'\n";
      return 2;
    }
  }
  return o.pass ? 0 : 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "usage error: " << msg << '\n';
    return 2;
  }
  return run(cfg, out, err);
}

}  // namespace cohtorus::cli
