#pragma once

// omegalab command-line driver. `run_cli` is kept separate from main() so the
// test suite can exercise it in-process.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "omegalab/omegalab.hpp"

namespace omegalab::cli {

using nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kContract = 2,
  kUnknownPreset = 3,
  kDegenerateWindow = 4,
  kCapacity = 5,
  kEmptyDomain = 6,
};

class UnknownPresetError : public ContractError {
 public:
  using ContractError::ContractError;
};

inline constexpr const char* kVersion = "0.1.0";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"sieve", "densities", "erdos-kac", "correlate", "theorem-c", "distance",
                                          "halasz", "reduce", "circle", "explore-k", "characters"};
  return c;
}

struct Options {
  std::string command;
  std::vector<std::string> n_list;
  std::string a_spec = "const";
  std::string b_spec = "const";
  std::uint64_t shift = 1;
  std::string weighting = "log";
  std::uint64_t seed = 0;
  std::optional<double> window_h0, window_h;
  std::string output;
  std::string report;
  std::string dump;
  unsigned workers = 1;
  std::uint64_t segment_length = std::uint64_t{1} << 16;
  std::string mode = "big";
  std::optional<double> cutoff;
  std::vector<std::string> xi_list;
  std::vector<double> t_list;
  double epsilon = 0.1;
  double big_a = 2.0;
  double threshold = 0.2;
  unsigned k = 3;
  std::uint64_t q = 3;
  std::uint64_t resolution = 0;
};

inline unsigned default_workers() {
  if (const char* env = std::getenv("OMEGALAB_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

/// Accepts plain integers and integral scientific forms such as 1e8.
inline std::uint64_t parse_count(const std::string& s) {
  if (s.find_first_of(".eE") == std::string::npos) {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw ContractError("not an integer: " + s);
    return v;
  }
  const double d = std::stod(s);
  if (!(d >= 1.0) || d != std::floor(d) || d > 4e18) throw ContractError("not a positive integer: " + s);
  return static_cast<std::uint64_t>(d);
}

inline Weighting parse_weighting(const std::string& w) {
  if (w == "log" || w == "logarithmic") return Weighting::Logarithmic;
  if (w == "cesaro") return Weighting::Cesaro;
  throw ContractError("unknown weighting: " + w);
}

/// Presets: const[:c], parity, indicator:l, fourier-mode:xi, random:seed.
inline BoundedFunction parse_bounded(const std::string& spec, std::uint64_t n) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (name == "const") return BoundedFunction::constant(arg.empty() ? 1.0 : std::stod(arg));
    if (name == "parity" && arg.empty()) return BoundedFunction::parity();
    if (name == "indicator" && !arg.empty()) return BoundedFunction::indicator(std::stoll(arg));
    if (name == "fourier-mode" && !arg.empty()) {
      const auto fam = FrequencyFamily::for_n(n);
      auto f = BoundedFunction::fourier_mode(std::stod(arg), static_cast<double>(fam.size()));
      return {f.bound(), {f.values().begin(), f.values().end()}, f.default_value(), spec};
    }
    if (name == "random" && !arg.empty()) return BoundedFunction::random_disc(std::stoull(arg));
  } catch (const std::invalid_argument&) {
    throw UnknownPresetError("malformed preset argument: " + spec);
  } catch (const std::out_of_range&) {
    throw UnknownPresetError("malformed preset argument: " + spec);
  }
  throw UnknownPresetError("unknown function preset: " + spec);
}

/// Multiplicative presets: const, parity (Liouville), fourier-mode:xi.
inline MultFunSpec parse_multfun(const std::string& spec, std::uint64_t n) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "const" && arg.empty()) return MultFunSpec::constant();
  if (name == "parity" && arg.empty()) return MultFunSpec::liouville();
  if (name == "fourier-mode" && !arg.empty()) {
    const auto fam = FrequencyFamily::for_n(n);
    try {
      return fam.mode(fam.reduce(std::stoll(arg)));
    } catch (const std::invalid_argument&) {
      throw UnknownPresetError("malformed preset argument: " + spec);
    }
  }
  throw UnknownPresetError("unknown multiplicative preset: " + spec);
}

// ---------------------------------------------------------------------------

inline void apply_manifest(const std::string& path, Options& o, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read manifest: " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw ContractError(std::string("invalid manifest JSON: ") + e.what());
  }
  auto given = [&](const char* flag) { return app.count(flag) > 0; };
  auto str_list = [](const ordered_json& v) {
    std::vector<std::string> out;
    if (v.is_array())
      for (const auto& x : v) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    else out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return out;
  };
  try {
    if (j.contains("command") && o.command.empty()) o.command = j["command"].get<std::string>();
    for (const char* key : {"N_list", "N", "n"})
      if (j.contains(key) && !given("--n")) o.n_list = str_list(j[key]);
    if (j.contains("a_spec") && !given("--a")) o.a_spec = j["a_spec"].get<std::string>();
    if (j.contains("b_spec") && !given("--b")) o.b_spec = j["b_spec"].get<std::string>();
    if (j.contains("shift") && !given("--shift")) o.shift = j["shift"].get<std::uint64_t>();
    if (j.contains("weighting") && !given("--weighting")) o.weighting = j["weighting"].get<std::string>();
    if (j.contains("seed") && !given("--seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output") && !given("--out")) o.output = j["output"].get<std::string>();
    if (j.contains("report") && !given("--report")) o.report = j["report"].get<std::string>();
    if (j.contains("worker_count") && !given("--workers")) o.workers = j["worker_count"].get<unsigned>();
    if (j.contains("segment_length") && !given("--segment-length"))
      o.segment_length = j["segment_length"].get<std::uint64_t>();
    if (j.contains("window")) {
      const auto& w = j["window"];
      if (w.contains("H0") && !given("--window-h0")) o.window_h0 = w["H0"].get<double>();
      if (w.contains("H") && !given("--window-h")) o.window_h = w["H"].get<double>();
    }
    if (j.contains("xi") && !given("--xi")) o.xi_list = str_list(j["xi"]);
    if (j.contains("t") && !given("--t")) o.t_list = j["t"].get<std::vector<double>>();
    if (j.contains("epsilon") && !given("--epsilon")) o.epsilon = j["epsilon"].get<double>();
    if (j.contains("A") && !given("--A")) o.big_a = j["A"].get<double>();
    if (j.contains("threshold") && !given("--threshold")) o.threshold = j["threshold"].get<double>();
    if (j.contains("k") && !given("--k")) o.k = j["k"].get<unsigned>();
    if (j.contains("q") && !given("--q")) o.q = j["q"].get<std::uint64_t>();
    if (j.contains("mode") && !given("--mode")) o.mode = j["mode"].get<std::string>();
    if (j.contains("cutoff") && !given("--cutoff")) o.cutoff = j["cutoff"].get<double>();
    if (j.contains("resolution") && !given("--resolution")) o.resolution = j["resolution"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("manifest field has the wrong type: ") + e.what());
  }
}

/// Writes `content` to `path` through a temporary file so a failed run never
/// leaves a partial output behind.
inline void commit_file(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ContractError("cannot write output: " + path);
    out << content;
    if (!out) throw ContractError("write failed: " + path);
  }
  std::filesystem::rename(tmp, target);
}

inline std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Run {
  Options o;
  SieveConfig cfg;
  std::vector<std::uint64_t> ns;
  ordered_json manifest;
  ordered_json results = ordered_json::array();
  std::ostringstream csv;

  [[nodiscard]] std::uint64_t single_n() const {
    if (ns.size() != 1) throw ContractError(o.command + " takes exactly one N");
    return ns.front();
  }

  [[nodiscard]] std::optional<WindowBounds> overrides() const {
    if (o.window_h0.has_value() != o.window_h.has_value())
      throw ContractError("window overrides need both --window-h0 and --window-h");
    if (o.window_h0) return WindowBounds{*o.window_h0, *o.window_h};
    return std::nullopt;
  }

  [[nodiscard]] std::vector<std::int64_t> xis(std::uint64_t n) const {
    if (o.xi_list.empty()) return full_frequency_set(n);
    std::vector<std::int64_t> v;
    for (const auto& s : o.xi_list) v.push_back(std::stoll(s));
    return v;
  }
};

inline void resolve_manifest(Run& r) {
  auto& m = r.manifest;
  m["command"] = r.o.command;
  m["N_list"] = r.ns;
  m["a_spec"] = r.o.a_spec;
  m["b_spec"] = r.o.b_spec;
  m["shift"] = r.o.shift;
  m["weighting"] = r.o.weighting;
  m["seed"] = r.o.seed;
  m["worker_count"] = r.cfg.worker_count;
  m["segment_length"] = r.cfg.segment_length;
  if (r.o.window_h0) m["window"] = {{"H0", *r.o.window_h0}, {"H", *r.o.window_h}};
  ordered_json derived = ordered_json::array();
  for (auto n : r.ns) {
    ordered_json d{{"N", n}};
    if (n >= 16) {
      const auto fam = FrequencyFamily::for_n(n);
      const auto wb = default_window_bounds(n);
      d["A"] = fam.a;
      d["I_N"] = {fam.lo, fam.hi};
      d["I_N_size"] = fam.size();
      d["H0"] = wb.h0;
      d["H"] = wb.h;
      d["t_N"] = truncation_cutoff(static_cast<double>(n), r.cfg.truncation_exponent);
    }
    derived.push_back(d);
  }
  m["derived"] = derived;
}

inline std::string csv_header(const Run& r, const std::string& generated) {
  std::ostringstream h;
  h << "# tool=omegalab " << kVersion << '\n';
  h << "# generated=" << generated << '\n';
  h << "# manifest=" << r.manifest.dump() << '\n';
  return h.str();
}

// ---------------------------------------------------------------------------
// Commands

inline void cmd_sieve(Run& r) {
  const std::uint64_t n = r.single_n();
  CountMode mode;
  if (r.o.mode == "big") mode = CountMode::big_omega();
  else if (r.o.mode == "small") mode = CountMode::small_omega();
  else if (r.o.mode == "truncated")
    mode = CountMode::truncated(r.o.cutoff ? *r.o.cutoff : r.cfg.cutoff_for(static_cast<double>(n)));
  else throw ContractError("unknown sieve mode: " + r.o.mode);
  const auto block = factor_counts(1, n + 1, mode, r.cfg);
  write_block_csv(block, r.csv);
  if (!r.o.dump.empty()) {
    std::ostringstream bin;
    write_block_binary(block, bin);
    r.manifest["dump"] = r.o.dump;
    commit_file(r.o.dump, bin.str());
  }
}

inline std::vector<OmegaCensus> census_for(const Run& r, std::vector<std::uint64_t> shifts, bool small = false) {
  CensusRequest req;
  req.checkpoints = r.ns;
  std::sort(req.checkpoints.begin(), req.checkpoints.end());
  req.checkpoints.erase(std::unique(req.checkpoints.begin(), req.checkpoints.end()), req.checkpoints.end());
  req.shifts = std::move(shifts);
  req.small_omega = small;
  return take_census(req, r.cfg);
}

inline void cmd_densities(Run& r) {
  (void)r.single_n();
  const auto c = census_for(r, {});
  const auto t = density_table(c.front());
  io::write_density_csv(t, r.csv);
  r.results.push_back({{"N", t.n}, {"l1_gap", density_l1_gap(t)}, {"total_count", t.total_count()}});
}

inline void cmd_erdos_kac(Run& r) {
  r.csv << "N,ks,normalized\n";
  for (const auto& c : census_for(r, {})) {
    const auto ks = erdos_kac_ks(density_table(c));
    r.csv << c.n << ',' << io::fmt(ks.ks) << ',' << io::fmt(ks.normalized) << '\n';
    r.results.push_back({{"N", c.n}, {"ks", ks.ks}, {"normalized", ks.normalized}});
  }
}

inline void cmd_correlate(Run& r) {
  const Weighting w = parse_weighting(r.o.weighting);
  r.csv << "N,weighting,lhs_re,lhs_im,prediction_re,prediction_im,error\n";
  for (const auto& c : census_for(r, {r.o.shift})) {
    const auto a = parse_bounded(r.o.a_spec, c.n);
    const auto b = parse_bounded(r.o.b_spec, c.n);
    CorrelationReport rep;
    rep.n = c.n;
    rep.weighting = w;
    rep.lhs = two_point_lhs(a, b, c, r.o.shift, w);
    rep.prediction = omega_mean(a, c, Weighting::Cesaro) * omega_mean(b, c, Weighting::Cesaro);
    rep.error = std::abs(rep.lhs - rep.prediction);
    r.csv << c.n << ',' << to_string(w) << ',' << io::fmt(rep.lhs.real()) << ',' << io::fmt(rep.lhs.imag()) << ','
          << io::fmt(rep.prediction.real()) << ',' << io::fmt(rep.prediction.imag()) << ',' << io::fmt(rep.error)
          << '\n';
    r.results.push_back({{"N", rep.n},
                         {"weighting", to_string(w)},
                         {"lhs", {rep.lhs.real(), rep.lhs.imag()}},
                         {"prediction", {rep.prediction.real(), rep.prediction.imag()}},
                         {"error", rep.error},
                         {"metadata", {{"a", a.label()}, {"b", b.label()}, {"shift", r.o.shift}, {"seed", r.o.seed}}}});
  }
}

inline void cmd_theorem_c(Run& r) {
  r.csv << "N,theorem_c_sum,l1_gap,exceptions,typical_size,bridge_error,bridge_lower_bound\n";
  for (const auto& c : census_for(r, {1})) {
    const auto a = parse_bounded(r.o.a_spec, c.n);
    const double sum = theorem_c_sum(a, c);
    const auto ex = typical_ell_exceptions(a, c, r.o.big_a, r.o.epsilon, r.o.threshold);
    const auto br = theorem_c_bridge(a, c);
    r.csv << c.n << ',' << io::fmt(sum) << ',' << io::fmt(br.l1_gap) << ',' << ex.exceptions << ','
          << ex.typical_size << ',' << io::fmt(br.theorem_a_error) << ',' << io::fmt(br.lower_bound) << '\n';
    r.results.push_back({{"N", c.n}, {"theorem_c_sum", sum}, {"exceptions", ex.exceptions},
                         {"typical_size", ex.typical_size}, {"bridge_holds", br.holds}});
  }
}

inline void cmd_distance(Run& r) {
  const std::uint64_t n = r.single_n();
  const auto table = enumerate_primes(n);
  const std::vector<double> ts = r.o.t_list.empty() ? std::vector<double>{0.0, 0.5, 1.0} : r.o.t_list;
  r.csv << "xi,t,dist_sq,formula,residual\n";
  for (auto xi : r.xis(n))
    for (double t : ts) {
      const auto d = dist_formula_residual(xi, n, t, table);
      r.csv << xi << ',' << io::fmt(t) << ',' << io::fmt(d.dist_sq) << ',' << io::fmt(d.formula) << ','
            << io::fmt(d.residual) << '\n';
    }
}

inline void cmd_halasz(Run& r) {
  r.csv << "N,mean_re,mean_im,m0,argmin_t,bound,ratio\n";
  const std::uint64_t n_max = *std::max_element(r.ns.begin(), r.ns.end());
  const auto table = enumerate_primes(n_max);
  for (auto n : r.ns) {
    const auto f = parse_multfun(r.o.a_spec, n);
    const auto grid = make_t_grid(std::log(static_cast<double>(n)));
    const auto h = halasz_audit(f, n, grid, table, std::nullopt, r.cfg);
    r.csv << n << ',' << io::fmt(h.mean.real()) << ',' << io::fmt(h.mean.imag()) << ',' << io::fmt(h.m0) << ','
          << io::fmt(h.argmin_t) << ',' << io::fmt(h.bound) << ',' << io::fmt(h.ratio) << '\n';
    r.results.push_back({{"N", n}, {"ratio", h.ratio}, {"m0", h.m0}});
  }
}

inline void cmd_reduce(Run& r) {
  const std::uint64_t n = r.single_n();
  const auto w = prime_window(n, r.overrides());
  r.manifest["window_resolved"] = {{"H0", w.h0}, {"H", w.h}, {"primes", w.primes.size()}, {"L", w.l}};
  const auto xs = r.xis(n);
  const auto rs = reduced_sum(n, w, xs, r.cfg);
  r.csv << "xi,term\n";
  for (const auto& [xi, t] : rs.terms) r.csv << xi << ',' << io::fmt(t) << '\n';
  r.results.push_back({{"N", n}, {"total", rs.total}, {"small_part", rs.small_part},
                       {"large_part", rs.large_part}, {"threshold", rs.threshold}});
}

inline void cmd_circle(Run& r) {
  const std::uint64_t n = r.ns.empty() ? 0 : r.ns.front();
  const auto w = prime_window(n, r.overrides());
  const std::size_t res = r.o.resolution ? r.o.resolution : 10 * w.max_prime();
  const auto m = major_arc_measure(w, r.o.epsilon, res);
  r.manifest["window_resolved"] = {{"H0", w.h0}, {"H", w.h}, {"primes", w.primes.size()}, {"L", w.l}};
  r.csv << "alpha,abs_sum\n";
  for (const auto& [a, v] : m.samples) r.csv << io::fmt(a) << ',' << io::fmt(v) << '\n';
  r.results.push_back({{"measure", m.measure}, {"spacing", m.spacing}, {"epsilon", r.o.epsilon}});
}

inline void cmd_explore_k(Run& r) {
  const Weighting w = parse_weighting(r.o.weighting);
  r.csv << "# label=EXPLORATORY\n";
  r.csv << "N,k,value_re,value_im,product_re,product_im,gap\n";
  for (auto n : r.ns) {
    std::vector<BoundedFunction> fs(r.o.k, parse_bounded(r.o.a_spec, n));
    const auto k = k_point_explore(fs, n, w, r.cfg);
    r.csv << n << ',' << k.k << ',' << io::fmt(k.value.real()) << ',' << io::fmt(k.value.imag()) << ','
          << io::fmt(k.product.real()) << ',' << io::fmt(k.product.imag()) << ',' << io::fmt(k.gap) << '\n';
    r.results.push_back({{"N", n}, {"k", k.k}, {"gap", k.gap}, {"label", k.label}});
  }
}

inline void cmd_characters(Run& r) {
  const auto chars = dirichlet_characters(r.o.q);
  r.csv << "index,a,re,im\n";
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::uint64_t a = 0; a < r.o.q; ++a) {
      const Complex v = chars[i](a);
      r.csv << i << ',' << a << ',' << io::fmt(v.real()) << ',' << io::fmt(v.imag()) << '\n';
    }
  r.manifest["q"] = r.o.q;
}

// ---------------------------------------------------------------------------

inline int execute(Run& r, std::ostream& out) {
  const std::string& c = r.o.command;
  if (c == "sieve") cmd_sieve(r);
  else if (c == "densities") cmd_densities(r);
  else if (c == "erdos-kac") cmd_erdos_kac(r);
  else if (c == "correlate") cmd_correlate(r);
  else if (c == "theorem-c") cmd_theorem_c(r);
  else if (c == "distance") cmd_distance(r);
  else if (c == "halasz") cmd_halasz(r);
  else if (c == "reduce") cmd_reduce(r);
  else if (c == "circle") cmd_circle(r);
  else if (c == "explore-k") cmd_explore_k(r);
  else if (c == "characters") cmd_characters(r);
  else throw ContractError("unknown command: " + c);

  const std::string generated = timestamp();
  const std::string body = csv_header(r, generated) + r.csv.str();
  std::string report;
  if (!r.o.report.empty()) {
    ordered_json j;
    j["run"] = {{"tool", "omegalab"}, {"version", kVersion}, {"generated", generated}};
    j["manifest"] = r.manifest;
    j["results"] = r.results;
    report = j.dump(2) + "\n";
  }
  // everything computed; only now touch the filesystem
  if (r.o.output.empty()) out << body;
  else commit_file(r.o.output, body);
  if (!report.empty()) commit_file(r.o.report, report);
  return kOk;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options o;
  o.workers = default_workers();
  CLI::App app{"omegalab: prime-factor statistics and correlation experiments"};
  std::string manifest;
  app.add_option("command", o.command, "one of: sieve densities erdos-kac correlate theorem-c distance halasz "
                                       "reduce circle explore-k characters");
  app.add_option("--manifest", manifest, "JSON experiment manifest");
  app.add_option("--n", o.n_list, "N (repeatable, accepts 1e8 style)");
  app.add_option("--a", o.a_spec, "function preset for a");
  app.add_option("--b", o.b_spec, "function preset for b");
  app.add_option("--shift", o.shift, "shift h");
  app.add_option("--weighting", o.weighting, "log or cesaro");
  app.add_option("--seed", o.seed, "seed recorded in the report");
  app.add_option("--window-h0", o.window_h0, "prime window lower end override");
  app.add_option("--window-h", o.window_h, "prime window upper end override");
  app.add_option("--out", o.output, "CSV output path (default stdout)");
  app.add_option("--report", o.report, "JSON report path");
  app.add_option("--dump", o.dump, "binary block dump path (sieve)");
  app.add_option("--workers", o.workers, "worker threads (default $OMEGALAB_WORKERS or 1)");
  app.add_option("--segment-length", o.segment_length, "sieve segment length");
  app.add_option("--mode", o.mode, "sieve mode: big, small, truncated");
  app.add_option("--cutoff", o.cutoff, "prime cutoff for truncated mode");
  app.add_option("--xi", o.xi_list, "frequencies (repeatable)");
  app.add_option("--t", o.t_list, "twist values (repeatable)");
  app.add_option("--epsilon", o.epsilon, "epsilon");
  app.add_option("--A", o.big_a, "typical range width A");
  app.add_option("--threshold", o.threshold, "exception threshold");
  app.add_option("--k", o.k, "number of points for explore-k");
  app.add_option("--q", o.q, "character modulus");
  app.add_option("--resolution", o.resolution, "alpha grid resolution");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kContract;
  }

  try {
    if (!manifest.empty()) apply_manifest(manifest, o, app);
    if (o.command.empty()) throw ContractError("no command given");
    if (std::find(commands().begin(), commands().end(), o.command) == commands().end())
      throw ContractError("unknown command: " + o.command);
    Run r;
    r.o = o;
    r.cfg.worker_count = o.workers;
    r.cfg.segment_length = o.segment_length;
    r.cfg.validate();
    for (const auto& s : o.n_list) r.ns.push_back(parse_count(s));
    if (r.ns.empty() && o.command != "characters" && o.command != "circle") throw ContractError("--n is required");
    resolve_manifest(r);
    return execute(r, out);
  } catch (const UnknownPresetError& e) {
    err << "error: " << e.what() << '\n';
    return kUnknownPreset;
  } catch (const DegenerateWindowError& e) {
    err << "error: " << e.what() << " (supply --window-h0/--window-h)\n";
    return kDegenerateWindow;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacity;
  } catch (const EmptyDomainError& e) {
    err << "error: " << e.what() << '\n';
    return kEmptyDomain;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kContract;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kContract;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace omegalab::cli
