#pragma once

// Subcommand front end: transform | kernel | verify | maximal | atom-test |
// divergence.  Machine-readable output goes to stdout (or --output), a
// one-line human summary to stderr.  Exit status: 0 ok/PASS, 1 FAIL,
// 2 usage or input error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vilenkin/report_json.hpp"
#include "vilenkin/vilenkin.hpp"

namespace vilenkin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string subcommand;
  std::string statement;  // verify target
  std::string radices;
  std::optional<int> resolution;
  std::optional<int> embed;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> n_max;
  std::optional<int> A;
  std::optional<int> k;
  std::optional<int> l;
  std::optional<int> t;
  std::string kernel_type = "fejer";
  std::optional<std::string> weight;
  std::string nk_range = "1..3";
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  bool inverse = false;
  bool naive = false;
  std::string input;
  std::string output;
  std::string format;  // csv | json; empty picks the subcommand default
};

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorKind::invalid_argument, "range must look like a..b");
  try {
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_argument, "bad range '" + text + "'");
  }
}

inline GroupSpec make_spec(const RunConfig& cfg, std::optional<int> resolution) {
  if (cfg.radices.empty()) throw Error(ErrorKind::invalid_spec, "--m is required");
  const auto radices = parse_radices(cfg.radices);
  return GroupSpec(radices, resolution.value_or(static_cast<int>(radices.size())));
}

inline GroupFunction random_function(const GroupSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GroupFunction f(spec);
  for (auto& v : f.values) {
    const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    v = {re, im};
  }
  return f;
}

inline void write_complex_json(std::ostream& os, const GroupSpec& spec, const char* key,
                               const std::vector<Complex>& values) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows.push_back({{key, i}, {"re", values[i].real()}, {"im", values[i].imag()}});
  }
  os << nlohmann::json{{"spec", spec.id()}, {"values", rows}}.dump(2) << "\n";
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::invalid_argument, "cannot open output file " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

inline bool wants_json(const RunConfig& cfg, bool json_default) {
  if (cfg.format.empty()) return json_default;
  if (cfg.format == "json") return true;
  if (cfg.format == "csv") return false;
  throw Error(ErrorKind::invalid_argument, "--format must be csv or json");
}

inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  KernelReport report;
  const std::string& what = cfg.statement;
  if (what == "lemma4") {
    const GroupSpec probe = make_spec(cfg, std::nullopt);
    const int N = cfg.resolution.value_or(std::min(3, probe.resolution() - 1));
    const GroupSpec fine = make_spec(cfg, cfg.embed.value_or(N + 2));
    const std::uint64_t n = cfg.n.value_or(fine.order(N));
    if (cfg.k.has_value() != cfg.l.has_value()) {
      throw Error(ErrorKind::invalid_argument, "give both --k and --l or neither");
    }
    report = cfg.k ? check_lemma4(fine, N, n, *cfg.k, *cfg.l) : check_lemma4_grid(fine, N, n);
  } else {
    const GroupSpec spec = make_spec(cfg, cfg.resolution);
    if (what == "eq3") {
      report = check_eq3(spec);
    } else if (what == "eq4") {
      report = check_eq4(spec, cfg.n_max.value_or(spec.size()));
    } else if (what == "eq5") {
      if (cfg.n) {
        report = check_eq5(spec, *cfg.n);
      } else {
        // n < m_0 has |n| = 0 and an identically zero right-hand side
        std::mt19937_64 rng(cfg.seed);
        const std::uint64_t lo = spec.resolution() > 0 ? spec.order(1) : 1;
        std::uniform_int_distribution<std::uint64_t> pick(lo, spec.size());
        std::vector<std::uint64_t> ns(cfg.samples.value_or(50));
        for (auto& n : ns) n = pick(rng);
        report = check_eq5_sweep(spec, ns);
      }
    } else if (what == "lemma2") {
      report = check_lemma2(spec, cfg.A.value_or(spec.resolution() / 2));
    } else if (what == "lemma3") {
      report = check_lemma3(spec);
    } else if (what == "shift") {
      report = check_shift(spec, cfg.t.value_or(1));
    } else if (what == "partition") {
      report = check_partition(spec, spec.resolution());
    } else {
      throw Error(ErrorKind::invalid_argument, "unknown verify statement '" + what + "'");
    }
  }
  Sink sink(cfg.output, out);
  sink.stream() << nlohmann::json(report).dump(2) << "\n";
  err << (report.pass ? "PASS " : "FAIL ") << report.statement << " " << report.spec
      << " empirical_constant=" << fmt_double(report.empirical_constant) << "\n";
  return report.pass ? kExitOk : kExitFail;
}

inline int run_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GroupSpec spec = make_spec(cfg, cfg.resolution);
  const bool json = wants_json(cfg, false);
  Sink sink(cfg.output, out);
  if (cfg.inverse) {
    if (cfg.input.empty()) throw Error(ErrorKind::invalid_argument, "--inverse needs --input spectrum.csv");
    std::ifstream in(cfg.input);
    if (!in) throw Error(ErrorKind::invalid_argument, "cannot read " + cfg.input);
    const GroupFunction f = inverse(read_spectrum_csv(in, spec));
    json ? write_complex_json(sink.stream(), spec, "point_encoding", f.values) : write_csv(sink.stream(), f);
    err << "inverse transform of " << spec.size() << " coefficients on " << spec.id() << "\n";
    return kExitOk;
  }
  GroupFunction f;
  if (cfg.input.empty()) {
    f = random_function(spec, cfg.seed);
  } else {
    std::ifstream in(cfg.input);
    if (!in) throw Error(ErrorKind::invalid_argument, "cannot read " + cfg.input);
    f = read_function_csv(in, spec);
  }
  const Spectrum s = cfg.naive ? naive_forward(f) : forward(f);
  json ? write_complex_json(sink.stream(), spec, "index", s.coeffs) : write_csv(sink.stream(), s);
  err << (cfg.naive ? "naive" : "fast") << " transform of " << spec.size() << " values on " << spec.id() << "\n";
  return kExitOk;
}

inline int run_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GroupSpec spec = make_spec(cfg, cfg.resolution);
  if (!cfg.n) throw Error(ErrorKind::invalid_argument, "kernel needs --n");
  GroupFunction k;
  if (cfg.kernel_type == "dirichlet") {
    k = dirichlet(*cfg.n, spec);
  } else if (cfg.kernel_type == "fejer") {
    k = fejer(*cfg.n, spec);
  } else {
    throw Error(ErrorKind::invalid_argument, "--type must be dirichlet or fejer");
  }
  Sink sink(cfg.output, out);
  wants_json(cfg, false) ? write_complex_json(sink.stream(), spec, "point_encoding", k.values)
                         : write_csv(sink.stream(), k);
  err << cfg.kernel_type << " kernel n=" << *cfg.n << " on " << spec.id() << " L1=" << fmt_double(l1_norm(k))
      << "\n";
  return kExitOk;
}

inline int run_maximal(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GroupSpec spec = make_spec(cfg, cfg.resolution);
  if (cfg.input.empty()) throw Error(ErrorKind::invalid_argument, "maximal needs --input f.csv");
  std::ifstream in(cfg.input);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot read " + cfg.input);
  const GroupFunction f = read_function_csv(in, spec);
  const WeightFunction weight = parse_weight(cfg.weight.value_or("log2sq"));
  const MaximalField field = maximal(f, weight, cfg.n_max.value_or(spec.size()));
  Sink sink(cfg.output, out);
  if (wants_json(cfg, false)) {
    sink.stream() << nlohmann::json{{"spec", spec.id()},
                                    {"weight", weight.name()},
                                    {"n_min", field.n_min},
                                    {"n_max", field.n_max},
                                    {"tail_bound", field.tail_bound},
                                    {"values", field.values}}
                         .dump(2)
                  << "\n";
  } else {
    sink.stream() << "point_encoding,value\n";
    for (std::size_t x = 0; x < field.values.size(); ++x) {
      sink.stream() << x << "," << fmt_double(field.values[x]) << "\n";
    }
  }
  err << "maximal " << weight.name() << " n<=" << field.n_max << " sup="
      << fmt_double(*std::max_element(field.values.begin(), field.values.end()))
      << " tail_bound=" << fmt_double(field.tail_bound) << "\n";
  return kExitOk;
}

inline int run_atom_test(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.resolution) throw Error(ErrorKind::invalid_argument, "atom-test needs --N (atom depth)");
  const int N = *cfg.resolution;
  const GroupSpec fine = make_spec(cfg, cfg.embed.value_or(N + 2));
  const WeightFunction weight = parse_weight(cfg.weight.value_or("log2sq"));
  const auto rows = atom_sweep(fine, N, cfg.samples.value_or(100), cfg.seed, weight);
  Sink sink(cfg.output, out);
  double worst = 0;
  bool finite = true;
  for (const auto& r : rows) {
    worst = std::max(worst, r.upper);
    finite = finite && std::isfinite(r.value) && std::isfinite(r.upper);
  }
  if (wants_json(cfg, false)) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      arr.push_back({{"sample", i}, {"value", rows[i].value}, {"upper", rows[i].upper}});
    }
    sink.stream() << nlohmann::json{{"spec", fine.id()}, {"depth", N}, {"seed", cfg.seed}, {"samples", arr}}.dump(2)
                  << "\n";
  } else {
    sink.stream() << "sample,value,upper\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      sink.stream() << i << "," << fmt_double(rows[i].value) << "," << fmt_double(rows[i].upper) << "\n";
    }
  }
  err << (finite ? "PASS" : "FAIL") << " atom-test " << fine.id() << " depth=" << N << " samples=" << rows.size()
      << " max_upper=" << fmt_double(worst) << "\n";
  return finite ? kExitOk : kExitFail;
}

inline int run_divergence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.radices.empty()) throw Error(ErrorKind::invalid_spec, "--m is required");
  const auto radices = parse_radices(cfg.radices);
  const auto [from, to] = parse_range(cfg.nk_range);
  const WeightFunction weight = parse_weight(cfg.weight.value_or("one"));
  const auto rows = divergence_sweep(radices, from, to, weight);
  Sink sink(cfg.output, out);
  double route = 0;
  for (const auto& r : rows) route = std::max(route, r.route_defect);
  if (wants_json(cfg, false)) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n_k", r.nk},
                     {"q", r.q},
                     {"H12_norm", r.h12_norm},
                     {"L12_integral", r.l12_integral},
                     {"ratio", r.ratio}});
    }
    sink.stream() << nlohmann::json{{"weight", weight.name()}, {"rows", arr}}.dump(2) << "\n";
  } else {
    sink.stream() << "n_k,q_{n_k},H12_norm,L12_integral,ratio\n";
    for (const auto& r : rows) {
      sink.stream() << r.nk << "," << r.q << "," << fmt_double(r.h12_norm) << "," << fmt_double(r.l12_integral)
                    << "," << fmt_double(r.ratio) << "\n";
    }
  }
  const bool ok = route <= 1e-10;
  err << (ok ? "PASS" : "FAIL") << " divergence weight=" << weight.name() << " rows=" << rows.size()
      << " route_defect=" << fmt_double(route) << "\n";
  return ok ? kExitOk : kExitFail;
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    if (cfg.subcommand == "verify") return detail::run_verify(cfg, out, err);
    if (cfg.subcommand == "transform") return detail::run_transform(cfg, out, err);
    if (cfg.subcommand == "kernel") return detail::run_kernel(cfg, out, err);
    if (cfg.subcommand == "maximal") return detail::run_maximal(cfg, out, err);
    if (cfg.subcommand == "atom-test") return detail::run_atom_test(cfg, out, err);
    if (cfg.subcommand == "divergence") return detail::run_divergence(cfg, out, err);
    err << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

/// Parses argv into a RunConfig.  On --help or a parse error returns the
/// exit status to use instead.
inline std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out = std::cout,
                                               std::ostream& err = std::cerr) {
  CLI::App app{"Exact computation on bounded Vilenkin groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.radices, "radices, e.g. 2,2,2,2 or 3,2,4 or 2^12")->required();
    sub->add_option("--N", cfg.resolution, "resolution (atom / coset depth for atom-test and lemma4)");
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* transform = app.add_subcommand("transform", "forward/inverse Vilenkin transform");
  common(transform);
  transform->add_option("--input", cfg.input, "function CSV (spectrum CSV with --inverse)");
  transform->add_flag("--inverse", cfg.inverse, "input is a spectrum");
  transform->add_flag("--naive", cfg.naive, "use the direct O(M_N^2) transform");

  auto* kernel = app.add_subcommand("kernel", "materialize a Dirichlet or Fejer kernel");
  common(kernel);
  kernel->add_option("--type", cfg.kernel_type, "dirichlet or fejer");
  kernel->add_option("--n", cfg.n, "kernel index")->required();

  auto* verify = app.add_subcommand("verify", "check a kernel identity or estimate");
  common(verify);
  verify->add_option("statement", cfg.statement, "eq3|eq4|eq5|lemma2|lemma3|lemma4|shift|partition")
      ->required()
      ->check(CLI::IsMember({"eq3", "eq4", "eq5", "lemma2", "lemma3", "lemma4", "shift", "partition"}));
  verify->add_option("--n", cfg.n, "kernel index (eq5, lemma4)");
  verify->add_option("--n-max", cfg.n_max, "largest n (eq4)");
  verify->add_option("--A", cfg.A, "lemma2 parameter");
  verify->add_option("--k", cfg.k, "lemma4 k");
  verify->add_option("--l", cfg.l, "lemma4 l");
  verify->add_option("--t", cfg.t, "shift identity parameter");
  verify->add_option("--embed", cfg.embed, "lemma4 embedding resolution N' (default N+2)");
  verify->add_option("--samples", cfg.samples, "random n for eq5 (default 50)");

  auto* maximal_cmd = app.add_subcommand("maximal", "truncated maximal Fejer operator");
  common(maximal_cmd);
  maximal_cmd->add_option("--weight", cfg.weight, "log2sq|lnsq|one|logpow:<gamma>");
  maximal_cmd->add_option("--n-max", cfg.n_max, "largest n in the sup (>= M_N)");
  maximal_cmd->add_option("--input", cfg.input, "function CSV")->required();

  auto* atom = app.add_subcommand("atom-test", "random 1/2-atom estimate");
  common(atom);
  atom->add_option("--embed", cfg.embed, "embedding resolution N' (default N+2)");
  atom->add_option("--samples", cfg.samples, "number of atoms (default 100)");
  atom->add_option("--weight", cfg.weight, "log2sq|lnsq|one|logpow:<gamma>");

  auto* divergence = app.add_subcommand("divergence", "counterexample divergence ratio");
  common(divergence);
  divergence->add_option("--nk-range", cfg.nk_range, "a..b");
  divergence->add_option("--weight", cfg.weight, "log2sq|lnsq|one|logpow:<gamma>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return cfg;
}

}  // namespace vilenkin::cli
