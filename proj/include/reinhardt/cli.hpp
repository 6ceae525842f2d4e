#pragma once

// Command-line front end. run_cli is the whole program; tools/ only forwards
// argc/argv to it.

#include "reinhardt/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace reinhardt::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kViolation = 2,
  kNotModel = 3,
  kUnknown = 4,
};

struct RunConfig {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  int entry_bound = 3;
  int degree_bound = 3;
  int coefficient_grid = 3;
  double band = kDefaultBand;
  double eigen_tolerance = kEigenTolerance;
  double regularity_threshold = 1e-8;
  std::string out;
  std::string format = "auto";
  std::string point;
  std::string family = "auto";
  int steps = 40;
};

struct Outcome {
  int code = kOk;
  Json report;
  std::string csv;  // orbit with csv format
};

/// 64-bit FNV-1a
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp + " for writing");
    f << content;
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw Error("write to " + tmp + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string orbit_csv(const OrbitRecord& rec, std::size_t n) {
  std::string out = "i,a_i";
  for (std::size_t j = 1; j <= n; ++j) out += ",re_z" + std::to_string(j) + ",im_z" + std::to_string(j);
  out += ",boundary_distance\n";
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_double(rec.parameters[i]);
    for (const auto& c : rec.points[i]) out += "," + format_double(c.real()) + "," + format_double(c.imag());
    out += "," + format_double(rec.boundary_distance[i]) + "\n";
  }
  return out;
}

namespace detail {

inline Outcome run_check(const RunConfig& cfg, const DomainSpec& spec, std::uint64_t seed) {
  Outcome o;
  BoundednessOptions bo;
  bo.seed = seed;
  const auto cert = boundedness_certificate(spec, bo);
  o.report["boundedness"] = boundedness_json(cert);
  bool regular = false;
  if (cert.kind != BoundednessKind::unbounded_witness) {
    const auto reg = boundary_regularity_sample(spec, cfg.samples, cfg.regularity_threshold, seed);
    o.report["regularity"] = regularity_json(reg);
    regular = reg.regular();
  }
  const bool ok = cert.kind == BoundednessKind::bounded_certified && regular;
  o.report["verdict"] = ok ? "bounded_and_regular"
                        : cert.kind == BoundednessKind::unbounded_witness ? "unbounded"
                        : cert.kind == BoundednessKind::unknown          ? "boundedness_unresolved"
                                                                          : "irregular_boundary";
  o.code = ok ? kOk : kViolation;
  return o;
}

inline Outcome run_classify(const RunConfig& cfg, const DomainSpec& spec, std::uint64_t seed) {
  Outcome o;
  std::optional<RegularityReport> reg;
  try {
    reg = boundary_regularity_sample(spec, cfg.samples, cfg.regularity_threshold, seed);
  } catch (const DomainError&) {
  }
  BoundednessOptions bo;
  bo.seed = seed;
  const auto v = classify(spec, reg ? &*reg : nullptr, bo);
  o.report["verdict"] = verdict_json(spec, v);
  if (reg) o.report["regularity"] = regularity_json(*reg);
  o.code = v.kind == VerdictKind::not_model ? kNotModel : v.kind == VerdictKind::unknown ? kUnknown : kOk;
  return o;
}

inline Outcome run_symmetries(const RunConfig& cfg, const DomainSpec& spec, std::uint64_t seed) {
  Outcome o;
  o.report["symmetries"] = symmetries_json(enumerate_algebraic_symmetries(spec, cfg.entry_bound, seed));
  return o;
}

inline ParsedPoint require_point(const RunConfig& cfg, const DomainSpec& spec) {
  if (cfg.point.empty()) throw Error(cfg.command + " requires --point");
  ParsedPoint p = parse_point(cfg.point);
  if (p.components.size() != spec.dim())
    throw DimensionError("--point has " + std::to_string(p.components.size()) + " components, expected " +
                         std::to_string(spec.dim()));
  return p;
}

inline Outcome run_orbit(const RunConfig& cfg, const DomainSpec& spec, bool csv) {
  Outcome o;
  AutomorphismFamily family;
  std::string used = cfg.family;
  if (used == "auto") {
    if (spec.q() == twisted_disk_spec().q()) used = "twisted-disk";
    else used = "model";
  }
  if (used == "model") {
    const auto v = classify(spec);
    if (!v.model) throw Error("orbit: no Moebius family, classification gave " + std::string(to_string(v.kind)));
    family = moebius_family(*v.model);
  } else if (used == "twisted-disk") {
    if (spec.dim() != 2) throw DimensionError("the twisted-disk family acts on C^2");
    family = twisted_disk_family();
  } else {
    throw Error("unknown family '" + cfg.family + "'");
  }
  const ComplexPoint p = cfg.point.empty() ? ComplexPoint(spec.dim()) : require_point(cfg, spec).numeric();
  const auto rec = orbit(spec, family, p, geometric_schedule(cfg.steps), cfg.band);
  o.report["family"] = used;
  o.report["orbit"] = orbit_json(rec);
  if (csv) o.csv = orbit_csv(rec, spec.dim());
  return o;
}

inline Outcome run_levi(const RunConfig& cfg, const DomainSpec& spec) {
  Outcome o;
  const auto p = require_point(cfg, spec);
  o.report["levi"] = levi_json(levi_form(spec, p.numeric(), 1e-9, cfg.eigen_tolerance));
  return o;
}

inline Outcome run_type(const RunConfig& cfg, const DomainSpec& spec, std::uint64_t seed) {
  Outcome o;
  const auto p = require_point(cfg, spec);
  TypeProbeOptions opt;
  opt.degree_bound = cfg.degree_bound;
  opt.coefficient_grid = cfg.coefficient_grid;
  opt.seed = seed;
  const TypeProbe probe = p.is_exact() ? type_probe(spec, p.exact(), opt) : type_probe_numeric(spec, p.numeric(), opt);
  o.report["type"] = type_probe_json(probe);
  return o;
}

inline Outcome run_report(const RunConfig& cfg, const DomainSpec& spec, std::uint64_t seed) {
  Outcome o;
  auto section = [&](const char* key, auto&& fn) {
    try {
      Outcome part = fn();
      for (auto& [k, v] : part.report.items()) o.report[key][k] = v;
      o.report[key]["exit_code"] = part.code;
    } catch (const std::exception& e) {
      o.report[key] = {{"error", e.what()}, {"exit_code", kError}};
    }
  };
  section("check", [&] { return run_check(cfg, spec, seed); });
  section("classify", [&] { return run_classify(cfg, spec, seed); });
  section("symmetries", [&] { return run_symmetries(cfg, spec, seed); });
  if (!cfg.point.empty()) {
    section("levi", [&] { return run_levi(cfg, spec); });
    section("type", [&] { return run_type(cfg, spec, seed); });
  }
  return o;
}

inline Outcome run_one(const RunConfig& cfg, const DomainSpec& spec, std::uint64_t seed, bool csv) {
  Outcome o;
  if (cfg.command == "check") o = run_check(cfg, spec, seed);
  else if (cfg.command == "classify") o = run_classify(cfg, spec, seed);
  else if (cfg.command == "symmetries") o = run_symmetries(cfg, spec, seed);
  else if (cfg.command == "orbit") o = run_orbit(cfg, spec, csv);
  else if (cfg.command == "levi") o = run_levi(cfg, spec);
  else if (cfg.command == "type") o = run_type(cfg, spec, seed);
  else if (cfg.command == "report") o = run_report(cfg, spec, seed);
  else throw Error("unknown command " + cfg.command);
  Json head{{"schema_version", kSchemaVersion}, {"command", cfg.command}, {"seed", seed}, {"spec", spec_json(spec)}};
  for (auto& [k, v] : o.report.items()) head[k] = v;
  head["exit_code"] = o.code;
  o.report = std::move(head);
  return o;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.samples == 0) throw Error("--samples must be positive");
  if (cfg.entry_bound < 0) throw Error("--entry-bound must be nonnegative");
  if (cfg.degree_bound <= 0) throw Error("--degree-bound must be positive");
  if (cfg.coefficient_grid <= 0) throw Error("--grid must be positive");
  if (cfg.steps <= 0) throw Error("--steps must be positive");
  if (!(cfg.band > 0 && cfg.band <= 1e-3)) throw Error("--band must lie in (0, 1e-3]");
  if (!(cfg.eigen_tolerance > 0 && cfg.eigen_tolerance <= 1e-3)) throw Error("--eigen-tol must lie in (0, 1e-3]");
  if (cfg.format != "auto" && cfg.format != "json" && cfg.format != "csv") throw Error("--format must be json or csv");
  if (cfg.format == "csv" && cfg.command != "orbit") throw Error("csv output is only available for orbit");
}

inline std::string entry_key(const DomainSpec& spec, const fs::path& path) {
  return spec.name().empty() ? path.stem().string() : spec.name();
}

}  // namespace detail

/// Runs one command; returns the process exit code.
inline int execute(RunConfig cfg, std::ostream& out, std::ostream& err) {
  try {
    detail::validate(cfg);
    const bool csv = cfg.command == "orbit" && cfg.format != "json";
    std::string text;
    int code = kOk;
    if (fs::is_directory(cfg.input)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(cfg.input))
        if (e.is_regular_file() && e.path().extension() == ".dom") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw Error("no .dom files in " + cfg.input);
      std::vector<std::pair<std::string, Outcome>> results(files.size());
      auto work = [&](std::size_t i) {
        std::string key = files[i].stem().string();
        Outcome o;
        try {
          const DomainSpec spec = parse_spec(read_file(files[i].string()));
          key = detail::entry_key(spec, files[i]);
          o = detail::run_one(cfg, spec, cfg.seed ^ fnv1a(key), false);
        } catch (const std::exception& e) {
          o.code = kError;
          o.report = {{"error", e.what()}, {"exit_code", kError}};
        }
        results[i] = {key, std::move(o)};
      };
      const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
      for (std::size_t start = 0; start < files.size(); start += workers) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < std::min(files.size(), start + workers); ++i)
          batch.push_back(std::async(std::launch::async, work, i));
        for (auto& f : batch) f.get();
      }
      Json all{{"schema_version", kSchemaVersion}, {"command", cfg.command}, {"seed", cfg.seed}, {"batch", true}};
      all["entries"] = Json::object();
      for (auto& [key, o] : results) {
        if (all["entries"].contains(key)) throw Error("duplicate spec name '" + key + "' in batch");
        all["entries"][key] = o.report;
        code = std::max(code, o.code);
      }
      all["exit_code"] = code;
      text = all.dump(2) + "\n";
    } else {
      if (!fs::exists(cfg.input)) throw Error("no such file: " + cfg.input);
      const DomainSpec spec = parse_spec(read_file(cfg.input));
      Outcome o = detail::run_one(cfg, spec, cfg.seed, csv);
      code = o.code;
      text = csv ? o.csv : o.report.dump(2) + "\n";
    }
    if (cfg.out.empty()) out << text;
    else write_atomic(cfg.out, text);
    return code;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kError;
}

/// Parses arguments and runs the selected command.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Analysis toolkit for Reinhardt domains {Q(|z_1|^2, ..., |z_n|^2) < 1}", "reinhardt_lab"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::uint64_t> seed;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"check", "boundedness certificate and boundary regularity sample"},
      {"classify", "normal-form classification with canonical form"},
      {"symmetries", "algebraic (monomial) symmetries"},
      {"orbit", "orbit of an automorphism family toward the boundary"},
      {"levi", "Levi form at a boundary point"},
      {"type", "bounded search for the curve of highest contact"},
      {"report", "check, classify and symmetries (plus levi and type with --point)"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input, "spec file or directory of .dom files")->required();
    sub->add_option("--seed", seed, "random seed (default: $REINHARDT_LAB_SEED or 0)");
    sub->add_option("--samples", cfg.samples, "sample count");
    sub->add_option("--entry-bound", cfg.entry_bound, "symmetry search entry bound");
    sub->add_option("--degree-bound", cfg.degree_bound, "type probe degree bound");
    sub->add_option("--grid", cfg.coefficient_grid, "type probe dyadic magnitudes per coefficient");
    sub->add_option("--band", cfg.band, "boundary band");
    sub->add_option("--eigen-tol", cfg.eigen_tolerance, "eigenvalue zero tolerance");
    sub->add_option("--out", cfg.out, "output path (written atomically)");
    sub->add_option("--format", cfg.format, "json or csv (csv: orbit only)");
    sub->add_option("--point", cfg.point, "comma-separated point, e.g. 2^(-1/2),0,2^(-1/4)");
    sub->add_option("--family", cfg.family, "orbit family: auto, model or twisted-disk");
    sub->add_option("--steps", cfg.steps, "orbit length for a_i = -1 + 2^-i");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kError;
  }
  for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (seed) {
    cfg.seed = *seed;
  } else if (const char* env = std::getenv("REINHARDT_LAB_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: REINHARDT_LAB_SEED is not an unsigned integer\n";
      return kError;
    }
  }
  return execute(cfg, out, err);
}

}  // namespace reinhardt::cli
