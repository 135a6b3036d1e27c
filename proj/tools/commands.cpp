#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "symdesign/bounds.hpp"
#include "symdesign/frame_potential.hpp"
#include "symdesign/irrep.hpp"
#include "symdesign/moments.hpp"
#include "symdesign/oracle.hpp"
#include "symdesign/scans.hpp"
#include "symdesign/spectra.hpp"
#include "symdesign/verify.hpp"

namespace symdesign::cli {

using nlohmann::json;

IntRange parse_range(const std::string& text, const std::string& flag) {
  static const std::regex single(R"(\s*(\d+)\s*)");
  static const std::regex span(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
  std::smatch m;
  IntRange r;
  if (std::regex_match(text, m, single)) {
    r.lo = r.hi = std::stoi(m[1]);
  } else if (std::regex_match(text, m, span)) {
    r.lo = std::stoi(m[1]);
    r.hi = std::stoi(m[2]);
  } else {
    throw UsageError(flag + " expects N or LO..HI, got '" + text + "'");
  }
  if (r.hi < r.lo) throw UsageError(flag + " range is empty: " + text);
  return r;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

// Destination for command output: a file (optionally appended to) or stdout.
class Sink {
 public:
  Sink(const std::string& path, bool append) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }
  void line(const std::string& s) {
    os() << s << '\n';
    os().flush();
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

constexpr const char* kScanHeader = "m_or_n,tuple,dim,gap,second_eig,unit_dim,threshold,bound,valid";

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string scan_csv(const ScanRow& r) {
  const auto& g = r.result;
  std::ostringstream os;
  os << r.m_or_n << ',' << quote(r.label + ":" + (g.feasible ? g.tuple : "infeasible")) << ',';
  if (g.feasible) {
    os << g.dim << ',' << num(g.gap) << ',' << num(g.second_eigenvalue) << ',' << g.unit_dim << ',';
  } else {
    os << ",,,,";
  }
  os << num(r.threshold) << ',' << num(r.bound) << ',' << (r.valid ? "true" : "false");
  return os.str();
}

json scan_json(const ScanRow& r) {
  const auto& g = r.result;
  json j{{"m_or_n", r.m_or_n}, {"convention", r.label}, {"feasible", g.feasible}};
  if (g.feasible) {
    j["tuple"] = g.tuple;
    j["dim"] = g.dim;
    j["gap"] = num_json(g.gap);
    j["second_eig"] = num_json(g.second_eigenvalue);
    j["unit_dim"] = g.unit_dim;
    j["tuples_evaluated"] = g.tuples_evaluated;
  } else {
    j["note"] = g.note;
  }
  j["threshold"] = num_json(r.threshold);
  j["bound"] = num_json(r.bound);
  j["valid"] = r.valid;
  return j;
}

ScanOptions scan_options(const RunConfig& cfg) {
  if (cfg.d < 2) throw UsageError("--d must be at least 2");
  if (cfg.k < 1 || cfg.k > 4) throw UsageError("--k must lie in 1..4");
  if (!(cfg.tol > 0.0 && cfg.tol < 0.5)) throw UsageError("--tol must lie in (0, 0.5)");
  ScanOptions o;
  o.d = cfg.d;
  o.k = cfg.k;
  o.max_block_dim = cfg.max_dim;
  o.spectral.unit_tol = cfg.tol;
  o.spectral.dense_limit = cfg.dense_limit;
  o.assembly.dense_threshold = cfg.dense_limit;
  o.assembly.max_dim = std::max<std::size_t>(cfg.max_dim, 1);
  try {
    o.spectral.mode = parse_solve_mode(cfg.solver);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (cfg.tuples != "all") {
    try {
      o.tuples = read_tuples_file(cfg.tuples);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    if (o.tuples.empty()) throw UsageError("tuple file " + cfg.tuples + " lists no tuples");
  }
  return o;
}

// Keys (m_or_n, label) of rows already present in a checkpointed CSV.
std::set<std::pair<int, std::string>> completed_rows(const std::string& path, bool& has_header) {
  std::set<std::pair<int, std::string>> done;
  has_header = false;
  std::ifstream in(path);
  if (!in) return done;
  static const std::regex row(R"re(^(\d+),"([^":]+):.*$)re");
  std::string line;
  while (std::getline(in, line)) {
    if (line == kScanHeader) {
      has_header = true;
      continue;
    }
    std::smatch m;
    if (std::regex_match(line, m, row)) done.emplace(std::stoi(m[1]), m[2]);
  }
  return done;
}

using ScanRunner = std::function<std::vector<ScanRow>(const RowSink&, const std::function<bool(int, const std::string&)>&)>;

int run_scan(const RunConfig& cfg, const ScanRunner& runner) {
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  if (cfg.resume && (cfg.out.empty() || cfg.format != "csv")) throw UsageError("--resume needs --out and csv format");
  bool has_header = false;
  std::set<std::pair<int, std::string>> done;
  if (cfg.resume) done = completed_rows(cfg.out, has_header);
  Sink sink(cfg.out, cfg.resume);
  bool partial = false;
  json rows = json::array();
  if (cfg.format == "csv" && !has_header) sink.line(kScanHeader);
  auto on_row = [&](const ScanRow& r) {
    if (!r.result.feasible) {
      partial = true;
      std::cerr << "row " << r.m_or_n << " (" << r.label << ") infeasible: " << r.result.note << '\n';
    }
    if (cfg.format == "csv") {
      sink.line(scan_csv(r));
    } else {
      rows.push_back(scan_json(r));
    }
  };
  auto skip = [&](int key, const std::string& label) { return done.count({key, label}) > 0; };
  runner(on_row, skip);
  if (cfg.format == "json") sink.line(rows.dump(2));
  return partial ? kPartial : kSuccess;
}

std::vector<WindowConvention> conventions(const std::string& name) {
  if (name == "both") return {WindowConvention::projections, WindowConvention::qubits};
  if (name == "projections" || name == "proj") return {WindowConvention::projections};
  if (name == "qubits" || name == "qubit") return {WindowConvention::qubits};
  throw UsageError("--convention must be both, projections or qubits");
}

Partition parse_shape(const std::string& text) {
  try {
    return Partition::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--shape: ") + e.what());
  }
}

void print_json(const RunConfig& cfg, const json& j) {
  Sink sink(cfg.out, false);
  sink.line(j.dump(2));
}

json bound_json(const BoundReport& b) {
  json inputs = json::object();
  for (const auto& [k, v] : b.inputs) inputs[k] = num_json(v);
  return {{"name", b.name}, {"inputs", inputs}, {"value", num_json(b.value)}, {"valid", b.valid}};
}

double require_value(const std::optional<double>& v, const std::string& flag) {
  if (!v) throw UsageError("missing " + flag);
  return *v;
}

}  // namespace

int cmd_partitions(const RunConfig& cfg) {
  const auto range = parse_range(cfg.n, "--n");
  if (range.lo < 1 || cfg.d < 1) throw UsageError("--n and --d must be positive");
  json all = json::array();
  Sink sink(cfg.out, false);
  if (cfg.format == "csv") sink.line("n,partition,dim,multiplicity,content_sum");
  for (int n = range.lo; n <= range.hi; ++n) {
    for (const auto& p : partitions(n, cfg.d)) {
      const auto dim = dim_irrep(p);
      const auto mult = multiplicity(p, cfg.d);
      if (cfg.format == "csv") {
        sink.line(std::to_string(n) + "," + quote(p.str()) + "," + std::to_string(dim) + "," + std::to_string(mult) +
                  "," + std::to_string(content_sum(p)));
      } else {
        all.push_back({{"n", n}, {"partition", p.parts()}, {"dim", dim}, {"multiplicity", mult},
                       {"content_sum", content_sum(p)}});
      }
    }
  }
  if (cfg.format != "csv") sink.line(all.dump(2));
  return kSuccess;
}

int cmd_rep(const RunConfig& cfg) {
  if (cfg.shape.empty()) throw UsageError("rep needs --shape, e.g. --shape \"(2,1)\"");
  const Partition p = parse_shape(cfg.shape);
  if (p.size() > 12) throw UsageError("rep is limited to n <= 12");
  const auto rep = build_irrep(p, p.size(), cfg.inject_fault ? YorVariant::flipped_diagonal_sign : YorVariant::standard);
  Sink sink(cfg.out, false);
  sink.line(irrep_to_json(*rep));
  return kSuccess;
}

int cmd_gap_scan(const RunConfig& cfg) {
  const auto range = parse_range(cfg.m, "--m");
  if (range.lo < 2) throw UsageError("--m must start at 2 or above");
  const auto conv = conventions(cfg.convention);
  const auto opts = scan_options(cfg);
  return run_scan(cfg, [&](const RowSink& sink, const auto& skip) {
    return bulk_gap_scan(range.lo, range.hi, conv, opts, sink, skip);
  });
}

int cmd_all_to_all(const RunConfig& cfg) {
  const auto range = parse_range(cfg.n, "--n");
  if (range.lo < 2) throw UsageError("--n must start at 2 or above");
  const auto opts = scan_options(cfg);
  return run_scan(cfg, [&](const RowSink& sink, const auto& skip) {
    return all_to_all_gap_scan(range.lo, range.hi, opts, sink, skip);
  });
}

int cmd_brickwork(const RunConfig& cfg) {
  const auto range = parse_range(cfg.n, "--n");
  if (range.lo < 3) throw UsageError("brickwork needs --n of at least 3");
  const auto opts = scan_options(cfg);
  return run_scan(cfg, [&](const RowSink& sink, const auto& skip) {
    return brickwork_scan(range.lo, range.hi, opts, sink, skip);
  });
}

int cmd_counterexample(const RunConfig& cfg) {
  const Partition shape = parse_shape(cfg.shape.empty() ? "(3,2,1)" : cfg.shape);
  if (cfg.k != 2) throw UsageError("counterexample is defined for k = 2");
  if (shape.rows() > cfg.d) {
    throw UsageError("shape " + shape.str() + " has more rows than d = " + std::to_string(cfg.d) +
                     " and does not occur as a charge sector");
  }
  if (shape.size() < 2) throw UsageError("shape needs at least two boxes");
  GeometryKind geometry;
  try {
    geometry = Geometry::parse(cfg.geometry);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (geometry == GeometryKind::brickwork) throw UsageError("counterexample uses a random-walk geometry, not brickwork");
  if (!(cfg.tol > 0.0 && cfg.tol < 0.5)) throw UsageError("--tol must lie in (0, 0.5)");
  const SectorTuple tuple{{shape, shape}, {shape, shape}};
  if (tuple.block_dim() > cfg.max_dim * 4) {
    throw UsageError("block dimension " + std::to_string(tuple.block_dim()) + " exceeds the --max-dim budget");
  }

  IrrepCache cache;
  BlockContext ctx(tuple, cache);
  AssemblyOptions ao;
  ao.dense_threshold = cfg.dense_limit;
  SpectralOptions so;
  so.unit_tol = cfg.tol;
  so.dense_limit = cfg.dense_limit;
  so.mode = parse_solve_mode(cfg.solver);
  const Geometry g(geometry, shape.size());
  const auto swap = spectral_gap(step_channel(ctx, g, Ensemble::swap_only, ao), so);
  const auto cqa = spectral_gap(step_channel(ctx, g, Ensemble::cqa, ao), so);
  // Identity and swap restricted to V_lambda (x) V_lambda are independent
  // unless the irrep is one-dimensional.
  const std::size_t haar = dim_irrep(shape) >= 2 ? 2 : 1;

  auto verdict = [&](std::size_t count) {
    return count == haar ? "matches the Haar commutant" : "exceeds the Haar commutant: not a 2-design";
  };
  json j{{"shape", shape.parts()},
         {"self_conjugate", shape.is_self_conjugate()},
         {"n", shape.size()},
         {"d", cfg.d},
         {"k", 2},
         {"geometry", to_string(geometry)},
         {"tuple", tuple.str()},
         {"block_dim", tuple.block_dim()},
         {"tol", cfg.tol},
         {"unit_dim_swap_only", swap.unit_dim},
         {"unit_dim_cqa", cqa.unit_dim},
         {"haar_commutant_dim", haar},
         {"verdict_swap_only", verdict(swap.unit_dim)},
         {"verdict_cqa", verdict(cqa.unit_dim)},
         {"solver", {{"swap_only", {{"mode", to_string(swap.solver)}, {"matvecs", swap.iterations}, {"residual", swap.residual}, {"tolerance_tie", swap.tolerance_tie}}},
                     {"cqa", {{"mode", to_string(cqa.solver)}, {"matvecs", cqa.iterations}, {"residual", cqa.residual}, {"tolerance_tie", cqa.tolerance_tie}}}}}};
  print_json(cfg, j);
  return cqa.unit_dim == haar ? kSuccess : kFailure;
}

int cmd_frame_potential(const RunConfig& cfg) {
  const auto range = parse_range(cfg.n, "--n");
  if (range.lo < 2) throw UsageError("--n must start at 2 or above");
  if (cfg.samples != 0 && cfg.samples < 100) throw UsageError("--samples must be 0 (skip) or at least 100");
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  Sink sink(cfg.out, false);
  json rows = json::array();
  bool partial = false;
  if (cfg.format == "csv") sink.line("n,exact,paper_formula,mc_estimate,mc_stderr");
  for (int n = range.lo; n <= range.hi; ++n) {
    const auto exact = frame_potential_exact_k2(n);
    const auto paper = frame_potential_paper_k2(n);
    std::string est, err;
    json mc = nullptr;
    if (cfg.samples > 0) {
      if (n > 8) {
        est = err = "infeasible";
        mc = "infeasible";
        partial = true;
      } else {
        const auto r = oracle::frame_potential_mc(n, 2, cfg.samples, cfg.seed);
        est = num(r.estimate);
        err = num(r.stderr_);
        mc = {{"estimate", r.estimate}, {"stderr", r.stderr_}, {"samples", r.samples}, {"seed", r.seed}};
      }
    }
    if (exact != paper) {
      std::cerr << "n=" << n << ": closed-form value " << paper << " differs from the per-sector value " << exact << '\n';
    }
    if (cfg.format == "csv") {
      sink.line(std::to_string(n) + "," + std::to_string(exact) + "," + std::to_string(paper) + "," + est + "," + err);
    } else {
      rows.push_back({{"n", n}, {"exact", exact}, {"paper_formula", paper}, {"formulas_agree", exact == paper}, {"mc", mc}});
    }
  }
  if (cfg.format == "json") sink.line(rows.dump(2));
  return partial ? kPartial : kSuccess;
}

int cmd_bounds(const RunConfig& cfg) {
  json j;
  try {
    if (cfg.name == "knabe") {
      j = bound_json(knabe_bound(parse_range(cfg.m, "--m").lo, require_value(cfg.gap, "--gap")));
    } else if (cfg.name == "all-to-all" || cfg.name == "all_to_all") {
      j = bound_json(all_to_all_bound(parse_range(cfg.n, "--n").lo, parse_range(cfg.m, "--m").lo,
                                      require_value(cfg.gamma, "--gamma")));
    } else if (cfg.name == "detectability") {
      j = bound_json(detectability_bound(require_value(cfg.delta, "--delta")));
    } else if (cfg.name == "convergence" || cfg.name == "convergence_steps") {
      const int n = parse_range(cfg.n, "--n").lo;
      const double eps = require_value(cfg.epsilon, "--epsilon");
      const double delta = require_value(cfg.delta, "--delta");
      const long steps = convergence_steps(cfg.k, n, cfg.d, eps, delta);
      j = {{"name", "convergence_steps"},
           {"inputs", {{"k", cfg.k}, {"n", n}, {"d", cfg.d}, {"epsilon", eps}, {"delta", delta}}},
           {"value", steps},
           {"valid", true}};
    } else if (cfg.name == "one-design" || cfg.name == "one_design_steps") {
      const int n = parse_range(cfg.n, "--n").lo;
      const double eps = require_value(cfg.epsilon, "--epsilon");
      j = {{"name", "one_design_steps"},
           {"inputs", {{"n", n}, {"d", cfg.d}, {"epsilon", eps}}},
           {"value", one_design_steps(n, cfg.d, eps)},
           {"valid", true}};
    } else {
      throw UsageError("--name must be knabe, all-to-all, detectability, convergence or one-design");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  print_json(cfg, j);
  return kSuccess;
}

int cmd_convergence(const RunConfig& cfg) {
  const int n = parse_range(cfg.n, "--n").lo;
  const double eps = cfg.epsilon.value_or(0.01);
  json j{{"k", cfg.k}, {"n", n}, {"d", cfg.d}, {"epsilon", eps}};
  double delta = 0.0;
  if (cfg.delta) {
    delta = *cfg.delta;
    j["delta_source"] = "given";
  } else {
    // Measure the step-channel gap, minimized over sector tuples.
    GeometryKind geometry;
    Ensemble ensemble;
    try {
      geometry = Geometry::parse(cfg.geometry);
      ensemble = parse_ensemble(cfg.ensemble);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const auto opts = scan_options(cfg);
    MinGap g;
    if (geometry == GeometryKind::brickwork) {
      g = minimize_gap(n, [&](const BlockContext& ctx) { return brickwork_step(ctx, opts.assembly); }, true, opts);
    } else {
      g = minimize_gap(
          n, [&](const BlockContext& ctx) { return step_channel(ctx, Geometry(geometry, n), ensemble, opts.assembly); },
          false, opts);
    }
    if (!g.feasible) {
      std::cerr << "gap measurement infeasible: " << g.note << '\n';
      return kPartial;
    }
    delta = g.gap;
    j["delta_source"] = "measured";
    j["geometry"] = to_string(geometry);
    j["ensemble"] = cfg.ensemble;
    j["minimizing_tuple"] = g.tuple;
  }
  j["delta"] = num_json(delta);
  try {
    j["steps"] = convergence_steps(cfg.k, n, cfg.d, eps, delta);
    if (n >= 2 && eps < 1.0) j["one_design_steps"] = one_design_steps(n, cfg.d, eps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  print_json(cfg, j);
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.quick = cfg.quick;
  opts.seed = cfg.seed;
  opts.variant = cfg.inject_fault ? YorVariant::flipped_diagonal_sign : YorVariant::standard;
  Sink sink(cfg.out, false);
  std::size_t failed = 0;
  const auto results = run_invariants(opts, [&](const InvariantResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6.2fs", r.seconds);
    sink.line(std::string(r.pass ? "PASS " : "FAIL ") + r.module + "/" + r.id + "  " + buf + "  " + r.observed);
    if (!r.pass) ++failed;
  });
  sink.line(std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " invariants passed");
  return failed == 0 ? kSuccess : kFailure;
}

}  // namespace symdesign::cli
