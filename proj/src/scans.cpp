#include "symdesign/scans.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "symdesign/bounds.hpp"

namespace symdesign {

std::string to_string(WindowConvention c) { return c == WindowConvention::qubits ? "qubit" : "proj"; }

std::vector<SectorTuple> scan_tuples(int n, const ScanOptions& opts) {
  if (opts.tuples.empty()) return enumerate_tuples(n, opts.d, opts.k, true);
  std::vector<SectorTuple> out;
  std::set<SectorTuple> seen;
  auto add = [&](const SectorTuple& t) {
    const SectorTuple c = t.canonical();
    if (seen.insert(c).second) out.push_back(c);
  };
  for (const auto& t : opts.tuples) {
    if (t.k() != opts.k) throw std::invalid_argument("tuple " + t.str() + " has k != " + std::to_string(opts.k));
    if (t.n() == n) {
      add(t);
    } else if (t.n() > n) {
      for (const auto& r : branch_reduced_tuples(t, n)) add(r);
    } else {
      throw std::invalid_argument("tuple " + t.str() + " has fewer than " + std::to_string(n) + " boxes");
    }
  }
  return out;
}

MinGap minimize_gap(int n, const BlockBuilder& build, bool singular, const ScanOptions& opts) {
  MinGap out;
  const auto tuples = scan_tuples(n, opts);
  for (const auto& t : tuples) {
    if (t.block_dim() > opts.max_block_dim) {
      out.feasible = false;
      out.note = "block " + t.str() + " has dimension " + std::to_string(t.block_dim()) + " > cap " +
                 std::to_string(opts.max_block_dim);
      return out;
    }
  }
  IrrepCache cache;
  std::vector<SpectralReport> reports(tuples.size());
  std::vector<std::string> errors(tuples.size());
  const long count = static_cast<long>(tuples.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      BlockContext ctx(tuples[i], cache);
      const MomentBlock block = build(ctx);
      reports[i] = singular ? singular_gap(block, opts.spectral) : spectral_gap(block, opts.spectral);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (!errors[i].empty()) {
      out.feasible = false;
      out.note = errors[i];
      return out;
    }
    ++out.tuples_evaluated;
    const auto& r = reports[i];
    if (r.gap < out.gap) {
      out.gap = r.gap;
      out.second_eigenvalue = r.second_eigenvalue;
      out.unit_dim = r.unit_dim;
      out.dim = r.dim;
      out.tuple = r.tuple;
    }
  }
  return out;
}

MinGap open_chain_gap(int n, const ScanOptions& opts) {
  if (n < 2) throw std::invalid_argument("open chain needs n >= 2");
  return minimize_gap(
      n, [&opts, n](const BlockContext& ctx) { return bulk_hamiltonian(ctx, n, 1, opts.assembly); }, false, opts);
}

std::vector<ScanRow> bulk_gap_scan(int m_lo, int m_hi, const std::vector<WindowConvention>& conventions,
                                   const ScanOptions& opts, const RowSink& sink,
                                   const std::function<bool(int, const std::string&)>& skip) {
  if (m_lo < 2 || m_hi < m_lo) throw std::invalid_argument("bulk scan needs 2 <= m_lo <= m_hi");
  std::vector<ScanRow> rows;
  std::vector<WindowConvention> order;
  for (auto c : {WindowConvention::projections, WindowConvention::qubits}) {
    for (auto want : conventions) {
      if (want == c) {
        order.push_back(c);
        break;
      }
    }
  }
  for (int m = m_lo; m <= m_hi; ++m) {
    for (auto c : order) {
      const std::string label = to_string(c);
      if (skip && skip(m, label)) continue;
      ScanRow row;
      row.m_or_n = m;
      row.label = label;
      row.threshold = knabe_threshold(m);
      const int qubits = c == WindowConvention::qubits ? m : m + 1;
      row.result = open_chain_gap(qubits, opts);
      if (row.result.feasible && std::isfinite(row.result.gap)) {
        const auto b = knabe_bound(m, row.result.gap);
        row.bound = b.value;
        row.valid = b.valid;
      }
      rows.push_back(row);
      if (sink) sink(row);
    }
  }
  return rows;
}

std::vector<ScanRow> all_to_all_gap_scan(int n_lo, int n_hi, const ScanOptions& opts, const RowSink& sink,
                                         const std::function<bool(int, const std::string&)>& skip) {
  if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("all-to-all scan needs 2 <= n_lo <= n_hi");
  std::vector<ScanRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (skip && skip(n, "all-to-all")) continue;
    ScanRow row;
    row.m_or_n = n;
    row.label = "all-to-all";
    row.result = minimize_gap(
        n, [&opts](const BlockContext& ctx) { return all_to_all_hamiltonian(ctx, opts.assembly); }, false, opts);
    row.valid = row.result.feasible && row.result.gap > 0.0;
    rows.push_back(row);
    if (sink) sink(row);
  }
  return rows;
}

std::vector<ScanRow> brickwork_scan(int n_lo, int n_hi, const ScanOptions& opts, const RowSink& sink,
                                    const std::function<bool(int, const std::string&)>& skip) {
  if (n_lo < 3 || n_hi < n_lo) throw std::invalid_argument("brickwork scan needs 3 <= n_lo <= n_hi");
  std::vector<ScanRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (skip && skip(n, "brickwork")) continue;
    ScanRow row;
    row.m_or_n = n;
    row.label = "brickwork";
    row.result = minimize_gap(
        n, [&opts](const BlockContext& ctx) { return brickwork_step(ctx, opts.assembly); }, true, opts);
    if (row.result.feasible) {
      const MinGap chain = open_chain_gap(n, opts);
      if (chain.feasible && std::isfinite(chain.gap)) {
        const auto b = detectability_bound(chain.gap);
        row.bound = b.value;
        row.valid = !(row.result.second_eigenvalue > b.value + 1e-12);
      }
    }
    rows.push_back(row);
    if (sink) sink(row);
  }
  return rows;
}

std::optional<double> power_law_exponent(const std::vector<std::pair<int, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& [n, g] : points) {
    if (n < 1 || !(g > 0.0) || !std::isfinite(g)) continue;
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(g);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double denom = count * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return std::nullopt;
  return -(count * sxy - sx * sy) / denom;
}

}  // namespace symdesign
