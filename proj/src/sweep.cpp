#include "manet/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "manet/world.hpp"

namespace manet {
namespace {

struct Cell {
  std::string protocol;
  PropKind model;
  int connections;
  std::uint64_t seed;
};

struct CellResult {
  bool ok = false;
  std::string csv;
  bool has_pdf = false, has_delay = false;
  double pdf = 0, delay = 0, tput = 0, mrre = 0, energy = 0;
};

CellResult run_cell(const ScenarioConfig& base, const Cell& c) {
  CellResult r;
  try {
    ScenarioConfig cfg = base;
    cfg.protocol = c.protocol;
    cfg.propagation = c.model;
    cfg.connections = c.connections;
    cfg.seed = c.seed;
    finalize_scenario(cfg);
    World w(cfg);
    w.run();
    r.csv = w.csv();
    const MetricsLedger& m = w.ledger();
    if (auto p = m.pdf_percent()) {
      r.has_pdf = true;
      r.pdf = *p;
    }
    if (auto d = m.avg_e2e_delay_s()) {
      r.has_delay = true;
      r.delay = *d;
    }
    r.tput = m.throughput_bps();
    r.mrre = m.mrre_percent();
    r.energy = m.total_energy_j();
    r.ok = true;
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "# ERROR protocol=" << c.protocol
       << " propagation=" << prop_kind_name(c.model)
       << " connections=" << c.connections << " seed=" << c.seed << ": "
       << e.what();
    r.csv = os.str();
  }
  return r;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

SweepOutput run_sweep(const SweepSpec& spec) {
  std::vector<Cell> cells;
  for (const auto& p : spec.protocols) {
    for (PropKind m : spec.models) {
      for (int c : spec.connections) {
        for (std::uint64_t s : spec.seeds) {
          cells.push_back(Cell{p, m, c, s});
        }
      }
    }
  }

  std::vector<CellResult> results(cells.size());
  int jobs = spec.jobs;
  if (jobs < 1) jobs = 1;
  if (static_cast<std::size_t>(jobs) > cells.size() && !cells.empty()) {
    jobs = static_cast<int>(cells.size());
  }
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      results[i] = run_cell(spec.base, cells[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          results[i] = run_cell(spec.base, cells[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  SweepOutput out;
  out.csv_rows.reserve(results.size());
  for (const auto& r : results) {
    out.csv_rows.push_back(r.csv);
    if (!r.ok) out.all_ok = false;
  }

  // Companion layout: one block per protocol x model, rows are seed means
  // by connection count, blocks separated by two blank lines.
  std::ostringstream gp;
  std::size_t i = 0;
  bool first_block = true;
  for (const auto& p : spec.protocols) {
    for (PropKind m : spec.models) {
      if (!first_block) gp << "\n\n";
      first_block = false;
      gp << "# protocol=" << p << " propagation=" << prop_kind_name(m) << "\n";
      gp << "# connections pdf_percent avg_e2e_delay_s throughput_bps"
            " mrre_percent total_energy_j\n";
      for (int c : spec.connections) {
        double pdf = 0, delay = 0, tput = 0, mrre = 0, energy = 0;
        int n_pdf = 0, n_delay = 0, n_ok = 0;
        for (std::size_t s = 0; s < spec.seeds.size(); ++s, ++i) {
          const CellResult& r = results[i];
          if (!r.ok) continue;
          ++n_ok;
          if (r.has_pdf) {
            pdf += r.pdf;
            ++n_pdf;
          }
          if (r.has_delay) {
            delay += r.delay;
            ++n_delay;
          }
          tput += r.tput;
          mrre += r.mrre;
          energy += r.energy;
        }
        double nan = std::nan("");
        gp << c << ' ' << fmt(n_pdf ? pdf / n_pdf : nan) << ' '
           << fmt(n_delay ? delay / n_delay : nan) << ' '
           << fmt(n_ok ? tput / n_ok : nan) << ' '
           << fmt(n_ok ? mrre / n_ok : nan) << ' '
           << fmt(n_ok ? energy / n_ok : nan) << '\n';
      }
    }
  }
  out.gnuplot = gp.str();
  return out;
}

}  // namespace manet
