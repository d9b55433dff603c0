#include "experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace nccsim::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string ratio_str(const Ratio& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string cell_str(const ModulationCell& c) {
  std::string s = std::to_string(c.m) + "-PSK";
  if (c.rs) s += " RS(" + std::to_string(c.rs->n) + "," + std::to_string(c.rs->k) + ")";
  return s;
}

std::string scenario_list_str(const std::vector<Scenario>& scs) {
  std::string s;
  for (std::size_t i = 0; i < scs.size(); ++i) {
    if (i) s += ",";
    s += to_string(scs[i]);
  }
  return s;
}

RsParams default_code_for(unsigned m) {
  switch (m) {
    case 8:
      return {7, 2};
    case 16:
      return {15, 5};
    case 32:
      return {31, 10};
  }
  return {0, 0};
}

std::vector<Scenario> all_scenarios() {
  return {Scenario::kDirectAf, Scenario::kDirectAfRs, Scenario::kNccUncoded,
          Scenario::kNccRsScheme1, Scenario::kNccRsScheme2};
}

std::vector<ModulationCell> paper_cells() {
  return {ModulationCell{8, RsParams{7, 2}}, ModulationCell{16, RsParams{15, 5}},
          ModulationCell{32, RsParams{31, 10}}};
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = [] {
    std::vector<Preset> v;

    Preset fig2;
    fig2.name = "fig2";
    fig2.description = "X-structure, 16-PSK, RS(15,5), all five scenarios";
    fig2.spec.topology = Topology::kX;
    fig2.spec.scenarios = all_scenarios();
    fig2.spec.cells = {ModulationCell{16, RsParams{15, 5}}};
    v.push_back(fig2);

    Preset fig3x;
    fig3x.name = "fig3-x";
    fig3x.description = "X-structure, schemes 1 and 2, 8/16/32-PSK with matched RS codes";
    fig3x.spec.topology = Topology::kX;
    fig3x.spec.scenarios = {Scenario::kNccRsScheme1, Scenario::kNccRsScheme2};
    fig3x.spec.cells = paper_cells();
    v.push_back(fig3x);

    Preset fig3ext = fig3x;
    fig3ext.name = "fig3-extx";
    fig3ext.description =
        "extended X-structure, schemes 1 and 2, 8/16/32-PSK with matched RS codes";
    fig3ext.spec.topology = Topology::kExtendedX;
    v.push_back(fig3ext);

    Preset fig4b = fig3x;
    fig4b.name = "fig4-butterfly";
    fig4b.description = "butterfly, schemes 1 and 2, 8/16/32-PSK with matched RS codes";
    fig4b.spec.topology = Topology::kButterfly;
    v.push_back(fig4b);

    Preset fig4e = fig3x;
    fig4e.name = "fig4-extbutterfly";
    fig4e.description =
        "extended butterfly, schemes 1 and 2, 8/16/32-PSK with matched RS codes";
    fig4e.spec.topology = Topology::kExtendedButterfly;
    v.push_back(fig4e);

    return v;
  }();
  return table;
}

const Preset* find_preset(const std::string& name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void print_presets(std::ostream& os) {
  os << "presets:\n";
  for (const Preset& p : presets()) {
    os << "  " << p.name << ": " << p.description << "\n";
    os << "    topology=" << to_string(p.spec.topology)
       << " scenarios=" << scenario_list_str(p.spec.scenarios) << "\n";
    os << "    cells:";
    for (const ModulationCell& c : p.spec.cells) os << " [" << cell_str(c) << "]";
    os << "\n    frame-len=" << p.spec.frame_len << " iters=" << p.spec.iterations
       << " snr=0..26 step 2\n";
  }
  os << "\ntopology metrics (throughput gain, diversity order at the simulated pair "
        "count):\n";
  for (Topology t : {Topology::kX, Topology::kExtendedX, Topology::kButterfly,
                     Topology::kExtendedButterfly}) {
    const TopologyMetrics m = theoretical_metrics(t, pair_count(t));
    os << "  " << to_string(t) << ": pairs=" << pair_count(t)
       << " relays=" << relay_count(t) << " gain=" << ratio_str(m.throughput_gain)
       << " diversity=" << m.diversity_order << "\n";
  }
}

void finish_spec(ExperimentSpec& spec) {
  if (spec.scenarios.empty()) spec.scenarios = {Scenario::kNccRsScheme2};
  if (spec.cells.empty()) spec.cells = {ModulationCell{16, RsParams{15, 5}}};
  bool needs_rs = false;
  for (Scenario sc : spec.scenarios) needs_rs = needs_rs || scenario_uses_rs(sc);
  if (needs_rs) {
    for (ModulationCell& c : spec.cells) {
      if (!c.rs) c.rs = default_code_for(c.m);
    }
  }
  if (spec.out_path.empty()) {
    spec.out_path =
        spec.format == OutputFormat::kCsv ? "nccsim_out.csv" : "nccsim_out.json";
  }
}

void write_csv(std::ostream& os, const std::vector<SerCurve>& curves) {
  os << "topology,scenario,m,rs_n,rs_k,snr_db,ser,errors,symbols,ci95,iterations,seed\n";
  for (const SerCurve& c : curves) {
    const unsigned rs_n = c.config.rs ? c.config.rs->n : 0;
    const unsigned rs_k = c.config.rs ? c.config.rs->k : 0;
    for (const SerPoint& pt : c.points) {
      os << to_string(c.config.topology) << ',' << to_string(c.config.scenario) << ','
         << c.config.m << ',' << rs_n << ',' << rs_k << ',' << fmt17(pt.snr_db) << ','
         << fmt17(pt.ser) << ',' << pt.errors << ',' << pt.symbols << ','
         << fmt17(pt.ci95) << ',' << c.config.iterations << ',' << c.config.seed
         << '\n';
    }
  }
}

void write_json(std::ostream& os, const std::vector<SerCurve>& curves) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SerCurve& c : curves) {
    for (const SerPoint& pt : c.points) {
      nlohmann::ordered_json row;
      row["topology"] = to_string(c.config.topology);
      row["scenario"] = to_string(c.config.scenario);
      row["m"] = c.config.m;
      row["rs_n"] = c.config.rs ? c.config.rs->n : 0;
      row["rs_k"] = c.config.rs ? c.config.rs->k : 0;
      row["snr_db"] = pt.snr_db;
      row["ser"] = pt.ser;
      row["errors"] = pt.errors;
      row["symbols"] = pt.symbols;
      row["ci95"] = pt.ci95;
      row["iterations"] = c.config.iterations;
      row["seed"] = c.config.seed;
      rows.push_back(std::move(row));
    }
  }
  os << rows.dump(2) << "\n";
}

namespace {

void print_summary(std::ostream& os, const ExperimentSpec& spec,
                   const std::vector<SerCurve>& curves) {
  const TopologyMetrics tm = theoretical_metrics(spec.topology, pair_count(spec.topology));
  os << "topology " << to_string(spec.topology) << ": " << pair_count(spec.topology)
     << " pairs, " << relay_count(spec.topology) << " relay(s)\n";
  os << "  throughput gain " << ratio_str(tm.throughput_gain) << ", diversity order "
     << tm.diversity_order << " (slots per frame: "
     << slots_per_frame(spec.topology, Scenario::kNccUncoded) << " with NCC vs "
     << slots_per_frame(spec.topology, Scenario::kDirectAf) << " without)\n";

  for (const SerCurve& c : curves) {
    std::size_t under = 0;
    for (const SerPoint& pt : c.points) under += pt.under_resolved;
    os << "curve " << to_string(c.config.topology) << "/" << to_string(c.config.scenario)
       << " m=" << c.config.m;
    if (c.config.rs)
      os << " rs=(" << c.config.rs->n << "," << c.config.rs->k << ")";
    os << ": " << c.points.size() << " points";
    if (under) os << ", " << under << " under-resolved (<10 errors)";
    os << "\n";

    if (scenario_is_ncc(c.config.scenario)) {
      os << "  outage from measured link rates (p1, p2, pR -> P_S):\n";
      for (const SerPoint& pt : c.points) {
        if (pt.diag.uplinks.size() < 2) continue;
        const double p1 = pt.diag.uplinks[0].rate();
        const double p2 = pt.diag.uplinks[1].rate();
        const double pR = pt.diag.relay_bcast.rate();
        os << "    " << fmt3(pt.snr_db) << " dB: " << fmt3(p1) << ", " << fmt3(p2)
           << ", " << fmt3(pR) << " -> " << fmt3(outage_probability(p1, p2, pR))
           << "\n";
      }
    }
  }
}

}  // namespace

int run_experiment(const ExperimentSpec& spec_in, std::ostream& summary) {
  ExperimentSpec spec = spec_in;
  finish_spec(spec);

  std::vector<ScenarioConfig> cfgs;
  for (const ModulationCell& cell : spec.cells) {
    for (Scenario sc : spec.scenarios) {
      ScenarioConfig c;
      c.topology = spec.topology;
      c.scenario = sc;
      c.m = cell.m;
      c.mapping = spec.mapping;
      if (scenario_uses_rs(sc)) c.rs = cell.rs;
      c.frame_len = spec.frame_len;
      c.iterations = spec.iterations;
      c.snr_grid_db = spec.snr_grid_db;
      c.seed = spec.seed;
      c.equalizer = spec.equalizer;
      c.threads = spec.threads;
      c.validate();
      cfgs.push_back(std::move(c));
    }
  }

  std::vector<SerCurve> curves;
  curves.reserve(cfgs.size());
  for (const ScenarioConfig& c : cfgs) {
    std::cerr << "running " << to_string(c.topology) << "/" << to_string(c.scenario)
              << " m=" << c.m << " (" << c.grid().size() << " points, " << c.iterations
              << " iterations)\n";
    curves.push_back(snr_sweep(c));
  }

  std::ofstream out(spec.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output path: " << spec.out_path << "\n";
    return 1;
  }
  if (spec.format == OutputFormat::kCsv) {
    write_csv(out, curves);
  } else {
    write_json(out, curves);
  }
  out.flush();
  if (!out) {
    std::cerr << "write failed: " << spec.out_path << "\n";
    return 1;
  }

  print_summary(summary, spec, curves);
  std::size_t rows = 0;
  for (const SerCurve& c : curves) rows += c.points.size();
  summary << "wrote " << rows << " rows to " << spec.out_path << "\n";
  return 0;
}

}  // namespace nccsim::cli
