#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiment.hpp"

namespace {

nccsim::RsParams parse_rs_pair(const std::string& s) {
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--rs", "expected n,k (e.g. --rs 15,5)");
  nccsim::RsParams rs;
  try {
    rs.n = static_cast<unsigned>(std::stoul(s.substr(0, comma)));
    rs.k = static_cast<unsigned>(std::stoul(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--rs", "expected n,k (e.g. --rs 15,5)");
  }
  return rs;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nccsim;
  using namespace nccsim::cli;

  CLI::App app{
      "nccsim: SER-vs-SNR Monte Carlo for cooperative network coding with "
      "Reed-Solomon channel codes over M-PSK on fading relay topologies"};

  std::string topology_name, preset_name, out_path, rs_str;
  std::string format_name = "csv", equalizer_name = "zf", mapping_name = "natural";
  std::vector<std::string> scenario_names;
  unsigned m = 0;
  double snr_start = 0.0, snr_stop = 26.0, snr_step = 2.0;
  std::vector<double> snr_list;
  std::uint64_t frame_len = 0, iters = 0;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  bool list_presets_flag = false;

  app.add_option("--topology", topology_name, "x, ext-x, butterfly, ext-butterfly");
  app.add_option("--scenario", scenario_names,
                 "direct, direct-rs, ncc, scheme1, scheme2 (repeatable)");
  app.add_option("--m", m, "PSK constellation order: 8, 16, or 32");
  app.add_option("--rs", rs_str, "RS code as n,k (defaults to 7,2 / 15,5 / 31,10 per m)");
  app.add_option("--snr-start", snr_start, "sweep start in dB (default 0)");
  app.add_option("--snr-stop", snr_stop, "sweep stop in dB (default 26)");
  app.add_option("--snr-step", snr_step, "sweep step in dB (default 2)");
  app.add_option("--snr", snr_list, "explicit SNR list in dB, e.g. --snr 10,12,14")
      ->delimiter(',');
  app.add_option("--frame-len", frame_len, "message symbols per source per frame (1000)");
  app.add_option("--iters", iters, "frames averaged per SNR point (1000)");
  app.add_option("--seed", seed, "64-bit master seed (fixed default)");
  app.add_option("--equalizer", equalizer_name, "zf (conjugate / |h|^2) or conj")
      ->check(CLI::IsMember({"zf", "conj"}));
  app.add_option("--mapping", mapping_name, "symbol labeling: natural or gray")
      ->check(CLI::IsMember({"natural", "gray"}));
  app.add_option("--threads", threads, "worker threads (0 = auto; NCC_SIM_THREADS caps)");
  app.add_option("--preset", preset_name,
                 "fig2, fig3-x, fig3-extx, fig4-butterfly, fig4-extbutterfly");
  app.add_option("--out", out_path, "output file (default nccsim_out.csv/.json)");
  app.add_option("--format", format_name, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--list-presets", list_presets_flag, "print presets and topology metrics");

  CLI11_PARSE(app, argc, argv);

  if (list_presets_flag) {
    print_presets(std::cout);
    return 0;
  }

  ExperimentSpec spec;
  try {
    if (!preset_name.empty()) {
      const Preset* p = find_preset(preset_name);
      if (p == nullptr) {
        std::cerr << "unknown preset: " << preset_name << " (see --list-presets)\n";
        return 1;
      }
      spec = p->spec;
    }
    if (app.count("--topology")) spec.topology = parse_topology(topology_name);
    if (app.count("--scenario")) {
      spec.scenarios.clear();
      for (const std::string& s : scenario_names)
        spec.scenarios.push_back(parse_scenario(s));
    }
    if (app.count("--m") || app.count("--rs")) {
      ModulationCell cell;
      cell.m = app.count("--m") ? m : 16;
      if (app.count("--rs")) cell.rs = parse_rs_pair(rs_str);
      spec.cells = {cell};
    }
    if (app.count("--snr")) {
      spec.snr_grid_db = snr_list;
    } else if (app.count("--snr-start") || app.count("--snr-stop") ||
               app.count("--snr-step")) {
      if (!(snr_step > 0.0)) {
        std::cerr << "--snr-step must be positive\n";
        return 1;
      }
      spec.snr_grid_db.clear();
      for (double v = snr_start; v <= snr_stop + 1e-9; v += snr_step)
        spec.snr_grid_db.push_back(v);
    }
    if (app.count("--frame-len")) spec.frame_len = frame_len;
    if (app.count("--iters")) spec.iterations = iters;
    if (app.count("--seed")) spec.seed = seed;
    if (app.count("--equalizer"))
      spec.equalizer = equalizer_name == "conj" ? EqualizerMode::kConjugateOnly
                                                : EqualizerMode::kZeroForcing;
    if (app.count("--mapping"))
      spec.mapping =
          mapping_name == "gray" ? SymbolMapping::kGray : SymbolMapping::kNatural;
    if (app.count("--threads")) spec.threads = threads;
    if (app.count("--out")) spec.out_path = out_path;
    if (app.count("--format"))
      spec.format = format_name == "json" ? OutputFormat::kJson : OutputFormat::kCsv;

    return run_experiment(spec, std::cout);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
