#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sch/cell.hpp"
#include "sch/config.hpp"
#include "sch/harness.hpp"
#include "sch/io.hpp"
#include "sch/macro.hpp"
#include "sch/micro.hpp"
#include "sch/rng.hpp"
#include "sch/unfold.hpp"
#include "sch/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CliArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

std::string zero_pad(int v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s = "0" + s;
  return s;
}

ordered_json config_echo(const sch::ExperimentConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  if (cfg.geometry) j["geometry"] = cfg.geometry->label();
  if (!cfg.eps_k.empty()) {
    std::string eps;
    for (std::size_t i = 0; i < cfg.eps_k.size(); ++i) {
      if (i) eps += ",";
      eps += "1/" + std::to_string(cfg.eps_k[i]);
    }
    j["eps"] = eps;
  }
  j["N"] = cfg.N;
  j["lambda"] = cfg.lambda;
  j["mu"] = cfg.mu;
  j["S"] = cfg.S;
  j["dt"] = cfg.dt;
  j["T"] = cfg.T;
  j["stride"] = cfg.stride;
  j["dual_stride"] = cfg.dual_stride;
  j["seed"] = cfg.seed;
  j["c0"] = cfg.c0;
  j["stokes"] = cfg.stokes_on;
  j["convention"] = sch::to_string(cfg.convention);
  j["orientation"] = sch::to_string(cfg.orientation);
  if (cfg.sigma_bar) j["sigma_bar"] = *cfg.sigma_bar;
  if (!cfg.coefficients.empty()) j["coefficients"] = cfg.coefficients;
  if (!cfg.snapshot.empty()) j["snapshot"] = cfg.snapshot;
  j["field"] = cfg.field;
  j["extension"] = cfg.extension;
  return j;
}

void write_manifest(const fs::path& dir, const sch::ExperimentConfig& cfg,
                    const std::vector<std::string>& outputs, std::uint64_t mask_hash,
                    double wall_seconds) {
  ordered_json j;
  j["command"] = cfg.command;
  j["version"] = sch::kVersion;
  j["rng"] = sch::SplitMix64::name();
  j["config"] = config_echo(cfg);
  if (mask_hash) j["mask_hash"] = sch::hex64(mask_hash);
  j["outputs"] = outputs;
  j["wall_time_s"] = wall_seconds;  // volatile field; manifests are metadata
  sch::write_text(dir / "manifest.json", j.dump(2) + "\n");
}

// one snapshot = five flat binary field files plus a sidecar
std::vector<std::string> write_snapshot(const fs::path& dir, const sch::MicroState& s, int k,
                                        int n_cell, std::uint64_t mask_hash,
                                        const std::string& geometry) {
  const std::string tag = zero_pad(s.step, 6);
  std::vector<std::string> files;
  auto dump = [&](const std::string& name, const std::vector<double>& data) {
    const std::string fname = name + "_" + tag + ".f64";
    sch::write_f64(dir / fname, data);
    files.push_back(fname);
  };
  dump("c", s.c.v);
  dump("w", s.w.v);
  dump("p", s.p.v);
  dump("ux", s.u.ux);
  dump("uy", s.u.uy);

  ordered_json j;
  j["step"] = s.step;
  j["t"] = s.t;
  j["n"] = s.c.n;
  j["k"] = k;
  j["N_cell"] = n_cell;
  j["eps"] = 1.0 / k;
  j["geometry"] = geometry;
  j["mask_hash"] = sch::hex64(mask_hash);
  j["layout"] = "row-major, cell-centered; ux/uy are face fields on the same index grid";
  j["fields"] = ordered_json{{"c", files[0]}, {"w", files[1]}, {"p", files[2]},
                             {"ux", files[3]}, {"uy", files[4]}};
  const std::string sidecar = "snapshot_" + tag + ".json";
  sch::write_text(dir / sidecar, j.dump(2) + "\n");
  files.push_back(sidecar);
  return files;
}

std::vector<std::string> write_micro_artifacts(const fs::path& dir, const sch::MicroResult& run,
                                               const sch::ExperimentConfig& cfg, int k) {
  std::vector<std::string> outputs;
  sch::write_text(dir / "ledger.csv", run.ledger.to_csv());
  outputs.push_back("ledger.csv");
  const std::uint64_t hash = sch::mask_hash(run.mask);
  for (const sch::MicroState& s : run.snapshots) {
    auto files = write_snapshot(dir, s, k, cfg.N, hash, cfg.geometry->label());
    outputs.insert(outputs.end(), files.begin(), files.end());
  }
  return outputs;
}

int run_cell(const sch::ExperimentConfig& cfg, const fs::path& out) {
  cfg.require("geometry", cfg.geometry.has_value());
  cfg.require("N", cfg.N > 0);
  const auto t0 = std::chrono::steady_clock::now();
  const sch::EffectiveCoefficients coeffs =
      sch::effective_coefficients(*cfg.geometry, cfg.N, cfg.convention);
  sch::write_text(out / "coefficients.json", coeffs.to_json());
  const sch::CellMask mask = sch::build_cell_mask(*cfg.geometry, cfg.N);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, cfg, {"coefficients.json"}, sch::mask_hash(mask), wall);
  return 0;
}

int run_micro_cmd(const sch::ExperimentConfig& cfg, const fs::path& out) {
  cfg.require("geometry", cfg.geometry.has_value());
  cfg.require("N", cfg.N > 0);
  cfg.require("eps", cfg.eps_k.size() == 1);
  const auto t0 = std::chrono::steady_clock::now();
  sch::MicroParams params = cfg.micro_params();
  params.k = cfg.eps_k[0];
  const sch::InitialData init = sch::InitialData::parse(cfg.c0, cfg.seed);
  const sch::MicroResult run = sch::run_micro(*cfg.geometry, params, init);
  auto outputs = write_micro_artifacts(out, run, cfg, params.k);

  // monitored suprema for quick cross-eps comparison
  const sch::MonitorReport mon = sch::estimate_report(run.ledger, params);
  ordered_json j;
  for (int i = 0; i < sch::MonitorReport::kCount; ++i)
    j[sch::MonitorReport::name(i)] = mon.values[i];
  sch::write_text(out / "monitors.json", j.dump(2) + "\n");
  outputs.push_back("monitors.json");

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, cfg, outputs, sch::mask_hash(run.mask), wall);
  return 0;
}

int run_macro_cmd(const sch::ExperimentConfig& cfg, const fs::path& out) {
  cfg.require("N", cfg.N > 0);
  cfg.require("coefficients", !cfg.coefficients.empty());
  const auto t0 = std::chrono::steady_clock::now();
  sch::EffectiveCoefficients coeffs;
  if (cfg.coefficients == "auto") {
    cfg.require("geometry", cfg.geometry.has_value());
    coeffs = sch::effective_coefficients(*cfg.geometry, cfg.N, cfg.convention);
  } else {
    coeffs = sch::EffectiveCoefficients::from_json(sch::read_text(cfg.coefficients));
  }
  const sch::MacroParams params = cfg.macro_params(coeffs);
  const sch::InitialData init = sch::InitialData::parse(cfg.c0, cfg.seed);
  const sch::MacroResult run = sch::run_macro(params, init);

  std::vector<std::string> outputs;
  sch::write_text(out / "ledger.csv", run.ledger_csv());
  outputs.push_back("ledger.csv");
  for (const sch::MacroState& s : run.snapshots) {
    const std::string tag = zero_pad(s.step, 6);
    auto dump = [&](const std::string& name, const std::vector<double>& data) {
      const std::string fname = name + "_" + tag + ".f64";
      sch::write_f64(out / fname, data);
      outputs.push_back(fname);
    };
    dump("c", s.c.v);
    dump("wbar", s.wbar.v);
    dump("p", s.p.v);
    dump("ux", s.u.ux);
    dump("uy", s.u.uy);
  }
  ordered_json meta;
  meta["orientation"] = sch::to_string(params.orientation);
  meta["sigma_bar_used"] = params.sigma_bar();
  meta["sigma_bar_overridden"] = params.has_sigma_override;
  sch::write_text(out / "macro_meta.json", meta.dump(2) + "\n");
  outputs.push_back("macro_meta.json");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, cfg, outputs, 0, wall);
  return 0;
}

int run_unfold_cmd(const sch::ExperimentConfig& cfg, const fs::path& out) {
  cfg.require("snapshot", !cfg.snapshot.empty());
  const auto t0 = std::chrono::steady_clock::now();
  const nlohmann::json sidecar = nlohmann::json::parse(sch::read_text(cfg.snapshot));
  const int n = sidecar.at("n").get<int>();
  const int k = sidecar.at("k").get<int>();
  const fs::path base = fs::path(cfg.snapshot).parent_path();
  const std::string field_file = sidecar.at("fields").at(cfg.field).get<std::string>();

  sch::ScalarField field(n);
  field.v = sch::read_f64(base / field_file);
  if (field.v.size() != static_cast<std::size_t>(n) * n)
    throw sch::ConfigError("snapshot field size does not match its sidecar");

  const sch::UnfoldedField unfolded = sch::unfold(field, k);
  const sch::IntegralCheck check = sch::integral_identity_check(field, k);

  // distance to the separated candidate built from the field itself: its
  // per-macro-cell mean over y, a direct measure of the oscillation content
  sch::UnfoldedField macro_mean(unfolded.k, unfolded.N);
  for (int J = 0; J < unfolded.k; ++J)
    for (int I = 0; I < unfolded.k; ++I) {
      double acc = 0.0;
      for (int j = 0; j < unfolded.N; ++j)
        for (int i = 0; i < unfolded.N; ++i) acc += unfolded.at(I, J, i, j);
      acc /= static_cast<double>(unfolded.N) * unfolded.N;
      for (int j = 0; j < unfolded.N; ++j)
        for (int i = 0; i < unfolded.N; ++i) macro_mean.at(I, J, i, j) = acc;
    }

  const double pair_one = sch::pairing(field, k, [](double, double, double, double) { return 1.0; });
  const double pair_cos = sch::pairing(field, k, [](double, double, double y1, double) {
    return std::cos(2.0 * std::numbers::pi * y1);
  });

  sch::CsvWriter csv(out / "unfold_report.csv",
                     {"eps", "k", "N", "l2_norm", "dist_to_macro_mean", "pair_one",
                      "pair_cos_y1", "int_lhs", "int_rhs", "int_diff"});
  const double row[10] = {1.0 / k,
                          static_cast<double>(k),
                          static_cast<double>(unfolded.N),
                          sch::product_l2_norm(unfolded),
                          sch::two_scale_error(unfolded, macro_mean),
                          pair_one,
                          pair_cos,
                          check.lhs,
                          check.rhs,
                          check.diff};
  csv.row(row);
  csv.close();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, cfg, {"unfold_report.csv"}, 0, wall);
  return 0;
}

int run_sweep_cmd(const sch::ExperimentConfig& cfg, const fs::path& out) {
  cfg.require("geometry", cfg.geometry.has_value());
  cfg.require("N", cfg.N > 0);
  cfg.require("eps", cfg.eps_k.size() >= 1);
  const auto t0 = std::chrono::steady_clock::now();
  const sch::MicroParams base = cfg.micro_params();
  const sch::InitialData init = sch::InitialData::parse(cfg.c0, cfg.seed);
  sch::SweepOptions options;
  options.convention = cfg.convention;
  options.extension = cfg.extension == "cellavg" ? sch::SolidExtension::CellAverage
                                                 : sch::SolidExtension::Zero;
  std::vector<sch::MicroResult> runs;
  const sch::SweepReport report =
      sch::two_scale_sweep(*cfg.geometry, cfg.eps_k, base, init, options, &runs);

  std::vector<std::string> outputs;
  sch::write_text(out / "sweep.csv", report.to_csv());
  outputs.push_back("sweep.csv");
  sch::write_text(out / "sweep_verdict.json", report.verdict_json());
  outputs.push_back("sweep_verdict.json");

  std::vector<int> ks = cfg.eps_k;
  std::sort(ks.begin(), ks.end());
  std::uint64_t hash = 0;
  for (std::size_t l = 0; l < runs.size(); ++l) {
    const fs::path sub = out / ("eps_1_" + std::to_string(ks[l]));
    fs::create_directories(sub);
    sch::write_text(sub / "ledger.csv", runs[l].ledger.to_csv());
    outputs.push_back(("eps_1_" + std::to_string(ks[l])) + "/ledger.csv");
    hash = sch::mask_hash(runs[l].mask);
    auto files = write_snapshot(sub, runs[l].snapshots.back(), ks[l], cfg.N, hash,
                                cfg.geometry->label());
    for (const std::string& f : files)
      outputs.push_back(("eps_1_" + std::to_string(ks[l])) + "/" + f);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, cfg, outputs, hash, wall);
  if (!(report.ratio_ok && report.monotone_c && report.monotone_w))
    throw sch::VerdictError("sweep verdict failed (worst monitor ratio " +
                            sch::format_double(report.worst_monitor_ratio) + ", monotone_c " +
                            (report.monotone_c ? "yes" : "no") + ", monotone_w " +
                            (report.monotone_w ? "yes" : "no") + ")");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pore-scale two-phase flow, cell problems and two-scale diagnostics"};
  app.require_subcommand(1);

  CliArgs args;
  std::vector<CLI::App*> subs;
  for (const char* name : {"cell", "micro", "macro", "unfold", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config_path, "experiment config file")->required();
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--seed", args.seed, "override the config seed");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    sch::ExperimentConfig cfg = sch::parse_config(sch::read_text(args.config_path));
    if (cfg.command.empty())
      cfg.command = command;
    else if (cfg.command != command)
      throw sch::ConfigError("config says command=" + cfg.command + " but subcommand is " +
                             command);
    if (args.seed) cfg.seed = *args.seed;

    const fs::path out = args.out_dir.empty() ? fs::path("out") / command : fs::path(args.out_dir);
    fs::create_directories(out);

    if (command == "cell") return run_cell(cfg, out);
    if (command == "micro") return run_micro_cmd(cfg, out);
    if (command == "macro") return run_macro_cmd(cfg, out);
    if (command == "unfold") return run_unfold_cmd(cfg, out);
    return run_sweep_cmd(cfg, out);
  } catch (const sch::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const sch::VerdictError& err) {
    std::cerr << "verdict failure: " << err.what() << "\n";
    return 4;
  } catch (const sch::SolverError& err) {
    std::cerr << "solver failure: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
