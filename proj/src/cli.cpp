// SPDX-License-Identifier: Apache-2.0
#include "owcrs/cli.hpp"

#include "owcrs/config_file.hpp"
#include "owcrs/error.hpp"
#include "owcrs/experiment.hpp"
#include "owcrs/oracle.hpp"
#include "owcrs/report.hpp"
#include "owcrs/rsma.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>

namespace owcrs {

namespace {

struct SweepFlags {
  std::string config;
  int drops = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string schemes;
  bool no_shot = false;
  int threads = -1;
  bool serial = false;
};

void add_common_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--config", f.config, "Experiment configuration file (key = value)");
  cmd->add_option("--drops", f.drops, "Monte-Carlo drops")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--schemes", f.schemes, "Comma-separated subset of opt_rs,conv_rs,oma");
  cmd->add_flag("--no-shot-noise", f.no_shot, "Thermal noise only");
  cmd->add_option("--threads", f.threads, "OpenMP threads (0 = all available)")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--serial", f.serial, "Use the serial reference path");
}

ExperimentConfig build_config(CLI::App* cmd, const SweepFlags& f, SweepKind kind) {
  ExperimentConfig cfg;
  cfg.sweep = kind;
  if (!f.config.empty()) apply_config_file(cfg, f.config);
  cfg.sweep = kind;
  if (cmd->count("--drops")) cfg.drops = f.drops;
  if (cmd->count("--seed")) cfg.seed = f.seed;
  if (cmd->count("--out")) cfg.out_dir = f.out;
  if (cmd->count("--schemes")) apply_config_value(cfg, "schemes", f.schemes);
  if (f.no_shot) cfg.noise.include_shot = false;
  if (cmd->count("--threads")) cfg.threads = f.threads;
  return cfg;
}

std::string f4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void print_summary(const SweepResult& r, std::ostream& out) {
  out << sweep_param_name(r.kind);
  for (const Scheme s : r.schemes) out << '\t' << scheme_name(s);
  out << '\n';
  for (std::size_t p = 0; p < r.points.size(); ++p) {
    out << r.points[p];
    for (const Scheme s : r.schemes) out << '\t' << f4(r.row(s, p).mean);
    out << '\n';
  }
}

int run_sweep_command(CLI::App* cmd, const SweepFlags& f, SweepKind kind, std::ostream& out) {
  const ExperimentConfig cfg = build_config(cmd, f, kind);
  const SweepResult result = run_sweep(cfg, f.serial ? Execution::kSerial : Execution::kParallel);

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  const std::string stem = kind == SweepKind::kSnr ? "snr_sweep" : "waist_sweep";
  const auto base = std::filesystem::path(cfg.out_dir) / stem;
  write_csv(result, base.string() + ".csv");
  emit_chart(result, base.string() + ".svg");

  print_summary(result, out);
  out << "wrote " << base.string() << ".csv and " << base.string() << ".svg (config hash "
      << result.provenance.config_hash << ")\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate-splitting simulator for laser-based optical wireless downlinks", "owcrs"};
  app.require_subcommand(1);

  SweepFlags snr_flags;
  auto* snr = app.add_subcommand("sweep-snr", "Sum rate versus transmit SNR");
  add_common_flags(snr, snr_flags);

  SweepFlags waist_flags;
  auto* waist = app.add_subcommand("sweep-waist", "Sum rate versus VCSEL beam waist");
  add_common_flags(waist, waist_flags);

  double alpha = 0.5;
  double total_power = 10.0;
  std::string channel = "identity";
  std::uint64_t eval_seed = 42;
  double eval_snr_db = 20.0;
  std::string eval_config;
  bool eval_no_shot = false;
  auto* eval = app.add_subcommand("eval", "Rates of one channel at a given private power fraction");
  eval->add_option("--alpha", alpha, "Private power fraction")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--pt", total_power, "Total transmit power (identity channel)")->check(CLI::PositiveNumber);
  eval->add_option("--channel", channel, "identity (2x2 fixture, sigma2 = 1, exact ZF) or drop")
      ->check(CLI::IsMember({"identity", "drop"}));
  eval->add_option("--seed", eval_seed, "Drop seed (channel = drop)");
  eval->add_option("--snr-db", eval_snr_db, "Transmit SNR on the normalized drop channel");
  eval->add_option("--config", eval_config, "Experiment configuration file");
  eval->add_flag("--no-shot-noise", eval_no_shot, "Thermal noise only");

  auto* validate = app.add_subcommand("validate", "Run the numerical oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*snr) return run_sweep_command(snr, snr_flags, SweepKind::kSnr, out);
    if (*waist) return run_sweep_command(waist, waist_flags, SweepKind::kWaist, out);
    if (*eval) {
      ChannelMatrix cm;
      Precoders pre;
      if (channel == "identity") {
        cm.h = Eigen::MatrixXd::Identity(2, 2);
        cm.sigma2 = 1.0;
        pre = make_precoders(cm, total_power, 0.0);
      } else {
        ExperimentConfig cfg;
        if (!eval_config.empty()) apply_config_file(cfg, eval_config);
        if (eval_no_shot) cfg.noise.include_shot = false;
        cfg.validate();
        ApLayout layout = default_ap_positions(cfg.room, cfg.aps);
        layout.illumination = cfg.illumination;
        const Scene scene{cfg.room, layout, sample_user_positions(eval_seed, cfg.users, cfg.room)};
        cm = normalize_channel(build_channel_matrix(scene, cfg.adr, cfg.vcsel, cfg.noise));
        total_power = std::pow(10.0, eval_snr_db / 10.0);
        pre = make_precoders(cm, total_power);
      }
      const RsEvaluation ev =
          RsKernel(cm, pre).evaluate(power_split(total_power, alpha, static_cast<int>(cm.users())));
      out << "K = " << cm.users() << ", L = " << cm.aps() << ", P_T = " << total_power << ", alpha = " << alpha
          << '\n';
      out << "R_c = " << f4(ev.rate_common) << '\n';
      out << "R_p = " << f4(ev.rate_private) << '\n';
      out << "R_RS = " << f4(ev.sum_rate) << '\n';
      return kExitOk;
    }
    if (*validate) {
      bool ok = true;
      for (const auto& c : oracle::validation_checks()) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
        ok = ok && c.pass;
      }
      return ok ? kExitOk : kExitValidation;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace owcrs
