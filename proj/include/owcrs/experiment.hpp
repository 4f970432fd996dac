// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "owcrs/beam_optics.hpp"
#include "owcrs/channel.hpp"
#include "owcrs/scene.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace owcrs {

enum class Scheme { kOptRs, kConvRs, kOma };
enum class SweepKind { kSnr, kWaist };
enum class ChannelMode { kNormalized, kPhysical };

/// kSerial is the reference path; kParallel spreads drops over OpenMP threads
/// and must produce bit-identical results.
enum class Execution { kSerial, kParallel };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);  // throws ConfigError
std::string_view sweep_param_name(SweepKind k);

struct ExperimentConfig {
  RoomConfig room;
  int users = 10;
  int aps = 4;
  Illumination illumination = Illumination::kCellArray;
  AdrConfig adr;
  VcselParams vcsel;
  NoiseParams noise;

  SweepKind sweep = SweepKind::kSnr;
  std::vector<double> snr_db{5.0, 10.0, 15.0, 20.0, 25.0};
  std::vector<double> waist_um{5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  int drops = 200;
  std::uint64_t seed = 42;
  std::vector<Scheme> schemes{Scheme::kOptRs, Scheme::kConvRs, Scheme::kOma};
  std::optional<ChannelMode> channel_mode;  // unset: normalized for SNR, physical for waist
  int alpha_grid_points = 101;

  // Waist sweeps run at one fixed P_T: the one giving a user directly below
  // AP 0 this transmit SNR at this reference waist.
  double waist_ref_um = 5.0;
  double waist_ref_snr_db = 20.0;

  std::string out_dir = ".";
  int threads = 0;  // 0: OpenMP default

  ChannelMode effective_channel_mode() const;
  const std::vector<double>& sweep_values() const;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Stable key=value rendering of every result-affecting field.
  std::string canonical() const;
};

struct SweepRow {
  Scheme scheme = Scheme::kOptRs;
  double sweep_value = 0.0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  int drops = 0;
};

struct Provenance {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
};

struct SweepResult {
  SweepKind kind = SweepKind::kSnr;
  std::vector<Scheme> schemes;
  std::vector<double> points;
  std::vector<SweepRow> rows;                 // scheme-major, then sweep point
  std::vector<std::vector<double>> per_drop;  // [drop][scheme_index * points + point]
  Provenance provenance;

  const SweepRow& row(Scheme s, std::size_t point) const;
  double drop_rate(std::size_t drop, std::size_t scheme_index, std::size_t point) const;
};

/// Pure function of (master seed, drop index).
std::uint64_t drop_seed(std::uint64_t master_seed, int drop_index);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Fixed transmit power used by every point of a waist sweep.
double waist_sweep_power(const ExperimentConfig& cfg);

SweepResult run_snr_sweep(const ExperimentConfig& cfg, Execution exec = Execution::kParallel);
SweepResult run_waist_sweep(const ExperimentConfig& cfg, Execution exec = Execution::kParallel);
SweepResult run_sweep(const ExperimentConfig& cfg, Execution exec = Execution::kParallel);

}  // namespace owcrs
