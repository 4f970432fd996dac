// SPDX-License-Identifier: Apache-2.0
#include "owcrs/experiment.hpp"

#include "owcrs/error.hpp"
#include "owcrs/rsma.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

namespace owcrs {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Fn>
void check_field(const char* field, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string(field) + ": " + e.what());
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ApLayout layout_for(const ExperimentConfig& cfg) {
  ApLayout layout = default_ap_positions(cfg.room, cfg.aps);
  layout.illumination = cfg.illumination;
  return layout;
}

// Rates of every requested scheme on one channel at one transmit power,
// appended in scheme order.
void evaluate_schemes(const ChannelMatrix& cm, double total_power, const ExperimentConfig& cfg,
                      const std::vector<double>& alpha_grid, std::vector<double>& out, std::size_t points,
                      std::size_t point) {
  const bool served = cm.h.size() > 0 && cm.h.maxCoeff() > 0.0;
  std::optional<RsKernel> kernel;
  for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
    double rate = 0.0;
    if (served) {
      const Scheme scheme = cfg.schemes[s];
      if (scheme == Scheme::kOma) {
        rate = oma_sum_rate(cm, total_power);
      } else {
        if (!kernel) kernel.emplace(cm, make_precoders(cm, total_power));
        if (scheme == Scheme::kOptRs) {
          rate = optimize_alpha(*kernel, total_power, alpha_grid).evaluation.sum_rate;
        } else {
          const PowerSplit ps = power_split(total_power, conventional_alpha(cfg.users), cfg.users);
          rate = kernel->evaluate(ps).sum_rate;
        }
      }
    }
    out[s * points + point] = rate;
  }
}

template <class DropFn>
std::vector<std::vector<double>> run_drops(const ExperimentConfig& cfg, Execution exec, DropFn&& drop_fn) {
  const int n = cfg.drops;
  std::vector<std::vector<double>> per_drop(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  const bool parallel = exec == Execution::kParallel;
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (parallel)
  for (int d = 0; d < n; ++d) {
    try {
      per_drop[static_cast<std::size_t>(d)] = drop_fn(d);
    } catch (...) {
      errors[static_cast<std::size_t>(d)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return per_drop;
}

SweepResult aggregate(const ExperimentConfig& cfg, std::vector<std::vector<double>> per_drop) {
  SweepResult result;
  result.kind = cfg.sweep;
  result.schemes = cfg.schemes;
  result.points = cfg.sweep_values();
  const std::size_t points = result.points.size();
  const double n = static_cast<double>(cfg.drops);
  for (std::size_t s = 0; s < result.schemes.size(); ++s) {
    for (std::size_t p = 0; p < points; ++p) {
      const std::size_t idx = s * points + p;
      double sum = 0.0;
      for (const auto& drop : per_drop) sum += drop[idx];
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto& drop : per_drop) ss += (drop[idx] - mean) * (drop[idx] - mean);
      const double se = cfg.drops > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
      result.rows.push_back({result.schemes[s], result.points[p], mean, se, cfg.drops});
    }
  }
  result.per_drop = std::move(per_drop);
  result.provenance = {fnv1a64(cfg.canonical()), cfg.seed, OWCRS_VERSION};
  return result;
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kOptRs: return "opt_rs";
    case Scheme::kConvRs: return "conv_rs";
    case Scheme::kOma: return "oma";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "opt_rs") return Scheme::kOptRs;
  if (name == "conv_rs") return Scheme::kConvRs;
  if (name == "oma") return Scheme::kOma;
  throw ConfigError("schemes: unknown scheme '" + std::string(name) + "' (expected opt_rs, conv_rs, oma)");
}

std::string_view sweep_param_name(SweepKind k) { return k == SweepKind::kSnr ? "snr_db" : "waist_um"; }

ChannelMode ExperimentConfig::effective_channel_mode() const {
  if (channel_mode) return *channel_mode;
  return sweep == SweepKind::kSnr ? ChannelMode::kNormalized : ChannelMode::kPhysical;
}

const std::vector<double>& ExperimentConfig::sweep_values() const {
  return sweep == SweepKind::kSnr ? snr_db : waist_um;
}

void ExperimentConfig::validate() const {
  check_field("room", [&] { room.validate(); });
  check_field("adr", [&] { adr.validate(); });
  check_field("vcsel", [&] { vcsel.validate(); });
  check_field("noise", [&] { noise.validate(); });
  if (users < 1) throw ConfigError("users: must be >= 1");
  if (aps != 1 && aps != 4) throw ConfigError("aps: unsupported layout, expected 1 or 4");
  if (drops < 1) throw ConfigError("drops: must be >= 1");
  if (threads < 0) throw ConfigError("threads: must be >= 0");
  if (alpha_grid_points < 2) throw ConfigError("alpha_grid_points: must be >= 2");
  if (schemes.empty()) throw ConfigError("schemes: at least one scheme required");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (schemes[i] == schemes[j]) throw ConfigError("schemes: duplicate scheme");
    }
  }
  const char* grid_name = sweep == SweepKind::kSnr ? "snr_db" : "waist_um";
  const auto& grid = sweep_values();
  if (grid.empty()) throw ConfigError(std::string(grid_name) + ": sweep grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ConfigError(std::string(grid_name) + ": non-finite value");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ConfigError(std::string(grid_name) + ": sweep grid must be strictly ascending");
    }
  }
  if (sweep == SweepKind::kWaist) {
    if (!(grid.front() > 0.0)) throw ConfigError("waist_um: waist values must be positive");
    if (effective_channel_mode() != ChannelMode::kPhysical) {
      throw ConfigError("channel_mode: waist sweeps require physical channels");
    }
    if (!(waist_ref_um > 0.0)) throw ConfigError("waist_ref_um: must be positive");
  }
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  auto kv = [&](const char* k, const std::string& v) { os << k << '=' << v << '\n'; };
  auto list = [&](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt17(xs[i]);
    return s;
  };
  kv("room", fmt17(room.width_m) + "," + fmt17(room.length_m) + "," + fmt17(room.height_m) + "," +
                 fmt17(room.floor_height_m));
  kv("users", std::to_string(users));
  kv("aps", std::to_string(aps));
  kv("illumination", illumination == Illumination::kCellArray ? "cell_array" : "boresight");
  kv("adr", std::to_string(adr.photodiodes) + "," + fmt17(adr.area_m2) + "," + fmt17(adr.fov_deg) + "," +
                fmt17(adr.responsivity) + "," + fmt17(adr.tilt_deg) + "," + fmt17(adr.filter_gain));
  kv("vcsel", fmt17(vcsel.waist_m) + "," + fmt17(vcsel.wavelength_m) + "," + fmt17(vcsel.refractive_index) +
                  "," + fmt17(vcsel.power_w) + "," + fmt17(vcsel.bandwidth_hz));
  kv("noise", fmt17(noise.psd_a_per_rthz) + "," + fmt17(noise.bandwidth_hz) + "," +
                  (noise.include_shot ? "shot" : "thermal") + "," + fmt17(noise.electron_charge_c));
  kv("sweep", std::string(sweep_param_name(sweep)));
  kv("grid", list(sweep_values()));
  kv("drops", std::to_string(drops));
  kv("seed", std::to_string(seed));
  std::string s;
  for (std::size_t i = 0; i < schemes.size(); ++i) s += (i ? "," : "") + std::string(scheme_name(schemes[i]));
  kv("schemes", s);
  kv("channel_mode", effective_channel_mode() == ChannelMode::kNormalized ? "normalized" : "physical");
  kv("alpha_grid_points", std::to_string(alpha_grid_points));
  if (sweep == SweepKind::kWaist) kv("waist_ref", fmt17(waist_ref_um) + "," + fmt17(waist_ref_snr_db));
  return os.str();
}

const SweepRow& SweepResult::row(Scheme s, std::size_t point) const {
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (schemes[i] == s) return rows.at(i * points.size() + point);
  }
  throw InvalidArgument("SweepResult: scheme not present");
}

double SweepResult::drop_rate(std::size_t drop, std::size_t scheme_index, std::size_t point) const {
  return per_drop.at(drop).at(scheme_index * points.size() + point);
}

std::uint64_t drop_seed(std::uint64_t master_seed, int drop_index) {
  return master_seed + static_cast<std::uint64_t>(drop_index);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double waist_sweep_power(const ExperimentConfig& cfg) {
  Scene ref;
  ref.room = cfg.room;
  ref.aps = layout_for(cfg);
  const Vec3& ap0 = ref.aps.positions.front();
  ref.users.positions = {Vec3(ap0.x(), ap0.y(), cfg.room.floor_height_m)};
  VcselParams vcsel = cfg.vcsel;
  vcsel.waist_m = cfg.waist_ref_um * 1e-6;
  const ChannelMatrix cm = build_channel_matrix(ref, cfg.adr, vcsel, cfg.noise);
  const double g2 = cm.h.row(0).squaredNorm();
  if (!(g2 > 0.0)) throw ConfigError("waist_ref_um: reference user receives no power");
  return db_to_linear(cfg.waist_ref_snr_db) * cm.sigma2 / g2;
}

SweepResult run_snr_sweep(const ExperimentConfig& cfg, Execution exec) {
  if (cfg.sweep != SweepKind::kSnr) throw ConfigError("sweep: run_snr_sweep needs an SNR sweep config");
  cfg.validate();
  const ApLayout layout = layout_for(cfg);
  const auto alpha_grid = default_alpha_grid(cfg.users, cfg.alpha_grid_points);
  const std::size_t points = cfg.snr_db.size();
  const bool normalized = cfg.effective_channel_mode() == ChannelMode::kNormalized;

  auto per_drop = run_drops(cfg, exec, [&](int d) {
    Scene scene{cfg.room, layout, sample_user_positions(drop_seed(cfg.seed, d), cfg.users, cfg.room)};
    ChannelMatrix cm = build_channel_matrix(scene, cfg.adr, cfg.vcsel, cfg.noise);
    const bool served = cm.h.maxCoeff() > 0.0;
    if (normalized && served) cm = normalize_channel(cm);
    std::vector<double> out(cfg.schemes.size() * points, 0.0);
    for (std::size_t p = 0; p < points; ++p) {
      // Transmit SNR P_T / sigma2; sigma2 = 1 on the normalized channel.
      const double total_power = db_to_linear(cfg.snr_db[p]) * cm.sigma2;
      evaluate_schemes(cm, total_power, cfg, alpha_grid, out, points, p);
    }
    return out;
  });
  return aggregate(cfg, std::move(per_drop));
}

SweepResult run_waist_sweep(const ExperimentConfig& cfg, Execution exec) {
  if (cfg.sweep != SweepKind::kWaist) throw ConfigError("sweep: run_waist_sweep needs a waist sweep config");
  cfg.validate();
  const ApLayout layout = layout_for(cfg);
  const auto alpha_grid = default_alpha_grid(cfg.users, cfg.alpha_grid_points);
  const std::size_t points = cfg.waist_um.size();
  const double total_power = waist_sweep_power(cfg);

  auto per_drop = run_drops(cfg, exec, [&](int d) {
    // One user placement per drop, shared by every waist value.
    const Scene scene{cfg.room, layout, sample_user_positions(drop_seed(cfg.seed, d), cfg.users, cfg.room)};
    std::vector<double> out(cfg.schemes.size() * points, 0.0);
    for (std::size_t p = 0; p < points; ++p) {
      VcselParams vcsel = cfg.vcsel;
      vcsel.waist_m = cfg.waist_um[p] * 1e-6;
      const ChannelMatrix cm = build_channel_matrix(scene, cfg.adr, vcsel, cfg.noise);
      evaluate_schemes(cm, total_power, cfg, alpha_grid, out, points, p);
    }
    return out;
  });
  return aggregate(cfg, std::move(per_drop));
}

SweepResult run_sweep(const ExperimentConfig& cfg, Execution exec) {
  return cfg.sweep == SweepKind::kSnr ? run_snr_sweep(cfg, exec) : run_waist_sweep(cfg, exec);
}

}  // namespace owcrs
