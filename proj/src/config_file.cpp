// SPDX-License-Identifier: Apache-2.0
#include "owcrs/config_file.hpp"

#include "owcrs/error.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace owcrs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(std::string_view key, const std::string& what) {
  throw ConfigError(std::string(key) + ": " + what);
}

double parse_double(std::string_view text, std::string_view key) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad(key, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view text, std::string_view key) {
  text = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, std::string_view key) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad(key, "expected true or false, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto part : split_commas(text)) out.push_back(parse_double(part, key));
  return out;
}

void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "users") cfg.users = parse_int<int>(value, key);
  else if (key == "aps") cfg.aps = parse_int<int>(value, key);
  else if (key == "illumination") {
    if (value == "cell_array") cfg.illumination = Illumination::kCellArray;
    else if (value == "boresight") cfg.illumination = Illumination::kBoresight;
    else bad(key, "expected cell_array or boresight");
  }
  else if (key == "room_width_m") cfg.room.width_m = parse_double(value, key);
  else if (key == "room_length_m") cfg.room.length_m = parse_double(value, key);
  else if (key == "room_height_m") cfg.room.height_m = parse_double(value, key);
  else if (key == "floor_height_m") cfg.room.floor_height_m = parse_double(value, key);
  else if (key == "adr_photodiodes") cfg.adr.photodiodes = parse_int<int>(value, key);
  else if (key == "adr_area_mm2") cfg.adr.area_m2 = parse_double(value, key) * 1e-6;
  else if (key == "adr_fov_deg") cfg.adr.fov_deg = parse_double(value, key);
  else if (key == "adr_tilt_deg") cfg.adr.tilt_deg = parse_double(value, key);
  else if (key == "adr_responsivity") cfg.adr.responsivity = parse_double(value, key);
  else if (key == "adr_filter_gain") cfg.adr.filter_gain = parse_double(value, key);
  else if (key == "vcsel_waist_um") cfg.vcsel.waist_m = parse_double(value, key) * 1e-6;
  else if (key == "vcsel_wavelength_nm") cfg.vcsel.wavelength_m = parse_double(value, key) * 1e-9;
  else if (key == "vcsel_refractive_index") cfg.vcsel.refractive_index = parse_double(value, key);
  else if (key == "vcsel_power_mw") cfg.vcsel.power_w = parse_double(value, key) * 1e-3;
  else if (key == "bandwidth_hz") {
    cfg.vcsel.bandwidth_hz = parse_double(value, key);
    cfg.noise.bandwidth_hz = cfg.vcsel.bandwidth_hz;
  }
  else if (key == "noise_psd_pa_rthz") cfg.noise.psd_a_per_rthz = parse_double(value, key) * 1e-12;
  else if (key == "shot_noise") cfg.noise.include_shot = parse_bool(value, key);
  else if (key == "snr_db") cfg.snr_db = parse_number_list(value, key);
  else if (key == "waist_um") cfg.waist_um = parse_number_list(value, key);
  else if (key == "drops") cfg.drops = parse_int<int>(value, key);
  else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(value, key);
  else if (key == "schemes") {
    cfg.schemes.clear();
    for (const auto part : split_commas(value)) cfg.schemes.push_back(parse_scheme(part));
  }
  else if (key == "channel_mode") {
    if (value == "normalized") cfg.channel_mode = ChannelMode::kNormalized;
    else if (value == "physical") cfg.channel_mode = ChannelMode::kPhysical;
    else bad(key, "expected normalized or physical");
  }
  else if (key == "alpha_grid_points") cfg.alpha_grid_points = parse_int<int>(value, key);
  else if (key == "waist_ref_um") cfg.waist_ref_um = parse_double(value, key);
  else if (key == "waist_ref_snr_db") cfg.waist_ref_snr_db = parse_double(value, key);
  else if (key == "out_dir") cfg.out_dir = std::string(value);
  else if (key == "threads") cfg.threads = parse_int<int>(value, key);
  else bad(key, "unknown configuration key");
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string_view::npos) throw ConfigError(std::string(line) + ": expected key = value");
      apply_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path);
}

}  // namespace owcrs
