// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "owcrs/channel.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace owcrs {

/// Split of the total power between one common stream and K private streams.
/// alpha is the private fraction: P_p = P_T * alpha / K, P_c = P_T * (1 - alpha).
struct PowerSplit {
  double total = 0.0;
  double alpha = 0.0;
  double common = 0.0;
  double per_private = 0.0;
  int users = 0;
};

PowerSplit power_split(double total_power, double alpha, int users);

struct Precoders {
  Eigen::VectorXd common;  // L, unit norm
  Eigen::MatrixXd priv;    // L x K, unit-norm columns
};

/// K * sigma2 / P_T, the MMSE-style loading used by default.
double default_regularization(const ChannelMatrix& cm, double total_power);

/// Regularized zero-forcing, H^T (H H^T + reg I)^-1 with unit-norm columns.
/// reg = 0 is exact ZF and throws if H H^T is singular.
Eigen::MatrixXd private_precoders(const ChannelMatrix& cm, double reg);

/// Normalized sum of the users' channel directions; zero rows are skipped.
Eigen::VectorXd common_precoder(const ChannelMatrix& cm);

Precoders make_precoders(const ChannelMatrix& cm, double total_power);
Precoders make_precoders(const ChannelMatrix& cm, double total_power, double reg);

struct RsEvaluation {
  PowerSplit split;
  Eigen::VectorXd gamma_c;  // per-user SINR of the common stream
  Eigen::VectorXd gamma_p;  // per-user SINR of the own private stream after SIC
  double rate_common = 0.0;   // bits/s/Hz, limited by the weakest user
  double rate_private = 0.0;  // bits/s/Hz, summed over users
  double sum_rate = 0.0;      // rate_common + rate_private
};

/// Caches the beamformed gains |h_k . w|^2 of one channel/precoder pair so
/// that many power splits can be evaluated cheaply. Every rate in this module
/// goes through here, so two evaluations of the same split agree bit for bit.
class RsKernel {
 public:
  RsKernel(const ChannelMatrix& cm, const Precoders& pre);

  Eigen::VectorXd sinr_common(const PowerSplit& ps) const;
  Eigen::VectorXd sinr_private(const PowerSplit& ps) const;
  RsEvaluation evaluate(const PowerSplit& ps) const;

  int users() const { return static_cast<int>(common_gain_.size()); }

 private:
  Eigen::VectorXd common_gain_;   // |h_k w_c|^2
  Eigen::VectorXd direct_gain_;   // |h_k w_p^k|^2
  Eigen::VectorXd leak_gain_;     // sum_{j != k} |h_k w_p^j|^2
  double sigma2_;
};

Eigen::VectorXd sinr_common(const ChannelMatrix& cm, const Precoders& pre, const PowerSplit& ps);
Eigen::VectorXd sinr_private(const ChannelMatrix& cm, const Precoders& pre, const PowerSplit& ps);

/// Rates for one power split with the default precoders.
RsEvaluation rs_sum_rate(const ChannelMatrix& cm, double alpha, double total_power);

struct AlphaSearch {
  double alpha = 0.0;
  RsEvaluation evaluation;
};

/// Exhaustive search over `grid`; ties go to the smaller alpha.
AlphaSearch optimize_alpha(const ChannelMatrix& cm, double total_power, std::span<const double> grid);
AlphaSearch optimize_alpha(const RsKernel& kernel, double total_power, std::span<const double> grid);

/// {0, 1/(points-1), ..., 1} plus the conventional split K/(K+1), sorted.
std::vector<double> default_alpha_grid(int users, int points = 101);

/// Equal power over the K+1 streams, alpha = K / (K + 1).
double conventional_alpha(int users);
RsEvaluation conventional_rs_rate(const ChannelMatrix& cm, double total_power);

/// TDMA: equal time slots, full power and matched beamforming per slot.
double oma_sum_rate(const ChannelMatrix& cm, double total_power);

}  // namespace owcrs
