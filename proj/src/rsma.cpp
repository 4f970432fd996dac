// SPDX-License-Identifier: Apache-2.0
#include "owcrs/rsma.hpp"

#include "owcrs/error.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace owcrs {

namespace {

double rate_of(double sinr) { return std::log1p(sinr) / std::numbers::ln2; }

void require_noise(double sigma2) {
  if (!(sigma2 > 0.0)) throw InvalidArgument("noise variance must be positive");
}

}  // namespace

PowerSplit power_split(double total_power, double alpha, int users) {
  if (!(total_power > 0.0)) throw InvalidArgument("power_split: total power must be positive");
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) throw InvalidArgument("power_split: alpha must lie in [0, 1]");
  if (users < 1) throw InvalidArgument("power_split: need at least one user");
  PowerSplit ps;
  ps.total = total_power;
  ps.alpha = alpha;
  ps.users = users;
  ps.per_private = total_power * alpha / users;
  ps.common = total_power * (1.0 - alpha);
  return ps;
}

double default_regularization(const ChannelMatrix& cm, double total_power) {
  if (!(total_power > 0.0)) throw InvalidArgument("total power must be positive");
  return static_cast<double>(cm.users()) * cm.sigma2 / total_power;
}

Eigen::MatrixXd private_precoders(const ChannelMatrix& cm, double reg) {
  const Eigen::Index k_users = cm.users();
  const Eigen::Index l_aps = cm.aps();
  if (k_users < 1 || l_aps < 1) throw InvalidArgument("private_precoders: empty channel");
  if (!(reg >= 0.0)) throw InvalidArgument("private_precoders: regularization must be >= 0");

  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(l_aps, 1.0 / std::sqrt(double(l_aps)));
  const double g = cm.h.rowwise().norm().maxCoeff();
  if (!(g > 0.0)) return uniform.replicate(1, k_users);

  // Same directions as the unscaled problem; keeps the factorizations near unit scale.
  const Eigen::MatrixXd hn = cm.h / g;
  Eigen::MatrixXd w;  // L x K
  if (reg > 0.0) {
    // H^T (H H^T + reg I)^-1 is the ridge solution of min |H W - I|^2 + reg |W|^2,
    // solved as a stacked least-squares problem without forming H H^T.
    Eigen::MatrixXd a(k_users + l_aps, l_aps);
    a << hn, Eigen::MatrixXd::Identity(l_aps, l_aps) * (std::sqrt(reg) / g);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k_users + l_aps, k_users);
    b.topRows(k_users).setIdentity();
    w = a.householderQr().solve(b);
  } else {
    // Minimum-norm solution of H W = I from H^T P = Q R.
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(hn.transpose());
    const double r00 = k_users <= l_aps ? std::abs(qr.matrixR()(0, 0)) : 0.0;
    const double rkk = k_users <= l_aps ? std::abs(qr.matrixR()(k_users - 1, k_users - 1)) : 0.0;
    if (k_users > l_aps || !(rkk > 1e-12 * r00)) {
      throw InvalidArgument(
          "private_precoders: H H^T is singular (e.g. K > L); use a positive regularization");
    }
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k_users, k_users).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv_t =
        r.transpose().triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(k_users, k_users));
    const Eigen::MatrixXd q1 = qr.householderQ() * Eigen::MatrixXd::Identity(l_aps, k_users);
    w = q1 * r_inv_t * qr.colsPermutation().transpose();
  }
  for (Eigen::Index k = 0; k < k_users; ++k) {
    const double n = w.col(k).norm();
    if (n > 0.0 && std::isfinite(n)) {
      w.col(k) /= n;
    } else {
      w.col(k) = uniform;
    }
  }
  return w;
}

Eigen::VectorXd common_precoder(const ChannelMatrix& cm) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(cm.aps());
  Eigen::Index first_nonzero = -1;
  for (Eigen::Index k = 0; k < cm.users(); ++k) {
    const double n = cm.h.row(k).norm();
    if (n > 0.0) {
      sum += cm.h.row(k).transpose() / n;
      if (first_nonzero < 0) first_nonzero = k;
    }
  }
  if (first_nonzero < 0) throw InvalidArgument("common_precoder: channel matrix is all zero");
  const double n = sum.norm();
  if (!(n > 0.0)) {
    // Directions cancelled out exactly; serve the first user.
    return cm.h.row(first_nonzero).transpose().normalized();
  }
  return sum / n;
}

Precoders make_precoders(const ChannelMatrix& cm, double total_power) {
  return make_precoders(cm, total_power, default_regularization(cm, total_power));
}

Precoders make_precoders(const ChannelMatrix& cm, double /*total_power*/, double reg) {
  return {common_precoder(cm), private_precoders(cm, reg)};
}

RsKernel::RsKernel(const ChannelMatrix& cm, const Precoders& pre) : sigma2_(cm.sigma2) {
  require_noise(cm.sigma2);
  if (pre.common.size() != cm.aps() || pre.priv.rows() != cm.aps() || pre.priv.cols() != cm.users()) {
    throw InvalidArgument("RsKernel: precoder dimensions do not match the channel");
  }
  common_gain_ = (cm.h * pre.common).array().square();
  const Eigen::MatrixXd cross = (cm.h * pre.priv).array().square();
  direct_gain_ = cross.diagonal();
  leak_gain_.resize(cm.users());
  for (Eigen::Index k = 0; k < cm.users(); ++k) {
    double leak = 0.0;
    for (Eigen::Index j = 0; j < cm.users(); ++j) {
      if (j != k) leak += cross(k, j);
    }
    leak_gain_(k) = leak;
  }
}

Eigen::VectorXd RsKernel::sinr_common(const PowerSplit& ps) const {
  const Eigen::ArrayXd all_private = direct_gain_.array() + leak_gain_.array();
  return (ps.common * common_gain_.array() / (ps.per_private * all_private + sigma2_)).matrix();
}

Eigen::VectorXd RsKernel::sinr_private(const PowerSplit& ps) const {
  return (ps.per_private * direct_gain_.array() / (ps.per_private * leak_gain_.array() + sigma2_)).matrix();
}

RsEvaluation RsKernel::evaluate(const PowerSplit& ps) const {
  if (ps.users != users()) throw InvalidArgument("RsKernel: power split user count mismatch");
  RsEvaluation ev;
  ev.split = ps;
  ev.gamma_c = sinr_common(ps);
  ev.gamma_p = sinr_private(ps);
  ev.rate_common = rate_of(ev.gamma_c.minCoeff());
  double rp = 0.0;
  for (Eigen::Index k = 0; k < ev.gamma_p.size(); ++k) rp += rate_of(ev.gamma_p(k));
  ev.rate_private = rp;
  ev.sum_rate = ev.rate_common + ev.rate_private;
  return ev;
}

Eigen::VectorXd sinr_common(const ChannelMatrix& cm, const Precoders& pre, const PowerSplit& ps) {
  return RsKernel(cm, pre).sinr_common(ps);
}

Eigen::VectorXd sinr_private(const ChannelMatrix& cm, const Precoders& pre, const PowerSplit& ps) {
  return RsKernel(cm, pre).sinr_private(ps);
}

RsEvaluation rs_sum_rate(const ChannelMatrix& cm, double alpha, double total_power) {
  const PowerSplit ps = power_split(total_power, alpha, static_cast<int>(cm.users()));
  return RsKernel(cm, make_precoders(cm, total_power)).evaluate(ps);
}

AlphaSearch optimize_alpha(const RsKernel& kernel, double total_power, std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("optimize_alpha: empty alpha grid");
  AlphaSearch best;
  bool have = false;
  for (const double a : grid) {
    RsEvaluation ev = kernel.evaluate(power_split(total_power, a, kernel.users()));
    if (!have || ev.sum_rate > best.evaluation.sum_rate ||
        (ev.sum_rate == best.evaluation.sum_rate && a < best.alpha)) {
      best.alpha = a;
      best.evaluation = std::move(ev);
      have = true;
    }
  }
  return best;
}

AlphaSearch optimize_alpha(const ChannelMatrix& cm, double total_power, std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("optimize_alpha: empty alpha grid");
  return optimize_alpha(RsKernel(cm, make_precoders(cm, total_power)), total_power, grid);
}

double conventional_alpha(int users) {
  if (users < 1) throw InvalidArgument("need at least one user");
  return static_cast<double>(users) / (users + 1);
}

std::vector<double> default_alpha_grid(int users, int points) {
  if (points < 2) throw InvalidArgument("alpha grid needs at least two points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points) + 1);
  for (int i = 0; i < points; ++i) grid.push_back(static_cast<double>(i) / (points - 1));
  const double conv = conventional_alpha(users);
  if (std::find(grid.begin(), grid.end(), conv) == grid.end()) {
    grid.insert(std::upper_bound(grid.begin(), grid.end(), conv), conv);
  }
  return grid;
}

RsEvaluation conventional_rs_rate(const ChannelMatrix& cm, double total_power) {
  return rs_sum_rate(cm, conventional_alpha(static_cast<int>(cm.users())), total_power);
}

double oma_sum_rate(const ChannelMatrix& cm, double total_power) {
  require_noise(cm.sigma2);
  if (!(total_power > 0.0)) throw InvalidArgument("oma_sum_rate: total power must be positive");
  const Eigen::Index k_users = cm.users();
  if (k_users < 1) throw InvalidArgument("oma_sum_rate: need at least one user");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < k_users; ++k) {
    sum += rate_of(total_power * cm.h.row(k).squaredNorm() / cm.sigma2);
  }
  return sum / static_cast<double>(k_users);
}

}  // namespace owcrs
