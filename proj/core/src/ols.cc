#include "qapnet/ols.h"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <fmt/format.h>

#include "qapnet/error.h"

namespace qapnet {
namespace {

constexpr double kRankThreshold = 1e-9;

std::string ColumnName(std::span<const std::string> names, Eigen::Index col) {
  if (col == 0) return "(intercept)";
  const auto k = static_cast<std::size_t>(col - 1);
  if (k < names.size()) return names[k];
  return fmt::format("x{}", col);
}

}  // namespace

OlsProjector::OlsProjector(const Eigen::MatrixXd& x,
                           std::span<const std::string> term_names) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols() + 1;
  if (n <= p)
    throw Error(fmt::format("{} observations are too few for {} regressors plus intercept",
                            n, p - 1));
  design_.resize(n, p);
  design_.col(0).setOnes();
  design_.rightCols(p - 1) = x;

  Eigen::VectorXd norms = design_.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < p; ++c)
    if (!(norms(c) > 0)) norms(c) = 1.0;
  const Eigen::MatrixXd scaled = design_ * norms.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < p) {
    std::vector<std::string> collinear;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k)
      collinear.push_back(ColumnName(term_names, perm(k)));
    throw RankDeficientError(std::move(collinear));
  }

  const Eigen::MatrixXd q_thin = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  const Eigen::MatrixXd r_inv_qt =
      qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>().solve(
          q_thin.transpose());
  Eigen::MatrixXd unpermuted(p, n);
  unpermuted = qr.colsPermutation() * r_inv_qt;
  projection_ = norms.cwiseInverse().asDiagonal() * unpermuted;
}

Eigen::VectorXd OlsProjector::Coefficients(const Eigen::VectorXd& y) const {
  if (y.size() != design_.rows()) throw Error("response length does not match design");
  return projection_ * y;
}

double PopulationSkewness(const Eigen::VectorXd& x) {
  if (x.size() == 0) return 0.0;
  const double mean = x.mean();
  const Eigen::ArrayXd d = x.array() - mean;
  const double m2 = d.square().mean();
  const double m3 = d.cube().mean();
  if (!(m2 > 1e-300)) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

OlsResult SummarizeFit(const Eigen::VectorXd& y, const Eigen::MatrixXd& design,
                       Eigen::VectorXd coefficients) {
  OlsResult r;
  r.n = static_cast<std::size_t>(design.rows());
  r.m = static_cast<std::size_t>(design.cols()) - 1;
  r.residuals = y - design * coefficients;
  r.coefficients = std::move(coefficients);
  const double sst = (y.array() - y.mean()).square().sum();
  const double ssr = r.residuals.squaredNorm();
  r.r2 = sst > 0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 0.0;
  const double n = static_cast<double>(r.n);
  const double m = static_cast<double>(r.m);
  r.adj_r2 = 1.0 - (1.0 - r.r2) * (n - 1.0) / (n - m - 1.0);
  // Residuals at rounding level carry no shape information.
  const double scale = std::max(sst, y.squaredNorm());
  r.residual_skewness = ssr > 1e-24 * scale ? PopulationSkewness(r.residuals) : 0.0;
  return r;
}

OlsResult FitOls(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                 std::span<const std::string> term_names) {
  if (y.size() != x.rows()) throw Error("response length does not match design rows");
  OlsProjector projector(x, term_names);
  return SummarizeFit(y, projector.design(), projector.Coefficients(y));
}

}  // namespace qapnet
