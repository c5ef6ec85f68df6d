#ifndef QAPNET_OLS_H_
#define QAPNET_OLS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace qapnet {

struct OlsResult {
  // Intercept first, then one coefficient per design column.
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  // Population-moment skewness m3 / m2^1.5 of the residuals; 0 when the
  // residuals have no spread.
  double residual_skewness = 0.0;
  std::size_t n = 0;  // observations
  std::size_t m = 0;  // regressors excluding the intercept
};

// Least-squares projection for a fixed design (intercept added here).
// Built once with a column-pivoted QR on unit-norm columns; Coefficients()
// is then a single (m+1) x n matrix-vector product, which is what the
// permutation loop needs.
//
// Throws RankDeficientError naming the dependent columns, and Error when
// n <= m + 1.
class OlsProjector {
 public:
  OlsProjector(const Eigen::MatrixXd& x, std::span<const std::string> term_names = {});

  Eigen::VectorXd Coefficients(const Eigen::VectorXd& y) const;

  std::size_t observations() const { return static_cast<std::size_t>(design_.rows()); }
  std::size_t regressors() const { return static_cast<std::size_t>(design_.cols()) - 1; }
  // Design with the leading intercept column.
  const Eigen::MatrixXd& design() const { return design_; }

 private:
  Eigen::MatrixXd design_;
  Eigen::MatrixXd projection_;  // (m+1) x n
};

OlsResult FitOls(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                 std::span<const std::string> term_names = {});

// Fills r2, adj_r2, skewness and residuals from fitted coefficients.
OlsResult SummarizeFit(const Eigen::VectorXd& y, const Eigen::MatrixXd& design,
                       Eigen::VectorXd coefficients);

double PopulationSkewness(const Eigen::VectorXd& x);

}  // namespace qapnet

#endif  // QAPNET_OLS_H_
