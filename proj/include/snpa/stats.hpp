#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace snpa {

// T_n = sum(x) / sqrt(sum(x^2)). Throws DegenerateError if every value is 0.
double self_norm_stat(std::span<const double> x);

// (sum|x| / n) * T_n; degree-one homogeneous in x.
double modified_stat(std::span<const double> x);

// floor(4 (n/100)^(2/9)).
std::size_t newey_west_auto_lag(std::size_t n);

// w_j = 1 - j/(q+1), j = 1..q.
std::vector<double> bartlett_weights(std::size_t q);

struct HacEstimate {
  double value = 0.0;
  // Set when general weights produced a negative long-run variance.
  bool negative = false;
};

// gamma_0 + 2 sum_j w_j gamma_j with gamma_j = n^{-1} sum_t x_t x_{t+j}; the
// observations are demeaned first when `center` is set. q = weights.size().
HacEstimate hac_variance(std::span<const double> x, std::span<const double> weights, bool center);

// S_n / (sqrt(n) sigma_NW) with centered Bartlett weights. `lag` defaults to
// newey_west_auto_lag(n). Throws DegenerateError on a non-positive variance.
double dm_statistic(std::span<const double> x, std::optional<std::size_t> lag = std::nullopt);

// S_n / (sqrt(n) sigma) with the uncentered fixed-weight estimator.
double hac_statistic(std::span<const double> x, std::span<const double> weights);

// n x m matrix of loss differentials, stored column-major.
class LossMatrix {
 public:
  LossMatrix() = default;
  LossMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static LossMatrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t t, std::size_t j) { return data_[j * rows_ + t]; }
  double operator()(std::size_t t, std::size_t j) const { return data_[j * rows_ + t]; }
  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  std::vector<double> row_norms_squared() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// T_{n,j} = S_{n,j} / gamma~_n with gamma~_n^2 = sum_t ||X_t||^2.
std::vector<double> spa_t_vector(const LossMatrix& x);

// max(max_j T_{n,j}, 0).
double spa_statistic(const LossMatrix& x);

enum class Method { DM, SelfNormSubsample, ModifiedAbsSubsample, SpaSubsample };
enum class Alternative { TwoSidedEqualTailed, TwoSidedSymmetric, Greater, Less };

std::string to_string(Method m);
std::string to_string(Alternative a);

// Outcome of a test. The acceptance region is [critical_lower, critical_upper];
// one-sided and absolute-value tests set the unused bound to -inf/+inf.
struct TestReport {
  double statistic = 0.0;
  double critical_lower = 0.0;
  double critical_upper = 0.0;
  double nominal_level = 0.05;
  bool reject = false;
  Method method = Method::DM;
  Alternative alternative = Alternative::TwoSidedEqualTailed;
  std::optional<std::size_t> block_size;
  std::optional<std::size_t> lag;
  std::size_t degenerate_windows = 0;
};

// Two-sided DM test with normal critical values +-Phi^{-1}(1 - level/2).
TestReport dm_test(std::span<const double> x, std::optional<std::size_t> lag, double level);

}  // namespace snpa
