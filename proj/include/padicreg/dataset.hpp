#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "padicreg/padic.hpp"
#include "padicreg/rational.hpp"

namespace padicreg {

/// One observation: covariates x (length = dataset dimension) and target y.
struct DataPoint {
  std::vector<Rational> x;
  Rational y;
};

/// Immutable collection of points sharing a dimension and a prime.
class Dataset {
 public:
  Dataset(std::size_t dimension, std::int64_t prime, std::vector<DataPoint> points);

  std::size_t dimension() const { return dimension_; }
  std::int64_t prime() const { return prime_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<DataPoint>& points() const { return points_; }

 private:
  std::size_t dimension_;
  std::int64_t prime_;
  std::vector<DataPoint> points_;
};

/// y - x^T beta, exactly.
Rational eval_residual(const DataPoint& point, std::span<const Rational> beta);

/// Sum-aggregated loss: sum over points of |y_i - x_i^T beta|_p as an
/// exact rational. Zero residuals contribute 0.
Rational eval_loss_sum(const Dataset& dataset, std::span<const Rational> beta);

/// Max-aggregated loss: max over points of |y_i - x_i^T beta|_p.
Rational eval_loss_max(const Dataset& dataset, std::span<const Rational> beta);

/// Number of points interpolated exactly (residual 0).
std::size_t exact_fit_count(const Dataset& dataset, std::span<const Rational> beta);

/// Read the line-oriented dataset format: a JSON header {"n":..,"p":..}
/// followed by one JSON record {"x": [...], "y": "..."} per line.
/// Unknown header keys are ignored. Throws ParseError with line numbers.
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);

/// Write the same format with a minimal header. Deterministic bytes.
void write_dataset(std::ostream& out, const Dataset& dataset);

namespace detail {
void write_dataset_records(std::ostream& out, const Dataset& dataset);
}

}  // namespace padicreg
