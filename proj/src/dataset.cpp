#include "padicreg/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "padicreg/errors.hpp"

namespace padicreg {

using json = nlohmann::json;

Dataset::Dataset(std::size_t dimension, std::int64_t prime, std::vector<DataPoint> points)
    : dimension_(dimension), prime_(prime), points_(std::move(points)) {
  if (dimension_ == 0) throw std::invalid_argument("dataset dimension must be >= 1");
  require_prime(prime_);
  for (const DataPoint& point : points_) {
    if (point.x.size() != dimension_) {
      throw std::invalid_argument("data point dimension " + std::to_string(point.x.size()) +
                                  " does not match dataset dimension " + std::to_string(dimension_));
    }
  }
}

namespace {

void require_shape(const DataPoint& point, std::span<const Rational> beta) {
  if (point.x.size() != beta.size()) {
    throw std::invalid_argument("coefficient vector length " + std::to_string(beta.size()) +
                                " does not match point dimension " + std::to_string(point.x.size()));
  }
}

}  // namespace

Rational eval_residual(const DataPoint& point, std::span<const Rational> beta) {
  require_shape(point, beta);
  Rational r = point.y;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (sgn(point.x[j]) == 0 || sgn(beta[j]) == 0) continue;
    r -= point.x[j] * beta[j];
  }
  return r;
}

Rational eval_loss_sum(const Dataset& dataset, std::span<const Rational> beta) {
  if (beta.size() != dataset.dimension()) {
    throw std::invalid_argument("coefficient vector length " + std::to_string(beta.size()) +
                                " does not match dataset dimension " +
                                std::to_string(dataset.dimension()));
  }
  Rational loss(0);
  for (const DataPoint& point : dataset.points()) {
    const Rational r = eval_residual(point, beta);
    if (sgn(r) != 0) loss += magnitude_to_rational(valuation(r, dataset.prime()), dataset.prime());
  }
  return loss;
}

Rational eval_loss_max(const Dataset& dataset, std::span<const Rational> beta) {
  if (beta.size() != dataset.dimension()) {
    throw std::invalid_argument("coefficient vector length " + std::to_string(beta.size()) +
                                " does not match dataset dimension " +
                                std::to_string(dataset.dimension()));
  }
  // max |r|_p corresponds to the minimal valuation.
  ExtendedValuation best = ExtendedValuation::infinity();
  for (const DataPoint& point : dataset.points()) {
    const Rational r = eval_residual(point, beta);
    const ExtendedValuation v = valuation(r, dataset.prime());
    if (v < best) best = v;
  }
  return magnitude_to_rational(best, dataset.prime());
}

std::size_t exact_fit_count(const Dataset& dataset, std::span<const Rational> beta) {
  if (beta.size() != dataset.dimension()) {
    throw std::invalid_argument("coefficient vector length " + std::to_string(beta.size()) +
                                " does not match dataset dimension " +
                                std::to_string(dataset.dimension()));
  }
  std::size_t count = 0;
  for (const DataPoint& point : dataset.points()) {
    if (sgn(eval_residual(point, beta)) == 0) ++count;
  }
  return count;
}

namespace {

json parse_line(const std::string& line, std::size_t line_number) {
  json parsed = json::parse(line, nullptr, false);
  if (parsed.is_discarded()) {
    throw ParseError("line " + std::to_string(line_number) + ": invalid JSON");
  }
  return parsed;
}

Rational rational_field(const json& value, std::size_t line_number, const char* field) {
  if (!value.is_string()) {
    throw ParseError("line " + std::to_string(line_number) + ": field '" + field +
                     "' must be a rational string");
  }
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
  }
}

}  // namespace

Dataset read_dataset(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;

  // Header.
  std::size_t dimension = 0;
  std::int64_t prime = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const json header = parse_line(line, line_number);
    if (!header.is_object() || !header.contains("n") || !header.contains("p") ||
        !header["n"].is_number_integer() || !header["p"].is_number_integer()) {
      throw ParseError("line " + std::to_string(line_number) +
                       ": expected header {\"n\": int, \"p\": int}");
    }
    const std::int64_t n = header["n"].get<std::int64_t>();
    if (n < 1) throw ParseError("line " + std::to_string(line_number) + ": n must be >= 1");
    dimension = static_cast<std::size_t>(n);
    prime = header["p"].get<std::int64_t>();
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError("missing dataset header line");

  std::vector<DataPoint> points;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const json record = parse_line(line, line_number);
    if (!record.is_object() || !record.contains("x") || !record.contains("y") ||
        !record["x"].is_array()) {
      throw ParseError("line " + std::to_string(line_number) +
                       ": expected record {\"x\": [...], \"y\": \"...\"}");
    }
    DataPoint point;
    point.x.reserve(record["x"].size());
    for (const json& entry : record["x"]) {
      point.x.push_back(rational_field(entry, line_number, "x"));
    }
    if (point.x.size() != dimension) {
      throw ParseError("line " + std::to_string(line_number) + ": x has length " +
                       std::to_string(point.x.size()) + ", expected " + std::to_string(dimension));
    }
    point.y = rational_field(record["y"], line_number, "y");
    points.push_back(std::move(point));
  }

  try {
    return Dataset(dimension, prime, std::move(points));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid dataset: ") + e.what());
  }
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path);
  return read_dataset(in);
}

namespace detail {

void write_dataset_records(std::ostream& out, const Dataset& dataset) {
  for (const DataPoint& point : dataset.points()) {
    json record;
    json xs = json::array();
    for (const Rational& value : point.x) xs.push_back(to_string(value));
    record["x"] = std::move(xs);
    record["y"] = to_string(point.y);
    out << record.dump() << '\n';
  }
}

}  // namespace detail

void write_dataset(std::ostream& out, const Dataset& dataset) {
  json header;
  header["n"] = dataset.dimension();
  header["p"] = dataset.prime();
  out << header.dump() << '\n';
  detail::write_dataset_records(out, dataset);
}

}  // namespace padicreg
