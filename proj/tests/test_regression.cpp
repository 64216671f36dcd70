#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "padicreg/dataset.hpp"
#include "padicreg/errors.hpp"
#include "padicreg/graph.hpp"
#include "padicreg/reduction.hpp"
#include "padicreg/rng.hpp"
#include "padicreg/solvers.hpp"

using namespace padicreg;

namespace {

DataPoint dp(std::vector<int> x, int y) {
  DataPoint point;
  point.x.reserve(x.size());
  for (int value : x) point.x.emplace_back(value);
  point.y = y;
  return point;
}

std::vector<Rational> beta_of(const std::string& literal) {
  return parse_rational_vector(literal);
}

Dataset k2_instance() { return build_reduction(complete_graph(2)).dataset; }

}  // namespace

TEST_CASE("dataset construction validates shapes and the prime") {
  CHECK_NOTHROW(Dataset(2, 2, {dp({1, 0}, 1)}));
  CHECK_NOTHROW(Dataset(3, 5, {}));
  CHECK_THROWS_AS(Dataset(0, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(2, 4, {}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(2, 2, {dp({1, 0, 0}, 1)}), std::invalid_argument);
}

TEST_CASE("residual evaluation") {
  CHECK(eval_residual(dp({1, 1, 0}, 1), beta_of("1,1,0")) == -1);
  CHECK(eval_residual(dp({1, 0}, 0), beta_of("0,0")) == 0);
  CHECK(eval_residual(dp({1, 1}, 1), beta_of("1/2,1/2")) == 0);
  CHECK_THROWS_AS(eval_residual(dp({1, 0}, 0), beta_of("1")), std::invalid_argument);
}

TEST_CASE("sum loss on gadget instances") {
  const Dataset k2 = k2_instance();
  CHECK(eval_loss_sum(k2, beta_of("0,0")) == 5);
  CHECK(eval_loss_sum(k2, beta_of("1/3,1/3")) == 7);

  const Dataset interpolable(2, 2, {dp({1, 0}, 3), dp({0, 1}, 4)});
  CHECK(eval_loss_sum(interpolable, beta_of("3,4")) == 0);
  CHECK_THROWS_AS(eval_loss_sum(k2, beta_of("1")), std::invalid_argument);
}

TEST_CASE("max loss") {
  const Dataset k2 = k2_instance();
  CHECK(eval_loss_max(k2, beta_of("0,0")) == 1);

  const Dataset single(1, 2, {dp({1}, 4)});
  CHECK(eval_loss_max(single, beta_of("0")) == make_rational(1, 4));
  CHECK(eval_loss_max(single, beta_of("4")) == 0);
}

TEST_CASE("aggregation sandwich on random data") {
  SplitMix64 rng(21);
  for (int t = 0; t < 200; ++t) {
    std::vector<DataPoint> points;
    const std::size_t m = 1 + rng.next() % 6;
    for (std::size_t i = 0; i < m; ++i) {
      points.push_back(dp({static_cast<int>(rng.next() % 7) - 3,
                           static_cast<int>(rng.next() % 7) - 3,
                           static_cast<int>(rng.next() % 7) - 3},
                          static_cast<int>(rng.next() % 7) - 3));
    }
    const Dataset dataset(3, 3, std::move(points));
    const std::vector<Rational> beta{Rational(static_cast<int>(rng.next() % 5) - 2),
                                     make_rational(static_cast<int>(rng.next() % 9) - 4, 3),
                                     Rational(static_cast<int>(rng.next() % 5) - 2)};
    const Rational sum = eval_loss_sum(dataset, beta);
    const Rational max = eval_loss_max(dataset, beta);
    CHECK(max <= sum);
    CHECK(sum <= max * static_cast<unsigned long>(m));
    CHECK(sum >= 0);
    CHECK((sgn(sum) == 0) == (exact_fit_count(dataset, beta) == m));
  }
}

TEST_CASE("exact fit counting on the K2 instance") {
  const Dataset k2 = k2_instance();
  CHECK(exact_fit_count(k2, beta_of("1,0")) == 5);
  CHECK(exact_fit_count(k2, beta_of("0,0")) == 4);

  const Dataset interpolable(2, 2, {dp({1, 0}, 3), dp({0, 1}, 4)});
  CHECK(exact_fit_count(interpolable, beta_of("3,4")) == 2);
}

TEST_CASE("exact fit regime: unit-magnitude residuals make loss count misses") {
  SplitMix64 rng(22);
  int candidates_in_regime = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<DataPoint> points;
    const std::size_t m = 3 + rng.next() % 10;
    for (std::size_t i = 0; i < m; ++i) {
      points.push_back(dp({static_cast<int>(rng.next() % 7) - 3,
                           static_cast<int>(rng.next() % 7) - 3},
                          static_cast<int>(rng.next() % 7) - 3));
    }
    const Dataset dataset(2, 7, std::move(points));

    std::vector<std::vector<Rational>> candidates{beta_of("0,0")};
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const std::vector<DataPoint> rows{dataset.points()[i], dataset.points()[j]};
        if (auto beta = solve_exact_linear(rows)) candidates.push_back(std::move(*beta));
      }
    }
    for (const std::vector<Rational>& beta : candidates) {
      bool in_regime = true;
      for (const DataPoint& point : dataset.points()) {
        const Rational r = eval_residual(point, beta);
        if (sgn(r) != 0 && valuation(r, 7) != ExtendedValuation::finite(0)) {
          in_regime = false;
          break;
        }
      }
      if (!in_regime) continue;
      ++candidates_in_regime;
      const Rational expected(static_cast<unsigned long>(m - exact_fit_count(dataset, beta)));
      CHECK(eval_loss_sum(dataset, beta) == expected);
    }
  }
  CHECK(candidates_in_regime > 100);  // the regime is common, not vacuous
}

TEST_CASE("dataset file round trip") {
  const Dataset original(2, 3, {dp({1, 2}, 3), dp({0, -1}, 0)});
  std::ostringstream out;
  write_dataset(out, original);
  CHECK(out.str() == "{\"n\":2,\"p\":3}\n"
                     "{\"x\":[\"1\",\"2\"],\"y\":\"3\"}\n"
                     "{\"x\":[\"0\",\"-1\"],\"y\":\"0\"}\n");

  std::istringstream in(out.str());
  const Dataset reread = read_dataset(in);
  CHECK(reread.dimension() == 2);
  CHECK(reread.prime() == 3);
  REQUIRE(reread.size() == 2);
  CHECK(reread.points()[0].x[1] == 2);
  CHECK(reread.points()[1].y == 0);

  std::ostringstream again;
  write_dataset(again, reread);
  CHECK(again.str() == out.str());
}

TEST_CASE("dataset parse errors carry line numbers") {
  auto expect_error = [](const std::string& text, const std::string& fragment) {
    std::istringstream in(text);
    try {
      read_dataset(in);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_error("", "missing dataset header");
  expect_error("{\"n\":2}\n", "line 1");
  expect_error("{\"n\":0,\"p\":2}\n", "n must be >= 1");
  expect_error("{\"n\":2,\"p\":2}\nnot json\n", "line 2");
  expect_error("{\"n\":2,\"p\":2}\n{\"x\":[\"1\"],\"y\":\"0\"}\n", "length 1");
  expect_error("{\"n\":2,\"p\":2}\n{\"x\":[\"1\",\"a\"],\"y\":\"0\"}\n", "line 2");
  expect_error("{\"n\":2,\"p\":4}\n", "prime");
}

TEST_CASE("unknown header keys are tolerated") {
  std::istringstream in("{\"n\":1,\"p\":2,\"source_graph\":\"g\",\"M\":3,\"canonical\":false}\n"
                        "{\"x\":[\"1\"],\"y\":\"1\"}\n");
  const Dataset dataset = read_dataset(in);
  CHECK(dataset.dimension() == 1);
  CHECK(dataset.size() == 1);
}

TEST_CASE("exact linear solving") {
  const std::vector<DataPoint> identity{dp({1, 0}, 0), dp({0, 1}, 1)};
  auto beta = solve_exact_linear(identity);
  REQUIRE(beta.has_value());
  CHECK(*beta == beta_of("0,1"));

  const std::vector<DataPoint> k3_edges{dp({1, 1, 0}, 1), dp({0, 1, 1}, 1), dp({1, 0, 1}, 1)};
  beta = solve_exact_linear(k3_edges);
  REQUIRE(beta.has_value());
  CHECK(*beta == beta_of("1/2,1/2,1/2"));

  const std::vector<DataPoint> dependent{dp({1, 1}, 1), dp({2, 2}, 2)};
  CHECK_FALSE(solve_exact_linear(dependent).has_value());

  CHECK_THROWS_AS(solve_exact_linear(std::vector<DataPoint>{dp({1, 0}, 0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_exact_linear(std::vector<DataPoint>{}), std::invalid_argument);
}

TEST_CASE("exact linear solving on random invertible fraction systems") {
  SplitMix64 rng(23);
  int solved = 0;
  for (int t = 0; t < 150; ++t) {
    std::vector<DataPoint> rows;
    for (int i = 0; i < 3; ++i) {
      DataPoint point;
      for (int j = 0; j < 3; ++j) {
        point.x.push_back(make_rational(static_cast<int>(rng.next() % 19) - 9,
                                        1 + static_cast<int>(rng.next() % 6)));
      }
      point.y = make_rational(static_cast<int>(rng.next() % 19) - 9,
                              1 + static_cast<int>(rng.next() % 6));
      rows.push_back(std::move(point));
    }
    const auto beta = solve_exact_linear(rows);
    if (!beta.has_value()) continue;
    ++solved;
    for (const DataPoint& row : rows) {
      CHECK(eval_residual(row, *beta) == 0);
    }
  }
  CHECK(solved > 100);
}

TEST_CASE("binary brute force on gadget instances") {
  const SolveResult k2 = solve_binary(k2_instance());
  CHECK(k2.loss == 4);
  CHECK(k2.beta == beta_of("0,1"));
  CHECK(k2.method == "binary");
  CHECK(k2.candidates_examined == 4);
  CHECK(eval_loss_sum(k2_instance(), k2.beta) == k2.loss);

  const SolveResult k3 = solve_binary(build_reduction(complete_graph(3)).dataset);
  CHECK(k3.loss == 13);
  CHECK(k3.candidates_examined == 8);

  const Graph edgeless(2, {});
  const SolveResult trivial = solve_binary(build_reduction(edgeless).dataset);
  CHECK(trivial.loss == 2);
  CHECK(trivial.beta == beta_of("0,0"));
}

TEST_CASE("binary brute force cap") {
  std::vector<int> sparse(21, 0);
  sparse[0] = 1;
  std::vector<DataPoint> points{dp(sparse, 1)};
  const Dataset wide(21, 2, std::move(points));
  try {
    solve_binary(wide);
    FAIL("expected a cap error");
  } catch (const InstanceTooLarge& e) {
    CHECK(std::string(e.what()).find("20") != std::string::npos);
  }
  SolverOptions raised;
  raised.binary_cap = 21;
  CHECK_NOTHROW(solve_binary(wide, raised));
}

TEST_CASE("subset enumeration on gadget instances") {
  const SolveResult k2 = solve_enum(k2_instance());
  CHECK(k2.loss == 4);
  CHECK(k2.beta == beta_of("0,1"));
  CHECK(k2.method == "enum");
  CHECK(k2.candidates_examined == 10);  // C(5, 2) distinct-point pairs

  const SolveResult edges_only = solve_enum(build_reduction(complete_graph(3), 0).dataset);
  CHECK(edges_only.loss == 0);
  CHECK(edges_only.beta == beta_of("1/2,1/2,1/2"));

  const Dataset interpolable(2, 2, {dp({1, 1}, 5), dp({1, -1}, 1)});
  const SolveResult interpolated = solve_enum(interpolable);
  CHECK(interpolated.loss == 0);
  CHECK(interpolated.beta == beta_of("3,2"));
}

TEST_CASE("subset enumeration falls back to the zero vector") {
  const Dataset all_singular(2, 2, {dp({1, 1}, 1), dp({2, 2}, 1), dp({3, 3}, 2)});
  const SolveResult result = solve_enum(all_singular);
  CHECK(result.beta == beta_of("0,0"));
  CHECK(result.loss == eval_loss_sum(all_singular, result.beta));
}

TEST_CASE("subset enumeration beats or matches the zero vector") {
  SplitMix64 rng(24);
  for (int t = 0; t < 40; ++t) {
    std::vector<DataPoint> points;
    const std::size_t m = 2 + rng.next() % 8;
    for (std::size_t i = 0; i < m; ++i) {
      points.push_back(dp({static_cast<int>(rng.next() % 9) - 4,
                           static_cast<int>(rng.next() % 9) - 4},
                          static_cast<int>(rng.next() % 9) - 4));
    }
    const Dataset dataset(2, 5, std::move(points));
    const SolveResult result = solve_enum(dataset);
    CHECK(result.loss <= eval_loss_sum(dataset, beta_of("0,0")));
    CHECK(result.loss == eval_loss_sum(dataset, result.beta));
  }
}

TEST_CASE("subset enumeration work budget") {
  // n = 7 with few points runs despite exceeding the dimension cap.
  std::vector<DataPoint> small;
  for (int i = 0; i < 8; ++i) {
    std::vector<int> x(7, 0);
    x[static_cast<std::size_t>(i) % 7] = i + 1;
    small.push_back(dp(x, 1));
  }
  CHECK_NOTHROW(solve_enum(Dataset(7, 2, std::move(small))));

  // n = 7 with C(41, 7) subsets exceeds the default work budget.
  std::vector<DataPoint> big;
  for (int i = 0; i < 41; ++i) big.push_back(dp(std::vector<int>(7, i), i));
  try {
    solve_enum(Dataset(7, 2, std::move(big)));
    FAIL("expected a budget error");
  } catch (const InstanceTooLarge& e) {
    CHECK(std::string(e.what()).find("6") != std::string::npos);
  }
}

TEST_CASE("empty datasets solve to the zero model") {
  const Dataset empty(3, 2, {});
  const SolveResult binary = solve_binary(empty);
  CHECK(binary.loss == 0);
  CHECK(binary.beta == beta_of("0,0,0"));
  const SolveResult enumerated = solve_enum(empty);
  CHECK(enumerated.loss == 0);
  CHECK(enumerated.beta == beta_of("0,0,0"));
}

TEST_CASE("solvers are schedule independent") {
  const Graph graph = random_graph(9, make_rational(1, 2), 3);
  const Dataset dataset = build_reduction(graph).dataset;

  SolverOptions sequential;
  sequential.threads = 1;
  SolverOptions parallel;
  parallel.threads = 4;

  const SolveResult b1 = solve_binary(dataset, sequential);
  const SolveResult b4 = solve_binary(dataset, parallel);
  CHECK(b1.loss == b4.loss);
  CHECK(b1.beta == b4.beta);
  CHECK(b1.candidates_examined == b4.candidates_examined);

  const Dataset small = build_reduction(random_graph(4, make_rational(1, 2), 5)).dataset;
  const SolveResult e1 = solve_enum(small, sequential);
  const SolveResult e4 = solve_enum(small, parallel);
  CHECK(e1.loss == e4.loss);
  CHECK(e1.beta == e4.beta);
  CHECK(e1.candidates_examined == e4.candidates_examined);
}
