#include "padicreg/checks.hpp"

#include <array>
#include <sstream>

#include "padicreg/graph.hpp"
#include "padicreg/padic.hpp"
#include "padicreg/rational.hpp"
#include "padicreg/reduction.hpp"
#include "padicreg/rng.hpp"

namespace padicreg {

namespace {

std::int64_t bounded(SplitMix64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1));
}

// num/den with num in [-999, 999], den in [1, 999], scaled by p^e for
// e in [-5, 5] so both signs of valuation show up often.
Rational random_scaled_rational(SplitMix64& rng, std::int64_t p) {
  Rational x = make_rational(Integer(bounded(rng, -999, 999)), Integer(bounded(rng, 1, 999)));
  const std::int64_t e = bounded(rng, -5, 5);
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) {
    x *= power;
  } else {
    x /= Rational(power);
  }
  return x;
}

// Odd denominator and nonnegative power of 2, so v_2 >= 0 always.
Rational random_rounding_candidate(SplitMix64& rng) {
  Integer den(2 * bounded(rng, 0, 499) + 1);
  Rational x = make_rational(Integer(bounded(rng, -999, 999)), den);
  const std::int64_t e = bounded(rng, 0, 4);
  x *= Integer(std::int64_t{1} << e);
  return x;
}

std::string describe_valuation(const ExtendedValuation& v) {
  return v.is_infinity() ? "inf" : std::to_string(v.value());
}

}  // namespace

SuiteResult check_ultrametric(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult result;
  result.name = "ultrametric";
  SplitMix64 rng(seed);
  constexpr std::array<std::int64_t, 3> primes{2, 3, 5};
  for (std::int64_t p : primes) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      const Rational x = random_scaled_rational(rng, p);
      const Rational y = random_scaled_rational(rng, p);
      const Rational sum = x + y;
      const PadicMagnitude mx = abs_p(x, p);
      const PadicMagnitude my = abs_p(y, p);
      const PadicMagnitude ms = abs_p(sum, p);
      const PadicMagnitude& larger = my < mx ? mx : my;
      const bool bound_holds = ms <= larger;
      const bool equality_holds = (mx == my) || (ms == larger);
      ++result.checks_run;
      if (bound_holds && equality_holds) continue;
      ++result.failures;
      if (result.counterexample.empty()) {
        std::ostringstream os;
        os << "p=" << p << " x=" << to_string(x) << " y=" << to_string(y)
           << " v(x)=" << describe_valuation(valuation(x, p))
           << " v(y)=" << describe_valuation(valuation(y, p))
           << " v(x+y)=" << describe_valuation(valuation(sum, p));
        result.counterexample = os.str();
      }
    }
  }
  return result;
}

SuiteResult check_binary_forcing(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult result;
  result.name = "binary_forcing";
  SplitMix64 rng(seed);

  auto check_one = [&](const Rational& a) {
    Rational f = magnitude_to_rational(valuation(a, 2), 2);
    const Rational shifted = a - 1;
    f += magnitude_to_rational(valuation(shifted, 2), 2);
    const bool is_binary = (sgn(a) == 0) || (cmp(a, 1) == 0);
    const bool bound_holds = cmp(f, 1) >= 0;
    const bool equality_iff = (cmp(f, 1) == 0) == is_binary;
    ++result.checks_run;
    if (bound_holds && equality_iff) return;
    ++result.failures;
    if (result.counterexample.empty()) {
      result.counterexample =
          "a=" + to_string(a) + " |a|+|a-1|=" + to_string(f) + " (2-adic)";
    }
  };

  for (const char* literal : {"0", "1", "1/2", "2", "-1", "1/3"}) {
    check_one(parse_rational(literal));
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    check_one(random_scaled_rational(rng, 2));
  }
  return result;
}

SuiteResult check_rounding_monotonicity(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult result;
  result.name = "rounding_monotonicity";
  SplitMix64 rng(seed);
  constexpr std::uint64_t graph_count = 20;
  for (std::uint64_t g = 0; g < graph_count && result.checks_run < trials; ++g) {
    const std::size_t n = static_cast<std::size_t>(bounded(rng, 2, 9));
    const Graph graph = random_graph(n, make_rational(1, 2), rng.next());
    const ReductionInstance instance = build_reduction(graph);
    const std::uint64_t share =
        trials / graph_count + (g < trials % graph_count ? 1 : 0);
    for (std::uint64_t t = 0; t < share; ++t) {
      std::vector<Rational> beta(n);
      for (Rational& coordinate : beta) coordinate = random_rounding_candidate(rng);
      const Assignment rounded = round_beta(beta);
      std::vector<Rational> rounded_beta(n);
      for (std::size_t j = 0; j < n; ++j) rounded_beta[j] = static_cast<int>(rounded[j]);
      const Rational loss_beta = total_loss(instance, beta).total;
      const Rational loss_rounded = total_loss(instance, rounded_beta).total;
      ++result.checks_run;
      if (loss_rounded <= loss_beta) continue;
      ++result.failures;
      if (result.counterexample.empty()) {
        result.counterexample = "beta=(" + to_string(std::span<const Rational>(beta)) +
                                ") L(beta)=" + to_string(loss_beta) +
                                " L(round(beta))=" + to_string(loss_rounded);
      }
    }
  }
  return result;
}

SuiteResult check_roundtrip(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult result;
  result.name = "roundtrip";
  SplitMix64 rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t n = static_cast<std::size_t>(bounded(rng, 2, 8));
    const std::int64_t den = bounded(rng, 2, 4);
    const Graph graph = random_graph(n, make_rational(1, den), rng.next());
    SolverOptions options;
    options.enum_cap = 0;  // the suite checks the cut identity, not solver agreement
    const RoundtripReport report = verify_roundtrip(graph, options);
    ++result.checks_run;
    if (report.all_equal) continue;
    ++result.failures;
    if (result.counterexample.empty()) {
      std::ostringstream os;
      os << "n=" << n << " edges=";
      for (const auto& [u, v] : graph.edges()) os << '(' << u + 1 << ',' << v + 1 << ')';
      os << " maxcut=" << report.maxcut << " L*=" << to_string(report.loss_binary)
         << " recovered=" << report.recovered;
      result.counterexample = os.str();
    }
  }
  return result;
}

std::vector<SuiteResult> run_all_checks(std::uint64_t trials, std::uint64_t seed) {
  return {
      check_ultrametric(trials, seed),
      check_binary_forcing(trials, seed + 1),
      check_rounding_monotonicity(trials, seed + 2),
      check_roundtrip(trials, seed + 3),
  };
}

}  // namespace padicreg
