#include "padicreg/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <utility>

#include "padicreg/errors.hpp"
#include "padicreg/parallel.hpp"

namespace padicreg {

namespace {

// ---------------------------------------------------------------------
// Exact loss accumulation: sum of mult * p^(-v(r)) without reallocating
// temporaries between points.
// ---------------------------------------------------------------------

class LossAccumulator {
 public:
  explicit LossAccumulator(std::int64_t p) : prime_long_(p), prime_(static_cast<long>(p)) {}

  void reset() { total_ = 0; }

  void add(const Rational& residual, unsigned long multiplicity) {
    if (sgn(residual) == 0) return;
    std::int64_t v = 0;
    if (mpz_divisible_p(residual.get_num_mpz_t(), prime_.get_mpz_t())) {
      v = static_cast<std::int64_t>(
          mpz_remove(scratch_.get_mpz_t(), residual.get_num_mpz_t(), prime_.get_mpz_t()));
    } else if (mpz_divisible_p(residual.get_den_mpz_t(), prime_.get_mpz_t())) {
      v = -static_cast<std::int64_t>(
          mpz_remove(scratch_.get_mpz_t(), residual.get_den_mpz_t(), prime_.get_mpz_t()));
    }
    if (v == 0) {
      total_ += multiplicity;
      return;
    }
    mpz_ui_pow_ui(power_.get_mpz_t(), static_cast<unsigned long>(prime_long_),
                  static_cast<unsigned long>(v < 0 ? -v : v));
    if (v > 0) {
      mpz_set_ui(mpq_numref(term_.get_mpq_t()), multiplicity);
      mpz_set(mpq_denref(term_.get_mpq_t()), power_.get_mpz_t());
      mpq_canonicalize(term_.get_mpq_t());
    } else {
      mpz_mul_ui(mpq_numref(term_.get_mpq_t()), power_.get_mpz_t(), multiplicity);
      mpz_set_ui(mpq_denref(term_.get_mpq_t()), 1);
    }
    total_ += term_;
  }

  const Rational& total() const { return total_; }

 private:
  std::int64_t prime_long_;
  Integer prime_;
  Integer power_;
  Integer scratch_;
  Rational term_;
  Rational total_;
};

// ---------------------------------------------------------------------
// Deduplicated dataset view. Equal (x, y) points collapse into one entry
// with a multiplicity; entries sharing an x-row carry the same row id and
// are adjacent. Subsets over distinct entries reach exactly the candidate
// set of subsets over raw points: any subset repeating an x-row is
// singular, and repeated (x, y) points yield identical systems.
// ---------------------------------------------------------------------

struct DedupedPoints {
  std::vector<const DataPoint*> points;
  std::vector<unsigned long> multiplicity;
  std::vector<std::size_t> row_id;

  std::size_t size() const { return points.size(); }
};

int compare_vectors(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

DedupedPoints dedup_points(const Dataset& dataset) {
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& pts = dataset.points();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int c = compare_vectors(pts[a].x, pts[b].x);
    if (c != 0) return c < 0;
    return cmp(pts[a].y, pts[b].y) < 0;
  });

  DedupedPoints out;
  for (std::size_t idx : order) {
    const DataPoint& point = pts[idx];
    if (!out.points.empty()) {
      const DataPoint& last = *out.points.back();
      const int row_cmp = compare_vectors(last.x, point.x);
      if (row_cmp == 0 && cmp(last.y, point.y) == 0) {
        ++out.multiplicity.back();
        continue;
      }
      out.row_id.push_back(row_cmp == 0 ? out.row_id.back() : out.row_id.back() + 1);
    } else {
      out.row_id.push_back(0);
    }
    out.points.push_back(&point);
    out.multiplicity.push_back(1);
  }
  return out;
}

// Sparse view of the distinct points for fast residual evaluation.
struct SparseSupports {
  // (coordinate, value) pairs of the nonzero x entries, per distinct point.
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> entries;

  explicit SparseSupports(const DedupedPoints& dd) {
    entries.resize(dd.size());
    for (std::size_t i = 0; i < dd.size(); ++i) {
      const DataPoint& point = *dd.points[i];
      for (std::size_t j = 0; j < point.x.size(); ++j) {
        if (sgn(point.x[j]) != 0) entries[i].emplace_back(j, &point.x[j]);
      }
    }
  }
};

// Evaluates the deduplicated loss at a candidate; scratch state is reused
// across candidates so hot loops stay allocation-free.
class CandidateEvaluator {
 public:
  CandidateEvaluator(const Dataset& dataset, const DedupedPoints& dd, const SparseSupports& sup)
      : dd_(dd), sup_(sup), acc_(dataset.prime()) {}

  const Rational& loss_at(std::span<const Rational> beta) {
    acc_.reset();
    for (std::size_t i = 0; i < dd_.size(); ++i) {
      residual_ = dd_.points[i]->y;
      for (const auto& [j, value] : sup_.entries[i]) {
        if (sgn(beta[j]) != 0) {
          term_ = *value * beta[j];
          residual_ -= term_;
        }
      }
      acc_.add(residual_, dd_.multiplicity[i]);
    }
    return acc_.total();
  }

  const Rational& loss_at_mask(std::uint64_t mask) {
    acc_.reset();
    for (std::size_t i = 0; i < dd_.size(); ++i) {
      residual_ = dd_.points[i]->y;
      for (const auto& [j, value] : sup_.entries[i]) {
        if ((mask >> j) & 1u) residual_ -= *value;
      }
      acc_.add(residual_, dd_.multiplicity[i]);
    }
    return acc_.total();
  }

 private:
  const DedupedPoints& dd_;
  const SparseSupports& sup_;
  LossAccumulator acc_;
  Rational residual_;
  Rational term_;
};

// beta_j is bit j of the mask; lexicographic order compares from bit 0.
bool mask_lex_less(std::uint64_t a, std::uint64_t b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const unsigned bit_a = (a >> j) & 1u;
    const unsigned bit_b = (b >> j) & 1u;
    if (bit_a != bit_b) return bit_a < bit_b;
  }
  return false;
}

std::vector<Rational> mask_to_beta(std::uint64_t mask, std::size_t n) {
  std::vector<Rational> beta(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if ((mask >> j) & 1u) beta[j] = 1;
  }
  return beta;
}

// min(C(n, k), cap) with saturation.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap;
  }
  return static_cast<std::uint64_t>(c);
}

// ---------------------------------------------------------------------
// Fraction-free (Bareiss) elimination on an integer augmented matrix
// [A | b], full pivoting with column permutation tracking, then exact
// rational back substitution. Row scaling by denominator lcms happens
// before entry, so every division below is exact.
// ---------------------------------------------------------------------

struct BareissWorkspace {
  std::vector<std::vector<Integer>> m;  // n rows, n + 1 columns
  std::vector<std::size_t> colperm;
  std::vector<Rational> solved;
  Integer t1, t2, prev;
  Rational racc, rterm;

  void resize(std::size_t n) {
    m.resize(n);
    for (auto& row : m) row.resize(n + 1);
    colperm.resize(n);
    solved.resize(n);
  }
};

// Loads one point as an integer row: multiply (x, y) by the lcm of all
// denominators.
void load_integer_row(const DataPoint& point, std::vector<Integer>& row, Integer& scale) {
  const std::size_t n = point.x.size();
  scale = 1;
  for (const Rational& value : point.x) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), value.get_den_mpz_t());
  }
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), point.y.get_den_mpz_t());
  for (std::size_t j = 0; j < n; ++j) {
    mpz_divexact(row[j].get_mpz_t(), scale.get_mpz_t(), point.x[j].get_den_mpz_t());
    row[j] *= point.x[j].get_num();
  }
  mpz_divexact(row[n].get_mpz_t(), scale.get_mpz_t(), point.y.get_den_mpz_t());
  row[n] *= point.y.get_num();
}

bool bareiss_solve(BareissWorkspace& ws, std::size_t n, std::vector<Rational>& beta) {
  auto& m = ws.m;
  std::iota(ws.colperm.begin(), ws.colperm.end(), std::size_t{0});
  ws.prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest nonzero entry in the remaining block keeps growth down;
    // ties resolve by (row, column) for determinism.
    std::size_t pivot_row = n, pivot_col = n;
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (sgn(m[i][j]) == 0) continue;
        if (pivot_row == n ||
            mpz_cmpabs(m[i][j].get_mpz_t(), m[pivot_row][pivot_col].get_mpz_t()) < 0) {
          pivot_row = i;
          pivot_col = j;
        }
      }
    }
    if (pivot_row == n) return false;
    if (pivot_row != k) std::swap(m[pivot_row], m[k]);
    if (pivot_col != k) {
      for (std::size_t i = 0; i < n; ++i) mpz_swap(m[i][k].get_mpz_t(), m[i][pivot_col].get_mpz_t());
      std::swap(ws.colperm[k], ws.colperm[pivot_col]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        ws.t1 = m[k][k] * m[i][j];
        ws.t2 = m[i][k] * m[k][j];
        ws.t1 -= ws.t2;
        mpz_divexact(m[i][j].get_mpz_t(), ws.t1.get_mpz_t(), ws.prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    ws.prev = m[k][k];
  }

  for (std::size_t i = n; i-- > 0;) {
    ws.racc = Rational(m[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) {
      ws.rterm = m[i][j] * ws.solved[j];
      ws.racc -= ws.rterm;
    }
    ws.rterm = Rational(m[i][i]);
    ws.solved[i] = ws.racc / ws.rterm;
  }
  beta.resize(n);
  for (std::size_t i = 0; i < n; ++i) beta[ws.colperm[i]] = ws.solved[i];
  return true;
}

}  // namespace

std::optional<std::vector<Rational>> solve_exact_linear(std::span<const DataPoint> rows) {
  if (rows.empty()) throw std::invalid_argument("linear solve requires at least one row");
  const std::size_t n = rows.front().x.size();
  if (rows.size() != n) {
    throw std::invalid_argument("linear solve needs exactly " + std::to_string(n) + " rows, got " +
                                std::to_string(rows.size()));
  }
  for (const DataPoint& row : rows) {
    if (row.x.size() != n) {
      throw std::invalid_argument("linear solve rows must share one dimension");
    }
  }
  BareissWorkspace ws;
  ws.resize(n);
  Integer scale;
  for (std::size_t i = 0; i < n; ++i) load_integer_row(rows[i], ws.m[i], scale);
  std::vector<Rational> beta;
  if (!bareiss_solve(ws, n, beta)) return std::nullopt;
  return beta;
}

SolveResult solve_binary(const Dataset& dataset, const SolverOptions& options) {
  const std::size_t n = dataset.dimension();
  if (n > options.binary_cap || n > 63) {
    throw InstanceTooLarge("binary brute force requires n <= " +
                           std::to_string(std::min<std::size_t>(options.binary_cap, 63)) +
                           ", instance has n = " + std::to_string(n));
  }

  const DedupedPoints dd = dedup_points(dataset);
  const SparseSupports supports(dd);
  const std::uint64_t total = std::uint64_t{1} << n;

  struct Best {
    bool any = false;
    Rational loss;
    std::uint64_t mask = 0;
  };

  const int workers =
      static_cast<int>(std::min<std::uint64_t>(resolve_worker_count(options.threads), total));
  std::vector<Best> best_per_chunk(static_cast<std::size_t>(workers));

  auto scan = [&](int chunk, std::uint64_t lo, std::uint64_t hi) {
    CandidateEvaluator eval(dataset, dd, supports);
    Best local;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      const Rational& loss = eval.loss_at_mask(mask);
      if (!local.any || loss < local.loss ||
          (loss == local.loss && mask_lex_less(mask, local.mask, n))) {
        local.any = true;
        local.loss = loss;
        local.mask = mask;
      }
    }
    best_per_chunk[static_cast<std::size_t>(chunk)] = std::move(local);
  };

  if (workers <= 1) {
    scan(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::uint64_t step = total / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = step * static_cast<std::uint64_t>(w);
      const std::uint64_t hi = (w + 1 == workers) ? total : lo + step;
      pool.emplace_back(scan, w, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  Best best;
  for (Best& chunk : best_per_chunk) {
    if (!chunk.any) continue;
    if (!best.any || chunk.loss < best.loss ||
        (chunk.loss == best.loss && mask_lex_less(chunk.mask, best.mask, n))) {
      best = std::move(chunk);
    }
  }

  SolveResult result;
  result.beta = mask_to_beta(best.mask, n);
  result.loss = best.loss;
  result.method = "binary";
  result.candidates_examined = total;
  return result;
}

SolveResult solve_enum(const Dataset& dataset, const SolverOptions& options) {
  const std::size_t n = dataset.dimension();
  const DedupedPoints dd = dedup_points(dataset);
  const SparseSupports supports(dd);

  if (n > options.enum_cap) {
    const std::uint64_t raw = binomial_capped(dataset.size(), n, options.enum_work_budget);
    if (raw >= options.enum_work_budget) {
      throw InstanceTooLarge("subset enumeration requires n <= " + std::to_string(options.enum_cap) +
                             " or C(m, n) below " + std::to_string(options.enum_work_budget) +
                             ", instance has n = " + std::to_string(n) + ", m = " +
                             std::to_string(dataset.size()));
    }
  }

  const std::size_t distinct = dd.size();

  struct Best {
    bool any = false;
    Rational loss;
    std::vector<Rational> beta;
    std::uint64_t examined = 0;

    void offer(const Rational& candidate_loss, const std::vector<Rational>& candidate_beta) {
      if (!any || candidate_loss < loss ||
          (candidate_loss == loss && lex_less(candidate_beta, beta))) {
        any = true;
        loss = candidate_loss;
        beta = candidate_beta;
      }
    }
  };

  // Workers pull first-index values; combinations are enumerated with a
  // fixed first element so the reduction stays order-independent.
  std::atomic<std::size_t> next_first{0};
  const int workers = resolve_worker_count(options.threads);
  std::vector<Best> best_per_worker(static_cast<std::size_t>(workers));

  auto scan = [&](int worker) {
    CandidateEvaluator eval(dataset, dd, supports);
    BareissWorkspace ws;
    ws.resize(n);
    Integer scale;
    Best local;
    std::vector<std::size_t> combo(n);
    std::vector<Rational> beta;

    while (true) {
      const std::size_t first = next_first.fetch_add(1);
      if (distinct < n || first + n > distinct) break;
      combo[0] = first;
      for (std::size_t i = 1; i < n; ++i) combo[i] = first + i;

      while (true) {
        ++local.examined;
        bool repeated_row = false;
        for (std::size_t i = 1; i < n; ++i) {
          if (dd.row_id[combo[i - 1]] == dd.row_id[combo[i]]) {
            repeated_row = true;
            break;
          }
        }
        if (!repeated_row) {
          for (std::size_t i = 0; i < n; ++i) load_integer_row(*dd.points[combo[i]], ws.m[i], scale);
          if (bareiss_solve(ws, n, beta)) {
            local.offer(eval.loss_at(beta), beta);
          }
        }

        // next combination with combo[0] fixed
        std::size_t i = n;
        while (i-- > 1) {
          if (combo[i] != distinct - n + i) break;
        }
        if (i == 0) break;
        ++combo[i];
        for (std::size_t j = i + 1; j < n; ++j) combo[j] = combo[j - 1] + 1;
      }
    }
    best_per_worker[static_cast<std::size_t>(worker)] = std::move(local);
  };

  if (workers <= 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }

  Best best;
  std::uint64_t examined = 0;
  for (Best& worker_best : best_per_worker) {
    examined += worker_best.examined;
    if (!worker_best.any) continue;
    best.offer(worker_best.loss, worker_best.beta);
  }

  // The zero vector covers datasets where every subset is singular.
  {
    CandidateEvaluator eval(dataset, dd, supports);
    const std::vector<Rational> zero(n, Rational(0));
    best.offer(eval.loss_at(zero), zero);
  }

  SolveResult result;
  result.beta = std::move(best.beta);
  result.loss = best.loss;
  result.method = "enum";
  result.candidates_examined = examined;
  return result;
}

}  // namespace padicreg
