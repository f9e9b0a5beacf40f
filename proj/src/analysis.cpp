#include "qsi/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "qsi/error.hpp"

namespace qsi {

namespace {

constexpr Index kExtraPoints = 24;

std::uint64_t n_plus_one(int m) { return binomial(static_cast<std::uint64_t>(m + 3), 3); }

/// Degree-2 monomials of a point, in MonomialBasis(N+1, 2) order.
void quadratic_row(const MatrixFq& x, MatrixFq& out, Index row) {
  const PrimeField& f = x.field();
  const Index n = x.rows();
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) out.set(row, k++, f.mul(x(i, 0), x(j, 0)));
}

Point1 random_point1(const PrimeField& f, Stream& rng) {
  for (;;) {
    Point1 p{f.random(rng), f.random(rng)};
    if (p.x0 != 0 || p.x1 != 0) return p;
  }
}

template <typename Sample>
QuadricSystem solve(int m, std::uint64_t expected, PointSource source, const PrimeField& f, Sample&& sample) {
  const auto n = static_cast<Index>(n_plus_one(m));
  const Index d = n * (n + 1) / 2;
  const Index needed = d - static_cast<Index>(expected);
  const Index count = needed + kExtraPoints;
  MatrixFq rows(f, count, d);
  for (Index r = 0; r < count; ++r) quadratic_row(sample(), rows, r);
  // quadrics c with rows * c^T = 0
  MatrixFq basis = left_nullspace_matrix(rows.transpose());
  if (basis.rows() > static_cast<Index>(expected))
    throw Error(ErrorKind::RankDeficient, "sampled points impose too few conditions");
  return {std::move(basis), expected, source, m, count};
}

}  // namespace

std::uint64_t expected_quadric_count(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidParameters, "m must be positive");
  const std::uint64_t n = n_plus_one(m);
  return (n + 1) * n / 2 - binomial(static_cast<std::uint64_t>(2 * m + 3), 3);
}

std::uint64_t printed_closed_form(int m) {
  const auto k = static_cast<std::uint64_t>(m);
  return k * (k * k - 1) * (k * k * k + 12 * k * k + 59 * k + 66);
}

std::uint64_t surface_quadric_count(int m) {
  const std::uint64_t n = n_plus_one(m);
  const auto s = static_cast<std::uint64_t>(2 * m + 1);
  return (n + 1) * n / 2 - s * s;
}

QuadricSystem quadric_system(const VeroneseFrame& frame, Stream& rng) {
  const PrimeField& f = frame.field();
  return solve(frame.m(), expected_quadric_count(frame.m()), PointSource::Variety, f, [&] {
    std::vector<Residue> p(4);
    do {
      for (auto& c : p) c = f.random(rng);
    } while (std::all_of(p.begin(), p.end(), [](Residue c) { return c == 0; }));
    return frame.point(p);
  });
}

QuadricSystem quadric_system(const SigmaEmbedding& sigma, Stream& rng) {
  const PrimeField& f = sigma.field();
  return solve(sigma.m(), surface_quadric_count(sigma.m()), PointSource::Surface, f, [&] {
    return sigma.point(random_point1(f, rng), random_point1(f, rng));
  });
}

QuadricSystem quadric_system(const MatrixFq& a1, const MatrixFq& a2, const SigmaEmbedding& sigma, Stream& rng) {
  const PrimeField& f = sigma.field();
  const int m = sigma.m();
  // Each translated surface imposes at most (2m+1)^2 conditions; draw a fresh word every half of that.
  const int per_word = std::max(1, (2 * m + 1) * (2 * m + 1) / 2);
  const u128 q = f.modulus();
  const u128 bound = q * q * q * q;
  MatrixFq current = sigma.matrix();
  int used = per_word;
  return solve(m, expected_quadric_count(m), PointSource::Orbit, f, [&] {
    if (used == per_word) {
      current = pow(a1, rng.uniform_wide(bound)) * (pow(a2, rng.uniform_wide(bound)) * sigma.matrix());
      used = 0;
    }
    ++used;
    return current * bidegree_monomials(f, m, random_point1(f, rng), random_point1(f, rng));
  });
}

Residue evaluate_quadric(const QuadricSystem& sys, Index row, const MatrixFq& point) {
  MatrixFq r(point.field(), 1, sys.basis.cols());
  quadratic_row(point, r, 0);
  const PrimeField& f = point.field();
  Residue acc = 0;
  for (Index k = 0; k < r.cols(); ++k) acc = f.add(acc, f.mul(r(0, k), sys.basis(row, k)));
  return acc;
}

// --- brute force ---------------------------------------------------------------------

std::uint64_t matrix_order(const MatrixFq& a, std::uint64_t n) {
  const MatrixFq id = MatrixFq::identity(a.field(), a.rows());
  if (!(pow(a, n) == id)) throw Error(ErrorKind::InvariantViolation, "matrix order does not divide the bound");
  std::uint64_t order = n;
  for (const auto& [p, e] : factorize(n))
    while (order % p == 0 && pow(a, order / p) == id) order /= p;
  return order;
}

BruteForceTarget brute_force_target(const PublicBundle& pub) { return {pub.a1, pub.a2, pub.sigma_p, pub.h}; }

BruteForceTarget brute_force_target(const TTPParams& params, const RowVector& h_u) {
  return {params.t1, params.t2, params.sigma_t, h_u};
}

BruteForceResult brute_force_search(const BruteForceTarget& t, std::uint64_t budget, std::uint64_t seed,
                                    unsigned threads) {
  const PrimeField& f = t.sigma.field();
  const u128 q = f.modulus();
  if (q * q * q * q - 1 > u128{~std::uint64_t{0}}) throw Error(ErrorKind::InvalidParameters, "brute force is for tiny q");
  const auto group = static_cast<std::uint64_t>(q * q * q * q - 1);
  BruteForceResult result;
  result.order1 = matrix_order(t.a1, group);
  result.order2 = matrix_order(t.a2, group);
  if (budget == 0) return result;

  // tables: A1^e and A2^d * sigma, one entry per exponent class
  std::vector<MatrixFq> a1_pow, a2_pow, tail;
  a1_pow.reserve(result.order1);
  a1_pow.push_back(MatrixFq::identity(f, t.a1.rows()));
  for (std::uint64_t e = 1; e < result.order1; ++e) a1_pow.push_back(a1_pow.back() * t.a1);
  a2_pow.push_back(MatrixFq::identity(f, t.a2.rows()));
  for (std::uint64_t e = 1; e < result.order2; ++e) a2_pow.push_back(a2_pow.back() * t.a2);
  for (std::uint64_t d = 0; d < result.order2; ++d) tail.push_back(a2_pow[d] * t.sigma);

  const Index n = t.sigma.rows(), cols = t.sigma.cols();
  const std::uint64_t sweep = result.order2;
  const std::uint64_t prefixes = (budget + sweep - 1) / sweep;
  const Stream root(seed, "qsi.bruteforce");
  std::atomic<std::uint64_t> best{~std::uint64_t{0}};  // smallest hit as prefix * sweep + d
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    std::vector<Residue> v(static_cast<std::size_t>(n));
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= prefixes || i * sweep > best.load()) return;
      Stream rng = root.split("prefix", i);
      const std::uint64_t a = rng.uniform(result.order1), b = rng.uniform(result.order2), c = rng.uniform(result.order1);
      const MatrixFq row = t.h * a1_pow[a] * a2_pow[b] * a1_pow[c];
      for (Index k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = row(0, k);
      const std::uint64_t limit = std::min(sweep, budget - i * sweep);
      for (std::uint64_t d = 0; d < limit; ++d) {
        const MatrixFq& r = tail[d];
        bool zero = true;
        for (Index col = 0; col < cols && zero; ++col) {
          u128 acc = 0;
          for (Index k = 0; k < n; ++k) acc += static_cast<u128>(v[static_cast<std::size_t>(k)]) * r(k, col);
          zero = acc % f.modulus() == 0;
        }
        if (!zero) continue;
        const std::uint64_t pos = i * sweep + d;
        std::uint64_t cur = best.load();
        while (pos < cur && !best.compare_exchange_weak(cur, pos)) {
        }
        return;
      }
    }
  };
  const unsigned workers = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < workers; ++id) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const std::uint64_t hit = best.load();
  if (hit == ~std::uint64_t{0}) {
    result.trials = budget;
    return result;
  }
  // recompute the winning word from its index so the answer is thread-independent
  const std::uint64_t i = hit / sweep;
  Stream rng = root.split("prefix", i);
  const std::uint64_t a = rng.uniform(result.order1), b = rng.uniform(result.order2), c = rng.uniform(result.order1);
  result.word = ExponentWord{a, b, c, hit % sweep};
  result.trials = hit + 1;
  return result;
}

DegreeReport degree_report(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidParameters, "m must be positive");
  const auto k = static_cast<std::uint64_t>(m);
  return {k * k * k, 4 * k};
}

}  // namespace qsi
