#include "qsi/embeddings.hpp"

#include <numeric>

#include "qsi/error.hpp"

namespace qsi {

namespace {

constexpr int kQuarticAttempts = 20000;

void require_square4(const MatrixFq& a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "glemb: matrix must be square");
}

}  // namespace

MatrixFq glemb(const MatrixFq& a, int m) {
  require_square4(a);
  if (m < 0) throw Error(ErrorKind::InvalidParameters, "glemb: negative degree");
  if (!is_invertible(a)) throw Error(ErrorKind::SingularMatrix, "glemb: matrix is not invertible");
  const PrimeField& f = a.field();
  const int n = static_cast<int>(a.rows());
  std::vector<MonomialBasis> bases;
  bases.reserve(static_cast<std::size_t>(m + 1));
  for (int d = 0; d <= m; ++d) bases.emplace_back(n, d);
  const MonomialBasis& top = bases.back();

  MatrixFq out(f, top.size(), top.size());
  std::vector<int> shifted(static_cast<std::size_t>(n));
  for (Index row = 0; row < top.size(); ++row) {
    auto e = top.exponents(row);
    std::vector<Residue> poly{1};
    int deg = 0;
    // Multiply by the linear form L_i once for every unit of e_i.
    for (int i = 0; i < n; ++i) {
      for (int rep = 0; rep < e[static_cast<std::size_t>(i)]; ++rep) {
        const MonomialBasis& src = bases[static_cast<std::size_t>(deg)];
        const MonomialBasis& dst = bases[static_cast<std::size_t>(deg + 1)];
        std::vector<Residue> next(static_cast<std::size_t>(dst.size()), 0);
        for (Index k = 0; k < src.size(); ++k) {
          const Residue c = poly[static_cast<std::size_t>(k)];
          if (c == 0) continue;
          auto ek = src.exponents(k);
          std::copy(ek.begin(), ek.end(), shifted.begin());
          for (int j = 0; j < n; ++j) {
            const Residue aij = a(i, j);
            if (aij == 0) continue;
            ++shifted[static_cast<std::size_t>(j)];
            auto& slot = next[static_cast<std::size_t>(dst.index_of(shifted))];
            slot = f.add(slot, f.mul(c, aij));
            --shifted[static_cast<std::size_t>(j)];
          }
        }
        poly = std::move(next);
        ++deg;
      }
    }
    for (Index k = 0; k < top.size(); ++k) out.set(row, k, poly[static_cast<std::size_t>(k)]);
  }
  return out;
}

GenPerm glemb(const GenPerm& a, int m) {
  const PrimeField& f = a.field();
  const int n = static_cast<int>(a.size());
  MonomialBasis basis(n, m);
  std::vector<Index> perm(static_cast<std::size_t>(basis.size()));
  std::vector<Residue> scale(static_cast<std::size_t>(basis.size()));
  std::vector<int> image(static_cast<std::size_t>(n));
  for (Index row = 0; row < basis.size(); ++row) {
    auto e = basis.exponents(row);
    std::fill(image.begin(), image.end(), 0);
    Residue s = 1;
    for (int i = 0; i < n; ++i) {
      const auto ei = e[static_cast<std::size_t>(i)];
      image[static_cast<std::size_t>(a.perm()[static_cast<std::size_t>(i)])] += ei;
      s = f.mul(s, f.pow(a.scale()[static_cast<std::size_t>(i)], static_cast<u128>(ei)));
    }
    perm[static_cast<std::size_t>(row)] = basis.index_of(image);
    scale[static_cast<std::size_t>(row)] = s;
  }
  return GenPerm(f, std::move(perm), std::move(scale));
}

BiForm gl2_transport(const BiForm& f, const MatrixFq& g1, const MatrixFq& g2) {
  require_same_field(f.field(), g1.field());
  require_same_field(f.field(), g2.field());
  if (g1.rows() != 2 || g1.cols() != 2 || g2.rows() != 2 || g2.cols() != 2)
    throw Error(ErrorKind::DimensionMismatch, "transport needs 2 x 2 matrices");
  const MatrixFq e1 = glemb(g1, f.d1());
  const MatrixFq e2 = glemb(g2, f.d2());
  MatrixFq c(f.field(), f.d1() + 1, f.d2() + 1);
  for (int i = 0; i <= f.d1(); ++i)
    for (int j = 0; j <= f.d2(); ++j) c.set(i, j, f.coeff(i, j));
  const MatrixFq out = e1.transpose() * c * e2;
  BiForm g(f.field(), f.d1(), f.d2());
  for (int i = 0; i <= f.d1(); ++i)
    for (int j = 0; j <= f.d2(); ++j) g.set(i, j, out(i, j));
  return g;
}

MatrixFq veronese_point(const PrimeField& field, int m, std::span<const Residue> p) {
  MonomialBasis basis(static_cast<int>(p.size()), m);
  auto values = basis.evaluate(field, p);
  MatrixFq out(field, basis.size(), 1);
  for (Index i = 0; i < basis.size(); ++i) out.set(i, 0, values[static_cast<std::size_t>(i)]);
  return out;
}

// --- frames and embeddings -------------------------------------------------------

VeroneseFrame::VeroneseFrame(MatrixFq matrix, int m)
    : matrix_(std::move(matrix)), inverse_(matrix_.field(), 0, 0), m_(m) {
  if (m < 1) throw Error(ErrorKind::InvalidParameters, "frame degree must be positive");
  const Index n = veronese_last_index(m) + 1;
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "frame must be C(m+3,3) square");
  inverse_ = qsi::inverse(matrix_);
}

VeroneseFrame VeroneseFrame::identity(const PrimeField& field, int m) {
  return VeroneseFrame(MatrixFq::identity(field, veronese_last_index(m) + 1), m);
}

VeroneseFrame VeroneseFrame::random(const PrimeField& field, int m, Stream& rng) {
  return VeroneseFrame(MatrixFq::random_invertible(field, veronese_last_index(m) + 1, rng), m);
}

VeroneseFrame VeroneseFrame::random_generalized_permutation(const PrimeField& field, int m, Stream& rng) {
  return VeroneseFrame(GenPerm::random(field, veronese_last_index(m) + 1, rng).dense(), m);
}

MatrixFq VeroneseFrame::point(std::span<const Residue> p) const {
  if (p.size() != 4) throw Error(ErrorKind::DimensionMismatch, "points of P^3 have 4 coordinates");
  return matrix_ * veronese_point(field(), m_, p);
}

SigmaEmbedding::SigmaEmbedding(MatrixFq matrix, int m) : matrix_(std::move(matrix)), m_(m) {
  if (m < 1) throw Error(ErrorKind::InvalidParameters, "embedding degree must be positive");
  if (matrix_.rows() != veronese_last_index(m) + 1 || matrix_.cols() != static_cast<Index>((m + 1) * (m + 1)))
    throw Error(ErrorKind::DimensionMismatch, "sigma must be C(m+3,3) x (m+1)^2");
}

MatrixFq SigmaEmbedding::point(Point1 p, Point1 q) const {
  return matrix_ * bidegree_monomials(field(), m_, p, q);
}

bool SigmaEmbedding::has_full_column_rank() const { return rank(matrix_) == matrix_.cols(); }

SigmaEmbedding sigma_compose(const VeroneseFrame& frame, const MatrixFq& b) {
  require_same_field(frame.field(), b.field());
  if (b.rows() != 4 || b.cols() != 4) throw Error(ErrorKind::DimensionMismatch, "B must be 4 x 4");
  const int m = frame.m();
  const MatrixFq g = glemb(b, m);
  // g * E collapses columns of g that land on the same X^a Y^b monomial.
  const auto& cols = expansion_columns(m);
  const PrimeField& f = b.field();
  MatrixFq ge(f, g.rows(), static_cast<Index>((m + 1) * (m + 1)));
  for (Index r = 0; r < g.cols(); ++r) {
    const Index c = cols[static_cast<std::size_t>(r)];
    for (Index i = 0; i < g.rows(); ++i) {
      const Residue v = g(i, r);
      if (v != 0) ge.set(i, c, f.add(ge(i, c), v));
    }
  }
  return SigmaEmbedding(frame.matrix() * ge, m);
}

BiForm pullback(const RowVector& h, const SigmaEmbedding& sigma) {
  return pullback(h, sigma.matrix(), sigma.m());
}

// --- automorphisms ------------------------------------------------------------------

MatrixFq companion_matrix(const UniPoly& f) {
  if (f.degree() < 1 || f.lead() != 1) throw Error(ErrorKind::InvalidParameters, "companion matrix needs a monic polynomial");
  const PrimeField& field = f.field();
  const Index n = f.degree();
  MatrixFq c(field, n, n);
  for (Index i = 1; i < n; ++i) c.set(i, i - 1, 1);
  for (Index i = 0; i < n; ++i) c.set(i, n - 1, field.neg(f[static_cast<int>(i)]));
  return c;
}

bool is_primitive_quartic(const UniPoly& f, std::span<const std::uint64_t> primes) {
  if (f.degree() != 4 || f.lead() != 1 || f[0] == 0) return false;
  if (!is_irreducible(f)) return false;
  const PrimeField& field = f.field();
  const u128 q = field.modulus();
  const u128 n = q * q * q * q - 1;
  const UniPoly x = UniPoly::monomial(field, 1);
  for (auto p : primes)
    if (powmod(x, n / p, f).is_one()) return false;
  return true;
}

UniPoly random_primitive_quartic(const PrimeField& field, Stream& rng) {
  const auto primes = prime_divisors_q4_minus_1(field.modulus());
  for (int attempt = 0; attempt < kQuarticAttempts; ++attempt) {
    std::vector<Residue> c(5);
    for (int i = 0; i < 4; ++i) c[static_cast<std::size_t>(i)] = field.random(rng);
    c[4] = 1;
    UniPoly f(field, std::move(c));
    if (is_primitive_quartic(f, primes)) return f;
  }
  throw Error(ErrorKind::RandomnessExhausted, "no primitive quartic found");
}

bool has_exact_order(const MatrixFq& a, u128 n, std::span<const std::uint64_t> primes) {
  const MatrixFq id = MatrixFq::identity(a.field(), a.rows());
  if (!(pow(a, n) == id)) return false;
  for (auto p : primes)
    if (n % p == 0 && pow(a, n / p) == id) return false;
  return true;
}

AutomorphismKey gen_automorphism_pair(const VeroneseFrame& frame, Stream& rng) {
  const PrimeField& field = frame.field();
  if (field.modulus() >= (std::uint64_t{1} << 32))
    throw Error(ErrorKind::InvalidParameters, "automorphism orders need q < 2^32");
  Stream r1 = rng.split("automorphism", 1);
  Stream r2 = rng.split("automorphism", 2);
  MatrixFq u1 = companion_matrix(random_primitive_quartic(field, r1));
  MatrixFq u2 = companion_matrix(random_primitive_quartic(field, r2));
  const u128 q = field.modulus();
  const u128 order = q * q * q * q - 1;
  AutomorphismKey key{frame.matrix() * glemb(u1, frame.m()) * frame.inverse(),
                      frame.matrix() * glemb(u2, frame.m()) * frame.inverse(),
                      std::move(u1),
                      std::move(u2),
                      order,
                      order,
                      1};
  return key;
}

namespace {

/// Random 4-cycle with nonzero scales whose product generates F_q^*.
GenPerm random_scaled_cycle(const PrimeField& field, Stream& rng) {
  std::vector<Index> cycle{0, 1, 2, 3};
  rng.shuffle(cycle);
  std::vector<Index> perm(4);
  for (std::size_t k = 0; k < 4; ++k) perm[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % 4];
  const std::uint64_t group = field.modulus() - 1;
  for (int attempt = 0; attempt < kQuarticAttempts; ++attempt) {
    std::vector<Residue> scale(4);
    Residue product = 1;
    for (auto& s : scale) {
      s = field.random_nonzero(rng);
      product = field.mul(product, s);
    }
    if (field.order(product) == group) return GenPerm(field, perm, std::move(scale));
  }
  throw Error(ErrorKind::RandomnessExhausted, "no generator found for the cycle scales");
}

}  // namespace

AutomorphismKey gen_permutation_variant(const VeroneseFrame& frame, Stream& rng) {
  const PrimeField& field = frame.field();
  auto sparse_frame = GenPerm::from_dense(frame.matrix());
  if (!sparse_frame) throw Error(ErrorKind::InvalidParameters, "permutation variant needs a generalized permutation frame");
  const GenPerm frame_inv = sparse_frame->inverse();
  Stream r1 = rng.split("cycle", 1);
  Stream r2 = rng.split("cycle", 2);
  const GenPerm u1 = random_scaled_cycle(field, r1);
  const GenPerm u2 = random_scaled_cycle(field, r2);
  const GenPerm a1 = *sparse_frame * glemb(u1, frame.m()) * frame_inv;
  const GenPerm a2 = *sparse_frame * glemb(u2, frame.m()) * frame_inv;
  return AutomorphismKey{a1.dense(), a2.dense(), u1.dense(), u2.dense(), u1.order(), u2.order(), 2};
}

}  // namespace qsi
