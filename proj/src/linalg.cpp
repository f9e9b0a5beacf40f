#include "qsi/linalg.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "qsi/error.hpp"

namespace qsi {

namespace {

void require_dims(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

// Row operation dst -= factor * src over columns [from, cols).
void axpy_row(const PrimeField& f, ResidueMatrix& m, Index dst, Index src, Residue factor, Index from) {
  if (factor == 0) return;
  for (Index j = from; j < m.cols(); ++j) {
    if (m(src, j) != 0) m(dst, j) = f.sub(m(dst, j), f.mul(factor, m(src, j)));
  }
}

}  // namespace

MatrixFq::MatrixFq(const PrimeField& field, Index rows, Index cols)
    : field_(field), data_(ResidueMatrix::Zero(rows, cols)) {
  if (rows < 0 || cols < 0) throw Error(ErrorKind::DimensionMismatch, "negative matrix size");
}

MatrixFq::MatrixFq(const PrimeField& field, ResidueMatrix entries) : field_(field), data_(std::move(entries)) {
  if (!(data_.array() < field_.modulus()).all())
    throw Error(ErrorKind::InvalidParameters, "matrix entries must be reduced");
}

MatrixFq MatrixFq::identity(const PrimeField& field, Index n) {
  return MatrixFq(field, ResidueMatrix::Identity(n, n));
}

MatrixFq MatrixFq::from_rows(const PrimeField& field,
                             std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  MatrixFq m(field, r, c);
  Index i = 0;
  for (const auto& row : rows) {
    require_dims(static_cast<Index>(row.size()) == c, "ragged initializer");
    Index j = 0;
    for (std::int64_t v : row) m.data_(i, j++) = field.from_signed(v);
    ++i;
  }
  return m;
}

MatrixFq MatrixFq::random(const PrimeField& field, Index rows, Index cols, Stream& rng) {
  MatrixFq m(field, rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m.data_(i, j) = field.random(rng);
  return m;
}

MatrixFq MatrixFq::random_invertible(const PrimeField& field, Index n, Stream& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    MatrixFq m = random(field, n, n, rng);
    if (rank(m) == n) return m;
  }
  throw Error(ErrorKind::RandomnessExhausted, "no invertible sample in 1000 draws");
}

MatrixFq MatrixFq::row(Index i) const { return MatrixFq(field_, data_.row(i)); }
MatrixFq MatrixFq::col(Index j) const { return MatrixFq(field_, data_.col(j)); }
MatrixFq MatrixFq::transpose() const { return MatrixFq(field_, data_.transpose()); }

MatrixFq operator*(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a.field(), b.field());
  require_dims(a.cols() == b.rows(), "matrix product: inner dimensions differ");
  const PrimeField& f = a.field();
  const std::uint64_t q = f.modulus();
  const Index n = a.rows(), k = a.cols(), m = b.cols();
  const auto& A = a.entries();
  const auto& B = b.entries();
  ResidueMatrix C(n, m);
  std::vector<u128> acc(static_cast<std::size_t>(m));
  // Products are below q^2 < 2^124, so 16 of them fit before a reduction is due.
  const Index batch = q < (std::uint64_t{1} << 32) ? k + 1 : 8;
  for (Index i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), u128{0});
    Index pending = 0;
    for (Index t = 0; t < k; ++t) {
      const Residue x = A(i, t);
      if (x == 0) continue;
      for (Index j = 0; j < m; ++j) acc[static_cast<std::size_t>(j)] += static_cast<u128>(x) * B(t, j);
      if (++pending == batch) {
        for (auto& v : acc) v %= q;
        pending = 0;
      }
    }
    for (Index j = 0; j < m; ++j) C(i, j) = static_cast<Residue>(acc[static_cast<std::size_t>(j)] % q);
  }
  return MatrixFq(f, std::move(C));
}

MatrixFq operator+(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a.field(), b.field());
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum: shapes differ");
  MatrixFq c = a;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) c.set(i, j, a.field().add(a(i, j), b(i, j)));
  return c;
}

MatrixFq operator-(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a.field(), b.field());
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference: shapes differ");
  MatrixFq c = a;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) c.set(i, j, a.field().sub(a(i, j), b(i, j)));
  return c;
}

MatrixFq operator*(Residue s, const MatrixFq& a) {
  MatrixFq c = a;
  s = a.field().reduce(s);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) c.set(i, j, a.field().mul(s, a(i, j)));
  return c;
}

MatrixFq pow(const MatrixFq& a, u128 e) {
  require_dims(a.square(), "matrix power of a non-square matrix");
  MatrixFq result = MatrixFq::identity(a.field(), a.rows());
  if (e == 0) return result;
  MatrixFq base = a;
  bool first = true;
  while (e) {
    if (e & 1) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Echelon rref(const MatrixFq& a) {
  const PrimeField& f = a.field();
  ResidueMatrix m = a.entries();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index i = row; i < m.rows(); ++i) {
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Residue inv = f.inv(m(row, col));
    for (Index j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
    for (Index i = 0; i < m.rows(); ++i) {
      if (i != row) axpy_row(f, m, i, row, m(i, col), col);
    }
    pivots.push_back(col);
    ++row;
  }
  return {MatrixFq(f, std::move(m)), std::move(pivots)};
}

Index rank(const MatrixFq& a) { return static_cast<Index>(rref(a).pivots.size()); }

bool is_invertible(const MatrixFq& a) { return a.square() && rank(a) == a.rows(); }

MatrixFq inverse(const MatrixFq& a) {
  require_dims(a.square(), "inverse of a non-square matrix");
  const Index n = a.rows();
  Echelon e = rref(hstack(a, MatrixFq::identity(a.field(), n)));
  if (static_cast<Index>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    throw Error(ErrorKind::SingularMatrix, "matrix is not invertible");
  return MatrixFq(a.field(), e.reduced.entries().rightCols(n));
}

MatrixFq left_nullspace_matrix(const MatrixFq& m) {
  const PrimeField& f = m.field();
  // h m = 0  <=>  m^T h^T = 0: read the kernel of m^T off its reduced form.
  Echelon e = rref(m.transpose());
  const Index n = m.rows();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  MatrixFq basis(f, static_cast<Index>(free_cols.size()), n);
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    const Index fc = free_cols[b];
    basis.set(static_cast<Index>(b), fc, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis.set(static_cast<Index>(b), e.pivots[r], f.neg(e.reduced(static_cast<Index>(r), fc)));
  }
  if (basis.rows() == 0) return basis;
  return rref(basis).reduced;
}

std::vector<RowVector> left_nullspace(const MatrixFq& m) {
  MatrixFq basis = left_nullspace_matrix(m);
  std::vector<RowVector> out;
  out.reserve(static_cast<std::size_t>(basis.rows()));
  for (Index i = 0; i < basis.rows(); ++i) out.push_back(basis.row(i));
  return out;
}

RowVector random_cokernel_element(const MatrixFq& m, Stream& rng) {
  MatrixFq basis = left_nullspace_matrix(m);
  if (basis.rows() == 0) throw Error(ErrorKind::DegenerateChoice, "cokernel is trivial");
  const PrimeField& f = m.field();
  for (;;) {
    MatrixFq coeffs = MatrixFq::random(f, 1, basis.rows(), rng);
    if (!coeffs.is_zero()) return coeffs * basis;
  }
}

MatrixFq hstack(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a.field(), b.field());
  require_dims(a.rows() == b.rows(), "hstack: row counts differ");
  ResidueMatrix m(a.rows(), a.cols() + b.cols());
  m << a.entries(), b.entries();
  return MatrixFq(a.field(), std::move(m));
}

MatrixFq vstack(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a.field(), b.field());
  require_dims(a.cols() == b.cols(), "vstack: column counts differ");
  ResidueMatrix m(a.rows() + b.rows(), a.cols());
  m << a.entries(), b.entries();
  return MatrixFq(a.field(), std::move(m));
}

bool proportional(const MatrixFq& a, const MatrixFq& b) {
  if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const PrimeField& f = a.field();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (b(i, j) != 0) {
        const Residue s = f.div(a(i, j), b(i, j));
        return s != 0 && a == s * b;
      }
    }
  }
  return false;
}

void write_text(std::ostream& os, const MatrixFq& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
}

namespace {
std::uint64_t read_decimal(std::istream& is, const char* what) {
  std::string tok;
  if (!(is >> tok)) throw Error(ErrorKind::MalformedInput, std::string("unexpected end of input reading ") + what);
  u128 v = parse_u128(tok);
  if (v >> 64) throw Error(ErrorKind::MalformedInput, std::string("value out of range reading ") + what);
  return static_cast<std::uint64_t>(v);
}
}  // namespace

MatrixFq read_matrix(std::istream& is, const PrimeField& field) {
  const std::uint64_t r = read_decimal(is, "matrix rows");
  const std::uint64_t c = read_decimal(is, "matrix cols");
  if (r > 100000 || c > 100000 || r * c > 50'000'000)
    throw Error(ErrorKind::MalformedInput, "matrix dimensions too large");
  MatrixFq m(field, static_cast<Index>(r), static_cast<Index>(c));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const std::uint64_t v = read_decimal(is, "matrix entry");
      if (v >= field.modulus()) throw Error(ErrorKind::MalformedInput, "matrix entry not reduced modulo q");
      m.set(i, j, v);
    }
  }
  return m;
}

// --- generalized permutations ------------------------------------------------

GenPerm::GenPerm(const PrimeField& field, std::vector<Index> perm, std::vector<Residue> scale)
    : field_(field), perm_(std::move(perm)), scale_(std::move(scale)) {
  require_dims(perm_.size() == scale_.size(), "GenPerm: perm/scale length mismatch");
  std::vector<bool> seen(perm_.size(), false);
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    const Index p = perm_[i];
    if (p < 0 || p >= size() || seen[static_cast<std::size_t>(p)])
      throw Error(ErrorKind::InvalidParameters, "GenPerm: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
    if (scale_[i] == 0 || scale_[i] >= field_.modulus())
      throw Error(ErrorKind::SingularMatrix, "GenPerm: scales must be nonzero residues");
  }
}

GenPerm GenPerm::identity(const PrimeField& field, Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  return GenPerm(field, std::move(perm), std::vector<Residue>(static_cast<std::size_t>(n), 1));
}

GenPerm GenPerm::random(const PrimeField& field, Index n, Stream& rng) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  rng.shuffle(perm);
  std::vector<Residue> scale(static_cast<std::size_t>(n));
  for (auto& s : scale) s = field.random_nonzero(rng);
  return GenPerm(field, std::move(perm), std::move(scale));
}

std::optional<GenPerm> GenPerm::from_dense(const MatrixFq& m) {
  if (!m.square()) return std::nullopt;
  std::vector<Index> perm;
  std::vector<Residue> scale;
  for (Index i = 0; i < m.rows(); ++i) {
    Index where = -1;
    for (Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) {
        if (where >= 0) return std::nullopt;
        where = j;
      }
    }
    if (where < 0) return std::nullopt;
    perm.push_back(where);
    scale.push_back(m(i, where));
  }
  try {
    return GenPerm(m.field(), std::move(perm), std::move(scale));
  } catch (const Error&) {
    return std::nullopt;
  }
}

MatrixFq GenPerm::dense() const {
  MatrixFq m(field_, size(), size());
  for (Index i = 0; i < size(); ++i) m.set(i, perm_[static_cast<std::size_t>(i)], scale_[static_cast<std::size_t>(i)]);
  return m;
}

GenPerm GenPerm::inverse() const {
  std::vector<Index> perm(perm_.size());
  std::vector<Residue> scale(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    const auto p = static_cast<std::size_t>(perm_[i]);
    perm[p] = static_cast<Index>(i);
    scale[p] = field_.inv(scale_[i]);
  }
  return GenPerm(field_, std::move(perm), std::move(scale));
}

std::uint64_t GenPerm::order() const {
  std::vector<bool> seen(perm_.size(), false);
  std::uint64_t order = 1;
  for (std::size_t start = 0; start < perm_.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t length = 0;
    Residue product = 1;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(perm_[i])) {
      seen[i] = true;
      product = field_.mul(product, scale_[i]);
      ++length;
    }
    order = std::lcm(order, length * field_.order(product));
  }
  return order;
}

GenPerm operator*(const GenPerm& a, const GenPerm& b) {
  require_same_field(a.field(), b.field());
  require_dims(a.size() == b.size(), "GenPerm product: sizes differ");
  std::vector<Index> perm(a.perm().size());
  std::vector<Residue> scale(a.perm().size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto k = static_cast<std::size_t>(a.perm()[i]);
    perm[i] = b.perm()[k];
    scale[i] = a.field().mul(a.scale()[i], b.scale()[k]);
  }
  return GenPerm(a.field(), std::move(perm), std::move(scale));
}

MatrixFq operator*(const GenPerm& g, const MatrixFq& m) {
  require_same_field(g.field(), m.field());
  require_dims(g.size() == m.rows(), "GenPerm * matrix: dimensions differ");
  MatrixFq out(m.field(), m.rows(), m.cols());
  const PrimeField& f = m.field();
  for (Index i = 0; i < m.rows(); ++i) {
    const Index src = g.perm()[static_cast<std::size_t>(i)];
    const Residue s = g.scale()[static_cast<std::size_t>(i)];
    for (Index j = 0; j < m.cols(); ++j) out.set(i, j, f.mul(s, m(src, j)));
  }
  return out;
}

MatrixFq operator*(const MatrixFq& m, const GenPerm& g) {
  require_same_field(g.field(), m.field());
  require_dims(g.size() == m.cols(), "matrix * GenPerm: dimensions differ");
  MatrixFq out(m.field(), m.rows(), m.cols());
  const PrimeField& f = m.field();
  for (Index k = 0; k < m.cols(); ++k) {
    const Index dst = g.perm()[static_cast<std::size_t>(k)];
    const Residue s = g.scale()[static_cast<std::size_t>(k)];
    for (Index i = 0; i < m.rows(); ++i) out.set(i, dst, f.mul(s, m(i, k)));
  }
  return out;
}

GenPerm pow(const GenPerm& g, u128 e) {
  GenPerm result = GenPerm::identity(g.field(), g.size());
  GenPerm base = g;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace qsi
