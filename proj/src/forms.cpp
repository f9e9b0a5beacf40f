#include "qsi/forms.hpp"

#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

#include "qsi/error.hpp"

namespace qsi {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

MonomialBasis::MonomialBasis(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
  if (n_vars < 1 || degree < 0) throw Error(ErrorKind::InvalidParameters, "monomial basis needs n >= 1, d >= 0");
  size_ = static_cast<Index>(binomial(static_cast<std::uint64_t>(n_vars + degree - 1),
                                      static_cast<std::uint64_t>(n_vars - 1)));
  exps_.reserve(static_cast<std::size_t>(size_ * n_vars));
  std::vector<int> e(static_cast<std::size_t>(n_vars), 0);
  // Enumerate in descending lex order by recursive assignment from the first variable.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n_vars - 1) {
      e[static_cast<std::size_t>(pos)] = remaining;
      exps_.insert(exps_.end(), e.begin(), e.end());
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, degree);
}

Index MonomialBasis::index_of(std::span<const int> e) const {
  if (static_cast<int>(e.size()) != n_vars_) throw Error(ErrorKind::InvalidParameters, "exponent length");
  int remaining = degree_;
  Index idx = 0;
  for (int k = 0; k + 1 < n_vars_; ++k) {
    const int ek = e[static_cast<std::size_t>(k)];
    if (ek < 0 || ek > remaining) throw Error(ErrorKind::InvalidParameters, "exponent out of range");
    const auto tail = static_cast<std::uint64_t>(n_vars_ - k - 2);
    // Monomials sharing the prefix but with a larger exponent here come first.
    for (int v = remaining; v > ek; --v) idx += static_cast<Index>(binomial(static_cast<std::uint64_t>(remaining - v) + tail, tail));
    remaining -= ek;
  }
  if (e[static_cast<std::size_t>(n_vars_ - 1)] != remaining)
    throw Error(ErrorKind::InvalidParameters, "exponent vector has the wrong degree");
  return idx;
}

std::vector<Residue> MonomialBasis::evaluate(const PrimeField& field, std::span<const Residue> point) const {
  if (static_cast<int>(point.size()) != n_vars_) throw Error(ErrorKind::DimensionMismatch, "point length");
  std::vector<std::vector<Residue>> powers(point.size());
  for (std::size_t v = 0; v < point.size(); ++v) {
    powers[v].resize(static_cast<std::size_t>(degree_ + 1));
    powers[v][0] = 1;
    for (int k = 1; k <= degree_; ++k)
      powers[v][static_cast<std::size_t>(k)] = field.mul(powers[v][static_cast<std::size_t>(k - 1)], point[v]);
  }
  std::vector<Residue> out(static_cast<std::size_t>(size_));
  for (Index i = 0; i < size_; ++i) {
    Residue r = 1;
    auto e = exponents(i);
    for (std::size_t v = 0; v < e.size(); ++v) r = field.mul(r, powers[v][static_cast<std::size_t>(e[v])]);
    out[static_cast<std::size_t>(i)] = r;
  }
  return out;
}

// --- BiForm -------------------------------------------------------------------

BiForm::BiForm(const PrimeField& field, int d1, int d2)
    : field_(field), d1_(d1), d2_(d2) {
  if (d1 < 0 || d2 < 0) throw Error(ErrorKind::InvalidParameters, "negative bidegree");
  coeffs_.assign(static_cast<std::size_t>((d1 + 1) * (d2 + 1)), 0);
}

BiForm::BiForm(const PrimeField& field, int d1, int d2, std::vector<Residue> coeffs)
    : field_(field), d1_(d1), d2_(d2), coeffs_(std::move(coeffs)) {
  if (d1 < 0 || d2 < 0) throw Error(ErrorKind::InvalidParameters, "negative bidegree");
  if (coeffs_.size() != static_cast<std::size_t>((d1 + 1) * (d2 + 1)))
    throw Error(ErrorKind::DimensionMismatch, "coefficient count does not match bidegree");
  for (auto& c : coeffs_) c = field_.reduce(c);
}

BiForm BiForm::monomial(const PrimeField& field, int d1, int d2, int i, int j, Residue c) {
  BiForm f(field, d1, d2);
  f.set(i, j, c);
  return f;
}

BiForm BiForm::random(const PrimeField& field, int d1, int d2, Stream& rng) {
  BiForm f(field, d1, d2);
  for (auto& c : f.coeffs_) c = field.random(rng);
  return f;
}

bool BiForm::is_zero() const {
  for (Residue c : coeffs_)
    if (c != 0) return false;
  return true;
}

BiForm BiForm::normalized() const {
  for (Residue c : coeffs_)
    if (c != 0) return scaled(field_.inv(c));
  return *this;
}

bool BiForm::is_normalized() const {
  for (Residue c : coeffs_)
    if (c != 0) return c == 1;
  return true;
}

BiForm BiForm::scaled(Residue s) const {
  BiForm out = *this;
  for (auto& c : out.coeffs_) c = field_.mul(c, s);
  return out;
}

BiForm BiForm::swapped() const {
  BiForm out(field_, d2_, d1_);
  for (int i = 0; i <= d1_; ++i)
    for (int j = 0; j <= d2_; ++j) out.set(j, i, coeff(i, j));
  return out;
}

BiForm operator*(const BiForm& f, const BiForm& g) {
  require_same_field(f.field(), g.field());
  const PrimeField& F = f.field();
  BiForm out(F, f.d1() + g.d1(), f.d2() + g.d2());
  for (int i = 0; i <= f.d1(); ++i)
    for (int j = 0; j <= f.d2(); ++j) {
      const Residue a = f.coeff(i, j);
      if (a == 0) continue;
      for (int k = 0; k <= g.d1(); ++k)
        for (int l = 0; l <= g.d2(); ++l) {
          const Residue b = g.coeff(k, l);
          if (b) out.set(i + k, j + l, F.add(out.coeff(i + k, j + l), F.mul(a, b)));
        }
    }
  return out;
}

namespace {
BiForm combine(const BiForm& f, const BiForm& g, bool subtract) {
  require_same_field(f.field(), g.field());
  if (f.d1() != g.d1() || f.d2() != g.d2())
    throw Error(ErrorKind::DimensionMismatch, "forms of different bidegree");
  std::vector<Residue> c(f.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = subtract ? f.field().sub(f.coeffs()[k], g.coeffs()[k]) : f.field().add(f.coeffs()[k], g.coeffs()[k]);
  return BiForm(f.field(), f.d1(), f.d2(), std::move(c));
}
}  // namespace

BiForm operator+(const BiForm& f, const BiForm& g) { return combine(f, g, false); }
BiForm operator-(const BiForm& f, const BiForm& g) { return combine(f, g, true); }

Residue eval(const BiForm& f, Point1 p, Point1 q) {
  const PrimeField& F = f.field();
  Residue total = 0;
  for (int i = 0; i <= f.d1(); ++i) {
    const Residue xi = F.mul(F.pow(p.x0, static_cast<u128>(f.d1() - i)), F.pow(p.x1, static_cast<u128>(i)));
    for (int j = 0; j <= f.d2(); ++j) {
      const Residue c = f.coeff(i, j);
      if (c == 0) continue;
      const Residue yj = F.mul(F.pow(q.x0, static_cast<u128>(f.d2() - j)), F.pow(q.x1, static_cast<u128>(j)));
      total = F.add(total, F.mul(c, F.mul(xi, yj)));
    }
  }
  return total;
}

bool same_up_to_scalar(const BiForm& a, const BiForm& b) {
  if (!(a.field() == b.field()) || a.d1() != b.d1() || a.d2() != b.d2()) return false;
  return a.normalized() == b.normalized();
}

MatrixFq bidegree_monomials(const PrimeField& field, int m, Point1 p, Point1 q) {
  MatrixFq v(field, (m + 1) * (m + 1), 1);
  for (int i = 0; i <= m; ++i) {
    const Residue xi = field.mul(field.pow(p.x0, static_cast<u128>(m - i)), field.pow(p.x1, static_cast<u128>(i)));
    for (int j = 0; j <= m; ++j) {
      const Residue yj = field.mul(field.pow(q.x0, static_cast<u128>(m - j)), field.pow(q.x1, static_cast<u128>(j)));
      v.set(i * (m + 1) + j, 0, field.mul(xi, yj));
    }
  }
  return v;
}

const std::vector<Index>& expansion_columns(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidParameters, "expansion matrix needs m >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const std::vector<Index>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[m];
  if (!slot) {
    MonomialBasis basis(4, m);
    auto cols = std::make_unique<std::vector<Index>>(static_cast<std::size_t>(basis.size()));
    for (Index r = 0; r < basis.size(); ++r) {
      auto e = basis.exponents(r);  // Z00^a Z01^b Z10^c Z11^d
      const int x1 = e[2] + e[3];
      const int y1 = e[1] + e[3];
      (*cols)[static_cast<std::size_t>(r)] = x1 * (m + 1) + y1;
    }
    slot = std::move(cols);
  }
  return *slot;
}

MatrixFq expansion_matrix(int m, const PrimeField& field) {
  const auto& cols = expansion_columns(m);
  MatrixFq e(field, static_cast<Index>(cols.size()), (m + 1) * (m + 1));
  for (std::size_t r = 0; r < cols.size(); ++r) e.set(static_cast<Index>(r), cols[r], 1);
  return e;
}

BiForm pullback(const RowVector& h, const MatrixFq& sigma, int m) {
  if (h.rows() != 1 || h.cols() != sigma.rows() || sigma.cols() != (m + 1) * (m + 1))
    throw Error(ErrorKind::DimensionMismatch, "pullback: hyperplane/embedding shapes disagree");
  MatrixFq prod = h * sigma;
  return BiForm(sigma.field(), m, m, std::vector<Residue>(prod.entries().data(), prod.entries().data() + prod.cols()));
}

void write_text(std::ostream& os, const BiForm& f) {
  os << f.d1() << ' ' << f.d2() << '\n';
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
    if (k) os << ' ';
    os << f.coeffs()[k];
  }
  os << '\n';
}

BiForm read_biform(std::istream& is, const PrimeField& field) {
  int d1 = -1, d2 = -1;
  if (!(is >> d1 >> d2) || d1 < 0 || d2 < 0 || d1 > 64 || d2 > 64)
    throw Error(ErrorKind::MalformedInput, "bad bidegree header");
  std::vector<Residue> c(static_cast<std::size_t>((d1 + 1) * (d2 + 1)));
  for (auto& v : c) {
    std::string tok;
    if (!(is >> tok)) throw Error(ErrorKind::MalformedInput, "truncated form coefficients");
    u128 x = parse_u128(tok);
    if (x >= field.modulus()) throw Error(ErrorKind::MalformedInput, "form coefficient not reduced");
    v = static_cast<Residue>(x);
  }
  return BiForm(field, d1, d2, std::move(c));
}

}  // namespace qsi
