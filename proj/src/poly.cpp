#include "qsi/poly.hpp"

#include <algorithm>

#include "qsi/error.hpp"

namespace qsi {

UniPoly::UniPoly(const PrimeField& field, std::vector<Residue> ascending) : field_(field), c_(std::move(ascending)) {
  for (auto& c : c_) c = field_.reduce(c);
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(const PrimeField& field, Residue c) { return UniPoly(field, {c}); }

UniPoly UniPoly::monomial(const PrimeField& field, int k, Residue c) {
  std::vector<Residue> v(static_cast<std::size_t>(k + 1), 0);
  v.back() = c;
  return UniPoly(field, std::move(v));
}

UniPoly UniPoly::from_signed(const PrimeField& field, std::initializer_list<std::int64_t> ascending) {
  std::vector<Residue> v;
  for (auto x : ascending) v.push_back(field.from_signed(x));
  return UniPoly(field, std::move(v));
}

UniPoly UniPoly::random(const PrimeField& field, int max_degree, Stream& rng) {
  std::vector<Residue> v(static_cast<std::size_t>(max_degree + 1));
  for (auto& c : v) c = field.random(rng);
  return UniPoly(field, std::move(v));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(lead()));
}

UniPoly UniPoly::scaled(Residue s) const {
  std::vector<Residue> v(c_);
  for (auto& c : v) c = field_.mul(c, s);
  return UniPoly(field_, std::move(v));
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly(field_);
  std::vector<Residue> v(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = field_.mul(c_[k], field_.reduce(k));
  return UniPoly(field_, std::move(v));
}

Residue UniPoly::eval(Residue x) const {
  Residue r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_.add(field_.mul(r, x), *it);
  return r;
}

UniPoly UniPoly::shifted(Residue s) const {
  // Horner in the ring: ((c_n (x+s) + c_{n-1})(x+s) + ...)
  UniPoly lin(field_, {s, 1});
  UniPoly r(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + UniPoly::constant(field_, *it);
  return r;
}

bool operator<(const UniPoly& a, const UniPoly& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field(), b.field());
  std::vector<Residue> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.field().add(a[static_cast<int>(k)], b[static_cast<int>(k)]);
  return UniPoly(a.field(), std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field(), b.field());
  std::vector<Residue> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.field().sub(a[static_cast<int>(k)], b[static_cast<int>(k)]);
  return UniPoly(a.field(), std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field(), b.field());
  if (a.is_zero() || b.is_zero()) return UniPoly(a.field());
  const PrimeField& f = a.field();
  const std::uint64_t q = f.modulus();
  std::vector<u128> acc(a.coeffs().size() + b.coeffs().size() - 1, 0);
  const bool small = q < (std::uint64_t{1} << 32);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      if (small)
        acc[i + j] += static_cast<u128>(a.coeffs()[i]) * b.coeffs()[j];
      else
        acc[i + j] = (acc[i + j] + f.mul(a.coeffs()[i], b.coeffs()[j])) % q;
    }
  }
  std::vector<Residue> v(acc.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<Residue>(acc[k] % q);
  return UniPoly(f, std::move(v));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field(), b.field());
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  const PrimeField& f = a.field();
  if (a.degree() < b.degree()) return {UniPoly(f), a};
  std::vector<Residue> r = a.coeffs();
  const int db = b.degree();
  std::vector<Residue> quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const Residue inv_lead = f.inv(b.lead());
  for (int k = a.degree(); k >= db; --k) {
    const Residue c = f.mul(r[static_cast<std::size_t>(k)], inv_lead);
    quo[static_cast<std::size_t>(k - db)] = c;
    if (c == 0) continue;
    for (int t = 0; t <= db; ++t) {
      auto& slot = r[static_cast<std::size_t>(k - db + t)];
      slot = f.sub(slot, f.mul(c, b.coeffs()[static_cast<std::size_t>(t)]));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {UniPoly(f, std::move(quo)), UniPoly(f, std::move(r))};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b) {
  const PrimeField& f = a.field();
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(f, 1), s1(f);
  UniPoly t0(f), t1 = UniPoly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    r0 = std::exchange(r1, rem);
    s0 = std::exchange(s1, s0 - quo * s1);
    t0 = std::exchange(t1, t0 - quo * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Residue inv = f.inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

UniPoly powmod(const UniPoly& base, u128 e, const UniPoly& m) {
  UniPoly result = UniPoly::constant(base.field(), 1) % m;
  UniPoly b = base % m;
  while (e) {
    if (e & 1) result = (result * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return result;
}

namespace {

// f monic, nonconstant. Returns (squarefree part, multiplicity) pairs.
std::vector<std::pair<UniPoly, unsigned>> squarefree(const UniPoly& f) {
  const PrimeField& F = f.field();
  const auto p = F.modulus();
  std::vector<std::pair<UniPoly, unsigned>> out;
  UniPoly c = gcd(f, f.derivative());
  UniPoly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    UniPoly y = gcd(w, c);
    UniPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a p-th power: c(x) = d(x^p), and over F_p each coefficient is its own p-th root.
    std::vector<Residue> root(static_cast<std::size_t>(c.degree()) / p + 1);
    for (std::size_t k = 0; k < root.size(); ++k) root[k] = c[static_cast<int>(k * p)];
    for (auto& [g, e] : squarefree(UniPoly(F, std::move(root)).monic())) out.emplace_back(g, e * static_cast<unsigned>(p));
  }
  return out;
}

// f monic squarefree. Returns (product of all degree-d irreducibles, d).
std::vector<std::pair<UniPoly, int>> distinct_degree(const UniPoly& f) {
  const PrimeField& F = f.field();
  std::vector<std::pair<UniPoly, int>> out;
  UniPoly rest = f;
  const UniPoly x = UniPoly::monomial(F, 1);
  UniPoly h = x % rest;
  for (int d = 1; rest.degree() >= 2 * d; ++d) {
    h = powmod(h, F.modulus(), rest);
    UniPoly g = gcd(h - x, rest);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

// g monic, product of irreducibles of degree d each. q odd.
void equal_degree(const UniPoly& g, int d, Stream& rng, std::vector<UniPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const PrimeField& F = g.field();
  const std::uint64_t q = F.modulus();
  for (;;) {
    UniPoly a = UniPoly::random(F, g.degree() - 1, rng);
    if (a.degree() < 1) continue;
    // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q - 1)/2)
    UniPoly norm = a;
    UniPoly frob = a;
    for (int k = 1; k < d; ++k) {
      frob = powmod(frob, q, g);
      norm = (norm * frob) % g;
    }
    UniPoly b = powmod(norm, (q - 1) / 2, g) - UniPoly::constant(F, 1);
    UniPoly u = gcd(g, b);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree(u, d, rng, out);
      equal_degree(g / u, d, rng, out);
      return;
    }
  }
}

}  // namespace

UniFactorization factor(const UniPoly& f, Stream& rng) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
  UniFactorization result;
  result.leading = f.lead();
  if (f.degree() == 0) return result;
  for (auto& [part, mult] : squarefree(f.monic())) {
    for (auto& [block, d] : distinct_degree(part)) {
      std::vector<UniPoly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) result.factors.emplace_back(std::move(g), mult);
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
  return result;
}

UniFactorization factor(const UniPoly& f) {
  Stream rng(0, "qsi.factor.univariate");
  return factor(f, rng);
}

bool is_irreducible(const UniPoly& f) {
  if (f.degree() < 1) return false;
  UniFactorization fac = factor(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace qsi
