#include "qsi/factor.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "qsi/embeddings.hpp"

namespace qsi {

namespace {

constexpr int kSpecializationTries = 64;
constexpr int kCoordinateChanges = 8;

// Polynomial in F_q[y][x]: c[i] is the coefficient of x^i, a polynomial in y.
struct BiPoly {
  PrimeField field;
  std::vector<UniPoly> c;

  explicit BiPoly(const PrimeField& f) : field(f) {}
  BiPoly(const PrimeField& f, std::vector<UniPoly> coeffs) : field(f), c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg_x() const { return static_cast<int>(c.size()) - 1; }
  int deg_y() const {
    int d = -1;
    for (const auto& u : c) d = std::max(d, u.degree());
    return d;
  }
  UniPoly coeff(int i) const { return i >= 0 && i <= deg_x() ? c[static_cast<std::size_t>(i)] : UniPoly(field); }
  const UniPoly& lead() const { return c.back(); }
  bool operator==(const BiPoly& o) const { return c == o.c; }
};

BiPoly constant(const PrimeField& f, Residue v) { return BiPoly(f, {UniPoly::constant(f, v)}); }

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  std::vector<UniPoly> c(static_cast<std::size_t>(std::max(a.deg_x(), b.deg_x()) + 1), UniPoly(a.field));
  for (int i = 0; i <= a.deg_x(); ++i) c[static_cast<std::size_t>(i)] = a.c[static_cast<std::size_t>(i)];
  for (int i = 0; i <= b.deg_x(); ++i) c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] - b.c[static_cast<std::size_t>(i)];
  return BiPoly(a.field, std::move(c));
}

BiPoly times(const BiPoly& a, const UniPoly& u, int shift = 0) {
  if (a.is_zero() || u.is_zero()) return BiPoly(a.field);
  std::vector<UniPoly> c(static_cast<std::size_t>(a.deg_x() + 1 + shift), UniPoly(a.field));
  for (int i = 0; i <= a.deg_x(); ++i) c[static_cast<std::size_t>(i + shift)] = a.c[static_cast<std::size_t>(i)] * u;
  return BiPoly(a.field, std::move(c));
}

/// Exchange x and y.
BiPoly swapped(const BiPoly& a) {
  const int dy = a.deg_y();
  std::vector<std::vector<Residue>> rows(static_cast<std::size_t>(dy + 1),
                                         std::vector<Residue>(static_cast<std::size_t>(a.deg_x() + 1), 0));
  for (int i = 0; i <= a.deg_x(); ++i)
    for (int j = 0; j <= a.c[static_cast<std::size_t>(i)].degree(); ++j)
      rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = a.c[static_cast<std::size_t>(i)][j];
  std::vector<UniPoly> c;
  c.reserve(rows.size());
  for (auto& r : rows) c.emplace_back(a.field, std::move(r));
  return BiPoly(a.field, std::move(c));
}

BiPoly derivative_x(const BiPoly& a) {
  if (a.deg_x() < 1) return BiPoly(a.field);
  std::vector<UniPoly> c;
  for (int i = 1; i <= a.deg_x(); ++i)
    c.push_back(a.c[static_cast<std::size_t>(i)].scaled(a.field.reduce(static_cast<std::uint64_t>(i))));
  return BiPoly(a.field, std::move(c));
}

BiPoly derivative_y(const BiPoly& a) {
  std::vector<UniPoly> c;
  for (const auto& u : a.c) c.push_back(u.derivative());
  return BiPoly(a.field, std::move(c));
}

/// Monic gcd of the x-coefficients.
UniPoly content(const BiPoly& a) {
  UniPoly g(a.field);
  for (const auto& u : a.c) {
    g = gcd(g, u);
    if (g.is_one()) break;
  }
  return g;
}

BiPoly divide_coefficients(const BiPoly& a, const UniPoly& d) {
  std::vector<UniPoly> c;
  for (const auto& u : a.c) c.push_back(u / d);
  return BiPoly(a.field, std::move(c));
}

BiPoly primitive_part(const BiPoly& a) {
  if (a.is_zero()) return a;
  return divide_coefficients(a, content(a));
}

/// Scaled so the top coefficient of the leading x-coefficient is 1.
BiPoly normalized(const BiPoly& a) {
  if (a.is_zero()) return a;
  const Residue s = a.field.inv(a.lead().lead());
  std::vector<UniPoly> c;
  for (const auto& u : a.c) c.push_back(u.scaled(s));
  return BiPoly(a.field, std::move(c));
}

/// Pseudo-remainder of a by b in x, without the final lc(b) power (callers take primitive parts).
BiPoly pseudo_remainder(BiPoly a, const BiPoly& b) {
  const int db = b.deg_x();
  const UniPoly& lb = b.lead();
  while (!a.is_zero() && a.deg_x() >= db) {
    const UniPoly la = a.lead();
    a = times(a, lb) - times(b, la, a.deg_x() - db);
  }
  return a;
}

std::optional<BiPoly> exact_divide(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "bivariate division by zero");
  BiPoly r = a;
  std::vector<UniPoly> q(static_cast<std::size_t>(std::max(a.deg_x() - b.deg_x() + 1, 0)), UniPoly(a.field));
  while (!r.is_zero()) {
    const int shift = r.deg_x() - b.deg_x();
    if (shift < 0) return std::nullopt;
    auto [t, rem] = divmod(r.lead(), b.lead());
    if (!rem.is_zero()) return std::nullopt;
    q[static_cast<std::size_t>(shift)] = t;
    r = r - times(b, t, shift);
  }
  return BiPoly(a.field, std::move(q));
}

BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  const UniPoly c = gcd(content(a), content(b));
  BiPoly x = primitive_part(a), y = primitive_part(b);
  if (x.deg_x() < y.deg_x()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.deg_x() == 0) {
      x = constant(a.field, 1);
      break;
    }
    BiPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  return normalized(times(primitive_part(x), c));
}

BiPoly shift_y(const BiPoly& a, Residue s) {
  std::vector<UniPoly> c;
  for (const auto& u : a.c) c.push_back(u.shifted(s));
  return BiPoly(a.field, std::move(c));
}

UniPoly eval_y(const BiPoly& a, Residue s) {
  std::vector<Residue> c;
  for (const auto& u : a.c) c.push_back(u.eval(s));
  return UniPoly(a.field, std::move(c));
}

/// Coefficients must vanish off multiples of p in both variables; over a prime
/// field the p-th root of each coefficient is itself.
BiPoly pth_root(const BiPoly& a) {
  const auto p = static_cast<int>(a.field.modulus());
  std::vector<UniPoly> c;
  for (int i = 0; i <= a.deg_x(); ++i) {
    const UniPoly& u = a.c[static_cast<std::size_t>(i)];
    if (i % p != 0) {
      if (!u.is_zero()) throw Error(ErrorKind::InvariantViolation, "remaining factor is not a p-th power");
      continue;
    }
    std::vector<Residue> r;
    for (int j = 0; j <= u.degree(); ++j) {
      if (j % p != 0) {
        if (u[j] != 0) throw Error(ErrorKind::InvariantViolation, "remaining factor is not a p-th power");
        continue;
      }
      r.push_back(u[j]);
    }
    c.emplace_back(a.field, std::move(r));
  }
  return BiPoly(a.field, std::move(c));
}

// --- Hensel lifting -------------------------------------------------------------------

// Power series in y truncated at y^k; s[j] is the coefficient of y^j, a polynomial in x.
using Series = std::vector<UniPoly>;

Series to_series(const BiPoly& a, int k) {
  Series s(static_cast<std::size_t>(k), UniPoly(a.field));
  const BiPoly t = swapped(a);
  for (int j = 0; j < k && j <= t.deg_x(); ++j) s[static_cast<std::size_t>(j)] = t.c[static_cast<std::size_t>(j)];
  return s;
}

BiPoly from_series(const PrimeField& f, const Series& s) { return swapped(BiPoly(f, s)); }

Series series_mul(const Series& a, const Series& b, int k) {
  const PrimeField& f = a.front().field();
  Series out(static_cast<std::size_t>(k), UniPoly(f));
  for (int i = 0; i < k && i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; i + j < k && j < static_cast<int>(b.size()); ++j)
      out[static_cast<std::size_t>(i + j)] = out[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  return out;
}

/// 1 / u mod y^k for u(0) != 0.
std::vector<Residue> series_inverse(const UniPoly& u, int k) {
  const PrimeField& f = u.field();
  const Residue u0inv = f.inv(u[0]);
  std::vector<Residue> inv(static_cast<std::size_t>(k), 0);
  inv[0] = u0inv;
  for (int j = 1; j < k; ++j) {
    Residue acc = 0;
    for (int i = 1; i <= j; ++i) acc = f.add(acc, f.mul(u[i], inv[static_cast<std::size_t>(j - i)]));
    inv[static_cast<std::size_t>(j)] = f.neg(f.mul(u0inv, acc));
  }
  return inv;
}

Series scalar_series(const PrimeField& f, const std::vector<Residue>& v) {
  Series s;
  for (Residue r : v) s.push_back(UniPoly::constant(f, r));
  return s;
}

/// Lifts F = g0 * h0 (mod y), with g0, h0 monic and coprime, to F = G * H (mod y^k).
std::pair<Series, Series> lift_pair(const Series& F, const UniPoly& g0, const UniPoly& h0, int k) {
  const ExtendedGcd eg = extended_gcd(g0, h0);
  Series g{g0}, h{h0};
  for (int j = 1; j < k; ++j) {
    UniPoly e = F[static_cast<std::size_t>(j)];
    for (int a = 0; a < j; ++a) {
      const int b = j - a;
      if (b < static_cast<int>(h.size())) e = e - g[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(b)];
    }
    // the unknown terms g[j] * h0 + g0 * h[j] must absorb e
    UniPoly dg = (e * eg.t) % g0;
    auto [dh, rem] = divmod(e - dg * h0, g0);
    if (!rem.is_zero()) throw Error(ErrorKind::InvariantViolation, "Hensel step is not exact");
    g.push_back(std::move(dg));
    h.push_back(std::move(dh));
  }
  return {g, h};
}

std::vector<Series> lift_all(const Series& F, const std::vector<UniPoly>& u, int k) {
  std::vector<Series> out;
  Series rest = F;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    UniPoly tail = UniPoly::constant(u[i].field(), 1);
    for (std::size_t j = i + 1; j < u.size(); ++j) tail = tail * u[j];
    auto [g, h] = lift_pair(rest, u[i], tail, k);
    out.push_back(std::move(g));
    rest = std::move(h);
  }
  out.push_back(std::move(rest));
  return out;
}

/// Calls visit(subset) for every size-s subset of `items`; stops when visit returns true.
template <typename Visit>
bool for_each_subset(const std::vector<std::size_t>& items, std::size_t s, Visit&& visit) {
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    std::vector<std::size_t> subset;
    for (auto i : idx) subset.push_back(items[i]);
    if (visit(subset)) return true;
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == items.size() - s + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Irreducible factors of a squarefree b whose factors all involve x with nonzero
/// x-derivative. Returns nullopt when no good specialization point is found.
std::optional<std::vector<BiPoly>> split_separable(const BiPoly& b, Stream& rng) {
  const PrimeField& f = b.field;
  if (b.deg_x() <= 1) return std::vector<BiPoly>{normalized(b)};
  // specialization y = s with full degree and squarefree image
  std::vector<Residue> points;
  const std::uint64_t q = f.modulus();
  if (q <= kSpecializationTries) {
    for (Residue s = 0; s < q; ++s) points.push_back(s);
    rng.shuffle(points);
  } else {
    for (int t = 0; t < kSpecializationTries; ++t) points.push_back(f.random(rng));
  }
  std::optional<Residue> chosen;
  for (Residue s : points) {
    if (b.lead().eval(s) == 0) continue;
    UniPoly bs = eval_y(b, s);
    if (gcd(bs, bs.derivative()).is_one()) {
      chosen = s;
      break;
    }
  }
  if (!chosen) return std::nullopt;

  const BiPoly shifted = shift_y(b, *chosen);
  const UniPoly image = eval_y(shifted, 0);
  const UniFactorization uf = factor(image, rng);
  if (uf.factors.size() == 1) return std::vector<BiPoly>{normalized(b)};
  std::vector<UniPoly> u;
  for (const auto& [g, e] : uf.factors) u.push_back(g);

  const int k = shifted.deg_y() + 1;
  const Series ell_inv = scalar_series(f, series_inverse(shifted.lead(), k));
  const Series F = series_mul(ell_inv, to_series(shifted, k), k);
  const std::vector<Series> lifted = lift_all(F, u, k);

  std::vector<BiPoly> found;
  std::vector<std::size_t> active(u.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  BiPoly current = shifted;
  std::size_t s = 1;
  while (2 * s <= active.size()) {
    const bool hit = for_each_subset(active, s, [&](const std::vector<std::size_t>& subset) {
      Series prod = to_series(BiPoly(f, {current.lead()}), k);
      for (auto i : subset) prod = series_mul(prod, lifted[i], k);
      BiPoly cand = primitive_part(from_series(f, prod));
      auto quotient = exact_divide(current, cand);
      if (!quotient) return false;
      found.push_back(cand);
      current = *quotient;
      std::vector<std::size_t> rest;
      for (auto i : active)
        if (std::find(subset.begin(), subset.end(), i) == subset.end()) rest.push_back(i);
      active = std::move(rest);
      return true;
    });
    if (!hit) ++s;
  }
  if (current.deg_x() > 0) found.push_back(primitive_part(current));

  std::vector<BiPoly> out;
  for (const auto& h : found) out.push_back(normalized(shift_y(h, f.neg(*chosen))));
  return out;
}

BiPoly from_form(const BiForm& g);
BiForm to_form(const BiPoly& h);

std::optional<std::vector<BiPoly>> split_either_way(const BiPoly& b, Stream& rng) {
  if (auto r = split_separable(b, rng)) return r;
  if (auto r = split_separable(swapped(b), rng)) {
    std::vector<BiPoly> out;
    for (const auto& h : *r) out.push_back(normalized(swapped(h)));
    return out;
  }
  return std::nullopt;
}

std::vector<BiPoly> split_squarefree(const BiPoly& b, Stream& rng) {
  if (auto r = split_either_way(b, rng)) return *r;
  // Over tiny fields every specialization may be bad; a random change of the
  // block coordinates moves the points at infinity into view.
  const PrimeField& f = b.field;
  const BiForm form = to_form(b);
  for (int attempt = 0; attempt < kCoordinateChanges; ++attempt) {
    const MatrixFq g1 = MatrixFq::random_invertible(f, 2, rng);
    const MatrixFq g2 = MatrixFq::random_invertible(f, 2, rng);
    if (auto r = split_either_way(from_form(gl2_transport(form, g1, g2)), rng)) {
      const MatrixFq h1 = inverse(g1), h2 = inverse(g2);
      std::vector<BiPoly> out;
      for (const auto& h : *r) out.push_back(normalized(from_form(gl2_transport(to_form(h), h1, h2))));
      return out;
    }
  }
  throw Error(ErrorKind::FactorizationFailed, "no separable specialization over this field");
}

using Factors = std::vector<std::pair<BiPoly, unsigned>>;

/// f has no factor free of x or free of y.
void factor_primitive(const BiPoly& f, unsigned mult, Factors& out, Stream& rng) {
  if (f.deg_x() <= 0 && f.deg_y() <= 0) return;
  const BiPoly g = gcd(f, gcd(derivative_x(f), derivative_y(f)));
  const BiPoly radical = *exact_divide(f, g);
  // factors with zero x-derivative are separable in y instead
  const BiPoly a = gcd(radical, derivative_x(radical));
  const BiPoly b = *exact_divide(radical, a);

  std::vector<BiPoly> irreducible;
  if (b.deg_x() > 0) irreducible = split_squarefree(b, rng);
  if (a.deg_x() > 0 || a.deg_y() > 0) {
    for (const auto& h : split_squarefree(swapped(a), rng)) irreducible.push_back(normalized(swapped(h)));
  }

  BiPoly rest = f;
  for (const auto& h : irreducible) {
    unsigned e = 0;
    while (auto q = exact_divide(rest, h)) {
      rest = std::move(*q);
      ++e;
    }
    if (e == 0) throw Error(ErrorKind::InvariantViolation, "radical factor does not divide");
    out.emplace_back(h, e * mult);
  }
  if (rest.deg_x() > 0 || rest.deg_y() > 0)
    factor_primitive(pth_root(rest), mult * static_cast<unsigned>(f.field.modulus()), out, rng);
}

BiPoly from_form(const BiForm& g) {
  std::vector<UniPoly> c;
  for (int i = 0; i <= g.d1(); ++i) {
    std::vector<Residue> row;
    for (int j = 0; j <= g.d2(); ++j) row.push_back(g.coeff(i, j));
    c.emplace_back(g.field(), std::move(row));
  }
  return BiPoly(g.field(), std::move(c));
}

BiForm to_form(const BiPoly& h) {
  BiForm out(h.field, std::max(h.deg_x(), 0), std::max(h.deg_y(), 0));
  for (int i = 0; i <= h.deg_x(); ++i)
    for (int j = 0; j <= h.c[static_cast<std::size_t>(i)].degree(); ++j) out.set(i, j, h.c[static_cast<std::size_t>(i)][j]);
  return out;
}

bool form_less(const BiForm& a, const BiForm& b) {
  if (a.d1() != b.d1()) return a.d1() < b.d1();
  if (a.d2() != b.d2()) return a.d2() < b.d2();
  return a.coeffs() < b.coeffs();
}

BiForm power(const BiForm& g, unsigned e) {
  BiForm out = BiForm::monomial(g.field(), 0, 0, 0, 0, 1);
  for (unsigned k = 0; k < e; ++k) out = out * g;
  return out;
}

}  // namespace

FactorList factor_biform(const BiForm& g, Stream& rng) {
  if (g.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor the zero form");
  const PrimeField& f = g.field();
  const BiPoly full = from_form(g);

  std::vector<std::pair<BiForm, unsigned>> raw;
  // Dehomogenization drops powers of X0 and Y0.
  if (g.d1() > full.deg_x()) raw.emplace_back(BiForm(f, 1, 0, {1, 0}), static_cast<unsigned>(g.d1() - full.deg_x()));
  if (g.d2() > full.deg_y()) raw.emplace_back(BiForm(f, 0, 1, {1, 0}), static_cast<unsigned>(g.d2() - full.deg_y()));

  // factors free of x (the content), then factors free of y
  const UniPoly cy = content(full);
  const BiPoly p1 = divide_coefficients(full, cy);
  const BiPoly t = swapped(p1);
  const UniPoly cx = content(t);
  const BiPoly p2 = swapped(divide_coefficients(t, cx));
  if (cy.degree() > 0)
    for (const auto& [u, e] : factor(cy, rng).factors) raw.emplace_back(to_form(BiPoly(f, {u})), e);
  if (cx.degree() > 0)
    for (const auto& [u, e] : factor(cx, rng).factors) raw.emplace_back(to_form(swapped(BiPoly(f, {u}))), e);

  Factors bivariate;
  factor_primitive(p2, 1, bivariate, rng);
  for (const auto& [h, e] : bivariate) raw.emplace_back(to_form(h), e);

  // normalize, merge and sort
  std::vector<std::pair<BiForm, unsigned>> merged;
  for (auto& [h, e] : raw) {
    BiForm n = h.normalized();
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& p) { return p.first == n; });
    if (it == merged.end())
      merged.emplace_back(std::move(n), e);
    else
      it->second += e;
  }
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return form_less(a.first, b.first); });

  FactorList list{1, std::move(merged)};
  const BiForm product = expand(list);
  const auto& gc = g.coeffs();
  const auto k = static_cast<std::size_t>(std::find_if(gc.begin(), gc.end(), [](Residue r) { return r != 0; }) - gc.begin());
  if (product.d1() != g.d1() || product.d2() != g.d2() || product.coeffs()[k] == 0)
    throw Error(ErrorKind::InvariantViolation, "factor degrees do not add up");
  list.scalar = f.div(gc[k], product.coeffs()[k]);
  if (!(product.scaled(list.scalar) == g)) throw Error(ErrorKind::InvariantViolation, "trial multiplication failed");
  return list;
}

FactorList factor_biform(const BiForm& g) {
  Stream rng(0, "qsi.factor");
  return factor_biform(g, rng);
}

BiForm expand(const FactorList& list) {
  if (list.factors.empty()) throw Error(ErrorKind::InvalidParameters, "empty factor list has no field");
  const PrimeField& f = list.factors.front().first.field();
  BiForm out = BiForm::monomial(f, 0, 0, 0, 0, list.scalar);
  for (const auto& [g, e] : list.factors) out = out * power(g, e);
  return out;
}

AmbiguousComponents::AmbiguousComponents(std::vector<BiForm> candidates)
    : Error(ErrorKind::Ambiguous, std::to_string(candidates.size()) + " candidate (2,2) components"),
      candidates_(std::move(candidates)) {}

ComponentSearch find_22_components(const FactorList& list) {
  ComponentSearch out;
  for (const auto& [g, e] : list.factors)
    if (g.d1() == 2 && g.d2() == 2) out.irreducible.push_back(g);
  if (!out.irreducible.empty()) return out;

  // sub-multisets of smaller factors whose bidegrees add up to (2,2)
  const auto& fs = list.factors;
  const PrimeField& f = fs.front().first.field();
  auto rec = [&](auto&& self, std::size_t i, int d1, int d2, const BiForm& acc) -> void {
    if (d1 == 2 && d2 == 2) {
      BiForm n = acc.normalized();
      if (std::find(out.composite.begin(), out.composite.end(), n) == out.composite.end()) out.composite.push_back(n);
      return;
    }
    if (i == fs.size()) return;
    const auto& [g, e] = fs[i];
    BiForm cur = acc;
    for (unsigned k = 0; k <= e; ++k) {
      const int a = d1 + static_cast<int>(k) * g.d1(), b = d2 + static_cast<int>(k) * g.d2();
      if (a > 2 || b > 2) break;
      self(self, i + 1, a, b, cur);
      cur = cur * g;
    }
  };
  rec(rec, 0, 0, 0, BiForm::monomial(f, 0, 0, 0, 0, 1));
  std::sort(out.composite.begin(), out.composite.end(), form_less);
  return out;
}

std::vector<BiForm> extract_22(const BiForm& g, Stream& rng) {
  const ComponentSearch found = find_22_components(factor_biform(g, rng));
  if (found.irreducible.size() == 1) return found.irreducible;
  if (found.irreducible.size() > 1) throw AmbiguousComponents(found.irreducible);
  if (!found.composite.empty()) throw AmbiguousComponents(found.composite);
  throw Error(ErrorKind::NoComponent, "no (2,2) component");
}

std::vector<BiForm> extract_22(const BiForm& g) {
  Stream rng(0, "qsi.factor");
  return extract_22(g, rng);
}

}  // namespace qsi
