#include "qsi/ff.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "qsi/error.hpp"

namespace qsi {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) noexcept {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

// Brent's variant; n odd composite.
std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q >= kMaxModulus) throw Error(ErrorKind::InvalidModulus, "modulus must be below 2^62");
  if (q < 5 || q % 2 == 0 || q % 3 == 0)
    throw Error(ErrorKind::InvalidModulus, "modulus must be a prime coprime to 6, got " + std::to_string(q));
  if (!is_prime(q)) throw Error(ErrorKind::InvalidModulus, "modulus is composite: " + std::to_string(q));
}

Residue PrimeField::from_signed(std::int64_t v) const noexcept {
  auto q = static_cast<std::int64_t>(q_);
  std::int64_t r = v % q;
  return static_cast<Residue>(r < 0 ? r + q : r);
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  // Extended Euclid on signed 128-bit to stay exact for q < 2^62.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a;
  while (new_r != 0) {
    __int128 quotient = r / new_r;
    __int128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return static_cast<Residue>(t);
}

Residue PrimeField::pow(Residue a, u128 e) const noexcept {
  Residue r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::order(Residue a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "order of zero");
  std::uint64_t ord = q_ - 1;
  for (auto [p, k] : factorize(q_ - 1)) {
    for (unsigned i = 0; i < k && ord % p == 0 && pow(a, ord / p) == 1; ++i) ord /= p;
  }
  return ord;
}

void require_same_field(const PrimeField& a, const PrimeField& b) {
  if (!(a == b))
    throw Error(ErrorKind::ModulusMismatch,
                "moduli " + std::to_string(a.modulus()) + " and " + std::to_string(b.modulus()));
}

Fq operator+(const Fq& a, const Fq& b) {
  require_same_field(a.field_, b.field_);
  return Fq(a.field_, a.field_.add(a.value_, b.value_));
}
Fq operator-(const Fq& a, const Fq& b) {
  require_same_field(a.field_, b.field_);
  return Fq(a.field_, a.field_.sub(a.value_, b.value_));
}
Fq operator*(const Fq& a, const Fq& b) {
  require_same_field(a.field_, b.field_);
  return Fq(a.field_, a.field_.mul(a.value_, b.value_));
}
Fq operator/(const Fq& a, const Fq& b) {
  require_same_field(a.field_, b.field_);
  return Fq(a.field_, a.field_.div(a.value_, b.value_));
}

std::ostream& operator<<(std::ostream& os, const Fq& x) { return os << x.value(); }

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are exact for all n < 3.3 * 10^24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::vector<std::uint64_t> prime_divisors_q4_minus_1(std::uint64_t q) {
  if (q >= (std::uint64_t{1} << 32))
    throw Error(ErrorKind::FactorizationFailed, "q^4 - 1 is only factored for q < 2^32");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t part : {q - 1, q + 1, q * q + 1}) {
    for (auto [p, k] : factorize(part)) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

u128 parse_u128(const std::string& text) {
  if (text.empty() || text.size() > 39) throw Error(ErrorKind::MalformedInput, "bad integer '" + text + "'");
  u128 v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(ErrorKind::MalformedInput, "bad integer '" + text + "'");
    u128 next = v * 10 + static_cast<unsigned>(c - '0');
    if (next / 10 != v) throw Error(ErrorKind::MalformedInput, "integer overflow '" + text + "'");
    v = next;
  }
  return v;
}

}  // namespace qsi
