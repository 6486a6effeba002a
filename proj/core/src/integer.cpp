#include "latsurj/integer.hpp"

#include "word_arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace latsurj {

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) { return value.get_str(10); }

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) throw std::invalid_argument("bad decimal literal: " + s);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Integer w = parse_integer(whole);
    Integer f = parse_integer(frac);
    if (f < 0) throw std::invalid_argument("bad decimal literal: " + s);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer num = abs(w) * scale + f;
    if (negative || w < 0) num = -num;
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(s));
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

bool fits_u64(const Integer& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw std::out_of_range("integer does not fit in 64 bits");
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return count == 0 ? 0 : out;
}

Integer from_u64(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

double to_double(const Rational& r) { return r.get_d(); }

namespace {

bool prime_u64(std::uint64_t n) { return is_probable_prime(from_u64(n)); }

std::uint64_t rho(std::uint64_t n, std::uint64_t c) {
  auto f = [&](std::uint64_t x) { return detail::addmod(detail::mulmod(x, x, n), c, n); };
  std::uint64_t x = 2, y = 2, d = 1;
  while (d == 1) {
    x = f(x);
    y = f(f(y));
    d = std::gcd(x > y ? x - y : y - x, n);
  }
  return d;
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (prime_u64(n)) {
    out.push_back(n);
    return;
  }
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t d = rho(n, c);
    if (d != n) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("prime_factors_u64: zero has no factorization");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  // below 10^6 with no factor under 1000 means prime
  if (n > 1 && n < 1000 * 1000)
    out.push_back(n);
  else
    split(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace latsurj
