#include "latsurj/modp_linalg.hpp"

#include "word_arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace latsurj {

namespace {

struct WordField {
  using Elem = std::uint64_t;
  std::uint64_t p;

  Elem reduce(const Integer& v) const { return mpz_fdiv_ui(v.get_mpz_t(), p); }
  Elem reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<Elem>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem add(Elem a, Elem b) const { return detail::addmod(a, b, p); }
  Elem sub(Elem a, Elem b) const { return detail::submod(a, b, p); }
  Elem mul(Elem a, Elem b) const { return detail::mulmod(a, b, p); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const { return detail::invmod(a, p); }
  Integer lift(Elem a) const { return from_u64(a); }
};

struct BigField {
  using Elem = Integer;
  Integer p;

  Elem reduce(const Integer& v) const {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Elem reduce(std::int64_t v) const { return reduce(Integer(static_cast<long>(v))); }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem add(const Elem& a, const Elem& b) const {
    Integer s = a + b;
    if (s >= p) s -= p;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Integer s = a - b;
    if (s < 0) s += p;
    return s;
  }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(Integer(a * b)); }
  Elem neg(const Elem& a) const { return a == 0 ? Integer(0) : Integer(p - a); }
  Elem inv(const Elem& a) const {
    Integer r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Integer lift(const Elem& a) const { return a; }
};

/// Row echelon form in place; returns pivot columns. With `reduced`, pivots
/// are scaled to 1 and cleared above as well.
template <class Field>
std::vector<std::size_t> echelon(const Field& f, std::vector<typename Field::Elem>& a, std::size_t rows,
                                 std::size_t cols, bool reduced) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!f.is_zero(a[i * cols + c])) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[pivot * cols + j], a[r * cols + j]);
    auto inv = f.inv(a[r * cols + c]);
    if (reduced) {
      for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = f.mul(a[r * cols + j], inv);
      inv = f.one();
    }
    for (std::size_t i = reduced ? 0 : r + 1; i < rows; ++i) {
      if (i == r || f.is_zero(a[i * cols + c])) continue;
      auto factor = f.mul(a[i * cols + c], inv);
      for (std::size_t j = c; j < cols; ++j) {
        if (!f.is_zero(a[r * cols + j])) a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Nonzero x with A x = 0 where A is rows x cols, or nullopt.
template <class Field>
std::optional<std::vector<typename Field::Elem>> right_null(const Field& f, std::vector<typename Field::Elem> a,
                                                            std::size_t rows, std::size_t cols) {
  auto pivots = echelon(f, a, rows, cols, true);
  if (pivots.size() == cols) return std::nullopt;
  std::size_t free_col = cols;
  for (std::size_t c = 0, k = 0; c < cols; ++c) {
    if (k < pivots.size() && pivots[k] == c) {
      ++k;
      continue;
    }
    free_col = c;
    break;
  }
  std::vector<typename Field::Elem> x(cols, f.zero());
  x[free_col] = f.one();
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(a[r * cols + free_col]);
  return x;
}

std::size_t rank_gf2(std::span<const std::uint64_t> entries, std::size_t rows, std::size_t cols) {
  std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (entries[i * cols + j] & 1U) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t w = c / 64;
    std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (bits[i * words + w] & mask) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t k = w; k < words; ++k) std::swap(bits[pivot * words + k], bits[r * words + k]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (bits[i * words + w] & mask)
        for (std::size_t k = w; k < words; ++k) bits[i * words + k] ^= bits[r * words + k];
    }
    ++r;
  }
  return r;
}

void require_prime(const Integer& p, const char* what) {
  if (!is_probable_prime(p)) throw std::invalid_argument(std::string(what) + ": modulus " + to_string(p) + " is not prime");
}

bool word_sized(const Integer& p) { return fits_u64(p) && to_u64(p) < kWordModulusLimit; }

}  // namespace

// ---------------------------------------------------------------------------

ModMatrix::ModMatrix(std::uint64_t p, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> entries)
    : modulus_(from_u64(p)), rows_(rows), cols_(cols) {
  if (p < 2 || p >= kWordModulusLimit) throw std::invalid_argument("ModMatrix: word modulus out of range");
  if (entries.size() != rows * cols) throw std::invalid_argument("ModMatrix: entry count mismatch");
  for (auto v : entries)
    if (v >= p) throw std::invalid_argument("ModMatrix: entry not reduced");
  entries_ = std::move(entries);
}

ModMatrix::ModMatrix(const Integer& p, std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : modulus_(p), rows_(rows), cols_(cols) {
  if (p < 2) throw std::invalid_argument("ModMatrix: modulus must be >= 2");
  if (entries.size() != rows * cols) throw std::invalid_argument("ModMatrix: entry count mismatch");
  if (word_sized(p)) {
    WordField f{to_u64(p)};
    std::vector<std::uint64_t> w(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) w[k] = f.reduce(entries[k]);
    entries_ = std::move(w);
  } else {
    BigField f{p};
    for (auto& v : entries) v = f.reduce(v);
    entries_ = std::move(entries);
  }
}

Integer ModMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("ModMatrix::entry");
  if (word_backend()) return from_u64(std::get<0>(entries_)[i * cols_ + j]);
  return std::get<1>(entries_)[i * cols_ + j];
}

std::span<const std::uint64_t> ModMatrix::words() const {
  if (!word_backend()) throw std::logic_error("ModMatrix::words on arbitrary-precision backend");
  return std::get<0>(entries_);
}

std::span<const Integer> ModMatrix::bigs() const {
  if (word_backend()) throw std::logic_error("ModMatrix::bigs on word backend");
  return std::get<1>(entries_);
}

ModMatrix ModMatrix::transpose() const {
  auto tr = [&](const auto& src) {
    std::decay_t<decltype(src)> out(src.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = src[i * cols_ + j];
    return out;
  };
  if (word_backend()) return ModMatrix(to_u64(modulus_), cols_, rows_, tr(std::get<0>(entries_)));
  return ModMatrix(modulus_, cols_, rows_, tr(std::get<1>(entries_)));
}

ModMatrix ModMatrix::select_rows(std::span<const std::size_t> rows) const {
  auto pick = [&](const auto& src) {
    std::decay_t<decltype(src)> out;
    out.reserve(rows.size() * cols_);
    for (std::size_t i : rows) {
      if (i >= rows_) throw std::out_of_range("ModMatrix::select_rows");
      for (std::size_t j = 0; j < cols_; ++j) out.push_back(src[i * cols_ + j]);
    }
    return out;
  };
  if (word_backend()) return ModMatrix(to_u64(modulus_), rows.size(), cols_, pick(std::get<0>(entries_)));
  return ModMatrix(modulus_, rows.size(), cols_, pick(std::get<1>(entries_)));
}

ModMatrix reduce_mod(const IntMatrix& m, const Integer& p) {
  require_prime(p, "reduce_mod");
  return ModMatrix(p, m.rows(), m.cols(), std::vector<Integer>(m.entries().begin(), m.entries().end()));
}

ModMatrix reduce_mod(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values, std::uint64_t p) {
  require_prime(from_u64(p), "reduce_mod");
  if (values.size() != rows * cols) throw std::invalid_argument("reduce_mod: entry count mismatch");
  WordField f{p};
  std::vector<std::uint64_t> w(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) w[k] = f.reduce(values[k]);
  return ModMatrix(p, rows, cols, std::move(w));
}

std::size_t rank_mod_p(const ModMatrix& m) {
  if (m.word_backend()) {
    std::uint64_t p = to_u64(m.modulus());
    if (p == 2) return rank_gf2(m.words(), m.rows(), m.cols());
    std::vector<std::uint64_t> a(m.words().begin(), m.words().end());
    return echelon(WordField{p}, a, m.rows(), m.cols(), false).size();
  }
  std::vector<Integer> a(m.bigs().begin(), m.bigs().end());
  return echelon(BigField{m.modulus()}, a, m.rows(), m.cols(), false).size();
}

std::vector<std::size_t> pivot_columns_mod_p(const ModMatrix& m) {
  if (m.word_backend()) {
    std::vector<std::uint64_t> a(m.words().begin(), m.words().end());
    return echelon(WordField{to_u64(m.modulus())}, a, m.rows(), m.cols(), false);
  }
  std::vector<Integer> a(m.bigs().begin(), m.bigs().end());
  return echelon(BigField{m.modulus()}, a, m.rows(), m.cols(), false);
}

std::optional<std::vector<Integer>> left_null_vector(const ModMatrix& m) {
  ModMatrix t = m.transpose();
  auto lift_all = [](const auto& f, const auto& x) {
    std::vector<Integer> out;
    out.reserve(x.size());
    for (const auto& v : x) out.push_back(f.lift(v));
    return out;
  };
  if (t.word_backend()) {
    WordField f{to_u64(t.modulus())};
    auto x = right_null(f, std::vector<std::uint64_t>(t.words().begin(), t.words().end()), t.rows(), t.cols());
    if (!x) return std::nullopt;
    return lift_all(f, *x);
  }
  BigField f{t.modulus()};
  auto x = right_null(f, std::vector<Integer>(t.bigs().begin(), t.bigs().end()), t.rows(), t.cols());
  if (!x) return std::nullopt;
  return lift_all(f, *x);
}

// ---------------------------------------------------------------------------
// ColumnSpace

ColumnSpace::ColumnSpace(const Integer& p, std::size_t ambient) : modulus_(p), ambient_(ambient) {
  require_prime(p, "ColumnSpace");
  if (ambient == 0) throw std::invalid_argument("ColumnSpace: ambient dimension must be positive");
  if (word_sized(p))
    basis_ = WordBasis{};
  else
    basis_ = BigBasis{};
}

ColumnSpace ColumnSpace::of_columns(const ModMatrix& m) {
  ColumnSpace s(m.modulus(), m.rows());
  if (s.basis_.index() == 0) {
    auto w = m.words();
    for (std::size_t j = 0; j < m.cols() && s.dimension() < s.ambient(); ++j) {
      std::vector<std::uint64_t> v(m.rows());
      for (std::size_t i = 0; i < m.rows(); ++i) v[i] = w[i * m.cols() + j];
      s.absorb_reduced(std::move(v));
    }
  } else {
    auto b = m.bigs();
    for (std::size_t j = 0; j < m.cols() && s.dimension() < s.ambient(); ++j) {
      std::vector<Integer> v(m.rows());
      for (std::size_t i = 0; i < m.rows(); ++i) v[i] = b[i * m.cols() + j];
      s.absorb_reduced(std::move(v));
    }
  }
  return s;
}

std::vector<std::vector<Integer>> ColumnSpace::basis() const {
  std::vector<std::vector<Integer>> out;
  std::visit(
      [&](const auto& basis) {
        for (const auto& b : basis) {
          std::vector<Integer> v;
          v.reserve(b.size());
          for (const auto& x : b) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::uint64_t>)
              v.push_back(from_u64(x));
            else
              v.push_back(x);
          }
          out.push_back(std::move(v));
        }
      },
      basis_);
  return out;
}

template <class Vec>
bool ColumnSpace::absorb_reduced(Vec v) {
  using Elem = typename Vec::value_type;
  auto run = [&](const auto& f, auto& basis) {
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Elem c = v[pivots_[k]];
      if (f.is_zero(c)) continue;
      const auto& b = basis[k];
      for (std::size_t i = 0; i < ambient_; ++i)
        if (!f.is_zero(b[i])) v[i] = f.sub(v[i], f.mul(c, b[i]));
    }
    std::size_t lead = ambient_;
    for (std::size_t i = 0; i < ambient_; ++i) {
      if (!f.is_zero(v[i])) {
        lead = i;
        break;
      }
    }
    if (lead == ambient_) return false;
    const Elem inv = f.inv(v[lead]);
    for (auto& x : v) x = f.mul(x, inv);
    for (auto& b : basis) {
      const Elem c = b[lead];
      if (f.is_zero(c)) continue;
      for (std::size_t i = 0; i < ambient_; ++i)
        if (!f.is_zero(v[i])) b[i] = f.sub(b[i], f.mul(c, v[i]));
    }
    basis.push_back(std::move(v));
    pivots_.push_back(lead);
    return true;
  };
  if constexpr (std::is_same_v<Elem, std::uint64_t>) {
    return run(WordField{to_u64(modulus_)}, std::get<WordBasis>(basis_));
  } else {
    return run(BigField{modulus_}, std::get<BigBasis>(basis_));
  }
}

namespace {

template <class T>
void check_length(std::span<const T> x, std::size_t n) {
  if (x.size() != n) {
    throw std::invalid_argument("ColumnSpace: vector has length " + std::to_string(x.size()) + ", ambient is " +
                                std::to_string(n));
  }
}

}  // namespace

bool ColumnSpace::absorb(std::span<const std::int64_t> x) {
  check_length(x, ambient_);
  if (basis_.index() == 0) {
    WordField f{to_u64(modulus_)};
    std::vector<std::uint64_t> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = f.reduce(x[i]);
    return absorb_reduced(std::move(v));
  }
  BigField f{modulus_};
  std::vector<Integer> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = f.reduce(x[i]);
  return absorb_reduced(std::move(v));
}

ColumnSpace ColumnSpace::extend(std::span<const std::int64_t> x) const {
  ColumnSpace copy(*this);
  copy.absorb(x);
  return copy;
}

ColumnSpace ColumnSpace::extend(std::span<const Integer> x) const {
  check_length(x, ambient_);
  ColumnSpace copy(*this);
  if (basis_.index() == 0) {
    WordField f{to_u64(modulus_)};
    std::vector<std::uint64_t> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = f.reduce(x[i]);
    copy.absorb_reduced(std::move(v));
  } else {
    BigField f{modulus_};
    std::vector<Integer> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = f.reduce(x[i]);
    copy.absorb_reduced(std::move(v));
  }
  return copy;
}

bool ColumnSpace::contains(std::span<const Integer> x) const {
  ColumnSpace copy(*this);
  std::size_t before = copy.dimension();
  copy = copy.extend(x);
  return copy.dimension() == before;
}

bool ColumnSpace::contains(std::span<const std::int64_t> x) const {
  ColumnSpace copy(*this);
  return !copy.absorb(x);
}

// ---------------------------------------------------------------------------

std::optional<std::vector<Integer>> has_sparse_annihilator(const ModMatrix& m, double delta) {
  const std::size_t n = m.rows();
  if (n > kSparseAnnihilatorMaxRows) {
    throw std::invalid_argument("has_sparse_annihilator: " + std::to_string(n) + " rows exceeds enumeration budget of " +
                                std::to_string(kSparseAnnihilatorMaxRows));
  }
  if (!(delta >= 0.0)) throw std::invalid_argument("has_sparse_annihilator: delta must be nonnegative");
  const auto max_support = static_cast<std::size_t>(std::floor(delta * static_cast<double>(n) + 1e-9));
  for (std::size_t t = 1; t <= std::min(max_support, n); ++t) {
    std::vector<std::size_t> sigma(t);
    for (std::size_t k = 0; k < t; ++k) sigma[k] = k;
    for (;;) {
      ModMatrix sub = m.select_rows(sigma);
      if (rank_mod_p(sub) < t) {
        auto local = left_null_vector(sub);
        std::vector<Integer> w(n, Integer(0));
        for (std::size_t k = 0; k < t; ++k) w[sigma[k]] = (*local)[k];
        return w;
      }
      // next combination in lexicographic order
      std::size_t k = t;
      while (k > 0 && sigma[k - 1] == n - t + (k - 1)) --k;
      if (k == 0) break;
      ++sigma[k - 1];
      for (std::size_t i = k; i < t; ++i) sigma[i] = sigma[i - 1] + 1;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> SmallSubspace::element_codes() const {
  const std::size_t d = basis.size();
  std::vector<std::uint32_t> codes;
  std::vector<std::uint32_t> coeff(d, 0);
  std::vector<std::uint32_t> x(ambient);
  for (;;) {
    std::fill(x.begin(), x.end(), 0);
    for (std::size_t k = 0; k < d; ++k) {
      if (coeff[k] == 0) continue;
      for (std::size_t i = 0; i < ambient; ++i) x[i] = (x[i] + coeff[k] * basis[k][i]) % p;
    }
    std::uint32_t code = 0;
    for (std::size_t i = ambient; i-- > 0;) code = code * p + x[i];
    codes.push_back(code);
    std::size_t k = 0;
    while (k < d && ++coeff[k] == p) coeff[k++] = 0;
    if (k == d) break;
  }
  return codes;
}

std::vector<SmallSubspace> enumerate_subspaces(std::uint32_t p, std::size_t n) {
  if (!is_probable_prime(Integer(static_cast<unsigned long>(p)))) throw std::invalid_argument("enumerate_subspaces: p not prime");
  if (n == 0 || n > 16) throw std::invalid_argument("enumerate_subspaces: n must be in [1, 16]");
  std::vector<SmallSubspace> out;
  for (std::size_t d = 0; d <= n; ++d) {
    std::vector<std::size_t> piv(d);
    for (std::size_t k = 0; k < d; ++k) piv[k] = k;
    for (;;) {
      // free slots: row r, column j > piv[r] with j not a pivot column
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t j = piv[r] + 1; j < n; ++j)
          if (!std::binary_search(piv.begin(), piv.end(), j)) slots.emplace_back(r, j);
      std::vector<std::uint32_t> val(slots.size(), 0);
      for (;;) {
        SmallSubspace s{p, n, std::vector<std::vector<std::uint32_t>>(d, std::vector<std::uint32_t>(n, 0))};
        for (std::size_t r = 0; r < d; ++r) s.basis[r][piv[r]] = 1;
        for (std::size_t k = 0; k < slots.size(); ++k) s.basis[slots[k].first][slots[k].second] = val[k];
        out.push_back(std::move(s));
        std::size_t k = 0;
        while (k < val.size() && ++val[k] == p) val[k++] = 0;
        if (k == val.size()) break;
      }
      if (d == 0) break;
      std::size_t k = d;
      while (k > 0 && piv[k - 1] == n - d + (k - 1)) --k;
      if (k == 0) break;
      ++piv[k - 1];
      for (std::size_t i = k; i < d; ++i) piv[i] = piv[i - 1] + 1;
    }
  }
  return out;
}

}  // namespace latsurj
