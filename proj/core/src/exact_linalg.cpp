#include "latsurj/exact_linalg.hpp"

#include "word_arith.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace latsurj {

namespace {

void require_square(const IntMatrix& m, const char* what) {
  if (!m.square()) {
    throw std::invalid_argument(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected square");
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("IntMatrix: dimensions must be positive");
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("IntMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                                std::to_string(entries_.size()));
  }
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries)
    : IntMatrix(rows, cols, [&] {
        std::vector<Integer> out;
        out.reserve(entries.size());
        for (std::int64_t v : entries) out.emplace_back(static_cast<long>(v));
        return out;
      }()) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return IntMatrix(n, n, std::move(e));
}

IntMatrix IntMatrix::zeros(std::size_t rows, std::size_t cols) {
  return IntMatrix(rows, cols, std::vector<Integer>(rows * cols));
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Integer> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    for (long v : row) e.emplace_back(v);
  }
  return IntMatrix(r, c, std::move(e));
}

const Integer& IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix::at");
  return entries_[i * cols_ + j];
}

std::span<const Integer> IntMatrix::row(std::size_t i) const {
  if (i >= rows_) throw std::out_of_range("IntMatrix::row");
  return std::span<const Integer>(entries_).subspan(i * cols_, cols_);
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
  if (j >= cols_) throw std::out_of_range("IntMatrix::column");
  std::vector<Integer> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(entries_[i * cols_ + j]);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  std::vector<Integer> e(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = entries_[i * cols_ + j];
  return IntMatrix(cols_, rows_, std::move(e));
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> columns) const {
  std::vector<Integer> e;
  e.reserve(rows_ * columns.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j : columns) {
      if (j >= cols_) throw std::out_of_range("IntMatrix::select_columns");
      e.push_back(entries_[i * cols_ + j]);
    }
  }
  return IntMatrix(rows_, columns.size(), std::move(e));
}

IntMatrix IntMatrix::append_columns(const IntMatrix& extra) const {
  if (extra.rows_ != rows_) throw std::invalid_argument("IntMatrix::append_columns: row count mismatch");
  std::size_t c = cols_ + extra.cols_;
  std::vector<Integer> e;
  e.reserve(rows_ * c);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) e.push_back(entries_[i * cols_ + j]);
    for (std::size_t j = 0; j < extra.cols_; ++j) e.push_back(extra.entries_[i * extra.cols_ + j]);
  }
  return IntMatrix(rows_, c, std::move(e));
}

IntMatrix IntMatrix::scaled(const Integer& factor) const {
  std::vector<Integer> e(entries_);
  for (auto& v : e) v *= factor;
  return IntMatrix(rows_, cols_, std::move(e));
}

IntMatrix IntMatrix::with_rows_swapped(std::size_t a, std::size_t b) const {
  if (a >= rows_ || b >= rows_) throw std::out_of_range("IntMatrix::with_rows_swapped");
  std::vector<Integer> e(entries_);
  for (std::size_t j = 0; j < cols_; ++j) std::swap(e[a * cols_ + j], e[b * cols_ + j]);
  return IntMatrix(rows_, cols_, std::move(e));
}

Integer IntMatrix::max_abs_entry() const {
  Integer best = 1;
  for (const auto& v : entries_) {
    if (mpz_cmpabs(v.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(v);
  }
  return best;
}

bool IntMatrix::is_symmetric_prefix() const {
  if (cols_ < rows_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (entries_[i * cols_ + j] != entries_[j * cols_ + i]) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: inner dimension mismatch");
  std::vector<Integer> e(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        mpz_addmul(e[i * b.cols() + j].get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  }
  return IntMatrix(a.rows(), b.cols(), std::move(e));
}

IntMatrix read_matrix(std::istream& in) {
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::invalid_argument("matrix text: missing 'rows cols' header");
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix text: dimensions must be positive");
  std::vector<Integer> e;
  e.reserve(static_cast<std::size_t>(rows * cols));
  std::string token;
  for (long long k = 0; k < rows * cols; ++k) {
    if (!(in >> token)) {
      throw std::invalid_argument("matrix text: expected " + std::to_string(rows * cols) + " entries, got " +
                                  std::to_string(k));
    }
    e.push_back(parse_integer(token));
  }
  if (in >> token) throw std::invalid_argument("matrix text: trailing data '" + token + "'");
  return IntMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(e));
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) out << ' ';
      out << m(i, j).get_str();
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Determinants

namespace {

/// Fraction-free row echelon form in place. Returns pivot columns and the
/// sign accumulated from row swaps. Entries below each pivot are zeroed.
struct BareissResult {
  std::vector<std::size_t> pivots;
  int sign = 1;
};

BareissResult bareiss_in_place(std::vector<Integer>& a, std::size_t rows, std::size_t cols) {
  BareissResult res;
  Integer prev = 1;
  Integer t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i * cols + c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[r * cols + j]);
      res.sign = -res.sign;
    }
    const Integer& piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      Integer& lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer& x = a[i * cols + j];
        // x = (piv * x - lead * a[r][j]) / prev, exact
        mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), x.get_mpz_t());
        mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), a[r * cols + j].get_mpz_t());
        mpz_divexact(x.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      lead = 0;
    }
    // Columns skipped earlier in rows below r stay zero; entries between
    // skipped columns and c were already zero.
    prev = piv;
    res.pivots.push_back(c);
    ++r;
  }
  return res;
}

std::mutex g_prime_mutex;

}  // namespace

Integer det_bareiss(const IntMatrix& m) {
  require_square(m, "det_bareiss");
  std::size_t n = m.rows();
  std::vector<Integer> a(m.entries().begin(), m.entries().end());
  BareissResult res = bareiss_in_place(a, n, n);
  if (res.pivots.size() < n) return 0;
  Integer d = a[(n - 1) * n + (n - 1)];
  return res.sign < 0 ? Integer(-d) : d;
}

RationalEchelon rational_echelon(const IntMatrix& m) {
  std::vector<Integer> a(m.entries().begin(), m.entries().end());
  BareissResult res = bareiss_in_place(a, m.rows(), m.cols());
  return RationalEchelon{res.pivots.size(), std::move(res.pivots)};
}

std::span<const std::uint64_t> crt_primes(std::size_t count) {
  static std::vector<std::uint64_t> primes;
  std::lock_guard<std::mutex> lock(g_prime_mutex);
  if (primes.size() < count) {
    std::uint64_t candidate = primes.empty() ? (std::uint64_t{1} << 62) - 1 : primes.back() - 2;
    if (candidate % 2 == 0) --candidate;
    while (primes.size() < count) {
      if (is_probable_prime(from_u64(candidate))) primes.push_back(candidate);
      candidate -= 2;
    }
  }
  return std::span<const std::uint64_t>(primes.data(), count);
}

std::uint64_t det_mod_word_prime(const IntMatrix& m, std::uint64_t p) {
  require_square(m, "det_mod_word_prime");
  using namespace detail;
  std::size_t n = m.rows();
  std::vector<std::uint64_t> a(n * n);
  for (std::size_t k = 0; k < n * n; ++k) a[k] = mpz_fdiv_ui(m.entries()[k].get_mpz_t(), p);
  std::uint64_t d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t i = c; i < n; ++i) {
      if (a[i * n + c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a[pivot * n + j], a[c * n + j]);
      d = p - d;
    }
    std::uint64_t piv = a[c * n + c];
    d = mulmod(d, piv, p);
    std::uint64_t inv = invmod(piv, p);
    for (std::size_t i = c + 1; i < n; ++i) {
      std::uint64_t f = a[i * n + c];
      if (f == 0) continue;
      f = mulmod(f, inv, p);
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i * n + j] = submod(a[i * n + j], mulmod(f, a[c * n + j], p), p);
      }
      a[i * n + c] = 0;
    }
  }
  return d % p;
}

Integer hadamard_bound(std::size_t n, const Integer& k0) {
  if (n == 0) throw std::invalid_argument("hadamard_bound: n must be positive");
  if (k0 < 1) throw std::invalid_argument("hadamard_bound: K0 must be positive");
  Integer base = k0 * static_cast<unsigned long>(n);
  Integer out;
  if (n % 2 == 0) {
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), n / 2);
    return out;
  }
  Integer full;
  mpz_pow_ui(full.get_mpz_t(), base.get_mpz_t(), n);
  Integer rem;
  mpz_sqrtrem(out.get_mpz_t(), rem.get_mpz_t(), full.get_mpz_t());
  if (rem != 0) out += 1;
  return out;
}

Integer det_mod_crt(const IntMatrix& m) {
  require_square(m, "det_mod_crt");
  Integer k0 = m.max_abs_entry();
  // Entries bounded by K0 give |det| <= (K0^2 n)^{n/2}.
  Integer bound = 2 * hadamard_bound(m.rows(), k0 * k0);
  std::size_t needed = 1;
  {
    // Each prime exceeds 2^61.
    std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    needed = bits / 61 + 1;
  }
  auto primes = crt_primes(needed);
  Integer x = 0;
  Integer modulus = 1;
  for (std::uint64_t p : primes) {
    std::uint64_t r = det_mod_word_prime(m, p);
    // Garner step: x += modulus * ((r - x) * modulus^{-1} mod p)
    std::uint64_t xm = mpz_fdiv_ui(x.get_mpz_t(), p);
    std::uint64_t mm = mpz_fdiv_ui(modulus.get_mpz_t(), p);
    std::uint64_t coeff = detail::mulmod(detail::submod(r, xm, p), detail::invmod(mm, p), p);
    x += modulus * from_u64(coeff);
    modulus *= from_u64(p);
  }
  if (2 * x > modulus) x -= modulus;
  return x;
}

Integer det(const IntMatrix& m) { return det_mod_crt(m); }

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

class SnfWorker {
 public:
  SnfWorker(const IntMatrix& m, bool track)
      : rows_(m.rows()), cols_(m.cols()), a_(m.entries().begin(), m.entries().end()), track_(track) {
    if (track_) {
      left_.assign(rows_ * rows_, Integer(0));
      right_.assign(cols_ * cols_, Integer(0));
      for (std::size_t i = 0; i < rows_; ++i) left_[i * rows_ + i] = 1;
      for (std::size_t j = 0; j < cols_; ++j) right_[j * cols_ + j] = 1;
    }
  }

  void run() {
    std::size_t limit = std::min(rows_, cols_);
    for (std::size_t t = 0; t < limit; ++t) {
      if (!reduce_block(t)) break;
      if (A(t, t) < 0) negate_row(t);
    }
  }

  std::vector<Integer> diagonal() const {
    std::size_t limit = std::min(rows_, cols_);
    std::vector<Integer> d;
    d.reserve(limit);
    for (std::size_t t = 0; t < limit; ++t) d.push_back(a_[t * cols_ + t]);
    return d;
  }

  IntMatrix diag_matrix() const { return IntMatrix(rows_, cols_, a_); }
  IntMatrix left_matrix() const { return IntMatrix(rows_, rows_, left_); }
  IntMatrix right_matrix() const { return IntMatrix(cols_, cols_, right_); }

 private:
  Integer& A(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  /// Brings the block starting at (t,t) to the form where A(t,t) divides
  /// every remaining entry and row/column t are clear. Returns false if the
  /// block is entirely zero.
  bool reduce_block(std::size_t t) {
    for (;;) {
      std::size_t pi = rows_, pj = cols_;
      for (std::size_t i = t; i < rows_; ++i) {
        for (std::size_t j = t; j < cols_; ++j) {
          const Integer& v = A(i, j);
          if (v == 0) continue;
          if (pi == rows_ || mpz_cmpabs(v.get_mpz_t(), A(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows_) return false;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);

      bool clean = true;
      Integer q;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (A(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        add_row_multiple(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (A(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        add_col_multiple(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < rows_ && divides; ++i) {
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            add_row_multiple(t, i, Integer(1));
            divides = false;
            break;
          }
        }
      }
      if (divides) return true;
    }
  }

  void swap_rows(std::size_t x, std::size_t y) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap(a_[x * cols_ + j], a_[y * cols_ + j]);
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j) std::swap(left_[x * rows_ + j], left_[y * rows_ + j]);
  }

  void swap_cols(std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap(a_[i * cols_ + x], a_[i * cols_ + y]);
    if (track_)
      for (std::size_t i = 0; i < cols_; ++i) std::swap(right_[i * cols_ + x], right_[i * cols_ + y]);
  }

  // row[target] += f * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& f) {
    for (std::size_t j = 0; j < cols_; ++j)
      mpz_addmul(a_[target * cols_ + j].get_mpz_t(), f.get_mpz_t(), a_[source * cols_ + j].get_mpz_t());
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j)
        mpz_addmul(left_[target * rows_ + j].get_mpz_t(), f.get_mpz_t(), left_[source * rows_ + j].get_mpz_t());
  }

  // col[target] += f * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& f) {
    for (std::size_t i = 0; i < rows_; ++i)
      mpz_addmul(a_[i * cols_ + target].get_mpz_t(), f.get_mpz_t(), a_[i * cols_ + source].get_mpz_t());
    if (track_)
      for (std::size_t i = 0; i < cols_; ++i)
        mpz_addmul(right_[i * cols_ + target].get_mpz_t(), f.get_mpz_t(), right_[i * cols_ + source].get_mpz_t());
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < cols_; ++j) mpz_neg(a_[t * cols_ + j].get_mpz_t(), a_[t * cols_ + j].get_mpz_t());
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j)
        mpz_neg(left_[t * rows_ + j].get_mpz_t(), left_[t * rows_ + j].get_mpz_t());
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> a_;
  bool track_;
  std::vector<Integer> left_;
  std::vector<Integer> right_;
};

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& m) {
  SnfWorker w(m, true);
  w.run();
  return SnfDecomposition{w.left_matrix(), w.diag_matrix(), w.right_matrix()};
}

std::vector<Integer> smith_diagonal(const IntMatrix& m) {
  SnfWorker w(m, false);
  w.run();
  return w.diagonal();
}

CokernelStructure cokernel(const IntMatrix& m) {
  CokernelStructure out;
  std::size_t rank = 0;
  for (const Integer& d : smith_diagonal(m)) {
    if (d == 0) continue;
    ++rank;
    if (d > 1) out.invariant_factors.push_back(d);
  }
  out.free_rank = m.rows() - rank;
  return out;
}

PPart cokernel_p_part(const CokernelStructure& cok, const Integer& p) {
  if (!is_probable_prime(p)) throw std::invalid_argument("cokernel_p_part: " + to_string(p) + " is not prime");
  PPart out;
  out.free_rank = cok.free_rank;
  for (const Integer& d : cok.invariant_factors) {
    Integer rest;
    unsigned long e = mpz_remove(rest.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
    if (e != 0) out.exponents.push_back(e);
  }
  return out;
}

PPart cokernel_p_part(const IntMatrix& m, const Integer& p) {
  if (!is_probable_prime(p)) throw std::invalid_argument("cokernel_p_part: " + to_string(p) + " is not prime");
  return cokernel_p_part(cokernel(m), p);
}

}  // namespace latsurj
