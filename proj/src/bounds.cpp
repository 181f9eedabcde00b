#include "sumsetlab/bounds.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

namespace sumsetlab::bounds {

namespace mp = boost::multiprecision;

bigint n_seq(int k) {
  if (k < kMinIndex) throw std::invalid_argument("undefined index");
  if (k == kMinIndex) return 1;
  return bigint(1) << (static_cast<unsigned>(k) * static_cast<unsigned>(k));
}

bigrat alpha(int k) {
  if (k < kMinIndex) throw std::invalid_argument("undefined index");
  static std::vector<bigrat> table{bigrat(1, 64)};  // index 0 == k = 9
  static std::mutex table_mutex;
  std::lock_guard<std::mutex> lock(table_mutex);
  while (static_cast<int>(table.size()) <= k - kMinIndex) {
    const int kk = kMinIndex + static_cast<int>(table.size());
    const bigrat growth = bigrat(6, 5) * table.back();
    const bigrat ceiling =
        bigrat(1, 2) - bigrat(1, bigint(1) << (kk - 1));
    table.push_back(std::min(growth, ceiling));
  }
  return table[static_cast<std::size_t>(k - kMinIndex)];
}

int k_of_n(const bigint& n) {
  if (n < 2) throw std::invalid_argument("below domain");
  int k = kMinIndex;
  while (n >= 2 * n_seq(k + 1)) ++k;
  return k;
}

bigrat f(const bigint& n) {
  return alpha(k_of_n(n)) / 2 - bigrat(1, n * n);
}

bigrat f_prime(const bigint& n) { return f(n) - bigrat(1, n * n); }

bigrat f2(const bigint& n) {
  if (n < 4) throw std::invalid_argument("below domain");
  const bigint m = mp::sqrt(n);
  const bigrat scale = bigrat(m - 1, m);
  return scale * scale * f_prime(m);
}

std::optional<bigint> first_f_prime_decrease(const bigint& lo,
                                             const bigint& hi) {
  if (lo < 2 || hi < lo) throw std::invalid_argument("below domain");
  bigrat prev = f_prime(lo);
  for (bigint n = lo + 1; n <= hi; ++n) {
    const bigrat cur = f_prime(n);
    if (cur < prev) return n;
    prev = cur;
  }
  return std::nullopt;
}

double Fixed64::to_double() const {
  return to_rational().convert_to<double>();
}

bigrat Fixed64::to_rational() const { return bigrat(raw, bigint(1) << 64); }

bigint fourth_root_floor_scaled(const bigint& n, unsigned scale) {
  // floor(sqrt(floor(sqrt(x)))) == floor(x^(1/4)); scale by 2^(4*scale).
  const bigint shifted = n << (4 * scale);
  const bigint root = mp::sqrt(shifted);
  return mp::sqrt(root);
}

bigint sqrt_floor_scaled(const bigint& n, unsigned scale) {
  const bigint shifted = n << (2 * scale);
  return mp::sqrt(shifted);
}

Fixed64 f4(const bigint& n) {
  if (n < 1) throw std::invalid_argument("below domain");
  const bigint r = fourth_root_floor_scaled(n, 64);  // >= 2^64 since n >= 1
  // n^(-1/4) <= 2^64 / r, so at scale 2^64: 15 n^(-1/4) <= 15 * 2^128 / r.
  const bigint term = ((bigint(15) << 128) + r - 1) / r;
  return Fixed64{(bigint(1) << 64) + term};
}

Fixed64 f3(const bigint& n) {
  if (n < 1) throw std::invalid_argument("below domain");
  const bigint s = sqrt_floor_scaled(n, 64);
  const bigint inv_sqrt = ((bigint(1) << 128) + s - 1) / s;
  return Fixed64{2 * (f4(n).raw + inv_sqrt)};
}

namespace {

// Largest a >= 0 with (3/2)^a <= n, via the exact test 3^a <= n 2^a.
std::uint64_t floor_log_three_halves(const bigint& n) {
  std::uint64_t a = 0;
  bigint p3 = 3, p2 = 2;
  while (p3 <= n * p2) {
    ++a;
    p3 *= 3;
    p2 *= 2;
  }
  return a;
}

// Certified interval for log2(x) at scale 2^F: returns (lo, hi) with
// lo <= log2(x) 2^F <= hi. Digit extraction by repeated squaring with
// one-sided rounding; working precision 2F keeps the gap to a few units.
std::pair<bigint, bigint> log2_fixed_interval(const bigint& x, unsigned F) {
  if (x < 1) throw std::invalid_argument("below domain");
  if (x == 1) return {0, 0};
  const unsigned W = 2 * F;
  const unsigned e = static_cast<unsigned>(mp::msb(x));
  const bigint one = bigint(1) << W;
  const bigint two = one << 1;
  const bigint num = x << W;
  bigint t_lo = num >> e;
  bigint t_hi = (num + (bigint(1) << e) - 1) >> e;
  bigint y_lo = 0, y_hi = 0;
  for (unsigned i = 0; i < F; ++i) {
    y_lo <<= 1;
    y_hi <<= 1;
    t_lo = (t_lo * t_lo) >> W;
    t_hi = (t_hi * t_hi + one - 1) >> W;
    if (t_lo >= two) {
      y_lo += 1;
      t_lo >>= 1;
    }
    if (t_hi >= two) {
      y_hi += 1;
      t_hi = (t_hi + 1) >> 1;
    }
  }
  // Lower run: its tracked mantissa never drops below 1, so the residual is
  // nonnegative and y_lo stands. Upper run: ceil rounding lets the tracked
  // mantissa creep to 2(1+eps) with eps ~ 2^(1-F), so the residual is
  // strictly below 2 output units.
  const bigint base = bigint(e) << F;
  return {base + y_lo, base + y_hi + 2};
}

}  // namespace

bool log32_le_fourth_root(const bigint& n) {
  if (n < 1) throw std::invalid_argument("below domain");
  if (n == 1) return true;
  const std::uint64_t a = floor_log_three_halves(n);
  const bigint s = mp::sqrt(mp::sqrt(n));
  if (bigint(a) + 1 <= s) return true;   // log < a+1 <= s <= root
  if (bigint(a) >= s + 1) return false;  // log >= a >= s+1 > root
  // a == floor(root): refine. No integer n makes the two sides equal
  // ((3/2)^x is never an integer for x >= 1, rational or algebraic), so the
  // interval comparison terminates.
  for (unsigned F = 96; F <= (1u << 15); F *= 2) {
    const auto [n_lo, n_hi] = log2_fixed_interval(n, F);
    const auto [t_lo, t_hi] = log2_fixed_interval(3, F);
    const bigint d_lo = t_lo - (bigint(1) << F);  // log2(3) - 1 > 0
    const bigint d_hi = t_hi - (bigint(1) << F);
    const bigint r = fourth_root_floor_scaled(n, F);
    const bigint scale = bigint(1) << F;
    if (n_hi * scale <= r * d_lo) return true;
    if (n_lo * scale > (r + 1) * d_hi) return false;
  }
  throw std::logic_error("log comparison failed to converge");
}

bool n0_check(const bigint& n) {
  if (n < 1) throw std::invalid_argument("below domain");
  // sqrt(n) >= 160 n^(1/4)  <=>  n^(1/4) >= 160  <=>  n >= 160^4, exactly.
  static const bigint kFirst = bigint(160) * 160 * 160 * 160;
  if (n < kFirst) return false;
  return log32_le_fourth_root(n);
}

KneserResult kneser_check(const GroupSpec& g,
                          const std::vector<ElementSet>& sets) {
  if (sets.empty()) throw std::invalid_argument("Kneser hypothesis violated");
  for (const ElementSet& s : sets)
    if (s.empty() || s.universe() != g.order)
      throw std::invalid_argument("Kneser hypothesis violated");
  ElementSet total = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i)
    total = sumset(g, total, sets[i]);
  KneserResult result;
  result.stab = stabilizer(g, total);
  result.lhs = total.count();
  std::int64_t sum = 0;
  for (const ElementSet& s : sets) sum += static_cast<std::int64_t>(s.count());
  result.rhs = sum - static_cast<std::int64_t>(sets.size() - 1) *
                         static_cast<std::int64_t>(result.stab.order());
  result.holds = static_cast<std::int64_t>(result.lhs) >= result.rhs;
  return result;
}

const char* bound_name(BoundKind k) {
  switch (k) {
    case BoundKind::quad64: return "quad64";
    case BoundKind::quarter: return "quarter";
    case BoundKind::alpha_antisym: return "alpha";
  }
  return "?";
}

std::optional<BoundKind> bound_from_name(std::string_view name) {
  if (name == "quad64") return BoundKind::quad64;
  if (name == "quarter") return BoundKind::quarter;
  if (name == "alpha") return BoundKind::alpha_antisym;
  return std::nullopt;
}

BoundCheck theorem_bound_check(const GroupSpec& g, const ElementSet& a,
                               BoundKind which) {
  BoundCheck out;
  const ElementSet span = sigma(g, a);
  const bigint card = a.count();
  const bigint span_size = span.count();
  out.ratio = card == 0 ? bigrat(0) : bigrat(span_size, card * card);
  const bool zero_free = !a.contains(0);
  const bool stab_trivial = stabilizer(g, span).is_trivial();
  switch (which) {
    case BoundKind::quad64:
      out.applicable = zero_free && stab_trivial;
      out.satisfied = 64 * span_size >= card * card;
      break;
    case BoundKind::quarter:
      out.applicable = zero_free && stab_trivial && card >= 2;
      out.satisfied =
          card < 2 || bigrat(span_size) >= f(card) * bigrat(card * card);
      break;
    case BoundKind::alpha_antisym: {
      bool antisym = true;
      a.for_each([&](std::uint64_t i) {
        if (antisym && a.contains(neg_index(g, i))) antisym = false;
      });
      out.applicable =
          zero_free && stab_trivial && antisym && card >= n_seq(kMinIndex);
      int k = kMinIndex;
      while (card >= n_seq(k + 1)) ++k;
      out.satisfied =
          card == 0 || bigrat(span_size) >= alpha(k) * bigrat(card * card);
      break;
    }
  }
  return out;
}

}  // namespace sumsetlab::bounds
