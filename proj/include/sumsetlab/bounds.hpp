#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumsetlab/element_set.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/setops.hpp"
#include "sumsetlab/subgroup.hpp"

namespace sumsetlab::bounds {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

inline constexpr int kMinIndex = 9;

// n_9 = 1 and n_k = 2^(k^2) for k >= 10, exact.
bigint n_seq(int k);

// alpha_9 = 1/64 and alpha_k = min{ (6/5) alpha_{k-1}, 1/2 - 1/2^(k-1) },
// in exact rational arithmetic. Throws "undefined index" for k < 9.
bigrat alpha(int k);

// Largest k with n >= 2 n_k; requires n >= 2 ("below domain" otherwise).
int k_of_n(const bigint& n);

// f(n)  = alpha_{k(n)} / 2 - 1/n^2              (n >= 2)
// f'(n) = f(n) - 1/n^2                          (n >= 2)
// f2(n) = (1 - 1/m)^2 f'(m), m = floor(sqrt(n)) (n >= 4)
bigrat f(const bigint& n);
bigrat f_prime(const bigint& n);
bigrat f2(const bigint& n);

// Checks f' is nondecreasing across consecutive integers of [lo, hi];
// returns the first decreasing step if one exists. Desk-scale ranges only.
std::optional<bigint> first_f_prime_decrease(const bigint& lo,
                                             const bigint& hi);

/**
 * Binary fixed point with 64 fractional bits, used for the irrational
 * f3/f4 thresholds. Values constructed here round UP from the true value,
 * with absolute error below 2^-32 (in practice below 2^-57), so threshold
 * comparisons never claim a bound early.
 */
struct Fixed64 {
  bigint raw;  // value = raw / 2^64

  double to_double() const;
  bigrat to_rational() const;
  bool operator==(const Fixed64&) const = default;
};

// floor(n^(1/4) * 2^scale) and floor(sqrt(n) * 2^scale), exact.
bigint fourth_root_floor_scaled(const bigint& n, unsigned scale);
bigint sqrt_floor_scaled(const bigint& n, unsigned scale);

// f4(n) = 1 + 15 n^(-1/4); f3(n) = 2 (f4(n) + n^(-1/2)). n >= 1.
Fixed64 f4(const bigint& n);
Fixed64 f3(const bigint& n);

// Certified decision of log_{3/2}(n) <= n^(1/4) (n >= 1). Exact integer
// bracketing first, then interval refinement in fixed point; the two sides
// are never equal for integer n, so the refinement terminates.
bool log32_le_fourth_root(const bigint& n);

// True iff sqrt(n) >= 160 n^(1/4) (equivalently n >= 160^4, exact) and
// log_{3/2}(n) <= n^(1/4).
bool n0_check(const bigint& n);

// --- the Kneser oracle ------------------------------------------------------

struct KneserResult {
  bool holds = false;
  std::uint64_t lhs = 0;   // |A_1 + ... + A_r|
  std::int64_t rhs = 0;    // sum |A_i| - (r-1) |H|
  Subgroup stab;           // stabilizer H of the sumset
};

// |sum A_i| >= sum |A_i| - (r-1)|H| with H = stab(sum A_i). Requires at
// least one set, all nonempty ("Kneser hypothesis violated"). holds == false
// signals an implementation bug, never valid output.
KneserResult kneser_check(const GroupSpec& g,
                          const std::vector<ElementSet>& sets);

// --- quadratic span bounds --------------------------------------------------

enum class BoundKind {
  quad64,         // |sigma(A)| >= |A|^2 / 64
  quarter,        // |sigma(A)| >= f(|A|) |A|^2
  alpha_antisym,  // |sigma(A)| >= alpha_k |A|^2 under A n (-A) = {} hypotheses
};

const char* bound_name(BoundKind k);
std::optional<BoundKind> bound_from_name(std::string_view name);

struct BoundCheck {
  bool applicable = false;
  bool satisfied = false;
  bigrat ratio;  // |sigma(A)| / |A|^2; zero when |A| = 0
};

BoundCheck theorem_bound_check(const GroupSpec& g, const ElementSet& a,
                               BoundKind which);

}  // namespace sumsetlab::bounds
