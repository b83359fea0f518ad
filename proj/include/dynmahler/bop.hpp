#pragma once

#include <utility>
#include <vector>

#include "dynmahler/bivar.hpp"
#include "dynmahler/poly.hpp"

namespace dynmahler {

// Instantiated for BigInt, Rational and Complex unless noted.

/// Index of the lowest nonzero coefficient. Complex coefficients below 1e-12
/// of the largest one count as zero. Throws InputError on the zero polynomial.
template <typename Scalar>
int ord_at_zero(const Poly<Scalar>& p);

enum class OrderFlag { bounded_within_n, exceeded_threshold };

template <typename Scalar>
struct OrderSequence {
  Scalar alpha;
  std::vector<std::pair<int, int>> orders;  // (n, ord_α P(x, f^n(x)))
  std::vector<int> skipped;                 // n with P(x, f^n(x)) ≡ 0
  OrderFlag flag = OrderFlag::bounded_within_n;
};

inline constexpr int kDefaultOrderThreshold = 64;

/// ord_α P(x, f^n(x)) for n = 0..N, computed at 0 after translating f and P
/// so that α moves to the origin. Rational and Complex only.
template <typename Scalar>
OrderSequence<Scalar> order_sequence(const Poly<Scalar>& f, const BivarPoly<Scalar>& p,
                                     const Scalar& alpha, int max_n,
                                     int threshold = kDefaultOrderThreshold,
                                     std::int64_t max_degree = std::int64_t(1) << 14);

enum class MultiplierClass { multiplier_power, parabolic };

struct DistinguishingIndex {
  int index = 1;
  MultiplierClass kind = MultiplierClass::multiplier_power;
};

class SuperattractingError : public InputError {
 public:
  SuperattractingError() : InputError("f'(0) = 0: superattracting fixed point") {}
};

class RootOfUnityMultiplierError : public InputError {
 public:
  explicit RootOfUnityMultiplierError(int order)
      : InputError("f'(0) is a root of unity of order " + std::to_string(order) +
                   "; pass f^" + std::to_string(order) + " instead"),
        order_(order) {}
  int order() const { return order_; }

 private:
  int order_;
};

inline constexpr int kMaxRootOfUnityOrder = 360;

/// An index i for which [z^i] f^n(z), n ≥ 1, takes each value at most once.
/// Requires f(0) = 0. Rational and Complex only.
template <typename Scalar>
DistinguishingIndex distinguishing_index(const Poly<Scalar>& f);

/// [z^i] f^n(z) for n = 1..N, by composition truncated mod z^{i+1}.
/// Requires f(0) = 0. Rational and Complex only.
template <typename Scalar>
std::vector<Scalar> coefficient_track(const Poly<Scalar>& f, int i, int max_n);

/// p∘q mod z^{len}.
template <typename Scalar>
Poly<Scalar> truncated_compose(const Poly<Scalar>& p, const Poly<Scalar>& q, int len);

}  // namespace dynmahler
