#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qtoric/error.hpp"
#include "qtoric/rational.hpp"

namespace qtoric {

// ---------------------------------------------------------------------------
// Irrational symbols and their enclosures
// ---------------------------------------------------------------------------

// Produces nested enclosures of one real number. `refine(frac_bits)` returns
// an interval of width <= 2^-frac_bits when it can, or its best effort (a
// digit stream of finite length cannot shrink forever). Widths must never
// grow.
class Refiner {
   public:
    virtual ~Refiner() = default;
    virtual QInterval refine(long frac_bits) const = 0;
};

// Enclosure from a decimal digit string such as "1.41421356..." (a trailing
// "..." is ignored). Truncation at k digits gives width 10^-k.
class DecimalStringRefiner : public Refiner {
   public:
    explicit DecimalStringRefiner(const std::string& digits);
    QInterval refine(long frac_bits) const override;
    long max_fraction_digits() const { return static_cast<long>(frac_.size()); }

   private:
    bool negative_ = false;
    std::string int_part_;
    std::string frac_;
};

// Wraps a callable; used for programmatic digit streams (e.g. exact square
// roots in tests).
class FunctionRefiner : public Refiner {
   public:
    explicit FunctionRefiner(std::function<QInterval(long)> fn) : fn_(std::move(fn)) {}
    QInterval refine(long frac_bits) const override { return fn_(frac_bits); }

   private:
    std::function<QInterval(long)> fn_;
};

// Enclosure of sqrt(n) to arbitrary precision via integer square roots.
std::shared_ptr<Refiner> sqrt_refiner(unsigned n);

struct SymbolDef {
    std::string name;
    QInterval enclosure;                // initial enclosure, lo < hi
    std::shared_ptr<const Refiner> refiner;  // optional
};

// Declared-independent irrational symbols. Immutable after construction;
// refinement results are cached per symbol and replaced atomically, so
// concurrent readers are safe.
class IrrationalBasis {
   public:
    explicit IrrationalBasis(std::vector<SymbolDef> symbols, long max_bits = 4096);

    std::size_t size() const { return symbols_.size(); }
    const SymbolDef& symbol(std::size_t i) const { return symbols_[i]; }
    long max_bits() const { return max_bits_; }
    void set_max_bits(long b) { max_bits_ = b; }

    // Best enclosure currently cached, refined to width <= 2^-frac_bits if a
    // refiner allows. Never widens.
    QInterval enclosure(std::size_t i, long frac_bits) const;

    // Number of refiner invocations so far (used by tests to certify that
    // rational work stays interval-free).
    std::uint64_t refinements() const { return refine_calls_.load(); }

   private:
    struct Cache {
        long bits = 0;
        QInterval box;
    };
    std::vector<SymbolDef> symbols_;
    long max_bits_;
    mutable std::vector<std::shared_ptr<const Cache>> cache_;
    mutable std::mutex mtx_;
    mutable std::atomic<std::uint64_t> refine_calls_{0};
};

using BasisPtr = std::shared_ptr<const IrrationalBasis>;

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials over Q
// ---------------------------------------------------------------------------

// Exponent vector; may be shorter than the basis size (missing entries are
// zero). Monomial order: compare padded exponent vectors lexicographically.
using Monomial = std::vector<std::uint32_t>;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
   public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    Polynomial() = default;
    explicit Polynomial(const Rational& c);
    static Polynomial variable(std::size_t index, unsigned power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const Rational& constant_term() const;  // 0 if absent
    const Terms& terms() const { return terms_; }
    std::size_t num_vars() const;  // highest variable index used + 1

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    // Exact division; throws Inconsistent if `o` does not divide `*this`.
    Polynomial divexact(const Polynomial& o) const;

    const Rational& leading_coefficient() const;  // in the fixed monomial order
    // gcd of coefficient numerators / lcm of denominators, with the sign of
    // the leading coefficient; 0 for the zero polynomial.
    Rational signed_content() const;
    Polynomial divided_by(const Rational& c) const;

    QInterval evaluate(const std::vector<QInterval>& symbol_boxes) const;
    std::string to_string(const IrrationalBasis* basis) const;

   private:
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Scalar: element of Q(alpha_1, ..., alpha_m)
// ---------------------------------------------------------------------------

// Fraction of polynomials. Never reduced by polynomial gcd; equality is a
// cross-multiplication zero-test. Canonical form: the denominator has
// content 1 and positive leading coefficient.
class Scalar {
   public:
    Scalar() : num_(), den_(Rational(1)) {}
    Scalar(const Rational& q) : num_(q), den_(Rational(1)) {}  // NOLINT: implicit by design
    Scalar(int v) : Scalar(Rational(v)) {}                     // NOLINT
    Scalar(Polynomial num, Polynomial den, BasisPtr basis);

    static Scalar symbol(const BasisPtr& basis, std::size_t index);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const BasisPtr& basis() const { return basis_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    Rational as_rational() const;  // requires is_rational()

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws DivisionByZero
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    // Exact: a/b == c/d iff ad - bc is the zero polynomial.
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Sign via the interval oracle. Rational scalars are decided exactly
    // with no interval work. max_bits <= 0 means the basis default.
    // Throws AmbiguousSign when the budget is exhausted.
    int sign(long max_bits = 0) const;

    std::string to_string() const;

   private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
    BasisPtr basis_;  // null for pure rationals
};

// Shared-basis pick for binary operations; throws Mismatch on two distinct
// non-null bases.
BasisPtr merge_bases(const BasisPtr& a, const BasisPtr& b);

}  // namespace qtoric
