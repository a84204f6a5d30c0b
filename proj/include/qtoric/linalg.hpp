#pragma once

#include <vector>

#include "qtoric/scalar.hpp"

namespace qtoric {

using ScalarVector = std::vector<Scalar>;

// Dense row-major matrix over Q(alpha_1..alpha_m).
class ScalarMatrix {
   public:
    ScalarMatrix() : rows_(0), cols_(0) {}
    ScalarMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ScalarMatrix identity(std::size_t n);
    static ScalarMatrix from_columns(const std::vector<ScalarVector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    ScalarVector row(std::size_t r) const;
    ScalarVector col(std::size_t c) const;

    ScalarMatrix operator*(const ScalarMatrix& o) const;
    ScalarVector operator*(const ScalarVector& v) const;
    ScalarMatrix operator-(const ScalarMatrix& o) const;
    bool operator==(const ScalarMatrix& o) const;
    ScalarMatrix transposed() const;
    bool is_zero() const;

   private:
    std::size_t rows_, cols_;
    std::vector<Scalar> entries_;
};

std::size_t rank(const ScalarMatrix& m);

// Pivot columns of the row echelon form (first-nonzero pivot rule); the
// complementary coordinate subspace meets the kernel trivially.
std::vector<std::size_t> pivot_columns(const ScalarMatrix& m);

// Basis of the right null space, echelon-normalized: each vector has value 1
// at its free coordinate and zeros at the other free coordinates.
std::vector<ScalarVector> kernel_basis(const ScalarMatrix& m);

// Some preimage of b (free variables set to 0); unique when m has full
// column rank. Throws Inconsistent when b is outside the column span.
ScalarVector solve(const ScalarMatrix& m, const ScalarVector& b);

// Throws Inconsistent when singular.
ScalarMatrix inverse(const ScalarMatrix& m);

// True iff b is in the column span of m.
bool in_span(const ScalarMatrix& m, const ScalarVector& b);

// ---------------------------------------------------------------------------
// Integer matrices and lattice normal forms
// ---------------------------------------------------------------------------

class IntMatrix {
   public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Integer& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const;
    IntMatrix transposed() const;
    bool is_zero() const;

    ScalarMatrix to_scalar() const;

   private:
    std::size_t rows_, cols_;
    std::vector<Integer> entries_;
};

struct HnfResult {
    IntMatrix h;  // row Hermite normal form: pivots positive, entries above
                  // each pivot reduced into [0, pivot)
    IntMatrix u;  // unimodular, u*m == h
};
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
    IntMatrix d;  // diagonal with divisibility chain d1 | d2 | ...
    IntMatrix u;  // unimodular
    IntMatrix v;  // unimodular, u*m*v == d
};
SnfResult snf(const IntMatrix& m);

Integer determinant(const IntMatrix& m);  // square matrices

// Z-basis of {x : m*x = 0}, rows HNF-normalized.
std::vector<std::vector<Integer>> int_kernel(const IntMatrix& m);

// Z-basis of {x in Z^cols : m*x = 0} for a Scalar matrix, computed by
// splitting the equation into one rational system per symbol monomial.
std::vector<std::vector<Integer>> int_kernel_of_scalar_matrix(const ScalarMatrix& m);

// The stacked per-monomial rational system as an integer matrix (rows
// cleared of denominators). Its rational rank is what pairs with the
// integer kernel in rank-nullity statements over dense groups.
IntMatrix per_monomial_system(const ScalarMatrix& m);

// True iff b is an integer combination of the columns of m.
bool int_solvable(const IntMatrix& m, const std::vector<Integer>& b);

}  // namespace qtoric
