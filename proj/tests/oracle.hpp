#pragma once

// Brute-force reference computations for the test suite. Everything in this
// file goes through subset enumeration and elementary solves only; none of it
// shares code with the double description engine or the normal-form routines
// it checks.

#include <random>
#include <set>
#include <vector>

#include "qtoric/cone.hpp"
#include "qtoric/linalg.hpp"
#include "qtoric/scalar.hpp"

namespace qtoric::oracle {

struct BruteCone {
    std::vector<ScalarVector> facet_normals;            // pointed part only
    std::vector<std::pair<std::set<std::size_t>, std::size_t>> face_sets;  // (gens, dim)
    std::vector<std::size_t> extreme_reps;              // least index per extreme ray
};

// Requires a strongly convex input (checked by enumeration: no generator's
// negative lies in the cone of the others).
BruteCone enumerate_cone(const std::vector<ScalarVector>& gens, std::size_t dim);

// Membership x in cone(gens) decided by enumerating facet candidates.
bool brute_contains(const std::vector<ScalarVector>& gens, std::size_t dim,
                    const ScalarVector& x);

// Unique 2x2 row HNF found by enumerating unimodular U with entries in
// [-bound, bound].
IntMatrix brute_hnf_2x2(const IntMatrix& m, long bound = 6);

// Invariant factors via gcds of k x k minors.
std::vector<Integer> minor_gcd_invariants(const IntMatrix& m);

// All integer kernel vectors with entries in [-bound, bound].
std::vector<std::vector<Integer>> enumerate_int_kernel(const IntMatrix& m, long bound);

// Shared irrational bases for tests.
BasisPtr sqrt_basis_abc();   // a=sqrt2, b=sqrt3, c=sqrt5, exact refiners
BasisPtr alpha_sqrt2();      // single symbol alpha=sqrt2

// ex_max data: columns (e1, e2, e3, a*e1 - b*e2 + c*e3).
ScalarMatrix exmax_columns(const BasisPtr& basis);
ScalarMatrix exmax_columns_rational();  // a=b=c=1

std::vector<ScalarVector> matrix_columns(const ScalarMatrix& m);

// Random rational scalar with small numerator/denominator.
Scalar random_rational(std::mt19937_64& rng, int bound = 8);
// Random element of Q(a,b) with a few small terms; never zero denominator.
Scalar random_irrational(std::mt19937_64& rng, const BasisPtr& basis);
// Degree <= 1 numerator and denominator; keeps elimination products small.
Scalar random_irrational_linear(std::mt19937_64& rng, const BasisPtr& basis);

}  // namespace qtoric::oracle
