#include "qtoric/calibration.hpp"

#include "qtoric/error.hpp"

namespace qtoric {

bool is_standard(const CalibrationRec& c) {
    if (c.v.rows() != c.d || c.v.cols() != c.n) return false;
    if (c.n < c.d) return false;
    for (std::size_t j = 0; j < c.d; ++j)
        for (std::size_t i = 0; i < c.d; ++i)
            if (!(c.v.at(i, j) == Scalar(i == j ? 1 : 0))) return false;
    if (c.virtual_set.empty()) return true;
    std::size_t k = c.virtual_set.size();
    for (std::size_t i = c.n - k; i < c.n; ++i)
        if (!c.virtual_set.count(i)) return false;
    return true;
}

bool validate_virtual_span(const CalibrationRec& c) {
    std::vector<ScalarVector> cols;
    for (std::size_t j = 0; j < c.n; ++j)
        if (!c.is_virtual(j)) cols.push_back(c.column(j));
    if (cols.empty()) return c.d == 0;
    return rank(ScalarMatrix::from_columns(cols)) == c.d;
}

XiLattice xi_lattice(const CalibrationRec& c) {
    XiLattice xi;
    xi.basis = int_kernel_of_scalar_matrix(c.v);
    for (const auto& row : xi.basis) {
        ScalarVector x(c.n);
        for (std::size_t j = 0; j < c.n; ++j) x[j] = Scalar(Rational(row[j]));
        ScalarVector image = c.v * x;
        for (const auto& e : image)
            if (!e.is_zero()) throw Inconsistent("xi_lattice basis vector not in kernel");
    }
    return xi;
}

bool gamma_contains(const CalibrationRec& c, const ScalarVector& w) {
    if (w.size() != c.d) throw Mismatch("gamma_contains dimension");
    // Stack [v | w], split per monomial, then ask whether the w-column is in
    // the integer column lattice of the v-part.
    ScalarMatrix aug(c.d, c.n + 1);
    for (std::size_t i = 0; i < c.d; ++i) {
        for (std::size_t j = 0; j < c.n; ++j) aug.at(i, j) = c.v.at(i, j);
        aug.at(i, c.n) = w[i];
    }
    IntMatrix sys = per_monomial_system(aug);
    IntMatrix a(sys.rows(), c.n);
    std::vector<Integer> b(sys.rows());
    for (std::size_t i = 0; i < sys.rows(); ++i) {
        for (std::size_t j = 0; j < c.n; ++j) a.at(i, j) = sys.at(i, j);
        b[i] = -sys.at(i, c.n);
    }
    return int_solvable(a, b);
}

}  // namespace qtoric
