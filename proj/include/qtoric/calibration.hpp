#pragma once

#include <set>

#include "qtoric/cone.hpp"
#include "qtoric/linalg.hpp"

namespace qtoric {

// The ineffectivity lattice Xi = ker(h) as integer relations among the
// calibration columns, basis rows in HNF.
struct XiLattice {
    std::vector<std::vector<Integer>> basis;
    std::size_t rank() const { return basis.size(); }
};

// A calibration h : Z^N -> Gamma, column i of `v` is h(e_i). Indices are
// 0-based throughout the library; the JSON layer speaks 1-based.
struct CalibrationRec {
    std::size_t d = 0;
    std::size_t n = 0;
    ScalarMatrix v;                   // d x N
    std::set<std::size_t> virtual_set;

    ScalarVector column(std::size_t i) const { return v.col(i); }
    bool is_virtual(std::size_t i) const { return virtual_set.count(i) > 0; }
    ConeRec ray_cone(std::size_t i) const { return ConeRec(d, {column(i)}); }
};

// True iff the first d columns are the standard basis and the virtual set is
// a terminal segment {N-|I|, ..., N-1}.
bool is_standard(const CalibrationRec& c);

// Rank test on the non-virtual columns.
bool validate_virtual_span(const CalibrationRec& c);

XiLattice xi_lattice(const CalibrationRec& c);

// Decides w in Gamma (an integer combination of the columns) by solving the
// per-symbol-monomial integer systems.
bool gamma_contains(const CalibrationRec& c, const ScalarVector& w);

}  // namespace qtoric
