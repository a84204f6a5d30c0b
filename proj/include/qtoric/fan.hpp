#pragma once

#include <optional>
#include <string>

#include "qtoric/calibration.hpp"

namespace qtoric {

// A cone of a fan, identified by the calibration column indices of its rays.
struct TaggedCone {
    std::vector<std::size_t> rays;  // sorted, 0-based calibration indices
    ConeRec cone;
};

struct FanRec {
    std::size_t ambient_dim = 0;
    std::vector<TaggedCone> cones;  // position = cone id

    const TaggedCone& at(std::size_t id) const { return cones.at(id); }
    std::optional<std::size_t> find_equal(const ConeRec& c) const;
};

struct CalibratedFanRec {
    FanRec fan;
    CalibrationRec cal;
    std::set<std::size_t> gens;  // the generator set A

    static CalibratedFanRec build(CalibrationRec cal, std::set<std::size_t> gens,
                                  const std::vector<std::vector<std::size_t>>& ray_sets);
};

struct AxiomCheck {
    std::string axiom;
    bool pass;
    std::string witness;  // empty when passing
};

struct ValidationReport {
    std::vector<AxiomCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Fan axioms: the zero cone is present, every cone is strongly convex, the
// collection is closed under faces and under pairwise intersections.
ValidationReport validate_fan(const FanRec& f);

// Fan axioms plus the calibration-level requirements: standard calibration,
// non-virtual columns span, rays not virtual, and A matching the 1-cones.
ValidationReport validate_calibrated_fan(const CalibratedFanRec& cf);

// Bijection between A and the fan's rays up to positive scaling.
bool validate_generator_set(const CalibratedFanRec& cf);

// The associated fan in Z^N: Cone(e_i, i in I) included exactly when
// Cone(h(e_i), i in I) is a cone of the fan, I ranging over subsets of A.
FanRec associated_fan(const CalibratedFanRec& cf);

std::vector<std::size_t> maximal_cones(const FanRec& f);

// Materializes missing faces and pairwise intersections. Throws Inconsistent
// when an intersection cannot be expressed through calibration rays.
FanRec fan_closure(const FanRec& f, const CalibrationRec& cal);

}  // namespace qtoric
