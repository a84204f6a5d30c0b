#include "qtoric/fan.hpp"

#include <algorithm>
#include <sstream>

#include "qtoric/error.hpp"

namespace qtoric {

namespace {

std::string index_set_str(const std::vector<std::size_t>& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i] + 1;
    out << "}";
    return out.str();
}

ConeRec cone_from_rays(const CalibrationRec& cal, const std::vector<std::size_t>& rays) {
    std::vector<ScalarVector> gens;
    for (auto r : rays) {
        if (r >= cal.n) throw SchemaError("ray index out of range");
        gens.push_back(cal.column(r));
    }
    return ConeRec(cal.d, std::move(gens));
}

}  // namespace

std::optional<std::size_t> FanRec::find_equal(const ConeRec& c) const {
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cone_equal(cones[i].cone, c)) return i;
    return std::nullopt;
}

CalibratedFanRec CalibratedFanRec::build(CalibrationRec cal, std::set<std::size_t> gens,
                                         const std::vector<std::vector<std::size_t>>& ray_sets) {
    CalibratedFanRec cf;
    cf.cal = std::move(cal);
    cf.gens = std::move(gens);
    cf.fan.ambient_dim = cf.cal.d;
    for (auto rays : ray_sets) {
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
        TaggedCone tc;
        tc.cone = cone_from_rays(cf.cal, rays);
        tc.rays = std::move(rays);
        cf.fan.cones.push_back(std::move(tc));
    }
    return cf;
}

ValidationReport validate_fan(const FanRec& f) {
    ValidationReport rep;

    bool has_zero = false;
    for (const auto& tc : f.cones)
        if (tc.cone.generators().empty() || tc.cone.dim() == 0) has_zero = true;
    rep.checks.push_back({"zero_cone_present", has_zero, has_zero ? "" : "add the cone with no rays"});

    bool all_pointed = true;
    std::string pointed_witness;
    for (std::size_t i = 0; i < f.cones.size() && all_pointed; ++i) {
        try {
            if (!is_strongly_convex(f.cones[i].cone)) {
                all_pointed = false;
                pointed_witness = "cone " + index_set_str(f.cones[i].rays) + " contains a line";
            }
        } catch (const AmbiguousSign& e) {
            throw AmbiguousSign(std::string(e.what()) + " while checking cone " +
                                index_set_str(f.cones[i].rays));
        }
    }
    rep.checks.push_back({"strongly_convex", all_pointed, pointed_witness});

    bool face_closed = true;
    std::string face_witness;
    if (all_pointed) {
        for (const auto& tc : f.cones) {
            for (const auto& face : faces(tc.cone)) {
                std::vector<ScalarVector> gens;
                for (auto k : face.generator_indices) gens.push_back(tc.cone.generators()[k]);
                ConeRec fc(f.ambient_dim, gens);
                if (!f.find_equal(fc)) {
                    face_closed = false;
                    std::vector<std::size_t> tag;
                    for (auto k : face.generator_indices) tag.push_back(tc.rays[k]);
                    face_witness = "face " + index_set_str(tag) + " of cone " +
                                   index_set_str(tc.rays) + " is missing";
                    break;
                }
            }
            if (!face_closed) break;
        }
    }
    rep.checks.push_back({"face_closure", face_closed, face_witness});

    bool inter_closed = true;
    std::string inter_witness;
    if (all_pointed) {
        for (std::size_t i = 0; i < f.cones.size() && inter_closed; ++i)
            for (std::size_t j = i + 1; j < f.cones.size(); ++j) {
                ConeRec meet;
                try {
                    meet = intersect(f.cones[i].cone, f.cones[j].cone);
                } catch (const AmbiguousSign& e) {
                    throw AmbiguousSign(std::string(e.what()) + " while intersecting cones " +
                                        index_set_str(f.cones[i].rays) + " and " +
                                        index_set_str(f.cones[j].rays));
                }
                if (!f.find_equal(meet)) {
                    inter_closed = false;
                    inter_witness = "intersection of " + index_set_str(f.cones[i].rays) + " and " +
                                    index_set_str(f.cones[j].rays) + " is missing";
                    break;
                }
            }
    }
    rep.checks.push_back({"intersection_closure", inter_closed, inter_witness});
    return rep;
}

ValidationReport validate_calibrated_fan(const CalibratedFanRec& cf) {
    ValidationReport rep = validate_fan(cf.fan);

    bool std_cal = is_standard(cf.cal);
    rep.checks.push_back({"standard_calibration", std_cal,
                          std_cal ? "" : "h(e_i) != e_i on the first d columns or virtual set not terminal"});

    bool span = validate_virtual_span(cf.cal);
    rep.checks.push_back({"virtual_span", span, span ? "" : "non-virtual columns do not span"});

    bool rays_ok = true;
    std::string ray_witness;
    for (auto a : cf.gens)
        if (a >= cf.cal.n || cf.cal.is_virtual(a)) {
            rays_ok = false;
            ray_witness = "generator index " + std::to_string(a + 1) + " virtual or out of range";
            break;
        }
    for (const auto& tc : cf.fan.cones)
        for (auto r : tc.rays)
            if (!cf.gens.count(r)) {
                rays_ok = false;
                ray_witness = "cone " + index_set_str(tc.rays) + " uses a ray outside A";
            }
    rep.checks.push_back({"rays_in_A", rays_ok, ray_witness});

    bool gen_ok = rays_ok && validate_generator_set(cf);
    rep.checks.push_back(
        {"generator_set", gen_ok, gen_ok ? "" : "A does not biject onto the fan's 1-cones"});
    return rep;
}

bool validate_generator_set(const CalibratedFanRec& cf) {
    // The rays of the fan, as cones of dimension 1.
    std::vector<const TaggedCone*> one_cones;
    for (const auto& tc : cf.fan.cones)
        if (tc.cone.dim() == 1 && tc.cone.cache().extreme_rays.size() == 1)
            one_cones.push_back(&tc);

    // Every a in A must give the ray of exactly one 1-cone, and every 1-cone
    // must arise this way.
    std::vector<bool> covered(one_cones.size(), false);
    for (auto a : cf.gens) {
        if (cf.cal.is_virtual(a)) return false;
        ConeRec ray = cf.cal.ray_cone(a);
        bool hit = false;
        for (std::size_t i = 0; i < one_cones.size(); ++i)
            if (cone_equal(one_cones[i]->cone, ray)) {
                covered[i] = true;
                hit = true;
            }
        if (!hit) return false;
    }
    for (bool c : covered)
        if (!c) return false;
    return true;
}

FanRec associated_fan(const CalibratedFanRec& cf) {
    std::vector<std::size_t> a(cf.gens.begin(), cf.gens.end());
    if (a.size() > 20) throw ScaleExceeded("associated fan enumerates 2^|A| subsets");
    FanRec out;
    out.ambient_dim = cf.cal.n;
    for (std::size_t mask = 0; mask < (std::size_t{1} << a.size()); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (mask & (std::size_t{1} << j)) subset.push_back(a[j]);
        ConeRec image = cone_from_rays(cf.cal, subset);
        if (!cf.fan.find_equal(image)) continue;
        std::vector<ScalarVector> gens;
        for (auto i : subset) {
            ScalarVector e(cf.cal.n, Scalar(0));
            e[i] = Scalar(1);
            gens.push_back(std::move(e));
        }
        out.cones.push_back({subset, ConeRec(cf.cal.n, std::move(gens))});
    }
    return out;
}

std::vector<std::size_t> maximal_cones(const FanRec& f) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < f.cones.size() && maximal; ++j) {
            if (i == j) continue;
            if (cone_contains(f.cones[j].cone, f.cones[i].cone) &&
                !cone_equal(f.cones[j].cone, f.cones[i].cone))
                maximal = false;
        }
        if (maximal) out.push_back(i);
    }
    return out;
}

FanRec fan_closure(const FanRec& f, const CalibrationRec& cal) {
    FanRec out = f;

    auto add_cone = [&](TaggedCone tc) {
        if (out.find_equal(tc.cone)) return false;
        out.cones.push_back(std::move(tc));
        return true;
    };

    // Face closure first; faces of faces are faces, so one pass suffices.
    for (std::size_t i = 0; i < out.cones.size(); ++i) {
        if (!is_strongly_convex(out.cones[i].cone))
            throw Inconsistent("closure hit a non-pointed cone " +
                               index_set_str(out.cones[i].rays));
        auto tc = out.cones[i];
        for (const auto& face : faces(tc.cone)) {
            std::vector<std::size_t> tag;
            std::vector<ScalarVector> gens;
            for (auto k : face.generator_indices) {
                tag.push_back(tc.rays[k]);
                gens.push_back(tc.cone.generators()[k]);
            }
            add_cone({tag, ConeRec(out.ambient_dim, std::move(gens))});
        }
    }

    // Pairwise intersections until stable.
    bool changed = true;
    std::size_t guard = 0;
    while (changed) {
        if (++guard > 64) throw ScaleExceeded("fan closure did not stabilize");
        changed = false;
        std::size_t count = out.cones.size();
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                ConeRec meet = intersect(out.cones[i].cone, out.cones[j].cone);
                if (out.find_equal(meet)) continue;
                std::vector<std::size_t> tag;
                for (auto r : out.cones[i].rays) {
                    if (std::find(tag.begin(), tag.end(), r) == tag.end() &&
                        cone_contains(meet, cal.column(r)))
                        tag.push_back(r);
                }
                for (auto r : out.cones[j].rays) {
                    if (std::find(tag.begin(), tag.end(), r) == tag.end() &&
                        cone_contains(meet, cal.column(r)))
                        tag.push_back(r);
                }
                std::sort(tag.begin(), tag.end());
                ConeRec rebuilt = cone_from_rays(cal, tag);
                if (!cone_equal(rebuilt, meet))
                    throw Inconsistent("intersection of " + index_set_str(out.cones[i].rays) +
                                       " and " + index_set_str(out.cones[j].rays) +
                                       " is not generated by calibration rays");
                add_cone({tag, std::move(rebuilt)});
                changed = true;
            }
    }
    return out;
}

}  // namespace qtoric
