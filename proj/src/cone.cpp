#include "qtoric/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qtoric/error.hpp"

namespace qtoric {

namespace {

Scalar dot(const ScalarVector& a, const ScalarVector& b) {
    if (a.size() != b.size()) throw Mismatch("dot product shape");
    Scalar acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

bool is_zero_vec(const ScalarVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

ScalarVector negated(const ScalarVector& v) {
    ScalarVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

// Scale so the first nonzero coordinate is +1 or -1.
ScalarVector canonical_ray(const ScalarVector& v) {
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        Scalar s = x.sign() > 0 ? x : -x;
        ScalarVector r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / s;
        return r;
    }
    return v;
}

}  // namespace

bool same_ray(const ScalarVector& a, const ScalarVector& b) {
    if (a.size() != b.size()) return false;
    ScalarMatrix m(a.size(), 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        m.at(i, 0) = a[i];
        m.at(i, 1) = b[i];
    }
    if (rank(m) != 1) return false;
    return dot(a, b).sign() > 0;
}

// ---------------------------------------------------------------------------
// Double description
// ---------------------------------------------------------------------------

DualDescription dd_extreme_rays(const std::vector<ScalarVector>& constraints, std::size_t dim) {
    std::vector<ScalarVector> rows;
    for (const auto& c : constraints) {
        if (c.size() != dim) throw Mismatch("constraint dimension");
        if (!is_zero_vec(c)) rows.push_back(c);
    }

    DualDescription out;
    if (rows.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            ScalarVector e(dim, Scalar(0));
            e[i] = Scalar(1);
            out.lineality.push_back(std::move(e));
        }
        return out;
    }

    ScalarMatrix a(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) a.at(i, j) = rows[i][j];

    out.lineality = kernel_basis(a);
    std::vector<std::size_t> q = pivot_columns(a);
    std::size_t s = q.size();
    if (s == 0) return out;

    // Constraints restricted to the complement coordinates; the cone there is
    // pointed.
    std::vector<ScalarVector> restricted(rows.size(), ScalarVector(s));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < s; ++j) restricted[i][j] = rows[i][q[j]];

    // Greedy initial basis of s independent constraints.
    std::vector<std::size_t> initial;
    {
        std::vector<ScalarVector> picked;
        for (std::size_t i = 0; i < restricted.size() && picked.size() < s; ++i) {
            picked.push_back(restricted[i]);
            ScalarMatrix t(picked.size(), s);
            for (std::size_t r = 0; r < picked.size(); ++r)
                for (std::size_t c = 0; c < s; ++c) t.at(r, c) = picked[r][c];
            if (rank(t) == picked.size())
                initial.push_back(i);
            else
                picked.pop_back();
        }
    }

    ScalarMatrix m(s, s);
    for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c) m.at(r, c) = restricted[initial[r]][c];
    ScalarMatrix minv = inverse(m);

    std::vector<ScalarVector> rays;
    for (std::size_t c = 0; c < s; ++c) rays.push_back(canonical_ray(minv.col(c)));

    std::vector<std::size_t> processed = initial;
    auto active_rank = [&](const ScalarVector& r1, const ScalarVector& r2) {
        std::vector<std::size_t> act;
        for (auto i : processed)
            if (dot(restricted[i], r1).is_zero() && dot(restricted[i], r2).is_zero())
                act.push_back(i);
        if (act.empty()) return std::size_t{0};
        ScalarMatrix t(act.size(), s);
        for (std::size_t r = 0; r < act.size(); ++r)
            for (std::size_t c = 0; c < s; ++c) t.at(r, c) = restricted[act[r]][c];
        return rank(t);
    };

    for (std::size_t i = 0; i < restricted.size(); ++i) {
        if (std::find(processed.begin(), processed.end(), i) != processed.end()) continue;
        std::vector<ScalarVector> pos, zero, neg;
        std::vector<Scalar> dpos, dneg;
        for (const auto& r : rays) {
            Scalar d = dot(restricted[i], r);
            int sg = d.is_zero() ? 0 : d.sign();
            if (sg > 0) {
                pos.push_back(r);
                dpos.push_back(d);
            } else if (sg < 0) {
                neg.push_back(r);
                dneg.push_back(d);
            } else {
                zero.push_back(r);
            }
        }
        if (!neg.empty()) {
            std::vector<ScalarVector> created;
            for (std::size_t p = 0; p < pos.size(); ++p)
                for (std::size_t nn = 0; nn < neg.size(); ++nn) {
                    if (active_rank(pos[p], neg[nn]) != s - 2) continue;
                    ScalarVector fresh(s);
                    for (std::size_t c = 0; c < s; ++c)
                        fresh[c] = dpos[p] * neg[nn][c] - dneg[nn] * pos[p][c];
                    created.push_back(canonical_ray(fresh));
                }
            rays = std::move(pos);
            rays.insert(rays.end(), zero.begin(), zero.end());
            rays.insert(rays.end(), created.begin(), created.end());
        }
        processed.push_back(i);
    }

    // Deterministic order: sort by active-constraint index sets.
    std::vector<std::pair<std::vector<std::size_t>, ScalarVector>> keyed;
    for (auto& r : rays) {
        std::vector<std::size_t> act;
        for (std::size_t i = 0; i < restricted.size(); ++i)
            if (dot(restricted[i], r).is_zero()) act.push_back(i);
        keyed.emplace_back(std::move(act), std::move(r));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    for (auto& [act, r] : keyed) {
        ScalarVector full(dim, Scalar(0));
        for (std::size_t j = 0; j < s; ++j) full[q[j]] = r[j];
        out.rays.push_back(std::move(full));
    }
    return out;
}

// ---------------------------------------------------------------------------
// ConeRec and cache
// ---------------------------------------------------------------------------

ConeRec::ConeRec(std::size_t ambient_dim, std::vector<ScalarVector> generators)
    : ambient_dim_(ambient_dim), gens_(std::move(generators)), box_(std::make_shared<CacheBox>()) {
    for (const auto& g : gens_) {
        if (g.size() != ambient_dim_) throw Mismatch("generator dimension");
        if (is_zero_vec(g)) throw Mismatch("zero generator in cone");
    }
}

std::size_t ConeRec::dim() const {
    if (gens_.empty()) return 0;
    ScalarMatrix m(ambient_dim_, gens_.size());
    for (std::size_t c = 0; c < gens_.size(); ++c)
        for (std::size_t r = 0; r < ambient_dim_; ++r) m.at(r, c) = gens_[c][r];
    return rank(m);
}

const ConeRec::Cache& ConeRec::cache() const {
    if (!box_) throw Mismatch("cone has no storage");
    {
        std::lock_guard<std::mutex> lk(box_->mtx);
        if (box_->data) return *box_->data;
    }
    auto fresh = std::make_shared<Cache>();
    DualDescription dd = dd_extreme_rays(gens_, ambient_dim_);
    fresh->pointed_count = dd.rays.size();
    fresh->lineality_rank = dd.lineality.size();
    fresh->facet_normals = std::move(dd.rays);
    for (const auto& l : dd.lineality) {
        fresh->facet_normals.push_back(l);
        fresh->facet_normals.push_back(negated(l));
    }

    // Extreme generators: dedup positively proportional rays, then keep the
    // least index of each class whose active constraint set has rank dim-1.
    std::vector<std::size_t> reps;
    for (std::size_t j = 0; j < gens_.size(); ++j) {
        bool dup = false;
        for (auto r : reps)
            if (same_ray(gens_[r], gens_[j])) {
                dup = true;
                break;
            }
        if (!dup) reps.push_back(j);
    }
    for (auto j : reps) {
        std::vector<ScalarVector> act;
        for (const auto& n : fresh->facet_normals)
            if (dot(n, gens_[j]).is_zero()) act.push_back(n);
        if (act.empty()) continue;
        ScalarMatrix t(act.size(), ambient_dim_);
        for (std::size_t r = 0; r < act.size(); ++r)
            for (std::size_t c = 0; c < ambient_dim_; ++c) t.at(r, c) = act[r][c];
        if (rank(t) + 1 == ambient_dim_) fresh->extreme_rays.push_back(j);
    }

    std::lock_guard<std::mutex> lk(box_->mtx);
    if (!box_->data) box_->data = fresh;  // benign race: identical value
    return *box_->data;
}

std::vector<ScalarVector> dual_description(const ConeRec& c) { return c.cache().facet_normals; }

bool is_strongly_convex(const ConeRec& c) {
    const auto& cache = c.cache();
    if (cache.facet_normals.empty()) return c.ambient_dim() == 0;
    ScalarMatrix m(cache.facet_normals.size(), c.ambient_dim());
    for (std::size_t r = 0; r < cache.facet_normals.size(); ++r)
        for (std::size_t j = 0; j < c.ambient_dim(); ++j) m.at(r, j) = cache.facet_normals[r][j];
    return rank(m) == c.ambient_dim();
}

std::vector<FaceRec> faces(const ConeRec& c) {
    if (!is_strongly_convex(c)) throw NotStronglyConvex("faces of a non-pointed cone");
    const auto& cache = c.cache();
    const auto& gens = c.generators();

    auto face_dim = [&](const std::set<std::size_t>& idx) {
        if (idx.empty()) return std::size_t{0};
        ScalarMatrix m(c.ambient_dim(), idx.size());
        std::size_t col = 0;
        for (auto j : idx) {
            for (std::size_t r = 0; r < c.ambient_dim(); ++r) m.at(r, col) = gens[j][r];
            ++col;
        }
        return rank(m);
    };

    std::set<std::set<std::size_t>> found;
    std::set<std::size_t> all;
    for (std::size_t j = 0; j < gens.size(); ++j) all.insert(j);
    found.insert(all);

    std::vector<std::set<std::size_t>> facet_sets;
    for (std::size_t k = 0; k < cache.pointed_count; ++k) {
        std::set<std::size_t> f;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (dot(cache.facet_normals[k], gens[j]).is_zero()) f.insert(j);
        facet_sets.push_back(f);
        found.insert(f);
    }
    // Faces are exactly the intersections of facets (plus the cone itself).
    std::vector<std::set<std::size_t>> work(found.begin(), found.end());
    while (!work.empty()) {
        std::set<std::size_t> cur = work.back();
        work.pop_back();
        for (const auto& f : facet_sets) {
            std::set<std::size_t> meet;
            std::set_intersection(cur.begin(), cur.end(), f.begin(), f.end(),
                                  std::inserter(meet, meet.begin()));
            if (found.insert(meet).second) work.push_back(meet);
        }
    }
    if (!gens.empty()) found.insert(std::set<std::size_t>{});  // the {0} face

    std::vector<FaceRec> out;
    for (const auto& f : found) {
        FaceRec rec;
        rec.generator_indices.assign(f.begin(), f.end());
        rec.dim = face_dim(f);
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const FaceRec& a, const FaceRec& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.generator_indices < b.generator_indices;
    });
    return out;
}

bool cone_contains(const ConeRec& c, const ScalarVector& x) {
    for (const auto& n : c.cache().facet_normals)
        if (!dot(n, x).is_zero() && dot(n, x).sign() < 0) return false;
    return true;
}

bool cone_contains(const ConeRec& outer, const ConeRec& inner) {
    for (const auto& g : inner.generators())
        if (!cone_contains(outer, g)) return false;
    return true;
}

bool cone_equal(const ConeRec& a, const ConeRec& b) {
    return cone_contains(a, b) && cone_contains(b, a);
}

bool is_face_of(const ConeRec& tau, const ConeRec& sigma) {
    if (tau.ambient_dim() != sigma.ambient_dim()) throw Mismatch("is_face_of ambient dimension");
    if (!cone_contains(sigma, tau)) return false;
    // Normals of sigma active on all of tau cut out the minimal face
    // containing tau; tau is a face iff that face is contained in tau.
    const auto& normals = sigma.cache().facet_normals;
    std::vector<const ScalarVector*> active;
    for (const auto& n : normals) {
        bool act = true;
        for (const auto& g : tau.generators())
            if (!dot(n, g).is_zero()) {
                act = false;
                break;
            }
        if (act) active.push_back(&n);
    }
    for (const auto& g : sigma.generators()) {
        bool on_face = true;
        for (const auto* n : active)
            if (!dot(*n, g).is_zero()) {
                on_face = false;
                break;
            }
        if (on_face && !cone_contains(tau, g)) return false;
    }
    return true;
}

ConeRec intersect(const ConeRec& a, const ConeRec& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw Mismatch("intersect ambient dimension");
    std::vector<ScalarVector> constraints = a.cache().facet_normals;
    const auto& bn = b.cache().facet_normals;
    constraints.insert(constraints.end(), bn.begin(), bn.end());
    DualDescription dd = dd_extreme_rays(constraints, a.ambient_dim());
    std::vector<ScalarVector> gens = dd.rays;
    for (const auto& l : dd.lineality) {
        gens.push_back(l);
        gens.push_back(negated(l));
    }
    return ConeRec(a.ambient_dim(), std::move(gens));
}

bool is_simplicial(const ConeRec& c) {
    if (!is_strongly_convex(c)) throw NotStronglyConvex("is_simplicial on a non-pointed cone");
    const auto& ext = c.cache().extreme_rays;
    if (ext.empty()) return true;
    ScalarMatrix m(c.ambient_dim(), ext.size());
    for (std::size_t k = 0; k < ext.size(); ++k)
        for (std::size_t r = 0; r < c.ambient_dim(); ++r)
            m.at(r, k) = c.generators()[ext[k]][r];
    return rank(m) == ext.size();
}

}  // namespace qtoric
