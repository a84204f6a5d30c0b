#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "qtoric/linalg.hpp"

namespace qtoric {

// Polyhedral cone given by generator rays over Q(alpha). The dual
// description is computed once and cached; copies share the cache box, so
// concurrent readers of one logical cone are safe.
class ConeRec {
   public:
    ConeRec() : ambient_dim_(0) {}
    ConeRec(std::size_t ambient_dim, std::vector<ScalarVector> generators);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<ScalarVector>& generators() const { return gens_; }
    std::size_t dim() const;  // rank of the generator span

    struct Cache {
        // Facet normals of the pointed part first, then span equalities as
        // opposite pairs (+l, -l) per lineality basis vector l.
        std::vector<ScalarVector> facet_normals;
        std::size_t pointed_count = 0;
        std::size_t lineality_rank = 0;
        std::vector<std::size_t> extreme_rays;  // generator indices, deduped
    };
    const Cache& cache() const;

   private:
    std::size_t ambient_dim_;
    std::vector<ScalarVector> gens_;
    struct CacheBox {
        std::mutex mtx;
        std::shared_ptr<const Cache> data;
    };
    std::shared_ptr<CacheBox> box_;
};

// Extreme rays of {x : <c, x> >= 0 for all c} plus a basis of its lineality
// space. Rays come out scaled to first nonzero coordinate +-1 and sorted by
// their active-constraint index sets.
struct DualDescription {
    std::vector<ScalarVector> rays;
    std::vector<ScalarVector> lineality;
};
DualDescription dd_extreme_rays(const std::vector<ScalarVector>& constraints, std::size_t dim);

// Irredundant facet normals; span equalities appear as opposite pairs.
std::vector<ScalarVector> dual_description(const ConeRec& c);

bool is_strongly_convex(const ConeRec& c);

struct FaceRec {
    std::vector<std::size_t> generator_indices;  // generators lying on the face
    std::size_t dim;
};
// All faces of a strongly convex cone, {0} and the cone itself included.
std::vector<FaceRec> faces(const ConeRec& c);

bool is_face_of(const ConeRec& tau, const ConeRec& sigma);

ConeRec intersect(const ConeRec& a, const ConeRec& b);

bool is_simplicial(const ConeRec& c);

// Membership and set equality via the cached facet systems.
bool cone_contains(const ConeRec& c, const ScalarVector& x);
bool cone_contains(const ConeRec& outer, const ConeRec& inner);
bool cone_equal(const ConeRec& a, const ConeRec& b);

// True iff a and b span the same ray (positive proportionality).
bool same_ray(const ScalarVector& a, const ScalarVector& b);

}  // namespace qtoric
