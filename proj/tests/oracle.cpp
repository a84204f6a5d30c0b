#include "oracle.hpp"

#include <algorithm>

#include "qtoric/error.hpp"

namespace qtoric::oracle {

namespace {

Scalar dot(const ScalarVector& a, const ScalarVector& b) {
    Scalar acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

ScalarMatrix rows_matrix(const std::vector<ScalarVector>& rows, std::size_t dim) {
    ScalarMatrix m(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = rows[i][j];
    return m;
}

ScalarMatrix cols_matrix(const std::vector<ScalarVector>& cols, std::size_t dim) {
    ScalarMatrix m(dim, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < dim; ++r) m.at(r, c) = cols[c][r];
    return m;
}

bool proportional_same_dir(const ScalarVector& a, const ScalarVector& b) {
    ScalarMatrix m = cols_matrix({a, b}, a.size());
    return rank(m) == 1 && dot(a, b).sign() > 0;
}

}  // namespace

std::vector<ScalarVector> matrix_columns(const ScalarMatrix& m) {
    std::vector<ScalarVector> cols;
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.col(c));
    return cols;
}

bool brute_contains(const std::vector<ScalarVector>& gens, std::size_t dim,
                    const ScalarVector& x) {
    // x in cone(gens) iff every linear functional nonnegative on all gens is
    // nonnegative on x. Functionals are enumerated from subsets spanning a
    // hyperplane of the generator span, plus the span conditions themselves.
    ScalarMatrix g = rows_matrix(gens, dim);
    std::size_t s = gens.empty() ? 0 : rank(g);

    // Span membership first.
    if (!gens.empty()) {
        ScalarMatrix cols = cols_matrix(gens, dim);
        if (!in_span(cols, x)) return false;
    } else {
        for (const auto& xi : x)
            if (!xi.is_zero()) return false;
        return true;
    }
    if (s == 0) return true;

    std::size_t n = gens.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<ScalarVector> sub;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (std::size_t{1} << j)) sub.push_back(gens[j]);
        // A normal within the span, orthogonal to the subset.
        std::vector<ScalarVector> constraints = sub;
        ScalarMatrix full = rows_matrix(gens, dim);
        auto span_kernel = kernel_basis(full);  // orthogonal complement basis? no:
        // kernel_basis(full) gives vectors y with G y = 0, i.e. orthogonal to
        // every generator row -> the span's orthogonal complement.
        for (const auto& k : span_kernel) constraints.push_back(k);
        ScalarMatrix cm = rows_matrix(constraints, dim);
        auto normals = kernel_basis(cm);
        if (normals.size() != 1) continue;
        const ScalarVector& nvec = normals[0];
        int lo = 0, hi = 0;
        for (const auto& gv : gens) {
            Scalar d = dot(nvec, gv);
            if (d.is_zero()) continue;
            (d.sign() > 0 ? hi : lo) = 1;
        }
        if (lo && hi) continue;  // not supporting
        Scalar dx = dot(nvec, x);
        if (dx.is_zero()) continue;
        int sx = dx.sign();
        if (hi && sx < 0) return false;
        if (lo && sx > 0) return false;
        if (!lo && !hi) return false;  // normal vanishes on all gens but not on x
    }
    return true;
}

BruteCone enumerate_cone(const std::vector<ScalarVector>& gens, std::size_t dim) {
    BruteCone out;
    ScalarMatrix g = rows_matrix(gens, dim);
    std::size_t s = gens.empty() ? 0 : rank(g);
    std::size_t n = gens.size();

    // Facet candidates from subsets of generators spanning a hyperplane of
    // the generator span.
    auto span_kernel = gens.empty() ? std::vector<ScalarVector>{} : kernel_basis(g);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<ScalarVector> sub;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (std::size_t{1} << j)) sub.push_back(gens[j]);
        if (s >= 1) {
            ScalarMatrix sm = sub.empty() ? ScalarMatrix(0, dim) : rows_matrix(sub, dim);
            if (!sub.empty() && rank(sm) != s - 1) continue;
            if (sub.empty() && s != 1) continue;
        }
        std::vector<ScalarVector> constraints = sub;
        for (const auto& k : span_kernel) constraints.push_back(k);
        ScalarMatrix cm = rows_matrix(constraints, dim);
        auto normals = kernel_basis(cm);
        if (normals.size() != 1) continue;
        ScalarVector nvec = normals[0];
        bool has_pos = false, has_neg = false;
        for (const auto& gv : gens) {
            Scalar d = dot(nvec, gv);
            if (d.is_zero()) continue;
            (d.sign() > 0 ? has_pos : has_neg) = true;
        }
        if (has_pos && has_neg) continue;
        if (!has_pos && !has_neg) continue;
        if (has_neg)
            for (auto& c : nvec) c = -c;
        bool dup = false;
        for (const auto& f : out.facet_normals)
            if (proportional_same_dir(f, nvec)) {
                dup = true;
                break;
            }
        if (!dup) out.facet_normals.push_back(nvec);
    }

    // Faces: intersections of facet active sets, plus the cone itself.
    std::vector<std::set<std::size_t>> facet_sets;
    for (const auto& f : out.facet_normals) {
        std::set<std::size_t> act;
        for (std::size_t j = 0; j < n; ++j)
            if (dot(f, gens[j]).is_zero()) act.insert(j);
        facet_sets.push_back(act);
    }
    std::set<std::set<std::size_t>> found;
    std::set<std::size_t> all;
    for (std::size_t j = 0; j < n; ++j) all.insert(j);
    found.insert(all);
    std::vector<std::set<std::size_t>> work{all};
    for (const auto& f : facet_sets)
        if (found.insert(f).second) work.push_back(f);
    while (!work.empty()) {
        auto cur = work.back();
        work.pop_back();
        for (const auto& f : facet_sets) {
            std::set<std::size_t> meet;
            std::set_intersection(cur.begin(), cur.end(), f.begin(), f.end(),
                                  std::inserter(meet, meet.begin()));
            if (found.insert(meet).second) work.push_back(meet);
        }
    }
    if (n > 0) found.insert(std::set<std::size_t>{});
    for (const auto& f : found) {
        std::vector<ScalarVector> sub;
        for (auto j : f) sub.push_back(gens[j]);
        std::size_t d = sub.empty() ? 0 : rank(rows_matrix(sub, dim));
        out.face_sets.emplace_back(f, d);
    }
    std::sort(out.face_sets.begin(), out.face_sets.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second < b.second;
                  return a.first < b.first;
              });

    // Extreme representatives: least generator index per dimension-1 face.
    for (const auto& [fs, d] : out.face_sets) {
        if (d != 1 || fs.empty()) continue;
        out.extreme_reps.push_back(*fs.begin());
    }
    std::sort(out.extreme_reps.begin(), out.extreme_reps.end());
    return out;
}

IntMatrix brute_hnf_2x2(const IntMatrix& m, long bound) {
    std::vector<IntMatrix> hits;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c)
                for (long d = -bound; d <= bound; ++d) {
                    long det = a * d - b * c;
                    if (det != 1 && det != -1) continue;
                    IntMatrix u(2, 2);
                    u.at(0, 0) = a;
                    u.at(0, 1) = b;
                    u.at(1, 0) = c;
                    u.at(1, 1) = d;
                    IntMatrix h = u * m;
                    // Row HNF shape for 2x2 full-rank input: positive pivots,
                    // zero below, entry above second pivot in [0, pivot).
                    if (h.at(1, 0) != 0) continue;
                    if (h.at(0, 0) <= 0 || h.at(1, 1) <= 0) continue;
                    if (h.at(0, 1) < 0 || h.at(0, 1) >= h.at(1, 1)) continue;
                    bool dup = false;
                    for (const auto& other : hits)
                        if (other == h) dup = true;
                    if (!dup) hits.push_back(h);
                }
    if (hits.size() != 1) throw Inconsistent("brute HNF not unique");
    return hits[0];
}

std::vector<Integer> minor_gcd_invariants(const IntMatrix& m) {
    std::size_t n = std::min(m.rows(), m.cols());
    std::vector<Integer> gcds(n + 1, Integer(0));
    gcds[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer g = 0;
        std::vector<std::size_t> ri(k), ci(k);
        std::function<void(std::size_t, std::size_t)> rows_loop = [&](std::size_t pos,
                                                                      std::size_t start) {
            if (pos == k) {
                std::function<void(std::size_t, std::size_t)> cols_loop =
                    [&](std::size_t cpos, std::size_t cstart) {
                        if (cpos == k) {
                            IntMatrix sub(k, k);
                            for (std::size_t i = 0; i < k; ++i)
                                for (std::size_t j = 0; j < k; ++j)
                                    sub.at(i, j) = m.at(ri[i], ci[j]);
                            Integer det = determinant(sub);
                            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
                            return;
                        }
                        for (std::size_t c = cstart; c < m.cols(); ++c) {
                            ci[cpos] = c;
                            cols_loop(cpos + 1, c + 1);
                        }
                    };
                cols_loop(0, 0);
                return;
            }
            for (std::size_t r = start; r < m.rows(); ++r) {
                ri[pos] = r;
                rows_loop(pos + 1, r + 1);
            }
        };
        rows_loop(0, 0);
        gcds[k] = g;
    }
    std::vector<Integer> inv;
    for (std::size_t k = 1; k <= n; ++k) {
        if (gcds[k] == 0) break;
        inv.push_back(gcds[k] / gcds[k - 1]);
    }
    return inv;
}

std::vector<std::vector<Integer>> enumerate_int_kernel(const IntMatrix& m, long bound) {
    std::vector<std::vector<Integer>> out;
    std::size_t n = m.cols();
    std::vector<long> x(n, -bound);
    while (true) {
        bool zero = true, kernel = true;
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] != 0) zero = false;
        if (!zero) {
            for (std::size_t i = 0; i < m.rows() && kernel; ++i) {
                Integer acc = 0;
                for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * x[j];
                if (acc != 0) kernel = false;
            }
            if (kernel) {
                std::vector<Integer> v(n);
                for (std::size_t j = 0; j < n; ++j) v[j] = x[j];
                out.push_back(std::move(v));
            }
        }
        std::size_t j = 0;
        while (j < n && x[j] == bound) {
            x[j] = -bound;
            ++j;
        }
        if (j == n) break;
        ++x[j];
    }
    return out;
}

BasisPtr sqrt_basis_abc() {
    std::vector<SymbolDef> syms;
    syms.push_back({"a", {Rational("14/10"), Rational("15/10")}, sqrt_refiner(2)});
    syms.push_back({"b", {Rational("17/10"), Rational("18/10")}, sqrt_refiner(3)});
    syms.push_back({"c", {Rational("22/10"), Rational("23/10")}, sqrt_refiner(5)});
    return std::make_shared<IrrationalBasis>(std::move(syms));
}

BasisPtr alpha_sqrt2() {
    std::vector<SymbolDef> syms;
    syms.push_back({"alpha", {Rational("14/10"), Rational("15/10")}, sqrt_refiner(2)});
    return std::make_shared<IrrationalBasis>(std::move(syms));
}

ScalarMatrix exmax_columns(const BasisPtr& basis) {
    Scalar a = Scalar::symbol(basis, 0);
    Scalar b = Scalar::symbol(basis, 1);
    Scalar c = Scalar::symbol(basis, 2);
    ScalarMatrix m(3, 4);
    m.at(0, 0) = Scalar(1);
    m.at(1, 1) = Scalar(1);
    m.at(2, 2) = Scalar(1);
    m.at(0, 3) = a;
    m.at(1, 3) = -b;
    m.at(2, 3) = c;
    return m;
}

ScalarMatrix exmax_columns_rational() {
    ScalarMatrix m(3, 4);
    m.at(0, 0) = Scalar(1);
    m.at(1, 1) = Scalar(1);
    m.at(2, 2) = Scalar(1);
    m.at(0, 3) = Scalar(1);
    m.at(1, 3) = Scalar(-1);
    m.at(2, 3) = Scalar(1);
    return m;
}

Scalar random_rational(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    return Scalar(Rational(num(rng), den(rng)));
}

Scalar random_irrational(std::mt19937_64& rng, const BasisPtr& basis) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<unsigned> expo(0, 2);
    std::uniform_int_distribution<int> nterms(1, 3);
    auto random_poly = [&](bool nonzero) {
        Polynomial p;
        int t = nterms(rng);
        for (int i = 0; i < t; ++i) {
            Monomial m(basis->size(), 0);
            for (std::size_t v = 0; v < std::min<std::size_t>(basis->size(), 2); ++v)
                m[v] = expo(rng);
            p.add_term(m, Rational(coef(rng)));
        }
        if (nonzero && p.is_zero()) p.add_term(Monomial{}, Rational(1));
        return p;
    };
    return Scalar(random_poly(false), random_poly(true), basis);
}

Scalar random_irrational_linear(std::mt19937_64& rng, const BasisPtr& basis) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<std::size_t> var(0, std::min<std::size_t>(basis->size(), 2) - 1);
    auto random_linear = [&](bool nonzero) {
        Polynomial p(Rational(coef(rng)));
        Monomial m(basis->size(), 0);
        m[var(rng)] = 1;
        p.add_term(m, Rational(coef(rng)));
        if (nonzero && p.is_zero()) p.add_term(Monomial{}, Rational(1));
        return p;
    };
    return Scalar(random_linear(false), random_linear(true), basis);
}

}  // namespace qtoric::oracle
