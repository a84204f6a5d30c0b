#include "qtoric/linalg.hpp"

#include <algorithm>

#include "qtoric/error.hpp"

namespace qtoric {

// ---------------------------------------------------------------------------
// ScalarMatrix basics
// ---------------------------------------------------------------------------

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

ScalarMatrix ScalarMatrix::from_columns(const std::vector<ScalarVector>& cols) {
    if (cols.empty()) return ScalarMatrix(0, 0);
    ScalarMatrix m(cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != m.rows()) throw Mismatch("ragged column list");
        for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, c) = cols[c][r];
    }
    return m;
}

ScalarVector ScalarMatrix::row(std::size_t r) const {
    ScalarVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

ScalarVector ScalarMatrix::col(std::size_t c) const {
    ScalarVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (cols_ != o.rows_) throw Mismatch("matrix product shape");
    ScalarMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            Scalar acc;
            for (std::size_t k = 0; k < cols_; ++k) acc += at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

ScalarVector ScalarMatrix::operator*(const ScalarVector& v) const {
    if (cols_ != v.size()) throw Mismatch("matrix-vector shape");
    ScalarVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar acc;
        for (std::size_t k = 0; k < cols_; ++k) acc += at(i, k) * v[k];
        r[i] = acc;
    }
    return r;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Mismatch("matrix difference shape");
    ScalarMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - o.entries_[i];
    return r;
}

bool ScalarMatrix::operator==(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] != o.entries_[i]) return false;
    return true;
}

ScalarMatrix ScalarMatrix::transposed() const {
    ScalarMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool ScalarMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination
// ---------------------------------------------------------------------------

namespace {

struct PolyEchelon {
    std::vector<std::vector<Polynomial>> rows;
    std::vector<std::size_t> pivot_cols;  // one per pivot row, increasing
    BasisPtr basis;
    std::size_t limit_cols;  // pivots restricted to columns < limit_cols
};

// Rows are cleared of denominators (each row scaled by the product of its
// entries' denominators; row scaling preserves rank, kernel and solvability),
// then reduced by Bareiss fraction-free elimination with first-nonzero pivot
// selection. Zero tests are exact coefficient tests; no sign oracle is used.
PolyEchelon poly_echelon(const ScalarMatrix& m, const ScalarVector* augmented) {
    PolyEchelon e;
    e.limit_cols = m.cols();
    std::size_t total_cols = m.cols() + (augmented ? 1 : 0);
    e.rows.assign(m.rows(), std::vector<Polynomial>(total_cols));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        // Product of the row's distinct non-constant denominators; repeated
        // factors only need to appear once for every entry to clear.
        std::vector<Polynomial> distinct;
        auto note_den = [&](const Scalar& s) {
            if (s.den().is_constant()) return;
            for (const auto& d : distinct)
                if (d == s.den()) return;
            distinct.push_back(s.den());
        };
        for (std::size_t j = 0; j < m.cols(); ++j) {
            e.basis = merge_bases(e.basis, m.at(i, j).basis());
            note_den(m.at(i, j));
        }
        if (augmented) {
            e.basis = merge_bases(e.basis, (*augmented)[i].basis());
            note_den((*augmented)[i]);
        }
        Polynomial scale{Rational(1)};
        for (const auto& d : distinct) scale = scale * d;
        auto cleared = [&](const Scalar& s) { return scale.divexact(s.den()) * s.num(); };
        for (std::size_t j = 0; j < m.cols(); ++j) e.rows[i][j] = cleared(m.at(i, j));
        if (augmented) e.rows[i][m.cols()] = cleared((*augmented)[i]);
    }

    Polynomial prev{Rational(1)};
    std::size_t r = 0;
    for (std::size_t c = 0; c < e.limit_cols && r < e.rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < e.rows.size() && e.rows[pivot][c].is_zero()) ++pivot;
        if (pivot == e.rows.size()) continue;
        std::swap(e.rows[r], e.rows[pivot]);
        for (std::size_t j = r + 1; j < e.rows.size(); ++j) {
            for (std::size_t k = c + 1; k < total_cols; ++k)
                e.rows[j][k] =
                    (e.rows[j][k] * e.rows[r][c] - e.rows[j][c] * e.rows[r][k]).divexact(prev);
            e.rows[j][c] = Polynomial();
        }
        prev = e.rows[r][c];
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

Scalar entry_scalar(const PolyEchelon& e, std::size_t i, std::size_t j) {
    return Scalar(e.rows[i][j], Polynomial(Rational(1)), e.basis);
}

}  // namespace

std::size_t rank(const ScalarMatrix& m) { return poly_echelon(m, nullptr).pivot_cols.size(); }

std::vector<std::size_t> pivot_columns(const ScalarMatrix& m) {
    return poly_echelon(m, nullptr).pivot_cols;
}

std::vector<ScalarVector> kernel_basis(const ScalarMatrix& m) {
    PolyEchelon e = poly_echelon(m, nullptr);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;

    std::vector<ScalarVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        ScalarVector x(m.cols(), Scalar(0));
        x[f] = Scalar(1);
        for (std::size_t rr = e.pivot_cols.size(); rr-- > 0;) {
            std::size_t pc = e.pivot_cols[rr];
            Scalar acc;
            for (std::size_t k = pc + 1; k < m.cols(); ++k) {
                if (e.rows[rr][k].is_zero() || x[k].is_zero()) continue;
                acc += entry_scalar(e, rr, k) * x[k];
            }
            x[pc] = -acc / entry_scalar(e, rr, pc);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

ScalarVector solve(const ScalarMatrix& m, const ScalarVector& b) {
    if (b.size() != m.rows()) throw Mismatch("solve shape");
    PolyEchelon e = poly_echelon(m, &b);
    for (std::size_t i = e.pivot_cols.size(); i < m.rows(); ++i)
        if (!e.rows[i][m.cols()].is_zero())
            throw Inconsistent("right-hand side outside column span");

    ScalarVector x(m.cols(), Scalar(0));
    for (std::size_t rr = e.pivot_cols.size(); rr-- > 0;) {
        std::size_t pc = e.pivot_cols[rr];
        Scalar acc = entry_scalar(e, rr, m.cols());
        for (std::size_t k = pc + 1; k < m.cols(); ++k) {
            if (e.rows[rr][k].is_zero() || x[k].is_zero()) continue;
            acc -= entry_scalar(e, rr, k) * x[k];
        }
        x[pc] = acc / entry_scalar(e, rr, pc);
    }
    return x;
}

bool in_span(const ScalarMatrix& m, const ScalarVector& b) {
    try {
        solve(m, b);
        return true;
    } catch (const Inconsistent&) {
        return false;
    }
}

ScalarMatrix inverse(const ScalarMatrix& m) {
    if (m.rows() != m.cols()) throw Inconsistent("inverse of non-square matrix");
    ScalarMatrix inv(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        ScalarVector e(m.rows(), Scalar(0));
        e[c] = Scalar(1);
        ScalarVector x = solve(m, e);
        for (std::size_t r = 0; r < m.rows(); ++r) inv.at(r, c) = x[r];
    }
    if (!(m * inv == ScalarMatrix::identity(m.rows())))
        throw Inconsistent("matrix is singular");
    return inv;
}

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Mismatch("integer matrix product shape");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            Integer acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) acc += at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Mismatch("integer matrix difference shape");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - o.entries_[i];
    return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (e != 0) return false;
    return true;
}

ScalarMatrix IntMatrix::to_scalar() const {
    ScalarMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = Scalar(Rational(at(i, j)));
    return m;
}

// ---------------------------------------------------------------------------
// Hermite and Smith normal forms
// ---------------------------------------------------------------------------

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = -m.at(r, c);
}

// row a -= q * row b
void addmul_row(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(a, c) -= q * m.at(b, c);
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    HnfResult res{m, IntMatrix::identity(m.rows())};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;

    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        // Euclidean reduction of column c in rows >= r.
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                if (best == h.rows() || mpz_cmpabs(h.at(i, c).get_mpz_t(), h.at(best, c).get_mpz_t()) < 0) best = i;
            }
            if (best == h.rows()) break;  // column is zero below r
            swap_rows(h, r, best);
            swap_rows(u, r, best);
            bool others = false;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
                addmul_row(h, i, r, q);
                addmul_row(u, i, r, q);
                if (h.at(i, c) != 0) others = true;
            }
            if (!others) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
            addmul_row(h, i, r, q);
            addmul_row(u, i, r, q);
        }
        ++r;
    }
    return res;
}

namespace {

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

void negate_col(IntMatrix& m, std::size_t c) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, c) = -m.at(r, c);
}

// col a -= q * col b
void addmul_col(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, a) -= q * m.at(r, b);
}

}  // namespace

SnfResult snf(const IntMatrix& m) {
    SnfResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;
    std::size_t n = std::min(d.rows(), d.cols());

    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // Move the minimal nonzero |entry| of the trailing block to (t, t).
            std::size_t bi = d.rows(), bj = d.cols();
            for (std::size_t i = t; i < d.rows(); ++i)
                for (std::size_t j = t; j < d.cols(); ++j) {
                    if (d.at(i, j) == 0) continue;
                    if (bi == d.rows() || mpz_cmpabs(d.at(i, j).get_mpz_t(), d.at(bi, bj).get_mpz_t()) < 0) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == d.rows()) goto done;  // trailing block all zero
            swap_rows(d, t, bi);
            swap_rows(u, t, bi);
            swap_cols(d, t, bj);
            swap_cols(v, t, bj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d.at(i, t) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                addmul_row(d, i, t, q);
                addmul_row(u, i, t, q);
                if (d.at(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d.at(t, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                addmul_col(d, j, t, q);
                addmul_col(v, j, t, q);
                if (d.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Row and column are clear; enforce divisibility of the block.
            bool fixed = true;
            for (std::size_t i = t + 1; i < d.rows() && fixed; ++i)
                for (std::size_t j = t + 1; j < d.cols() && fixed; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        addmul_row(d, t, i, Integer(-1));
                        addmul_row(u, t, i, Integer(-1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d.at(t, t) < 0) {
            negate_row(d, t);
            negate_row(u, t);
        }
    }
done:
    return res;
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Mismatch("determinant of non-square matrix");
    // Bareiss over the integers.
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a.at(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            swap_rows(a, c, piv);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                Integer num = a.at(i, j) * a.at(c, c) - a.at(i, c) * a.at(c, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, c) = 0;
        }
        prev = a.at(c, c);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Integer(-a.at(n - 1, n - 1));
}

std::vector<std::vector<Integer>> int_kernel(const IntMatrix& m) {
    IntMatrix t = m.transposed();
    HnfResult res = hnf(t);
    std::vector<std::vector<Integer>> basis;
    for (std::size_t i = 0; i < res.h.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < res.h.cols(); ++j)
            if (res.h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (!zero) continue;
        std::vector<Integer> v(res.u.cols());
        for (std::size_t j = 0; j < res.u.cols(); ++j) v[j] = res.u.at(i, j);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return basis;
    // Normalize the basis itself into HNF so output is deterministic.
    IntMatrix b(basis.size(), basis[0].size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis[i].size(); ++j) b.at(i, j) = basis[i][j];
    IntMatrix nb = hnf(b).h;
    std::vector<std::vector<Integer>> out;
    for (std::size_t i = 0; i < nb.rows(); ++i) {
        std::vector<Integer> v(nb.cols());
        bool zero = true;
        for (std::size_t j = 0; j < nb.cols(); ++j) {
            v[j] = nb.at(i, j);
            if (v[j] != 0) zero = false;
        }
        if (!zero) out.push_back(std::move(v));
    }
    return out;
}

IntMatrix per_monomial_system(const ScalarMatrix& m) {
    std::vector<std::vector<Rational>> rat_rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Polynomial scale{Rational(1)};
        for (std::size_t j = 0; j < m.cols(); ++j) scale = scale * m.at(i, j).den();
        std::vector<Polynomial> cleared(m.cols());
        std::map<Monomial, std::size_t, MonomialLess> monomials;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cleared[j] = scale.divexact(m.at(i, j).den()) * m.at(i, j).num();
            for (const auto& [mon, c] : cleared[j].terms()) monomials.emplace(mon, 0);
        }
        for (const auto& [mon, unused] : monomials) {
            std::vector<Rational> row(m.cols(), Rational(0));
            for (std::size_t j = 0; j < m.cols(); ++j) {
                auto it = cleared[j].terms().find(mon);
                if (it != cleared[j].terms().end()) row[j] = it->second;
            }
            rat_rows.push_back(std::move(row));
        }
    }
    IntMatrix sys(rat_rows.size(), m.cols());
    for (std::size_t i = 0; i < rat_rows.size(); ++i) {
        Integer lcm = 1;
        for (const auto& q : rat_rows[i])
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational scaled = rat_rows[i][j] * Rational(lcm);
            scaled.canonicalize();
            sys.at(i, j) = scaled.get_num();
        }
    }
    return sys;
}

std::vector<std::vector<Integer>> int_kernel_of_scalar_matrix(const ScalarMatrix& m) {
    return int_kernel(per_monomial_system(m));
}

bool int_solvable(const IntMatrix& m, const std::vector<Integer>& b) {
    if (b.size() != m.rows()) throw Mismatch("int_solvable shape");
    HnfResult res = hnf(m.transposed());
    // Columns of res.h^T are an echelon generating set of the column lattice.
    std::vector<Integer> rem = b;
    for (std::size_t i = 0; i < res.h.rows(); ++i) {
        // Column i of h^T = row i of h; its pivot is the first nonzero entry.
        std::size_t p = res.h.cols();
        for (std::size_t j = 0; j < res.h.cols(); ++j)
            if (res.h.at(i, j) != 0) {
                p = j;
                break;
            }
        if (p == res.h.cols()) continue;
        if (rem[p] % res.h.at(i, p) != 0) return false;
        Integer y = rem[p] / res.h.at(i, p);
        for (std::size_t j = 0; j < res.h.cols(); ++j) rem[j] -= y * res.h.at(i, j);
    }
    for (const auto& x : rem)
        if (x != 0) return false;
    return true;
}

}  // namespace qtoric
