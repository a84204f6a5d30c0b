#include "qtoric/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace qtoric {

// ---------------------------------------------------------------------------
// Refiners
// ---------------------------------------------------------------------------

DecimalStringRefiner::DecimalStringRefiner(const std::string& digits) {
    std::string s = digits;
    if (s.size() >= 3 && s.substr(s.size() - 3) == "...") s = s.substr(0, s.size() - 3);
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative_ = s[0] == '-';
        s = s.substr(1);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        int_part_ = s;
    } else {
        int_part_ = s.substr(0, dot);
        frac_ = s.substr(dot + 1);
    }
    if (int_part_.empty()) int_part_ = "0";
    for (char c : int_part_ + frac_)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw SchemaError("bad digit stream '" + digits + "'");
}

QInterval DecimalStringRefiner::refine(long frac_bits) const {
    // 2^-bits <= 10^-k when k <= bits*log10(2); 0.30103 > 301/1000.
    long k = frac_bits * 302 / 1000 + 1;
    k = std::min(k, static_cast<long>(frac_.size()));
    Integer scale = 1;
    for (long i = 0; i < k; ++i) scale *= 10;
    Integer mag = Integer(int_part_) * scale + (k > 0 ? Integer(frac_.substr(0, k)) : Integer(0));
    Rational lo(mag, scale), hi(mag + 1, scale);
    lo.canonicalize();
    hi.canonicalize();
    if (negative_) return {-hi, -lo};
    return {lo, hi};
}

std::shared_ptr<Refiner> sqrt_refiner(unsigned n) {
    return std::make_shared<FunctionRefiner>([n](long bits) {
        Integer two_pow = 1;
        mpz_mul_2exp(two_pow.get_mpz_t(), two_pow.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
        Integer s = sqrt(two_pow * two_pow * n);
        Rational lo(s, two_pow), hi(s + 1, two_pow);
        lo.canonicalize();
        hi.canonicalize();
        return QInterval{lo, hi};
    });
}

// ---------------------------------------------------------------------------
// IrrationalBasis
// ---------------------------------------------------------------------------

IrrationalBasis::IrrationalBasis(std::vector<SymbolDef> symbols, long max_bits)
    : symbols_(std::move(symbols)), max_bits_(max_bits), cache_(symbols_.size()) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto& s = symbols_[i];
        if (!(s.enclosure.lo < s.enclosure.hi))
            throw SchemaError("symbol '" + s.name + "': enclosure needs lower < upper");
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[j].name == s.name)
                throw SchemaError("duplicate symbol name '" + s.name + "'");
    }
}

QInterval IrrationalBasis::enclosure(std::size_t i, long frac_bits) const {
    std::shared_ptr<const Cache> cur;
    {
        std::lock_guard<std::mutex> lk(mtx_);
        cur = cache_[i];
    }
    if (cur && cur->bits >= frac_bits) return cur->box;
    QInterval box = cur ? cur->box : symbols_[i].enclosure;
    if (symbols_[i].refiner) {
        refine_calls_.fetch_add(1, std::memory_order_relaxed);
        QInterval refined = symbols_[i].refiner->refine(frac_bits);
        box = box.intersect(refined);  // keeps enclosures nested
    }
    auto next = std::make_shared<Cache>();
    next->bits = frac_bits;
    next->box = box;
    {
        std::lock_guard<std::mutex> lk(mtx_);
        // Benign race: another thread may have refined further; keep the tighter one.
        if (!cache_[i] || cache_[i]->bits < frac_bits) cache_[i] = next;
        return cache_[i]->box;
    }
}

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t ea = i < a.size() ? a[i] : 0;
        std::uint32_t eb = i < b.size() ? b[i] : 0;
        if (ea != eb) return ea < eb;
    }
    return false;
}

namespace {
Monomial trim(Monomial m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
    return m;
}
}  // namespace

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_[Monomial{}] = c;
}

Polynomial Polynomial::variable(std::size_t index, unsigned power) {
    Polynomial p;
    if (power == 0) return Polynomial(Rational(1));
    Monomial m(index + 1, 0);
    m[index] = power;
    p.terms_[m] = Rational(1);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

const Rational& Polynomial::constant_term() const {
    static const Rational zero(0);
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? zero : it->second;
}

std::size_t Polynomial::num_vars() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return n;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    Monomial key = trim(m);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_[key] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(std::max(ma.size(), mb.size()), 0);
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = (i < ma.size() ? ma[i] : 0) + (i < mb.size() ? mb[i] : 0);
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::divexact(const Polynomial& o) const {
    if (o.is_zero()) throw DivisionByZero("polynomial division by zero");
    Polynomial rem = *this;
    Polynomial quot;
    const auto& [lm, lc] = *o.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = *rem.terms_.rbegin();
        Monomial q(std::max(rm.size(), lm.size()), 0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            std::uint32_t e = i < rm.size() ? rm[i] : 0;
            std::uint32_t d = i < lm.size() ? lm[i] : 0;
            if (e < d) throw Inconsistent("inexact polynomial division");
            q[i] = e - d;
        }
        Rational qc = rc / lc;
        Polynomial t;
        t.add_term(q, qc);
        quot = quot + t;
        rem = rem - t * o;
    }
    return quot;
}

const Rational& Polynomial::leading_coefficient() const {
    static const Rational zero(0);
    if (terms_.empty()) return zero;
    return terms_.rbegin()->second;
}

Rational Polynomial::signed_content() const {
    if (terms_.empty()) return Rational(0);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(leading_coefficient()) < 0) content = -content;
    return content;
}

Polynomial Polynomial::divided_by(const Rational& c) const {
    if (c == 0) throw DivisionByZero("polynomial content division by zero");
    Polynomial r;
    for (const auto& [m, coef] : terms_) r.terms_[m] = coef / c;
    return r;
}

QInterval Polynomial::evaluate(const std::vector<QInterval>& symbol_boxes) const {
    QInterval acc = QInterval::point(Rational(0));
    for (const auto& [m, c] : terms_) {
        QInterval term = QInterval::point(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= symbol_boxes.size()) throw Inconsistent("monomial uses undeclared symbol");
            term = term * symbol_boxes[i].pow(m[i]);
        }
        acc = acc + term;
    }
    return acc;
}

std::string Polynomial::to_string(const IrrationalBasis* basis) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << (sgn(c) >= 0 ? " + " : " - ");
        Rational a = (!first && sgn(c) < 0) ? Rational(-c) : c;
        first = false;
        bool has_vars = !m.empty();
        if (!has_vars || a != 1 || (sgn(a) < 0)) out << a.get_str();
        bool wrote = !has_vars || a != 1 || (sgn(a) < 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (wrote) out << "*";
            wrote = true;
            if (basis && i < basis->size())
                out << basis->symbol(i).name;
            else
                out << "x" << i;
            if (m[i] > 1) out << "^" << m[i];
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

BasisPtr merge_bases(const BasisPtr& a, const BasisPtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    throw Mismatch("scalars from two different irrational bases");
}

Scalar::Scalar(Polynomial num, Polynomial den, BasisPtr basis)
    : num_(std::move(num)), den_(std::move(den)), basis_(std::move(basis)) {
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    normalize();
}

Scalar Scalar::symbol(const BasisPtr& basis, std::size_t index) {
    if (!basis || index >= basis->size()) throw Mismatch("symbol index out of range");
    return Scalar(Polynomial::variable(index), Polynomial(Rational(1)), basis);
}

void Scalar::normalize() {
    Rational c = den_.signed_content();
    if (c != 1 && c != 0) {
        den_ = den_.divided_by(c);
        num_ = num_.divided_by(c);
    }
    if (num_.is_zero()) den_ = Polynomial(Rational(1));
}

Rational Scalar::as_rational() const {
    if (!is_rational()) throw Mismatch("scalar is not rational");
    return num_.constant_term() / den_.constant_term();
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (den_ == o.den_)
        return Scalar(num_ + o.num_, den_, merge_bases(basis_, o.basis_));
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_, merge_bases(basis_, o.basis_));
}

Scalar Scalar::operator-(const Scalar& o) const {
    if (den_ == o.den_)
        return Scalar(num_ - o.num_, den_, merge_bases(basis_, o.basis_));
    return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_, merge_bases(basis_, o.basis_));
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, basis_); }

Scalar Scalar::operator*(const Scalar& o) const {
    return Scalar(num_ * o.num_, den_ * o.den_, merge_bases(basis_, o.basis_));
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw DivisionByZero("scalar division by zero");
    return Scalar(num_ * o.den_, den_ * o.num_, merge_bases(basis_, o.basis_));
}

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

bool Scalar::operator==(const Scalar& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

int Scalar::sign(long max_bits) const {
    if (num_.is_zero()) return 0;
    if (is_rational()) return sgn(num_.constant_term()) * sgn(den_.constant_term());

    if (!basis_) throw AmbiguousSign("non-constant scalar without a basis");
    if (max_bits <= 0) max_bits = basis_->max_bits();

    std::vector<QInterval> boxes(basis_->size());
    QInterval last_num, last_den;
    bool have_last = false;
    for (long bits = 64;; bits *= 2) {
        bool capped = bits >= max_bits;
        long use = capped ? max_bits : bits;
        for (std::size_t i = 0; i < boxes.size(); ++i) boxes[i] = basis_->enclosure(i, use);
        QInterval n = num_.evaluate(boxes);
        QInterval d = den_.evaluate(boxes);
        int sn = n.definite_sign(), sd = d.definite_sign();
        if (sn != 0 && sd != 0) return sn * sd;
        if (have_last && n.lo == last_num.lo && n.hi == last_num.hi && d.lo == last_den.lo &&
            d.hi == last_den.hi) {
            // No progress: refiners are exhausted, bail out early.
            throw AmbiguousSign("sign not separable: " + to_string());
        }
        last_num = n;
        last_den = d;
        have_last = true;
        if (capped)
            throw AmbiguousSign("precision budget exhausted for sign of " + to_string());
    }
}

std::string Scalar::to_string() const {
    const IrrationalBasis* b = basis_.get();
    if (den_.is_constant() && den_.constant_term() == 1) return num_.to_string(b);
    return "(" + num_.to_string(b) + ")/(" + den_.to_string(b) + ")";
}

}  // namespace qtoric
