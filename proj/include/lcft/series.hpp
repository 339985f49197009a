#ifndef LCFT_SERIES_HPP
#define LCFT_SERIES_HPP

#include <algorithm>
#include <climits>
#include <memory>
#include <string>
#include <vector>

#include "lcft/fq.hpp"

namespace lcft {

// Knowledge model for truncated Laurent series.
//
// A series is either exact (the stored coefficients are all of it) or
// approximate. An approximate series is certified zero below `lead`, has
// stored coefficients on [lead, end), and is unknown from `end` on. If all
// stored coefficients cancelled, the series is "zero so far": zero below
// `end`, unknown after, and not usable where a certified nonzero is required.
inline constexpr long kExactEnd = LONG_MAX / 4;

inline long kend_add(long a, long b) {
    if (a >= kExactEnd || b >= kExactEnd) return kExactEnd;
    return a + b;
}

template <class Traits>
class SeriesT {
  public:
    using value_type = typename Traits::value;

    SeriesT() = default;

    static SeriesT exact_zero(const Traits& tr) {
        SeriesT s;
        s.tr_ = tr;
        s.exact_ = true;
        s.lead_ = 0;
        s.end_ = kExactEnd;
        return s;
    }

    static SeriesT monomial(const Traits& tr, value_type coeff, int exponent) {
        SeriesT s = exact_zero(tr);
        if (!tr.is_exact_zero(coeff)) {
            s.lead_ = exponent;
            s.c_.push_back(std::move(coeff));
        }
        return s;
    }

    static SeriesT zero_so_far(const Traits& tr, long end) {
        SeriesT s;
        s.tr_ = tr;
        s.exact_ = false;
        s.lead_ = int(end);
        s.end_ = end;
        return s;
    }

    static SeriesT from_coeffs(const Traits& tr, int lead, std::vector<value_type> coeffs, long end = kExactEnd) {
        SeriesT s;
        s.tr_ = tr;
        s.exact_ = end >= kExactEnd;
        s.lead_ = lead;
        s.end_ = end;
        s.c_ = std::move(coeffs);
        if (!s.exact_ && long(s.c_.size()) != end - lead) fail_usage("coefficient span does not match knowledge window");
        s.normalize();
        return s;
    }

    const Traits& traits() const { return tr_; }
    bool is_exact() const { return exact_; }
    int lead() const { return lead_; }
    long known_end() const { return exact_ ? kExactEnd : end_; }
    const std::vector<value_type>& coeffs() const { return c_; }
    bool stored_empty() const { return c_.empty(); }

    // certified zero as an element
    bool is_exact_zero() const { return exact_ && c_.empty(); }
    // all known coefficients vanish but the tail is unknown
    bool is_zero_so_far() const { return !exact_ && c_.empty(); }
    bool known_zero() const { return c_.empty(); }
    // the leading stored coefficient certifies a valuation
    bool certified_nonzero() const { return !c_.empty() && tr_.is_certified_nonzero(c_.front()); }
    bool leading_uncertain() const { return !c_.empty() && !tr_.is_certified_nonzero(c_.front()); }

    // certified valuation; fails on zero-so-far / uncertain leading coefficient
    int valuation() const {
        if (is_exact_zero()) fail(ErrKind::division_by_zero, "valuation of exact zero");
        if (!certified_nonzero())
            fail_precision("element is indistinguishable from zero at current precision");
        return lead_;
    }

    // first exponent that may carry content (for window arithmetic); kExactEnd if none known
    long content_start() const { return c_.empty() ? kExactEnd : lead_; }

    std::pair<value_type, bool> coeff(long j) const {
        bool known = exact_ || j < end_;
        if (j < lead_ || j >= lead_ + long(c_.size())) return {tr_.zero(), known};
        return {c_[size_t(j - lead_)], known};
    }

    value_type coeff_checked(long j) const {
        auto [v, known] = coeff(j);
        if (!known) fail_precision("coefficient at exponent " + std::to_string(j) + " is outside the certified window");
        return v;
    }

    SeriesT truncated(long new_end) const {
        if (known_end() <= new_end) return *this;
        SeriesT s;
        s.tr_ = tr_;
        s.exact_ = false;
        s.end_ = new_end;
        long s0 = std::min<long>(lead_, new_end);
        s.lead_ = int(s0);
        for (long j = s0; j < new_end; ++j) s.c_.push_back(coeff(j).first);
        s.normalize();
        return s;
    }

    SeriesT shifted(int n) const {
        SeriesT s = *this;
        s.lead_ += n;
        if (!s.exact_) s.end_ += n;
        return s;
    }

    SeriesT operator-() const {
        SeriesT s = *this;
        for (auto& x : s.c_) x = tr_.neg(x);
        return s; // negation cannot create new zero coefficients
    }

    SeriesT operator+(const SeriesT& o) const {
        const Traits& tr = tr_;
        if (exact_ && o.exact_) {
            if (c_.empty()) return o;
            if (o.c_.empty()) return *this;
            long s0 = std::min<long>(lead_, o.lead_);
            long s1 = std::max<long>(lead_ + long(c_.size()), o.lead_ + long(o.c_.size()));
            SeriesT r;
            r.tr_ = tr;
            r.exact_ = true;
            r.end_ = kExactEnd;
            r.lead_ = int(s0);
            for (long j = s0; j < s1; ++j) r.c_.push_back(tr.add(coeff(j).first, o.coeff(j).first));
            r.normalize();
            return r;
        }
        long end = std::min(known_end(), o.known_end());
        long s0 = std::min(std::min(content_start(), o.content_start()), end);
        SeriesT r;
        r.tr_ = tr;
        r.exact_ = false;
        r.end_ = end;
        r.lead_ = int(s0);
        for (long j = s0; j < end; ++j) r.c_.push_back(tr.add(coeff(j).first, o.coeff(j).first));
        r.normalize();
        return r;
    }

    SeriesT operator-(const SeriesT& o) const { return *this + (-o); }

    SeriesT operator*(const SeriesT& o) const {
        const Traits& tr = tr_;
        if (is_exact_zero() || o.is_exact_zero()) return exact_zero(tr);
        long end;
        if (exact_ && o.exact_) {
            end = kExactEnd;
        } else {
            long ua = known_end(), ub = o.known_end();
            long ma = std::min(content_start(), ua), mb = std::min(o.content_start(), ub);
            end = std::min(kend_add(ua, mb), kend_add(ub, ma));
        }
        long s0 = kend_add(content_start(), o.content_start());
        SeriesT r;
        r.tr_ = tr;
        r.exact_ = end >= kExactEnd;
        r.end_ = end;
        if (s0 >= end) {
            r.lead_ = int(std::min<long>(end, kExactEnd / 2));
            if (r.exact_) r.lead_ = 0;
            return r; // nothing known beyond zeros
        }
        long s1 = end;
        if (r.exact_) s1 = kend_add(lead_ + long(c_.size()), o.lead_ + long(o.c_.size())) - 1;
        r.lead_ = int(s0);
        r.c_.assign(size_t(s1 - s0), tr.zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (tr.is_exact_zero(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                long k = lead_ + long(i) + o.lead_ + long(j);
                if (k >= s1) break;
                auto& slot = r.c_[size_t(k - s0)];
                slot = tr.add(slot, tr.mul(c_[i], o.c_[j]));
            }
        }
        r.normalize();
        return r;
    }

    // multiplicative inverse; `hint` is the relative window used when *this is exact
    // and not a monomial (an exact inverse would be infinite)
    SeriesT inverse(long hint) const {
        const Traits& tr = tr_;
        if (is_exact_zero()) fail(ErrKind::division_by_zero, "inverse of exact zero");
        if (!certified_nonzero())
            fail_precision("cannot invert: leading term is not certified nonzero");
        if (exact_ && c_.size() == 1)
            return monomial(tr, tr.inv(c_.front(), hint), -lead_);
        long w = exact_ ? hint : end_ - lead_;
        if (w < 1) fail_precision("no guaranteed terms left for inversion");
        SeriesT r;
        r.tr_ = tr;
        r.exact_ = false;
        r.lead_ = -lead_;
        r.end_ = -lead_ + w;
        r.c_.reserve(size_t(w));
        value_type lead_inv = tr.inv(c_.front(), hint);
        r.c_.push_back(lead_inv);
        for (long k = 1; k < w; ++k) {
            value_type acc = tr.zero();
            for (long i = 1; i <= k && i < long(c_.size()); ++i)
                acc = tr.add(acc, tr.mul(c_[size_t(i)], r.c_[size_t(k - i)]));
            r.c_.push_back(tr.neg(tr.mul(lead_inv, acc)));
        }
        r.normalize_trailing_only();
        return r;
    }

    SeriesT pow(long e, long hint) const {
        const Traits& tr = tr_;
        if (e == 0) return monomial(tr, tr.one(), 0);
        SeriesT base = e < 0 ? inverse(hint) : *this;
        unsigned long long m = e < 0 ? (unsigned long long)(-(e + 1)) + 1 : (unsigned long long)e;
        SeriesT acc = monomial(tr, tr.one(), 0);
        while (m > 0) {
            if (m & 1) acc = acc * base;
            base = (m >>= 1) ? base * base : base;
        }
        return acc;
    }

    // formal derivative d/dt in characteristic p
    SeriesT derivative() const {
        const Traits& tr = tr_;
        SeriesT r;
        r.tr_ = tr;
        r.exact_ = exact_;
        r.lead_ = lead_ - 1;
        r.end_ = exact_ ? kExactEnd : end_ - 1;
        r.c_.reserve(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r.c_.push_back(tr.scal_int(c_[i], lead_ + long(i)));
        r.normalize();
        return r;
    }

    // scale by a certified-nonzero coefficient (or zero, giving exact zero)
    SeriesT scaled(const value_type& a) const {
        const Traits& tr = tr_;
        if (tr.is_exact_zero(a)) return exact_zero(tr);
        SeriesT r = *this;
        for (auto& x : r.c_) x = tr.mul(x, a);
        r.normalize();
        return r;
    }

    // stored representations agree on the intersection of the knowledge windows
    bool eq_known(const SeriesT& o) const {
        long end = std::min(known_end(), o.known_end());
        long s0 = std::min(std::min(content_start(), o.content_start()), end);
        for (long j = s0; j < end; ++j)
            if (!tr_.eq(coeff(j).first, o.coeff(j).first)) return false;
        return true;
    }

    // exact elements with identical support and coefficients
    bool eq_exact(const SeriesT& o) const {
        return exact_ && o.exact_ && lead_ == o.lead_ && c_.size() == o.c_.size() &&
               [&] {
                   for (size_t i = 0; i < c_.size(); ++i)
                       if (!tr_.eq(c_[i], o.c_[i])) return false;
                   return true;
               }();
    }

  private:
    void normalize() {
        const Traits& tr = tr_;
        // absorb leading exact zeros into the certified-zero prefix
        while (!c_.empty() && tr.is_exact_zero(c_.front())) {
            c_.erase(c_.begin());
            ++lead_;
        }
        if (exact_) {
            while (!c_.empty() && tr.is_exact_zero(c_.back())) c_.pop_back();
            if (c_.empty()) lead_ = 0;
            end_ = kExactEnd;
        } else {
            if (c_.empty()) lead_ = int(std::min<long>(end_, kExactEnd / 2));
        }
        if (c_.size() > 100000) fail_usage("series support grew past the safety cap");
    }
    void normalize_trailing_only() {
        if (exact_) {
            while (!c_.empty() && tr_.is_exact_zero(c_.back())) c_.pop_back();
        }
    }

    Traits tr_{};
    bool exact_ = true;
    int lead_ = 0;
    long end_ = kExactEnd;
    std::vector<value_type> c_;
};

// level-1 coefficients: exact GF(q) values
struct FqCoeff {
    const FieldSpec* k = nullptr;
    using value = uint8_t;
    value zero() const { return 0; }
    value one() const { return 1; }
    bool is_exact_zero(value a) const { return a == 0; }
    bool is_certified_nonzero(value a) const { return a != 0; }
    bool eq(value a, value b) const { return a == b; }
    value add(value a, value b) const { return k->add(a, b); }
    value neg(value a) const { return k->neg(a); }
    value mul(value a, value b) const { return k->mul(a, b); }
    value inv(value a, long) const { return k->inv(a); }
    value scal_int(value a, long n) const { return k->mul(a, k->from_int(n)); }
};

using Series1 = SeriesT<FqCoeff>;

// level-2 coefficients: level-1 series with their own windows
struct S1Coeff {
    const FieldSpec* k = nullptr;
    long inner_hint = 24;
    using value = Series1;
    value zero() const { return Series1::exact_zero(FqCoeff{k}); }
    value one() const { return Series1::monomial(FqCoeff{k}, 1, 0); }
    bool is_exact_zero(const value& a) const { return a.is_exact_zero(); }
    bool is_certified_nonzero(const value& a) const { return a.certified_nonzero(); }
    bool eq(const value& a, const value& b) const { return a.eq_known(b); }
    value add(const value& a, const value& b) const { return a + b; }
    value neg(const value& a) const { return -a; }
    value mul(const value& a, const value& b) const { return a * b; }
    value inv(const value& a, long) const { return a.inverse(inner_hint); }
    value scal_int(const value& a, long n) const { return a.scaled(k->from_int(n)); }
};

using Series2 = SeriesT<S1Coeff>;

class TowerSpec;
using TowerSpecPtr = std::shared_ptr<const TowerSpec>;

// F_q((t1)) for level 1, F_q((t1))((t2)) for level 2, with per-level default
// relative precision windows and parameter names.
class TowerSpec : public std::enable_shared_from_this<TowerSpec> {
  public:
    static TowerSpecPtr make1(const FieldSpec& k, int prec1 = 24, std::string n1 = "t1");
    static TowerSpecPtr make2(const FieldSpec& k, int prec1 = 24, int prec2 = 24, std::string n1 = "t1",
                              std::string n2 = "t2");

    const FieldSpec* k;
    int level;
    int prec1, prec2;
    std::string name1, name2;
    TowerSpecPtr residue; // level-1 spec under a level-2 spec

    FqCoeff fq_traits() const { return FqCoeff{k}; }
    S1Coeff s1_traits() const { return S1Coeff{k, prec1}; }

  private:
    TowerSpec() = default;
};

struct Decomp; // canonical decomposition, defined below TowerElem

// An element of the tower field, wrapping the level-appropriate series type.
class TowerElem {
  public:
    TowerElem() = default;

    static TowerElem zero(TowerSpecPtr s);
    static TowerElem one(TowerSpecPtr s);
    static TowerElem constant(TowerSpecPtr s, uint8_t c);
    static TowerElem param(TowerSpecPtr s, int which); // 1 or 2
    static TowerElem from_s1(TowerSpecPtr s, Series1 v);
    static TowerElem from_s2(TowerSpecPtr s, Series2 v);

    const TowerSpecPtr& spec() const { return spec_; }
    int level() const { return spec_->level; }
    const Series1& s1() const { return s1_; }
    const Series2& s2() const { return s2_; }

    bool is_exact() const { return level() == 1 ? s1_.is_exact() : s2_.is_exact(); }
    bool is_exact_zero() const { return level() == 1 ? s1_.is_exact_zero() : s2_.is_exact_zero(); }
    bool known_zero() const { return level() == 1 ? s1_.known_zero() : s2_.known_zero(); }
    bool certified_nonzero() const { return level() == 1 ? s1_.certified_nonzero() : s2_.certified_nonzero(); }
    bool is_exact_one() const;

    TowerElem operator+(const TowerElem& o) const;
    TowerElem operator-(const TowerElem& o) const;
    TowerElem operator-() const;
    TowerElem operator*(const TowerElem& o) const;
    TowerElem inverse() const;
    TowerElem pow(long e) const;
    TowerElem scaled(uint8_t c) const;

    // outer (top-parameter) valuation, certified
    int v_top() const { return level() == 1 ? s1_.valuation() : s2_.valuation(); }

    // coefficient of the top parameter at exponent j
    Series1 coeff_top(long j) const;

    TowerElem truncated(long end_top) const;
    TowerElem shifted_top(int n) const;  // * t_top^n
    TowerElem shifted_t1(int n) const;   // * t1^n (both levels)
    TowerElem derivative(int which) const;

    // constant-coefficient reduction O -> K_{n-1}: level 2 -> level-1 element
    TowerElem reduce_to_residue() const;
    // residue of a level-1 element (constant term), requires v >= 0
    Fq reduce_to_constant() const;

    Decomp decompose() const;

    // coefficientwise constant-field embedding onto a spec with the same shape
    TowerElem map_constants(TowerSpecPtr to) const;
    // partial inverse of map_constants; fails if a coefficient is outside the subfield
    TowerElem descend_constants(TowerSpecPtr to) const;

    bool eq_known(const TowerElem& o) const;

    std::string str() const;

  private:
    TowerSpecPtr spec_;
    Series1 s1_;
    Series2 s2_;
};

// f = t2^a2 * t1^a1 * theta^c * u with u a principal unit (level 1: no a2)
struct Decomp {
    int a2 = 0;
    int a1 = 0;
    int c = 0; // in [0, q-2]
    TowerElem unit;
};

Fq residue_2form(const TowerElem& beta, const TowerElem& f, const TowerElem& g);
Fq residue_1form(const TowerElem& beta, const TowerElem& f);

// substitution t1 -> im1, t2 -> im2 (im2 ignored for level-1 input); images live
// over `target`; the image of a parameter must be certified nonzero with the
// valuation profile of a parameter of the same level
TowerElem substitute(const TowerElem& f, TowerSpecPtr target, const TowerElem& im1, const TowerElem& im2);
TowerElem substitute1(const TowerElem& f, TowerSpecPtr target, const TowerElem& im1);

} // namespace lcft

#endif
