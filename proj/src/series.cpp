#include "lcft/series.hpp"

#include <map>

namespace lcft {

TowerSpecPtr TowerSpec::make1(const FieldSpec& k, int prec1, std::string n1) {
    if (prec1 < 4) fail_usage("precision window must be >= 4");
    auto s = std::shared_ptr<TowerSpec>(new TowerSpec());
    s->k = &k;
    s->level = 1;
    s->prec1 = prec1;
    s->prec2 = 0;
    s->name1 = std::move(n1);
    return s;
}

TowerSpecPtr TowerSpec::make2(const FieldSpec& k, int prec1, int prec2, std::string n1, std::string n2) {
    if (prec1 < 4 || prec2 < 4) fail_usage("precision window must be >= 4");
    auto s = std::shared_ptr<TowerSpec>(new TowerSpec());
    s->k = &k;
    s->level = 2;
    s->prec1 = prec1;
    s->prec2 = prec2;
    s->name1 = n1;
    s->name2 = std::move(n2);
    s->residue = make1(k, prec1, std::move(n1));
    return s;
}

TowerElem TowerElem::zero(TowerSpecPtr s) {
    TowerElem e;
    e.spec_ = std::move(s);
    if (e.spec_->level == 1) e.s1_ = Series1::exact_zero(e.spec_->fq_traits());
    else e.s2_ = Series2::exact_zero(e.spec_->s1_traits());
    return e;
}

TowerElem TowerElem::constant(TowerSpecPtr s, uint8_t c) {
    TowerElem e = zero(s);
    if (e.spec_->level == 1) e.s1_ = Series1::monomial(e.spec_->fq_traits(), c, 0);
    else e.s2_ = Series2::monomial(e.spec_->s1_traits(), Series1::monomial(e.spec_->fq_traits(), c, 0), 0);
    return e;
}

TowerElem TowerElem::one(TowerSpecPtr s) { return constant(std::move(s), 1); }

TowerElem TowerElem::param(TowerSpecPtr s, int which) {
    TowerElem e = zero(s);
    if (which == 2) {
        if (e.spec_->level != 2) fail_usage("no second parameter at level 1");
        e.s2_ = Series2::monomial(e.spec_->s1_traits(), Series1::monomial(e.spec_->fq_traits(), 1, 0), 1);
        return e;
    }
    if (which != 1) fail_usage("parameter index must be 1 or 2");
    if (e.spec_->level == 1) e.s1_ = Series1::monomial(e.spec_->fq_traits(), 1, 1);
    else e.s2_ = Series2::monomial(e.spec_->s1_traits(), Series1::monomial(e.spec_->fq_traits(), 1, 1), 0);
    return e;
}

TowerElem TowerElem::from_s1(TowerSpecPtr s, Series1 v) {
    if (s->level != 1) fail_usage("from_s1 needs a level-1 spec");
    TowerElem e;
    e.spec_ = std::move(s);
    e.s1_ = std::move(v);
    return e;
}

TowerElem TowerElem::from_s2(TowerSpecPtr s, Series2 v) {
    if (s->level != 2) fail_usage("from_s2 needs a level-2 spec");
    TowerElem e;
    e.spec_ = std::move(s);
    e.s2_ = std::move(v);
    return e;
}

bool TowerElem::is_exact_one() const {
    if (level() == 1) {
        return s1_.is_exact() && s1_.coeffs().size() == 1 && s1_.lead() == 0 && s1_.coeffs()[0] == 1;
    }
    const auto& c = s2_.coeffs();
    return s2_.is_exact() && c.size() == 1 && s2_.lead() == 0 && c[0].is_exact() && c[0].lead() == 0 &&
           c[0].coeffs().size() == 1 && c[0].coeffs()[0] == 1;
}

static void check_same_spec(const TowerElem& a, const TowerElem& b) {
    if (a.spec() != b.spec()) fail_usage("elements over different tower fields");
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
    check_same_spec(*this, o);
    return level() == 1 ? from_s1(spec_, s1_ + o.s1_) : from_s2(spec_, s2_ + o.s2_);
}
TowerElem TowerElem::operator-(const TowerElem& o) const {
    check_same_spec(*this, o);
    return level() == 1 ? from_s1(spec_, s1_ - o.s1_) : from_s2(spec_, s2_ - o.s2_);
}
TowerElem TowerElem::operator-() const { return level() == 1 ? from_s1(spec_, -s1_) : from_s2(spec_, -s2_); }
TowerElem TowerElem::operator*(const TowerElem& o) const {
    check_same_spec(*this, o);
    return level() == 1 ? from_s1(spec_, s1_ * o.s1_) : from_s2(spec_, s2_ * o.s2_);
}
TowerElem TowerElem::inverse() const {
    return level() == 1 ? from_s1(spec_, s1_.inverse(spec_->prec1)) : from_s2(spec_, s2_.inverse(spec_->prec2));
}
TowerElem TowerElem::pow(long e) const {
    return level() == 1 ? from_s1(spec_, s1_.pow(e, spec_->prec1)) : from_s2(spec_, s2_.pow(e, spec_->prec2));
}
TowerElem TowerElem::scaled(uint8_t c) const {
    if (level() == 1) return from_s1(spec_, s1_.scaled(c));
    Series1 cc = Series1::monomial(spec_->fq_traits(), c, 0);
    return from_s2(spec_, s2_.scaled(cc));
}

Series1 TowerElem::coeff_top(long j) const {
    if (level() != 2) fail_usage("coeff_top needs a level-2 element");
    auto [v, known] = s2_.coeff(j);
    if (!known) fail_precision("top coefficient at exponent " + std::to_string(j) + " is not certified");
    return v;
}

TowerElem TowerElem::truncated(long end_top) const {
    return level() == 1 ? from_s1(spec_, s1_.truncated(end_top)) : from_s2(spec_, s2_.truncated(end_top));
}

TowerElem TowerElem::shifted_top(int n) const {
    return level() == 1 ? from_s1(spec_, s1_.shifted(n)) : from_s2(spec_, s2_.shifted(n));
}

// rebuild a level-2 series with transformed coefficients (transform must map
// exact zero to exact zero)
template <class F>
static Series2 map_coeffs(const Series2& s, const S1Coeff& tr, F&& f) {
    std::vector<Series1> out;
    out.reserve(s.coeffs().size());
    for (const auto& c : s.coeffs()) out.push_back(f(c));
    return Series2::from_coeffs(tr, s.lead(), std::move(out), s.known_end());
}

TowerElem TowerElem::shifted_t1(int n) const {
    if (level() == 1) return from_s1(spec_, s1_.shifted(n));
    return from_s2(spec_, map_coeffs(s2_, spec_->s1_traits(), [&](const Series1& c) { return c.shifted(n); }));
}

TowerElem TowerElem::derivative(int which) const {
    if (level() == 1) {
        if (which != 1) fail_usage("level-1 elements only have a t1-derivative");
        return from_s1(spec_, s1_.derivative());
    }
    if (which == 2) return from_s2(spec_, s2_.derivative());
    if (which != 1) fail_usage("derivative index must be 1 or 2");
    return from_s2(spec_, map_coeffs(s2_, spec_->s1_traits(), [&](const Series1& c) { return c.derivative(); }));
}

TowerElem TowerElem::reduce_to_residue() const {
    if (level() != 2) fail_usage("reduce_to_residue needs a level-2 element");
    if (certified_nonzero() && s2_.lead() < 0) fail_usage("reduction requires outer valuation >= 0");
    auto [v, known] = s2_.coeff(0);
    if (!known) fail_precision("constant top coefficient is not certified");
    return from_s1(spec_->residue, v);
}

Fq TowerElem::reduce_to_constant() const {
    if (level() != 1) fail_usage("reduce_to_constant needs a level-1 element");
    if (certified_nonzero() && s1_.lead() < 0) fail_usage("reduction requires valuation >= 0");
    return Fq(s1_.coeff_checked(0), spec_->k);
}

Decomp TowerElem::decompose() const {
    Decomp d;
    const FieldSpec* k = spec_->k;
    if (level() == 1) {
        d.a1 = s1_.valuation();
        uint8_t kappa = s1_.coeffs().front();
        d.c = k->log(kappa);
        d.unit = from_s1(spec_, s1_.shifted(-d.a1).scaled(k->inv(kappa)));
        return d;
    }
    d.a2 = s2_.valuation();
    const Series1& lc = s2_.coeffs().front();
    if (!lc.certified_nonzero()) fail_precision("leading top coefficient is indistinguishable from zero");
    d.a1 = lc.valuation();
    uint8_t kappa = lc.coeffs().front();
    d.c = k->log(kappa);
    d.unit = shifted_top(-d.a2).shifted_t1(-d.a1).scaled(k->inv(kappa));
    return d;
}

TowerElem TowerElem::map_constants(TowerSpecPtr to) const {
    if (to->level != level()) fail_usage("constant mapping must preserve the tower level");
    const FieldSpec& from_k = *spec_->k;
    const FieldSpec& to_k = *to->k;
    auto map1 = [&](const Series1& s) {
        std::vector<uint8_t> out;
        out.reserve(s.coeffs().size());
        for (uint8_t c : s.coeffs()) out.push_back(FieldSpec::embed(from_k, to_k, c));
        return Series1::from_coeffs(FqCoeff{&to_k}, s.lead(), std::move(out), s.known_end());
    };
    if (level() == 1) return from_s1(to, map1(s1_));
    std::vector<Series1> out;
    out.reserve(s2_.coeffs().size());
    for (const auto& c : s2_.coeffs()) out.push_back(map1(c));
    return from_s2(to, Series2::from_coeffs(to->s1_traits(), s2_.lead(), std::move(out), s2_.known_end()));
}

TowerElem TowerElem::descend_constants(TowerSpecPtr to) const {
    if (to->level != level()) fail_usage("constant mapping must preserve the tower level");
    const FieldSpec& from_k = *spec_->k;
    const FieldSpec& to_k = *to->k;
    auto map1 = [&](const Series1& s) {
        std::vector<uint8_t> out;
        out.reserve(s.coeffs().size());
        for (uint8_t c : s.coeffs()) {
            auto r = FieldSpec::descend(from_k, to_k, c);
            if (!r) fail(ErrKind::rewrite_failure, "coefficient does not lie in the base constant field");
            out.push_back(*r);
        }
        return Series1::from_coeffs(FqCoeff{&to_k}, s.lead(), std::move(out), s.known_end());
    };
    if (level() == 1) return from_s1(to, map1(s1_));
    std::vector<Series1> out;
    out.reserve(s2_.coeffs().size());
    for (const auto& c : s2_.coeffs()) out.push_back(map1(c));
    return from_s2(to, Series2::from_coeffs(to->s1_traits(), s2_.lead(), std::move(out), s2_.known_end()));
}

bool TowerElem::eq_known(const TowerElem& o) const {
    if (spec_->level != o.spec_->level) return false;
    return level() == 1 ? s1_.eq_known(o.s1_) : s2_.eq_known(o.s2_);
}

Fq residue_2form(const TowerElem& beta, const TowerElem& f, const TowerElem& g) {
    if (f.level() != 2) fail_usage("residue_2form needs level-2 elements");
    if (!f.certified_nonzero() || !g.certified_nonzero())
        fail_precision("residue_2form needs certified nonzero arguments");
    TowerElem num = f.derivative(1) * g.derivative(2) - f.derivative(2) * g.derivative(1);
    TowerElem w = beta * num * (f * g).inverse();
    Series1 at = w.coeff_top(-1);
    return Fq(at.coeff_checked(-1), f.spec()->k);
}

Fq residue_1form(const TowerElem& beta, const TowerElem& f) {
    if (f.level() != 1) fail_usage("residue_1form needs level-1 elements");
    if (!f.certified_nonzero()) fail_precision("residue_1form needs a certified nonzero argument");
    TowerElem w = beta * f.derivative(1) * f.inverse();
    return Fq(w.s1().coeff_checked(-1), f.spec()->k);
}

namespace {

class PowerCache {
  public:
    explicit PowerCache(TowerElem base) : base_(std::move(base)) {}
    const TowerElem& get(long e) {
        auto it = cache_.find(e);
        if (it != cache_.end()) return it->second;
        TowerElem v = base_.pow(e);
        return cache_.emplace(e, std::move(v)).first->second;
    }

  private:
    TowerElem base_;
    std::map<long, TowerElem> cache_;
};

// sum of c_e * im1^e over the target spec; clamps knowledge against f's tail
TowerElem subst_series1(const Series1& f, TowerSpecPtr target, PowerCache& p1) {
    TowerElem acc = TowerElem::zero(target);
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        uint8_t c = f.coeffs()[i];
        if (c == 0) continue;
        acc = acc + p1.get(f.lead() + long(i)).scaled(c);
    }
    if (!f.is_exact()) {
        const TowerElem& im = p1.get(1);
        long v1 = im.level() == 1 ? im.s1().valuation() : im.v_top();
        acc = acc.truncated(v1 * f.known_end());
    }
    return acc;
}

} // namespace

TowerElem substitute1(const TowerElem& f, TowerSpecPtr target, const TowerElem& im1) {
    if (f.level() != 1) fail_usage("substitute1 needs a level-1 element");
    if (f.spec()->k != target->k) fail_usage("substitute: map constants to the target field first");
    if (im1.spec() != target) fail_usage("substitute: image lives over the wrong field");
    if (!im1.certified_nonzero()) fail(ErrKind::usage, "InvalidImage: parameter image must be certified nonzero");
    if (im1.level() == 1 && im1.s1().valuation() < 1)
        fail(ErrKind::usage, "InvalidImage: image of a local parameter needs valuation >= 1");
    PowerCache p1(im1);
    return subst_series1(f.s1(), target, p1);
}

TowerElem substitute(const TowerElem& f, TowerSpecPtr target, const TowerElem& im1, const TowerElem& im2) {
    if (f.level() == 1) {
        TowerElem r = substitute1(f, im1.level() == 1 && target->level == 2 ? target->residue : target, im1);
        if (target->level == 2 && r.level() == 1)
            return TowerElem::from_s2(target, Series2::monomial(target->s1_traits(), r.s1(), 0));
        return r;
    }
    if (f.spec()->k != target->k) fail_usage("substitute: map constants to the target field first");
    if (target->level != 2) fail_usage("substitute: level-2 input needs a level-2 target");
    if (im1.spec() != target->residue || im2.spec() != target)
        fail_usage("substitute: images live over the wrong field");
    if (!im1.certified_nonzero() || !im2.certified_nonzero())
        fail(ErrKind::usage, "InvalidImage: parameter images must be certified nonzero");
    if (im1.s1().valuation() < 1 || im2.v_top() < 1)
        fail(ErrKind::usage, "InvalidImage: images of local parameters need positive valuation");

    PowerCache p1(im1), p2(im2);
    TowerElem acc = TowerElem::zero(target);
    const Series2& s = f.s2();
    for (size_t j = 0; j < s.coeffs().size(); ++j) {
        const Series1& cj = s.coeffs()[j];
        if (cj.is_exact_zero()) continue;
        TowerElem aj = subst_series1(cj, target->residue, p1);
        TowerElem lifted = TowerElem::from_s2(target, Series2::monomial(target->s1_traits(), aj.s1(), 0));
        acc = acc + lifted * p2.get(s.lead() + long(j));
    }
    if (!s.is_exact()) acc = acc.truncated(im2.v_top() * s.known_end());
    return acc;
}

} // namespace lcft
