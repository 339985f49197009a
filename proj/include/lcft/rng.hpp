#ifndef LCFT_RNG_HPP
#define LCFT_RNG_HPP

#include <random>

#include "lcft/series.hpp"

namespace lcft {

// seeded rng wrapper; every property suite draws from one of these so that
// runs are reproducible bit for bit
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    uint8_t fq(const FieldSpec& k) { return uint8_t(uniform(0, k.q - 1)); }
    uint8_t fq_nonzero(const FieldSpec& k) { return uint8_t(uniform(1, k.q - 1)); }
    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

// principal unit 1 + (terms of positive valuation), exact
inline TowerElem random_principal_unit(TowerSpecPtr spec, Rng& rng, int spread = 3) {
    TowerElem u = TowerElem::one(spec);
    int nterms = int(rng.uniform(1, 3));
    for (int t = 0; t < nterms; ++t) {
        int e1 = int(rng.uniform(spec->level == 2 ? 0 : 1, spread));
        int e2 = spec->level == 2 ? int(rng.uniform(e1 > 0 ? 0 : 1, spread)) : 0;
        TowerElem term = TowerElem::constant(spec, rng.fq_nonzero(*spec->k)).shifted_t1(e1);
        if (spec->level == 2) term = term.shifted_top(e2);
        u = u + term;
    }
    return u;
}

// theta^c * t1^a1 * t2^a2 * principal unit, exact and certified nonzero
inline TowerElem random_nonzero(TowerSpecPtr spec, Rng& rng, int vmin = -2, int vmax = 2) {
    TowerElem x = random_principal_unit(spec, rng).scaled(rng.fq_nonzero(*spec->k));
    x = x.shifted_t1(int(rng.uniform(vmin, vmax)));
    if (spec->level == 2) x = x.shifted_top(int(rng.uniform(vmin, vmax)));
    return x;
}

} // namespace lcft

#endif
