#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lcft/fq.hpp"

using namespace lcft;

namespace {

// independent oracle: plain polynomial arithmetic mod (p, modulus)
struct NaiveField {
    int p, d;
    std::vector<int> mod;
    explicit NaiveField(const FieldSpec& k) : p(k.p), d(k.d), mod(k.modulus) {}

    std::vector<int> unpack(int idx) const {
        std::vector<int> c(d, 0);
        for (int i = 0; i < d; ++i) {
            c[i] = idx % p;
            idx /= p;
        }
        return c;
    }
    int pack(const std::vector<int>& c) const {
        int idx = 0;
        for (int i = d - 1; i >= 0; --i) idx = idx * p + (i < int(c.size()) ? c[i] : 0);
        return idx;
    }
    int add(int a, int b) const {
        auto x = unpack(a), y = unpack(b);
        for (int i = 0; i < d; ++i) x[i] = (x[i] + y[i]) % p;
        return pack(x);
    }
    int mul(int a, int b) const {
        auto x = unpack(a), y = unpack(b);
        std::vector<int> r(2 * d, 0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
        for (int k = 2 * d - 1; k >= d; --k) {
            int lead = r[k];
            if (lead == 0) continue;
            r[k] = 0;
            for (int i = 0; i < d; ++i) r[k - d + i] = ((r[k - d + i] - lead * mod[i]) % p + p) % p;
        }
        r.resize(d);
        return pack(r);
    }
    int pw(int a, long long e) const {
        int r = 1;
        for (long long i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }
};

} // namespace

TEST_CASE("field axioms against naive oracle, exhaustive for small q") {
    for (auto [p, d] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
        const FieldSpec& k = FieldSpec::get(p, d);
        NaiveField nf(k);
        for (int x = 0; x < k.q; ++x)
            for (int y = 0; y < k.q; ++y) {
                CHECK(k.add(uint8_t(x), uint8_t(y)) == nf.add(x, y));
                CHECK(k.mul(uint8_t(x), uint8_t(y)) == nf.mul(x, y));
            }
    }
}

TEST_CASE("moduli and generators are the documented ones") {
    CHECK(FieldSpec::get(2, 1).modulus == std::vector<int>{1, 1}); // z + 1
    CHECK(FieldSpec::get(3, 1).theta() == 2);
    CHECK(FieldSpec::get(2, 2).modulus == std::vector<int>{1, 1, 1}); // z^2+z+1
    CHECK(FieldSpec::get(3, 2).modulus == std::vector<int>{2, 1, 1}); // z^2+z+2
    CHECK(FieldSpec::get(2, 4).modulus == std::vector<int>{1, 1, 0, 0, 1}); // z^4+z+1
}

TEST_CASE("theta has full order and exp/log invert each other") {
    for (auto [p, d] : {std::pair{2, 1}, {2, 2}, {2, 4}, {2, 8}, {3, 2}, {5, 2}, {13, 1}}) {
        const FieldSpec& k = FieldSpec::get(p, d);
        CHECK(k.order(k.theta()) == k.q - 1);
        for (int e = 0; e <= k.q - 2; ++e) CHECK(k.log(k.exp(e)) == e);
        CHECK_THROWS_AS((void)k.log(0), Error);
    }
}

TEST_CASE("frobenius") {
    const FieldSpec& f4 = FieldSpec::get(2, 2);
    uint8_t th = f4.theta();
    CHECK(f4.frobenius(th, 0) == th);
    CHECK(f4.frobenius(th, 1) == f4.mul(th, th));
    CHECK(f4.frobenius(th, 1) == f4.add(th, 1)); // theta^2 = theta + 1 under z^2+z+1
    for (auto [p, d] : {std::pair{2, 3}, {3, 2}, {5, 1}}) {
        const FieldSpec& k = FieldSpec::get(p, d);
        for (int x = 0; x < k.q; ++x) {
            CHECK(k.frobenius(uint8_t(x), k.d) == x);
            CHECK(k.frobenius(k.frobenius(uint8_t(x), 1), -1) == x);
            // additivity of frobenius
            for (int y = 0; y < k.q; ++y)
                CHECK(k.frobenius(k.add(uint8_t(x), uint8_t(y)), 1) ==
                      k.add(k.frobenius(uint8_t(x), 1), k.frobenius(uint8_t(y), 1)));
        }
    }
}

TEST_CASE("trace to prime subfield") {
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    CHECK(f2.trace(1) == 1);
    const FieldSpec& f4 = FieldSpec::get(2, 2);
    CHECK(f4.trace(f4.theta()) == 1); // theta + theta^2 = 1
    for (auto [p, d] : {std::pair{2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
        const FieldSpec& k = FieldSpec::get(p, d);
        // GF(p)-linear and surjective; Artin-Schreier kernel
        bool hit[13] = {false};
        for (int x = 0; x < k.q; ++x) {
            hit[k.trace(uint8_t(x))] = true;
            uint8_t pth = k.pow(uint8_t(x), k.p);
            CHECK(k.trace(k.sub(pth, uint8_t(x))) == 0);
            for (int y = 0; y < k.q; ++y)
                CHECK(k.trace(k.add(uint8_t(x), uint8_t(y))) == (k.trace(uint8_t(x)) + k.trace(uint8_t(y))) % k.p);
        }
        for (int c = 0; c < k.p; ++c) CHECK(hit[c]);
        CHECK(k.trace(k.trace_one()) == 1);
    }
}

TEST_CASE("discrete log examples") {
    const FieldSpec& f4 = FieldSpec::get(2, 2);
    CHECK(f4.log(1) == 0);
    CHECK(f4.log(f4.theta()) == 1);
    CHECK(f4.log(f4.add(f4.theta(), 1)) == 2); // theta^2 = theta+1
}

TEST_CASE("norms to subfields") {
    const FieldSpec& f4 = FieldSpec::get(2, 2);
    CHECK(f4.norm_to(1, f4.theta()) == 1); // theta * theta^2 = theta^3 = 1
    for (auto [p, d, m] : {std::tuple{2, 4, 2}, {2, 4, 1}, {3, 2, 1}, {2, 3, 1}}) {
        const FieldSpec& k = FieldSpec::get(p, d);
        const FieldSpec& sub = FieldSpec::get(p, m);
        NaiveField nf(k);
        bool hit[256] = {false};
        for (int x = 1; x < k.q; ++x) {
            // oracle: product of conjugates
            int prod = 1, cur = x;
            for (int j = 0; j < d / m; ++j) {
                prod = nf.mul(prod, cur);
                cur = nf.pw(cur, sub.q);
            }
            uint8_t nx = k.norm_to(m, uint8_t(x));
            CHECK(FieldSpec::embed(sub, k, nx) == prod);
            hit[nx] = true;
        }
        for (int c = 1; c < sub.q; ++c) CHECK(hit[c]); // surjective onto the subfield units
        CHECK(k.norm_to(m, 0) == 0);
    }
}

TEST_CASE("embed/descend are inverse ring maps") {
    std::mt19937_64 rng(7);
    for (auto [p, d, D] : {std::tuple{2, 1, 4}, {2, 2, 4}, {2, 2, 8}, {3, 1, 2}, {3, 2, 4}, {5, 1, 2}}) {
        const FieldSpec& s = FieldSpec::get(p, d);
        const FieldSpec& b = FieldSpec::get(p, D);
        for (int x = 0; x < s.q; ++x) {
            uint8_t up = FieldSpec::embed(s, b, uint8_t(x));
            auto back = FieldSpec::descend(b, s, up);
            REQUIRE(back.has_value());
            CHECK(*back == x);
            for (int y = 0; y < s.q; ++y) {
                CHECK(FieldSpec::embed(s, b, s.add(uint8_t(x), uint8_t(y))) ==
                      b.add(FieldSpec::embed(s, b, uint8_t(x)), FieldSpec::embed(s, b, uint8_t(y))));
                CHECK(FieldSpec::embed(s, b, s.mul(uint8_t(x), uint8_t(y))) ==
                      b.mul(FieldSpec::embed(s, b, uint8_t(x)), FieldSpec::embed(s, b, uint8_t(y))));
            }
        }
        // membership test: x in subfield iff x^(q_small) = x
        for (int x = 0; x < b.q; ++x) {
            bool in_sub = b.pow(uint8_t(x), s.q) == x;
            CHECK(FieldSpec::descend(b, s, uint8_t(x)).has_value() == in_sub);
        }
    }
}

TEST_CASE("caps are enforced") {
    CHECK_THROWS_AS((void)FieldSpec::get(4, 1), Error);
    CHECK_THROWS_AS((void)FieldSpec::get(2, 9), Error);
    CHECK_THROWS_AS((void)FieldSpec::get(17, 1), Error);
}
