#include "lcft/fq.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace lcft {

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::precision: return "PrecisionExhausted";
        case ErrKind::division_by_zero: return "DivisionByZero";
        case ErrKind::usage: return "Usage";
        case ErrKind::trivial_class: return "TrivialClass";
        case ErrKind::unsupported_class: return "UnsupportedClass";
        case ErrKind::unsupported_shape: return "UnsupportedShape";
        case ErrKind::split_extension: return "SplitExtension";
        case ErrKind::non_integral: return "NonIntegral";
        case ErrKind::rewrite_failure: return "InternalRewriteFailure";
        case ErrKind::adjunction_mismatch: return "AdjunctionMismatch";
        case ErrKind::constant_field_too_small: return "ConstantFieldTooSmall";
        case ErrKind::unsupported_extension: return "UnsupportedExtension";
        case ErrKind::layer_insufficient: return "LayerInsufficient";
        case ErrKind::ambiguous_match: return "AmbiguousMatch";
        case ErrKind::falsified: return "Falsified";
    }
    return "Unknown";
}

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int i = 2; i * i <= n; ++i)
        if (n % i == 0) return false;
    return true;
}

// dense polynomials over GF(p), coefficient of z^i at index i, no trailing zeros
using Poly = std::vector<int>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    int dm = int(m.size()) - 1;
    while (int(a.size()) - 1 >= dm) {
        int da = int(a.size()) - 1;
        int lead = a[da]; // m is monic
        for (int i = 0; i <= dm; ++i) {
            int& c = a[da - dm + i];
            c = ((c - lead * m[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_powmod(Poly base, long long e, const Poly& m, int p) {
    Poly r = {1};
    base = poly_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    // inputs need not be monic; works up to scalar
    while (!b.empty()) {
        // make b monic for poly_mod
        Poly bm = b;
        int lead = b.back();
        if (lead != 1) {
            int invl = 1;
            for (int i = 1; i < p; ++i)
                if (i * lead % p == 1) invl = i;
            for (int& c : bm) c = c * invl % p;
        }
        Poly r = poly_mod(a, bm, p);
        a = b;
        b = r;
    }
    return a;
}

bool poly_irreducible(const Poly& f, int p) {
    int n = int(f.size()) - 1;
    if (n < 1) return false;
    // f irreducible iff z^(p^n) == z mod f and gcd(z^(p^(n/r)) - z, f) = 1 for prime r | n
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    Poly z = {0, 1};
    Poly zq = poly_powmod(z, pn, f, p);
    Poly diff = zq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    trim(diff);
    diff = poly_mod(std::move(diff), f, p);
    if (!diff.empty()) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0 || !is_prime(r)) continue;
        long long pe = 1;
        for (int i = 0; i < n / r; ++i) pe *= p;
        Poly w = poly_powmod(z, pe, f, p);
        w.resize(std::max<size_t>(w.size(), 2), 0);
        w[1] = ((w[1] - 1) % p + p) % p;
        trim(w);
        Poly g = poly_gcd(f, w, p);
        if (int(g.size()) - 1 > 0) return false;
    }
    return true;
}

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> f;
    for (long long i = 2; i * i <= n; ++i)
        while (n % i == 0) {
            if (f.empty() || f.back() != i) f.push_back(i);
            n /= i;
        }
    if (n > 1) f.push_back(n);
    return f;
}

bool poly_primitive(const Poly& f, int p) {
    int n = int(f.size()) - 1;
    long long q1 = 1;
    for (int i = 0; i < n; ++i) q1 *= p;
    q1 -= 1;
    if (q1 == 0) return true; // GF(2), trivial group
    Poly z = {0, 1};
    for (long long r : prime_factors(q1)) {
        Poly w = poly_powmod(z, q1 / r, f, p);
        if (w.size() == 1 && w[0] == 1) return false;
    }
    Poly w = poly_powmod(z, q1, f, p);
    return w.size() == 1 && w[0] == 1;
}

// evaluate the degree-m modulus at w inside GF(p)[z]/f
bool compatible_with(const Poly& small_mod, const Poly& f, int p, long long s) {
    Poly z = {0, 1};
    Poly w = poly_powmod(z, s, f, p);
    Poly acc; // small_mod(w) via Horner
    for (int i = int(small_mod.size()) - 1; i >= 0; --i) {
        acc = poly_mod(poly_mul(acc, w, p), f, p);
        if (small_mod[i] != 0) {
            if (acc.empty()) acc = {small_mod[i]};
            else acc[0] = (acc[0] + small_mod[i]) % p;
            trim(acc);
        }
    }
    return acc.empty();
}

Poly find_modulus(int p, int d) {
    long long qd = 1;
    for (int i = 0; i < d; ++i) qd *= p;
    // iterate non-leading coefficients (a_{d-1},...,a_0) as a base-p counter
    std::vector<int> a(d, 0);
    for (long long count = 0; count < qd; ++count) {
        Poly f(d + 1, 0);
        f[d] = 1;
        for (int i = 0; i < d; ++i) f[i] = a[d - 1 - i]; // a[0] = coeff of z^{d-1}, most significant
        if (poly_irreducible(f, p) && poly_primitive(f, p)) {
            bool ok = true;
            for (int m = 1; m < d && ok; ++m) {
                if (d % m != 0) continue;
                long long qm = 1;
                for (int i = 0; i < m; ++i) qm *= p;
                const FieldSpec& sub = FieldSpec::get(p, m);
                Poly sm(sub.modulus.begin(), sub.modulus.end());
                ok = compatible_with(sm, f, p, (qd - 1) / (qm - 1));
            }
            if (ok) return f;
        }
        // increment counter, least significant digit = a[d-1]
        for (int j = d - 1; j >= 0; --j) {
            if (++a[j] < p) break;
            a[j] = 0;
        }
    }
    fail_usage("no compatible primitive modulus found (should not happen)");
}

} // namespace

FieldSpec::FieldSpec(int p_, int d_) : p(p_), d(d_) {
    q = 1;
    for (int i = 0; i < d; ++i) q *= p;
    modulus = find_modulus(p, d);

    auto pack = [&](const Poly& f) {
        int idx = 0;
        for (int i = int(f.size()) - 1; i >= 0; --i) idx = idx * p + f[i];
        return uint8_t(idx);
    };

    add_.resize(size_t(q) * q);
    neg_.resize(q);
    for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) {
            int r = 0, px = 1, xx = x, yy = y;
            for (int i = 0; i < d; ++i) {
                r += (xx % p + yy % p) % p * px;
                px *= p;
                xx /= p;
                yy /= p;
            }
            add_[size_t(x) * q + y] = uint8_t(r);
        }
        int r = 0, px = 1, xx = x;
        for (int i = 0; i < d; ++i) {
            r += (p - xx % p) % p * px;
            px *= p;
            xx /= p;
        }
        neg_[x] = uint8_t(r);
    }

    // exp/log from theta = class of z (primitive by construction)
    theta_ = d == 1 ? uint8_t((p - modulus[0]) % p) : uint8_t(p);
    exp_.assign(q - 1, 0);
    log_.assign(q, -1);
    {
        Poly cur = {1};
        Poly z = d == 1 ? Poly{(p - modulus[0]) % p} : Poly{0, 1};
        for (int e = 0; e < q - 1; ++e) {
            exp_[e] = pack(cur);
            log_[pack(cur)] = e;
            cur = poly_mod(poly_mul(cur, z, p), modulus, p);
        }
    }

    mul_.resize(size_t(q) * q);
    inv_.resize(q);
    inv_[0] = 0;
    for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) {
            if (x == 0 || y == 0) {
                mul_[size_t(x) * q + y] = 0;
                continue;
            }
            mul_[size_t(x) * q + y] = exp_[(log_[x] + log_[y]) % (q - 1)];
        }
        if (x != 0) inv_[x] = exp_[(q - 1 - log_[x]) % (q - 1)];
    }

    frob_.resize(q);
    for (int x = 0; x < q; ++x) {
        uint8_t xp = 1;
        for (int i = 0; i < p; ++i) xp = mul_[size_t(xp) * q + x]; // x^p
        frob_[x] = x == 0 ? 0 : xp;
    }
    trace_.resize(q);
    for (int x = 0; x < q; ++x) {
        uint8_t acc = 0, cur = uint8_t(x);
        for (int j = 0; j < d; ++j) {
            acc = add_[size_t(acc) * q + cur];
            cur = frob_[cur];
        }
        if (acc >= p) fail_usage("internal: trace left the prime subfield");
        trace_[x] = acc;
    }

    trace_one_ = 0;
    for (int x = 0; x < q; ++x)
        if (trace_[x] == 1) {
            trace_one_ = uint8_t(x);
            break;
        }
}

const FieldSpec& FieldSpec::get(int p, int d) {
    if (!is_prime(p) || p > 13) fail_usage("p must be a prime <= 13");
    if (d < 1) fail_usage("extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < d; ++i) {
        q *= p;
        if (q > 256) fail(ErrKind::constant_field_too_small, "q = p^d exceeds the cap 256");
    }
    static std::recursive_mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<FieldSpec>> registry;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto key = std::make_pair(p, d);
    auto it = registry.find(key);
    if (it == registry.end()) {
        // build divisor specs first so the recursive lookup in find_modulus is safe
        for (int m = 1; m < d; ++m)
            if (d % m == 0 && !registry.count({p, m}))
                registry.emplace(std::make_pair(p, m), std::unique_ptr<FieldSpec>(new FieldSpec(p, m)));
        it = registry.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(p, d))).first;
    }
    return *it->second;
}

uint8_t FieldSpec::inv(uint8_t a) const {
    if (a == 0) fail(ErrKind::division_by_zero, "inverse of zero in GF(q)");
    return inv_[a];
}

uint8_t FieldSpec::exp(long long e) const {
    if (q == 2) return 1;
    long long m = e % (q - 1);
    if (m < 0) m += q - 1;
    return exp_[m];
}

int FieldSpec::log(uint8_t a) const {
    if (a == 0) fail(ErrKind::division_by_zero, "discrete log of zero");
    return log_[a];
}

uint8_t FieldSpec::pow(uint8_t a, long long e) const {
    if (a == 0) {
        if (e < 0) fail(ErrKind::division_by_zero, "0 to a negative power");
        return e == 0 ? 1 : 0;
    }
    return exp((long long)log_[a] * (e % (q - 1)));
}

uint8_t FieldSpec::frobenius(uint8_t a, long long j) const {
    long long m = j % d;
    if (m < 0) m += d;
    uint8_t r = a;
    for (long long i = 0; i < m; ++i) r = frob_[r];
    return r;
}

int FieldSpec::trace(uint8_t a) const { return trace_[a]; }

uint8_t FieldSpec::from_int(long long n) const {
    long long m = n % p;
    if (m < 0) m += p;
    return uint8_t(m);
}

int FieldSpec::order(uint8_t a) const {
    int e = log(a);
    return (q - 1) / std::gcd(q - 1, e == 0 ? q - 1 : e);
}

uint8_t FieldSpec::embed(const FieldSpec& from, const FieldSpec& to, uint8_t x) {
    if (&from == &to) return x;
    if (from.p != to.p || to.d % from.d != 0) fail_usage("no embedding between these fields");
    if (x == 0) return 0;
    long long s = (long long)(to.q - 1) / (from.q - 1);
    return to.exp(s * from.log(x));
}

std::optional<uint8_t> FieldSpec::descend(const FieldSpec& from, const FieldSpec& to, uint8_t x) {
    if (&from == &to) return x;
    if (from.p != to.p || from.d % to.d != 0) fail_usage("no embedding between these fields");
    if (x == 0) return uint8_t(0);
    long long s = (long long)(from.q - 1) / (to.q - 1);
    int e = from.log(x);
    if (e % s != 0) return std::nullopt;
    return to.exp(e / s);
}

uint8_t FieldSpec::norm_to(int m, uint8_t x) const {
    if (m < 1 || d % m != 0) fail_usage("norm target degree must divide d");
    const FieldSpec& sub = get(p, m);
    if (x == 0) return 0;
    // N(x) = x^((q-1)/(q_m-1)) lands in the subfield; on logs this is the identity mod q_m-1
    return sub.exp(log(x) % (sub.q - 1 == 0 ? 1 : sub.q - 1));
}

uint8_t FieldSpec::trace_to(int m, uint8_t x) const {
    if (m < 1 || d % m != 0) fail_usage("trace target degree must divide d");
    const FieldSpec& sub = get(p, m);
    uint8_t acc = 0, cur = x;
    for (int j = 0; j < d / m; ++j) {
        acc = add(acc, cur);
        cur = frobenius(cur, m);
    }
    auto r = descend(*this, sub, acc);
    if (!r) fail_usage("internal: trace left the subfield");
    return *r;
}

std::string FieldSpec::to_string(uint8_t x, const std::string& gen) const {
    if (x == 0) return "0";
    std::string s;
    int idx = x;
    for (int i = 0; i < d; ++i) {
        int c = idx % p;
        idx /= p;
        if (c == 0) continue;
        std::string term;
        if (i == 0) term = std::to_string(c);
        else {
            if (c != 1) term = std::to_string(c) + "*";
            term += gen;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (!s.empty()) s = "+" + s;
        s = term + s;
    }
    return s;
}

} // namespace lcft
