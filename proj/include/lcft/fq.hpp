#ifndef LCFT_FQ_HPP
#define LCFT_FQ_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcft/errors.hpp"

namespace lcft {

class Fq;

// GF(p^d) with q = p^d <= 256. Elements are indices: x = sum x_i p^i encodes
// the coefficient vector (x_0, ..., x_{d-1}) w.r.t. the power basis of the
// residue class g of the polynomial variable.
//
// The modulus is the lexicographically least monic primitive polynomial of
// degree d over GF(p) that is norm-compatible with the moduli already fixed
// for all proper divisors of d ("lexicographic" compares the non-leading
// coefficient vector (a_{d-1}, ..., a_0) as a base-p integer). Compatibility
// means g_small = g_big^((p^d-1)/(p^m-1)) is a root of the degree-m modulus,
// which makes every subfield embedding a power map on discrete logs.
// g always generates GF(q)^*, so theta := g.
class FieldSpec {
  public:
    static const FieldSpec& get(int p, int d);

    int p, d, q;
    std::vector<int> modulus; // monic, degree d: modulus[i] = coeff of z^i

    uint8_t theta() const { return theta_; }

    uint8_t add(uint8_t a, uint8_t b) const { return add_[size_t(a) * q + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add_[size_t(a) * q + neg_[b]]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[size_t(a) * q + b]; }
    uint8_t inv(uint8_t a) const;
    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

    // theta^e for any integer e (reduced mod q-1)
    uint8_t exp(long long e) const;
    // e in [0, q-2] with theta^e = a; rejects a = 0
    int log(uint8_t a) const;

    uint8_t pow(uint8_t a, long long e) const;
    uint8_t frobenius(uint8_t a, long long j = 1) const; // a^(p^j), j may be negative
    int trace(uint8_t a) const;                          // in [0, p)
    uint8_t from_int(long long n) const;                 // n mod p in the prime subfield

    // multiplicative order of a != 0
    int order(uint8_t a) const;

    // an element with trace_to_prime == 1 (exists, trace is surjective)
    uint8_t trace_one() const { return trace_one_; }

    // raw tables for hot loops
    const uint8_t* add_table() const { return add_.data(); }
    const uint8_t* mul_table() const { return mul_.data(); }

    // canonical embedding GF(p^d) -> GF(p^D) for d | D (theta_small -> theta_big^s,
    // s = (P^D-1)/(p^d-1)); the compatible moduli make this a field homomorphism.
    static uint8_t embed(const FieldSpec& from, const FieldSpec& to, uint8_t x);
    // partial inverse of embed; empty if x is not in the image subfield
    static std::optional<uint8_t> descend(const FieldSpec& from, const FieldSpec& to, uint8_t x);

    // norm and trace onto the degree-m subfield, m | d; results are elements of get(p, m)
    uint8_t norm_to(int m, uint8_t x) const;
    uint8_t trace_to(int m, uint8_t x) const;

    std::string to_string(uint8_t x, const std::string& gen = "g") const;

    FieldSpec(const FieldSpec&) = delete;
    FieldSpec& operator=(const FieldSpec&) = delete;

  private:
    FieldSpec(int p, int d);
    uint8_t theta_;
    uint8_t trace_one_;
    std::vector<uint8_t> add_, mul_, neg_, inv_, exp_, frob_;
    std::vector<int> log_, trace_;
};

// value type; spec pointers are interned so identity comparison is sound
class Fq {
  public:
    Fq() : v_(0), k_(nullptr) {}
    Fq(uint8_t v, const FieldSpec* k) : v_(v), k_(k) {}

    uint8_t idx() const { return v_; }
    const FieldSpec* field() const { return k_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fq operator+(Fq o) const { return {k_->add(v_, o.v_), k_}; }
    Fq operator-(Fq o) const { return {k_->sub(v_, o.v_), k_}; }
    Fq operator-() const { return {k_->neg(v_), k_}; }
    Fq operator*(Fq o) const { return {k_->mul(v_, o.v_), k_}; }
    Fq operator/(Fq o) const { return {k_->div(v_, o.v_), k_}; }
    bool operator==(Fq o) const { return v_ == o.v_ && k_ == o.k_; }
    bool operator!=(Fq o) const { return !(*this == o); }

    Fq pow(long long e) const { return {k_->pow(v_, e), k_}; }
    Fq inverse() const { return {k_->inv(v_), k_}; }
    Fq frobenius(long long j = 1) const { return {k_->frobenius(v_, j), k_}; }
    int trace_to_prime() const { return k_->trace(v_); }
    int discrete_log() const { return k_->log(v_); }

    std::string str() const { return k_->to_string(v_); }

  private:
    uint8_t v_;
    const FieldSpec* k_;
};

} // namespace lcft

#endif
