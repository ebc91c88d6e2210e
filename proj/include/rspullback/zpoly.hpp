#pragma once

// Dense univariate polynomials over Z, stored low degree first.
// These are the workhorse routines behind ParamPoly: Kronecker-substitution
// multiplication, exact division and a small-prime modular gcd.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rspb {

using Integer = mpz_class;
using Rational = mpq_class;

namespace zpoly {

using Coeffs = std::vector<Integer>;

inline void trim(Coeffs& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

inline Integer content(const Coeffs& a) {
    Integer g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline void divide_exact(Coeffs& a, const Integer& d) {
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

// Makes `a` primitive with positive leading coefficient; returns the signed
// content that was removed (0 for the zero polynomial).
inline Integer make_primitive(Coeffs& a) {
    trim(a);
    if (a.empty()) return 0;
    Integer g = content(a);
    if (sgn(a.back()) < 0) g = -g;
    if (g != 1) divide_exact(a, g);
    return g;
}

inline Coeffs add_scaled(const Coeffs& a, const Integer& ca, const Coeffs& b, const Integer& cb) {
    Coeffs r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * ca;
    for (size_t i = 0; i < b.size(); ++i) mpz_addmul(r[i].get_mpz_t(), b[i].get_mpz_t(), cb.get_mpz_t());
    trim(r);
    return r;
}

inline size_t max_bits(const Coeffs& a) {
    size_t m = 0;
    for (const auto& c : a) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
    return m;
}

namespace detail {

inline Coeffs mul_schoolbook(const Coeffs& a, const Coeffs& b) {
    Coeffs r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return r;
}

inline Integer pack(const Coeffs& a, size_t bits) {
    Integer v = 0;
    for (size_t i = a.size(); i-- > 0;) {
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
        v += a[i];
    }
    return v;
}

inline Coeffs unpack(Integer v, size_t bits, size_t count) {
    Coeffs r(count);
    Integer half = 1, digit;
    mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), bits - 1);
    for (size_t i = 0; i < count; ++i) {
        mpz_fdiv_r_2exp(digit.get_mpz_t(), v.get_mpz_t(), bits);
        if (digit >= half) {
            mpz_sub(digit.get_mpz_t(), digit.get_mpz_t(), half.get_mpz_t());
            mpz_sub(digit.get_mpz_t(), digit.get_mpz_t(), half.get_mpz_t());
        }
        v -= digit;
        mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
        r[i] = digit;
    }
    return r;
}

}  // namespace detail

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    if (a.size() < 16 || b.size() < 16) return detail::mul_schoolbook(a, b);
    // each product coefficient is a sum of at most `terms` products; one
    // extra bit for the sign of the balanced digit
    size_t terms = std::min(a.size(), b.size());
    size_t bits = max_bits(a) + max_bits(b) + 2;
    while (terms >>= 1) ++bits;
    Integer pa = detail::pack(a, bits), pb = detail::pack(b, bits);
    Integer prod = pa * pb;
    Coeffs r = detail::unpack(prod, bits, a.size() + b.size() - 1);
    trim(r);
    return r;
}

// Exact division a / b over Z. Returns false if b does not divide a in Z[x].
inline bool divide(const Coeffs& a, const Coeffs& b, Coeffs& quotient) {
    if (b.empty()) throw std::domain_error("zpoly::divide: division by zero polynomial");
    quotient.clear();
    if (a.empty()) return true;
    if (a.size() < b.size()) return false;
    Coeffs r = a;
    quotient.assign(a.size() - b.size() + 1, Integer(0));
    const Integer& lb = b.back();
    for (size_t k = quotient.size(); k-- > 0;) {
        Integer& top = r[k + b.size() - 1];
        if (sgn(top) == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
        Integer q;
        mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        for (size_t j = 0; j < b.size(); ++j) mpz_submul(r[k + j].get_mpz_t(), q.get_mpz_t(), b[j].get_mpz_t());
        quotient[k] = std::move(q);
    }
    for (const auto& c : r)
        if (sgn(c) != 0) return false;
    trim(quotient);
    return true;
}

// ---------------------------------------------------------------------------
// Arithmetic in Z/pZ for primes below 2^62.

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }
inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

inline const std::vector<u64>& primes() {
    static const std::vector<u64> table = [] {
        std::vector<u64> ps;
        Integer c = 1;
        mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), 62);
        c -= 1;
        for (int i = 0; i < 512; ++i) {
            // walk downwards so every prime stays below 2^62
            do {
                c -= 2;
            } while (mpz_probab_prime_p(c.get_mpz_t(), 30) == 0);
            ps.push_back(c.get_ui());
        }
        return ps;
    }();
    return table;
}

using ModCoeffs = std::vector<u64>;

inline void trim_mod(ModCoeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModCoeffs reduce(const Coeffs& a, u64 p) {
    ModCoeffs r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
    trim_mod(r);
    return r;
}

inline void make_monic(ModCoeffs& a, u64 p) {
    if (a.empty()) return;
    u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
}

// Monic gcd over Z/pZ.
inline ModCoeffs gcd_mod(ModCoeffs a, ModCoeffs b, u64 p) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        u64 inv = invmod(b.back(), p);
        while (a.size() >= b.size()) {
            u64 q = mulmod(a.back(), inv, p);
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[shift + j] = submod(a[shift + j], mulmod(q, b[j], p), p);
            trim_mod(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    make_monic(a, p);
    return a;
}

}  // namespace detail

// gcd of two primitive polynomials in Z[x]; result primitive with positive
// leading coefficient. Small-prime modular algorithm with CRT and trial
// division as the termination test.
inline Coeffs gcd(const Coeffs& a_in, const Coeffs& b_in) {
    if (a_in.empty()) {
        Coeffs r = b_in;
        make_primitive(r);
        return r;
    }
    if (b_in.empty()) {
        Coeffs r = a_in;
        make_primitive(r);
        return r;
    }
    if (a_in.size() == 1 || b_in.size() == 1) return {Integer(1)};
    Coeffs a = a_in, b = b_in;
    make_primitive(a);
    make_primitive(b);
    if (a == b) return a;

    Integer lc_gcd;
    mpz_gcd(lc_gcd.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());

    Coeffs crt;      // current CRT image (symmetric residues)
    Integer modulus;  // product of primes used so far
    int best_deg = std::min(degree(a), degree(b)) + 1;
    Coeffs previous;

    for (detail::u64 p : detail::primes()) {
        if (mpz_fdiv_ui(a.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(b.back().get_mpz_t(), p) == 0) continue;
        detail::ModCoeffs g = detail::gcd_mod(detail::reduce(a, p), detail::reduce(b, p), p);
        int d = static_cast<int>(g.size()) - 1;
        if (d == 0) return {Integer(1)};
        if (d > best_deg) continue;
        detail::u64 lcp = mpz_fdiv_ui(lc_gcd.get_mpz_t(), p);
        for (auto& c : g) c = detail::mulmod(c, lcp, p);
        if (d < best_deg) {
            best_deg = d;
            crt.assign(g.size(), Integer(0));
            for (size_t i = 0; i < g.size(); ++i) crt[i] = static_cast<unsigned long>(g[i]);
            modulus = static_cast<unsigned long>(p);
            previous.clear();
        } else {
            // combine: x = crt (mod modulus), x = g (mod p)
            detail::u64 m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
            detail::u64 inv = detail::invmod(m_mod_p, p);
            for (size_t i = 0; i < g.size(); ++i) {
                detail::u64 ci = mpz_fdiv_ui(crt[i].get_mpz_t(), p);
                detail::u64 t = detail::mulmod(detail::submod(g[i], ci, p), inv, p);
                mpz_addmul_ui(crt[i].get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(t));
            }
            modulus *= static_cast<unsigned long>(p);
        }
        // symmetric representative
        Coeffs candidate = crt;
        Integer half = modulus / 2;
        for (auto& c : candidate) {
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
            if (c > half) c -= modulus;
        }
        make_primitive(candidate);
        if (!candidate.empty() && candidate == previous) {
            Coeffs q;
            if (divide(a, candidate, q) && divide(b, candidate, q)) return candidate;
        }
        previous = std::move(candidate);
    }
    throw std::runtime_error("zpoly::gcd: ran out of primes");
}

inline Coeffs derivative(const Coeffs& a) {
    if (a.size() <= 1) return {};
    Coeffs r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<unsigned long>(i);
    trim(r);
    return r;
}

}  // namespace zpoly
}  // namespace rspb
