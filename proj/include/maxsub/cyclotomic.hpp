#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace maxsub {

namespace detail {

// Dense integer polynomial, lowest degree first.
using IntPoly = std::vector<Int>;

inline IntPoly int_poly_exact_div(IntPoly num, const IntPoly &den)
{
    // den is monic with integer coefficients, so the quotient stays integral.
    const std::size_t dd = den.size() - 1;
    IntPoly q(num.size() - dd, Int(0));
    for (std::size_t i = num.size(); i-- > dd;) {
        Int c = num[i];
        q[i - dd] = c;
        if (c != 0)
            for (std::size_t j = 0; j <= dd; ++j)
                num[i - dd + j] -= c * den[j];
    }
    return q;
}

inline IntPoly compute_cyclotomic(unsigned n)
{
    IntPoly p(n + 1, Int(0));
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        p = int_poly_exact_div(p, compute_cyclotomic(d));
    }
    return p;
}

} // namespace detail

// Phi_N with integer coefficients, cached process-wide.
inline const detail::IntPoly &cyclotomic_polynomial(unsigned n)
{
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const detail::IntPoly>> cache;
    if (n == 0)
        fail(errc::conductor_mismatch, "cyclotomic conductor must be positive");
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_shared<const detail::IntPoly>(detail::compute_cyclotomic(n))).first;
    return *it->second;
}

inline unsigned euler_phi(unsigned n)
{
    unsigned r = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            r -= r / p;
        }
    }
    if (n > 1)
        r -= r / n;
    return r;
}

class FieldElem;

// Q(zeta_N). Conductor 1 is plain Q.
class CycloField
{
public:
    explicit CycloField(unsigned conductor = 1) : n_(conductor)
    {
        if (conductor == 0)
            fail(errc::conductor_mismatch, "cyclotomic conductor must be positive");
    }

    unsigned conductor() const noexcept { return n_; }
    unsigned degree() const { return euler_phi(n_); }
    const detail::IntPoly &modulus() const { return cyclotomic_polynomial(n_); }

    // zeta_n lies in Q(zeta_N) iff n | N, or N is odd and n | 2N.
    bool contains_root_of_unity(unsigned n) const
    {
        return n != 0 && (n_ % n == 0 || (n_ % 2 == 1 && (2 * n_) % n == 0));
    }

    FieldElem zeta() const;

    friend bool operator==(const CycloField &a, const CycloField &b) { return a.n_ == b.n_; }

private:
    unsigned n_;
};

// Element of Q(zeta_N) stored as the reduced residue sum c_j z^j, j < phi(N).
// Elements whose residue is a constant are demoted to conductor 1, so a
// rational number has exactly one representation. Mixed-conductor
// arithmetic lifts both operands to Q(zeta_lcm).
class FieldElem
{
public:
    FieldElem() : n_(1) {}
    FieldElem(long v) : n_(1) { set_rational(Rat(v)); }
    FieldElem(const Rat &v) : n_(1) { set_rational(v); }

    static FieldElem from_coords(unsigned conductor, std::vector<Rat> coords)
    {
        FieldElem r;
        r.n_ = conductor;
        r.c_ = std::move(coords);
        r.reduce();
        return r;
    }

    // z^k in Q(zeta_N); negative k allowed.
    static FieldElem generator_power(unsigned conductor, long k)
    {
        long m = static_cast<long>(conductor);
        long e = ((k % m) + m) % m;
        std::vector<Rat> c(static_cast<std::size_t>(e) + 1, Rat(0));
        c[static_cast<std::size_t>(e)] = 1;
        return from_coords(conductor, std::move(c));
    }

    unsigned conductor() const noexcept { return n_; }
    const std::vector<Rat> &coords() const noexcept { return c_; }
    CycloField field() const { return CycloField(n_); }

    bool is_zero() const noexcept { return c_.empty(); }
    bool is_rational() const noexcept { return n_ == 1; }
    bool is_one() const { return n_ == 1 && c_.size() == 1 && c_[0] == 1; }
    Rat rational_value() const
    {
        if (n_ != 1)
            fail(errc::conductor_mismatch, "element is not rational");
        return c_.empty() ? Rat(0) : c_[0];
    }

    // Same element written over Q(zeta_m); requires conductor() | m.
    FieldElem lifted(unsigned m) const
    {
        if (m == n_ || c_.empty() || n_ == 1)
            return with_conductor(m);
        if (m % n_ != 0)
            fail(errc::conductor_mismatch,
                 "cannot lift Q(zeta_" + std::to_string(n_) + ") into Q(zeta_" + std::to_string(m) + ")");
        const unsigned step = m / n_;
        std::vector<Rat> c((c_.size() - 1) * step + 1, Rat(0));
        for (std::size_t j = 0; j < c_.size(); ++j)
            c[j * step] = c_[j];
        FieldElem r;
        r.n_ = m;
        r.c_ = std::move(c);
        r.reduce_no_demote();
        return r;
    }

    FieldElem operator-() const
    {
        FieldElem r = *this;
        for (auto &x : r.c_)
            x = -x;
        return r;
    }

    friend FieldElem operator+(const FieldElem &a, const FieldElem &b)
    {
        if (a.n_ == 1 && b.n_ == 1)
            return FieldElem(Rat(a.rat0() + b.rat0()));
        const unsigned m = std::lcm(a.n_, b.n_);
        FieldElem x = a.lifted(m), y = b.lifted(m);
        if (x.c_.size() < y.c_.size())
            std::swap(x, y);
        for (std::size_t i = 0; i < y.c_.size(); ++i)
            x.c_[i] += y.c_[i];
        x.reduce();
        return x;
    }
    friend FieldElem operator-(const FieldElem &a, const FieldElem &b) { return a + (-b); }

    friend FieldElem operator*(const FieldElem &a, const FieldElem &b)
    {
        if (a.is_zero() || b.is_zero())
            return FieldElem();
        if (a.n_ == 1 && b.n_ == 1)
            return FieldElem(Rat(a.c_[0] * b.c_[0]));
        if (a.n_ == 1 || b.n_ == 1) {
            const FieldElem &s = a.n_ == 1 ? a : b;
            FieldElem r = a.n_ == 1 ? b : a;
            for (auto &x : r.c_)
                x *= s.c_[0];
            return r;
        }
        const unsigned m = std::lcm(a.n_, b.n_);
        const FieldElem x = a.lifted(m), y = b.lifted(m);
        std::vector<Rat> c(x.c_.size() + y.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j)
                c[i + j] += x.c_[i] * y.c_[j];
        }
        return from_coords(m, std::move(c));
    }

    FieldElem inverse() const;

    friend FieldElem operator/(const FieldElem &a, const FieldElem &b) { return a * b.inverse(); }

    FieldElem &operator+=(const FieldElem &o) { return *this = *this + o; }
    FieldElem &operator-=(const FieldElem &o) { return *this = *this - o; }
    FieldElem &operator*=(const FieldElem &o) { return *this = *this * o; }
    FieldElem &operator/=(const FieldElem &o) { return *this = *this / o; }

    FieldElem pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        FieldElem base = *this, r(1);
        while (e > 0) {
            if (e & 1)
                r *= base;
            e >>= 1;
            if (e)
                base *= base;
        }
        return r;
    }

    friend bool operator==(const FieldElem &a, const FieldElem &b)
    {
        if (a.n_ == b.n_)
            return a.c_ == b.c_;
        if (a.n_ == 1 || b.n_ == 1)
            return false; // the non-rational side was not demoted, so it is irrational
        const unsigned m = std::lcm(a.n_, b.n_);
        return a.lifted(m).c_ == b.lifted(m).c_;
    }
    friend bool operator!=(const FieldElem &a, const FieldElem &b) { return !(a == b); }

    // Deterministic total order on representations, used only for canonical
    // sorting of outputs. Not a field order.
    friend bool repr_less(const FieldElem &a, const FieldElem &b)
    {
        if (a.n_ != b.n_)
            return a.n_ < b.n_;
        if (a.c_.size() != b.c_.size())
            return a.c_.size() < b.c_.size();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i])
                return a.c_[i] < b.c_[i];
        return false;
    }

    // Text over the generator z of Q(zeta_as), e.g. "1/2*z^3 - 2".
    std::string str(unsigned as = 0) const;

private:
    const Rat &rat0() const
    {
        static const Rat zero(0);
        return c_.empty() ? zero : c_[0];
    }

    void set_rational(const Rat &v)
    {
        c_.clear();
        if (v != 0)
            c_.push_back(v);
    }

    FieldElem with_conductor(unsigned m) const
    {
        FieldElem r = *this;
        r.n_ = m;
        return r;
    }

    void reduce_no_demote()
    {
        const auto &phi = cyclotomic_polynomial(n_);
        const std::size_t d = phi.size() - 1;
        for (std::size_t i = c_.size(); i-- > d;) {
            if (c_[i] == 0)
                continue;
            Rat q = c_[i];
            for (std::size_t j = 0; j <= d; ++j)
                c_[i - d + j] -= q * phi[j];
        }
        if (c_.size() > d)
            c_.resize(d);
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    void reduce()
    {
        reduce_no_demote();
        if (c_.size() <= 1)
            n_ = 1;
    }

    unsigned n_;
    std::vector<Rat> c_;
};

namespace detail {

using RatPoly = std::vector<Rat>;

inline void trim(RatPoly &p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// Quotient and remainder in Q[x].
inline std::pair<RatPoly, RatPoly> rat_poly_divmod(RatPoly a, const RatPoly &b)
{
    trim(a);
    RatPoly q;
    if (a.size() < b.size())
        return {q, a};
    q.assign(a.size() - b.size() + 1, Rat(0));
    const Rat lead = b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        Rat c = a[k + b.size() - 1] / lead;
        q[k] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                a[k + j] -= c * b[j];
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
}

inline RatPoly rat_poly_mul(const RatPoly &a, const RatPoly &b)
{
    if (a.empty() || b.empty())
        return {};
    RatPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline RatPoly rat_poly_sub(RatPoly a, const RatPoly &b)
{
    if (a.size() < b.size())
        a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

} // namespace detail

inline FieldElem FieldElem::inverse() const
{
    if (is_zero())
        fail(errc::zero_division, "inverse of zero field element");
    if (n_ == 1)
        return FieldElem(Rat(1 / c_[0]));
    // Extended Euclid: s*a + t*Phi = g, g a nonzero constant since Phi is irreducible.
    const auto &phi_int = cyclotomic_polynomial(n_);
    detail::RatPoly phi(phi_int.begin(), phi_int.end());
    detail::RatPoly r0 = phi, r1 = c_;
    detail::RatPoly s0, s1{Rat(1)};
    while (r1.size() > 1) {
        auto [q, r] = detail::rat_poly_divmod(r0, r1);
        detail::RatPoly s = detail::rat_poly_sub(s0, detail::rat_poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    const Rat g = r1.at(0);
    for (auto &x : s1)
        x /= g;
    return from_coords(n_, std::move(s1));
}

inline FieldElem CycloField::zeta() const { return FieldElem::generator_power(n_, 1); }

inline std::string FieldElem::str(unsigned as) const
{
    FieldElem e = *this;
    if (as != 0 && as % n_ == 0)
        e = lifted(as);
    if (e.c_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = e.c_.size(); i-- > 0;) {
        const Rat &c = e.c_[i];
        if (c == 0)
            continue;
        Rat mag = abs(c);
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        first = false;
        if (i == 0) {
            out += to_string(mag);
            continue;
        }
        if (mag != 1)
            out += to_string(mag) + "*";
        out += "z";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const FieldElem &e) { return os << e.str(); }

// Primitive n-th root of unity inside field.
inline FieldElem root_of_unity(unsigned n, const CycloField &field)
{
    const unsigned big = field.conductor();
    if (n == 0)
        fail(errc::conductor_mismatch, "root of unity order must be positive");
    if (big % n == 0)
        return FieldElem::generator_power(big, static_cast<long>(big / n));
    if (big % 2 == 1 && (2 * big) % n == 0) {
        // -z^((N+1)/2) has exact order 2N when N is odd.
        FieldElem zeta2n = -FieldElem::generator_power(big, static_cast<long>((big + 1) / 2));
        return zeta2n.pow(static_cast<long>(2 * big / n));
    }
    fail(errc::conductor_mismatch,
         std::to_string(n) + "-th roots of unity are not in Q(zeta_" + std::to_string(big) + ")");
}

// Smallest m >= 1 with x^m = 1, or 0 if x is not a root of unity in its field.
inline unsigned multiplicative_order(const FieldElem &x)
{
    if (x.is_zero())
        return 0;
    // Roots of unity in Q(zeta_N) have order dividing lcm(2, N).
    const unsigned bound = std::lcm(2u, x.conductor());
    FieldElem p = x;
    for (unsigned m = 1; m <= bound; ++m) {
        if (p.is_one())
            return m;
        p *= x;
    }
    return 0;
}

} // namespace maxsub
