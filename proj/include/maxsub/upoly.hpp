#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"

namespace maxsub {

inline bool is_zero(const FieldElem &x) { return x.is_zero(); }
inline bool is_zero(const Rat &x) { return x == 0; }

template <class K>
class Poly;
template <class K>
bool is_zero(const Poly<K> &p);

// Dense univariate polynomial, coefficients lowest degree first and never a
// trailing zero. Works over any commutative ring K with is_zero(K); the
// division routines additionally need K to be a field.
template <class K>
class Poly
{
public:
    Poly() = default;
    Poly(K c)
    {
        if (!maxsub::is_zero(c))
            c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(K c, std::size_t deg)
    {
        if (maxsub::is_zero(c))
            return Poly();
        std::vector<K> v(deg + 1, K());
        v[deg] = std::move(c);
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(K(1), 1); }

    bool is_zero() const noexcept { return c_.empty(); }
    // -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<K> &coeffs() const noexcept { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(); }
    const K &lead() const
    {
        if (c_.empty())
            fail(errc::zero_input, "leading coefficient of zero polynomial");
        return c_.back();
    }

    template <class V>
    V eval(const V &x) const
    {
        V r{};
        for (std::size_t i = c_.size(); i-- > 0;)
            r = r * x + V(c_[i]);
        return r;
    }

    Poly derivative() const
    {
        std::vector<K> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(c_[i] * K(static_cast<long>(i)));
        return Poly(std::move(d));
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto &c : r.c_)
            c = -c;
        return r;
    }
    friend Poly operator+(const Poly &a, const Poly &b)
    {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly &a, const Poly &b) { return a + (-b); }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (maxsub::is_zero(a.c_[i]))
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly &operator+=(const Poly &o) { return *this = *this + o; }
    Poly &operator-=(const Poly &o) { return *this = *this - o; }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }

    Poly scaled(const K &s) const
    {
        std::vector<K> r = c_;
        for (auto &c : r)
            c = c * s;
        return Poly(std::move(r));
    }

    Poly pow(unsigned e) const
    {
        Poly r(K(1)), b = *this;
        while (e) {
            if (e & 1)
                r *= b;
            e >>= 1;
            if (e)
                b *= b;
        }
        return r;
    }

    friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

private:
    void trim()
    {
        while (!c_.empty() && maxsub::is_zero(c_.back()))
            c_.pop_back();
    }

    std::vector<K> c_;
};

template <class K>
bool is_zero(const Poly<K> &p)
{
    return p.is_zero();
}

// Division with remainder over a field.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K> &a, const Poly<K> &b)
{
    if (b.is_zero())
        fail(errc::zero_division, "polynomial division by zero");
    std::vector<K> rem = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    if (rem.size() <= db)
        return {Poly<K>(), a};
    std::vector<K> q(rem.size() - db, K());
    const K inv = K(1) / b.lead();
    for (std::size_t k = q.size(); k-- > 0;) {
        K c = rem[k + db] * inv;
        if (is_zero(c))
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            rem[k + j] = rem[k + j] - c * b.coeffs()[j];
        q[k] = std::move(c);
    }
    rem.resize(db);
    return {Poly<K>(std::move(q)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> monic(const Poly<K> &p)
{
    if (p.is_zero())
        return p;
    return p.scaled(K(1) / p.lead());
}

template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b)
{
    while (!b.is_zero()) {
        Poly<K> r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Pseudo-remainder over an integral domain: lc(b)^k a = q b + r with
// deg r < deg b.
template <class K>
Poly<K> pseudo_remainder(Poly<K> a, const Poly<K> &b)
{
    if (b.is_zero())
        fail(errc::zero_division, "pseudo-division by zero");
    const long db = b.degree();
    const K &lb = b.lead();
    while (!a.is_zero() && a.degree() >= db) {
        const long shift = a.degree() - db;
        Poly<K> t = Poly<K>::monomial(a.lead(), static_cast<std::size_t>(shift)) * b;
        a = a.scaled(lb) - t;
    }
    return a;
}

// Square-free decomposition over a field of characteristic 0 (Yun):
// returns pairs (g_i, i) with a = lc * prod g_i^i and the g_i square-free,
// pairwise coprime and monic.
template <class K>
std::vector<std::pair<Poly<K>, unsigned>> squarefree_decomposition(const Poly<K> &a)
{
    std::vector<std::pair<Poly<K>, unsigned>> out;
    if (a.degree() < 1)
        return out;
    Poly<K> b = a.derivative();
    Poly<K> c = gcd(a, b);
    Poly<K> w = divmod(a, c).first;
    Poly<K> y = divmod(b, c).first;
    Poly<K> z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() >= 1) {
        Poly<K> g = gcd(w, z);
        if (g.degree() >= 1)
            out.emplace_back(monic(g), i);
        w = divmod(w, g).first;
        y = divmod(z, g).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

using FPoly = Poly<FieldElem>;

} // namespace maxsub
