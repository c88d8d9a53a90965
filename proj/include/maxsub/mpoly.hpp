#pragma once

#include <algorithm>
#include <functional>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "hahn.hpp"

namespace maxsub {

// Sparse multivariate Laurent polynomial over Q(zeta_n); the variable count
// is fixed per value (n = exponent vector length).
class MPoly
{
public:
    using Exps = std::vector<long>;

    // Graded, then lexicographic, largest first.
    struct Order {
        bool operator()(const Exps &a, const Exps &b) const
        {
            long da = 0, db = 0;
            for (auto e : a)
                da += e;
            for (auto e : b)
                db += e;
            if (da != db)
                return da > db;
            return a > b;
        }
    };
    using Map = std::map<Exps, FieldElem, Order>;

    explicit MPoly(std::size_t nvars = 0) : n_(nvars) {}
    MPoly(std::size_t nvars, const FieldElem &c) : n_(nvars)
    {
        if (!c.is_zero())
            terms_.emplace(Exps(nvars, 0), c);
    }

    static MPoly monomial(const FieldElem &c, Exps e)
    {
        MPoly r(e.size());
        if (!c.is_zero())
            r.terms_.emplace(std::move(e), c);
        return r;
    }
    static MPoly var(std::size_t nvars, std::size_t j, long power = 1)
    {
        Exps e(nvars, 0);
        e.at(j) = power;
        return monomial(FieldElem(1), std::move(e));
    }

    std::size_t nvars() const noexcept { return n_; }
    const Map &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && is_origin(terms_.begin()->first)); }

    long total_degree() const
    {
        long d = 0;
        bool first = true;
        for (const auto &[e, c] : terms_) {
            long s = 0;
            for (auto x : e)
                s += x;
            d = first ? s : std::max(d, s);
            first = false;
        }
        return d;
    }
    long degree_in(std::size_t j) const
    {
        long d = 0;
        for (const auto &[e, c] : terms_)
            d = std::max(d, e[j]);
        return d;
    }
    long min_degree_in(std::size_t j) const
    {
        long d = 0;
        bool first = true;
        for (const auto &[e, c] : terms_) {
            d = first ? e[j] : std::min(d, e[j]);
            first = false;
        }
        return d;
    }
    bool is_polynomial() const
    {
        for (const auto &[e, c] : terms_)
            for (auto x : e)
                if (x < 0)
                    return false;
        return true;
    }

    friend MPoly operator+(MPoly a, const MPoly &b)
    {
        a.check(b);
        for (const auto &[e, c] : b.terms_)
            a.add(e, c);
        return a;
    }
    friend MPoly operator-(MPoly a, const MPoly &b)
    {
        a.check(b);
        for (const auto &[e, c] : b.terms_)
            a.add(e, -c);
        return a;
    }
    MPoly operator-() const
    {
        MPoly r(n_);
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e, -c);
        return r;
    }
    friend MPoly operator*(const MPoly &a, const MPoly &b)
    {
        a.check(b);
        MPoly r(a.n_);
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_) {
                Exps e(a.n_);
                for (std::size_t i = 0; i < a.n_; ++i)
                    e[i] = ea[i] + eb[i];
                r.add(e, ca * cb);
            }
        return r;
    }
    MPoly &operator+=(const MPoly &o) { return *this = *this + o; }
    MPoly &operator-=(const MPoly &o) { return *this = *this - o; }
    MPoly &operator*=(const MPoly &o) { return *this = *this * o; }
    friend bool operator==(const MPoly &a, const MPoly &b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    MPoly pow(unsigned k) const
    {
        MPoly r(n_, FieldElem(1)), b = *this;
        while (k) {
            if (k & 1)
                r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    FieldElem eval(const std::vector<FieldElem> &pt) const
    {
        if (pt.size() != n_)
            fail(errc::precondition_failed, "point has the wrong number of coordinates");
        FieldElem s;
        for (const auto &[e, c] : terms_) {
            FieldElem m = c;
            for (std::size_t i = 0; i < n_; ++i)
                if (e[i] != 0) {
                    if (e[i] < 0 && pt[i].is_zero())
                        fail(errc::zero_division, "negative power of a zero coordinate");
                    m *= pt[i].pow(e[i]);
                }
            s += m;
        }
        return s;
    }

    MPoly partial(std::size_t j) const
    {
        MPoly r(n_);
        for (const auto &[e, c] : terms_) {
            if (e[j] == 0)
                continue;
            Exps d = e;
            d[j] -= 1;
            r.add(d, c * FieldElem(e[j]));
        }
        return r;
    }

    // Substitute polynomials for every variable (nonnegative exponents only
    // unless the images are monomials).
    MPoly substitute(const std::vector<MPoly> &images) const
    {
        if (images.size() != n_)
            fail(errc::precondition_failed, "substitution needs one image per variable");
        const std::size_t m = images.empty() ? 0 : images[0].nvars();
        MPoly r(m);
        for (const auto &[e, c] : terms_) {
            MPoly t(m, c);
            for (std::size_t i = 0; i < n_; ++i) {
                if (e[i] < 0)
                    fail(errc::precondition_failed, "cannot substitute into a negative power");
                t *= images[i].pow(static_cast<unsigned>(e[i]));
            }
            r += t;
        }
        return r;
    }

    // Multiply every exponent vector shift: r = this * prod x_i^{s_i}.
    MPoly shifted(const Exps &s) const
    {
        MPoly r(n_);
        for (const auto &[e, c] : terms_) {
            Exps d = e;
            for (std::size_t i = 0; i < n_; ++i)
                d[i] += s[i];
            r.terms_.emplace(std::move(d), c);
        }
        return r;
    }

    std::string str(const std::vector<std::string> &names) const
    {
        std::vector<std::pair<FieldElem, std::string>> parts;
        for (const auto &[e, c] : terms_) {
            std::string mono;
            for (std::size_t i = 0; i < n_; ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += names.at(i);
                if (e[i] != 1)
                    mono += "^" + detail::exponent_text(Rat(e[i]));
            }
            parts.emplace_back(c, mono);
        }
        return format_terms(parts);
    }

private:
    static bool is_origin(const Exps &e)
    {
        return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
    }
    void check(const MPoly &o) const
    {
        if (o.n_ != n_ && !(o.is_zero() && o.n_ == 0) && !(is_zero() && n_ == 0))
            fail(errc::precondition_failed, "polynomials over different variable sets");
    }
    void add(const Exps &e, const FieldElem &c)
    {
        if (c.is_zero())
            return;
        if (n_ == 0)
            n_ = e.size();
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    std::size_t n_;
    Map terms_;
};

// All exponent vectors with nonnegative entries and total degree <= d,
// lowest degree first.
inline std::vector<MPoly::Exps> monomials_up_to(std::size_t nvars, long d)
{
    std::vector<MPoly::Exps> out;
    for (long deg = 0; deg <= d; ++deg) {
        std::vector<MPoly::Exps> level;
        // Enumerate compositions of deg into nvars parts.
        std::vector<long> cur(nvars, 0);
        auto rec = [&](auto &&self, std::size_t i, long left) -> void {
            if (i + 1 == nvars) {
                cur[i] = left;
                level.push_back(cur);
                return;
            }
            for (long k = left; k >= 0; --k) {
                cur[i] = k;
                self(self, i + 1, left - k);
            }
        };
        if (nvars == 0) {
            if (deg == 0)
                out.push_back({});
            continue;
        }
        rec(rec, 0, deg);
        std::sort(level.begin(), level.end(), std::greater<>()); // x before y
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace maxsub
