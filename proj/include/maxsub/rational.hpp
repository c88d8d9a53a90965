#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "error.hpp"

namespace maxsub {

// Always canonical: mpq_class keeps gcd(num, den) = 1 and den > 0 as long
// as every construction path goes through canonicalize().
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int &num, const Int &den)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat &r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat &r)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat &r)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// Fractional part in [0, 1).
inline Rat frac_rat(const Rat &r) { return Rat(r - Rat(floor_rat(r))); }

inline long to_long(const Int &z)
{
    if (!z.fits_slong_p())
        fail(errc::undetermined, "integer out of machine range: " + z.get_str());
    return z.get_si();
}

inline std::string to_string(const Rat &r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat parse_rat(const std::string &s)
{
    Rat r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
        fail(errc::parse_error, "not a rational number: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Int lcm_int(const Int &a, const Int &b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int gcd_int(const Int &a, const Int &b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// A rational bound extended by +infinity. Used for "all terms below this
// exponent are known" and for valuations of exact zero.
class Precision
{
public:
    Precision() = default; // +infinity
    Precision(const Rat &v) : value_(v) {}
    Precision(long v) : value_(Rat(v)) {}

    static Precision infinity() { return Precision(); }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    bool is_finite() const noexcept { return value_.has_value(); }
    const Rat &value() const
    {
        if (!value_)
            fail(errc::undetermined, "infinite precision has no rational value");
        return *value_;
    }

    friend bool operator==(const Precision &a, const Precision &b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() == b.is_infinite();
        return *a.value_ == *b.value_;
    }
    friend std::strong_ordering operator<=>(const Precision &a, const Precision &b)
    {
        if (a.is_infinite())
            return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
        if (b.is_infinite())
            return std::strong_ordering::less;
        int c = cmp(*a.value_, *b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend Precision operator+(const Precision &a, const Rat &b)
    {
        if (a.is_infinite())
            return a;
        return Precision(Rat(*a.value_ + b));
    }
    friend Precision operator+(const Precision &a, const Precision &b)
    {
        if (a.is_infinite() || b.is_infinite())
            return infinity();
        return Precision(Rat(*a.value_ + *b.value_));
    }
    friend Precision min(const Precision &a, const Precision &b) { return a < b ? a : b; }
    friend Precision max(const Precision &a, const Precision &b) { return a < b ? b : a; }

    std::string str() const { return is_infinite() ? std::string("inf") : to_string(*value_); }

private:
    std::optional<Rat> value_;
};

inline bool operator<(const Rat &a, const Precision &b) { return Precision(a) < b; }
inline bool operator>=(const Rat &a, const Precision &b) { return Precision(a) >= b; }

inline std::ostream &operator<<(std::ostream &os, const Precision &p) { return os << p.str(); }

} // namespace maxsub
