#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "hahn.hpp"
#include "laurent.hpp"
#include "mpoly.hpp"

namespace maxsub {

// Expression grammar:
//   expr  := ['+'|'-'] term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('+'|'-') unary | power
//   power := atom ['^' exp]
//   exp   := ['-'] int | '(' ['-'] int ['/' int] ')'
//   atom  := int | name | 'z' | '(' expr ')'
// Names come from the caller; 'z' is the generator of Q(zeta_N) when a
// field is supplied. Division is only by monomials.
namespace detail {

// Sparse polynomial with rational exponents over named variables.
struct GenPoly {
    std::map<std::vector<Rat>, FieldElem> terms;

    static GenPoly constant(std::size_t n, const FieldElem &c)
    {
        GenPoly g;
        if (!c.is_zero())
            g.terms.emplace(std::vector<Rat>(n, Rat(0)), c);
        return g;
    }
    void add(const std::vector<Rat> &e, const FieldElem &c)
    {
        if (c.is_zero())
            return;
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }
    GenPoly operator+(const GenPoly &o) const
    {
        GenPoly r = *this;
        for (const auto &[e, c] : o.terms)
            r.add(e, c);
        return r;
    }
    GenPoly neg() const
    {
        GenPoly r;
        for (const auto &[e, c] : terms)
            r.terms.emplace(e, -c);
        return r;
    }
    GenPoly operator*(const GenPoly &o) const
    {
        GenPoly r;
        for (const auto &[ea, ca] : terms)
            for (const auto &[eb, cb] : o.terms) {
                std::vector<Rat> e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                r.add(e, ca * cb);
            }
        return r;
    }
};

class Parser
{
public:
    Parser(const std::string &text, std::vector<std::string> names, unsigned field)
        : s_(text), names_(std::move(names)), field_(field)
    {
    }

    GenPoly parse()
    {
        GenPoly g = expr();
        skip();
        if (i_ != s_.size())
            throw parse_error(errc::parse_error, i_, std::string("unexpected '") + s_[i_] + "'");
        return g;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    [[noreturn]] void error_here(const std::string &msg) { throw parse_error(errc::parse_error, i_, msg); }

    GenPoly expr()
    {
        skip();
        GenPoly g;
        bool first = true;
        for (;;) {
            bool negate = false;
            if (eat('-'))
                negate = true;
            else if (!first && !eat('+'))
                break;
            else if (first)
                eat('+');
            GenPoly t = term();
            g = g + (negate ? t.neg() : t);
            first = false;
            skip();
            if (i_ >= s_.size() || (s_[i_] != '+' && s_[i_] != '-'))
                break;
        }
        return g;
    }

    GenPoly term()
    {
        GenPoly g = unary();
        for (;;) {
            if (eat('*')) {
                g = g * unary();
            } else if (eat('/')) {
                const std::size_t at = i_;
                g = g * invert(unary(), at);
            } else {
                return g;
            }
        }
    }

    GenPoly invert(const GenPoly &d, std::size_t at)
    {
        if (d.terms.empty())
            throw parse_error(errc::parse_error, at, "division by zero");
        if (d.terms.size() != 1)
            throw parse_error(errc::parse_error, at, "division by a non-monomial");
        const auto &[e, c] = *d.terms.begin();
        std::vector<Rat> ne(e.size());
        for (std::size_t k = 0; k < e.size(); ++k)
            ne[k] = -e[k];
        GenPoly r;
        r.terms.emplace(std::move(ne), c.inverse());
        return r;
    }

    GenPoly unary()
    {
        if (eat('-'))
            return unary().neg();
        if (eat('+'))
            return unary();
        return power();
    }

    GenPoly power()
    {
        GenPoly base = atom();
        if (!eat('^'))
            return base;
        const std::size_t at = i_;
        const Rat e = exponent();
        if (is_integer(e) && e >= 0) {
            GenPoly r = GenPoly::constant(names_.size(), FieldElem(1));
            for (long k = 0; k < to_long(e.get_num()); ++k)
                r = r * base;
            return r;
        }
        if (base.terms.size() != 1)
            throw parse_error(errc::exponent_domain, at, "only monomials take negative or fractional powers");
        const auto &[be, bc] = *base.terms.begin();
        FieldElem c = bc;
        if (!c.is_one()) {
            if (!is_integer(e))
                throw parse_error(errc::exponent_domain, at, "fractional power of a coefficient");
            c = c.pow(to_long(e.get_num()));
        }
        std::vector<Rat> ne(be.size());
        for (std::size_t k = 0; k < be.size(); ++k)
            ne[k] = be[k] * e;
        GenPoly r;
        r.terms.emplace(std::move(ne), c);
        return r;
    }

    Int integer()
    {
        skip();
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (start == i_)
            error_here("expected an integer");
        return Int(s_.substr(start, i_ - start));
    }

    Rat exponent()
    {
        if (eat('(')) {
            const bool neg = eat('-');
            Int num = integer(), den(1);
            if (eat('/'))
                den = integer();
            if (den == 0)
                error_here("zero denominator in exponent");
            if (!eat(')'))
                error_here("expected ')'");
            Rat r = make_rat(num, den);
            return neg ? Rat(-r) : r;
        }
        const bool neg = eat('-');
        Rat r(integer());
        return neg ? Rat(-r) : r;
    }

    GenPoly atom()
    {
        skip();
        if (i_ >= s_.size())
            error_here("unexpected end of input");
        const char ch = s_[i_];
        if (ch == '(') {
            ++i_;
            GenPoly g = expr();
            if (!eat(')'))
                error_here("expected ')'");
            return g;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)))
            return GenPoly::constant(names_.size(), FieldElem(Rat(integer())));
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            const std::string name = s_.substr(start, i_ - start);
            for (std::size_t k = 0; k < names_.size(); ++k)
                if (names_[k] == name) {
                    GenPoly g;
                    std::vector<Rat> e(names_.size(), Rat(0));
                    e[k] = 1;
                    g.terms.emplace(std::move(e), FieldElem(1));
                    return g;
                }
            if (name == "z") {
                if (field_ <= 1)
                    throw parse_error(errc::parse_error, start, "'z' needs a cyclotomic field (zeta:N)");
                return GenPoly::constant(names_.size(), FieldElem::generator_power(field_, 1));
            }
            throw parse_error(errc::parse_error, start, "unknown name '" + name + "'");
        }
        error_here(std::string("unexpected '") + ch + "'");
    }

    const std::string &s_;
    std::vector<std::string> names_;
    unsigned field_;
    std::size_t i_ = 0;
};

inline GenPoly parse_gen(const std::string &text, const std::vector<std::string> &names, unsigned field)
{
    return Parser(text, names, field).parse();
}

[[noreturn]] inline void domain_error(const std::string &msg) { throw parse_error(errc::exponent_domain, 0, msg); }

} // namespace detail

// Laurent polynomial in (tv, yv): integer exponents, y-exponents >= 0.
inline LaurentPoly parse_expression(const std::string &text, const std::string &tv = "t", const std::string &yv = "y",
                                    unsigned field = 1)
{
    const auto g = detail::parse_gen(text, {tv, yv}, field);
    LaurentPoly::Map m;
    for (const auto &[e, c] : g.terms) {
        if (!is_integer(e[0]) || !is_integer(e[1]))
            detail::domain_error("fractional exponent in a polynomial expression");
        if (e[1] < 0)
            detail::domain_error("negative power of " + yv);
        m.emplace(Exponent{to_long(e[0].get_num()), static_cast<unsigned>(to_long(e[1].get_num()))}, c);
    }
    return LaurentPoly(std::move(m));
}

// Multivariate Laurent polynomial with integer exponents.
inline MPoly parse_mpoly(const std::string &text, const std::vector<std::string> &names, unsigned field = 1)
{
    const auto g = detail::parse_gen(text, names, field);
    MPoly r(names.size());
    for (const auto &[e, c] : g.terms) {
        MPoly::Exps ex;
        for (const auto &x : e) {
            if (!is_integer(x))
                detail::domain_error("fractional exponent in a polynomial expression");
            ex.push_back(to_long(x.get_num()));
        }
        r += MPoly::monomial(c, std::move(ex));
    }
    return r;
}

// Finite series in one variable with rational exponents; an optional
// trailing "+ O(var^k)" sets the precision.
inline HahnSeries parse_series(const std::string &text, const std::string &var = "t", unsigned field = 1)
{
    std::string body = text;
    Precision known = Precision::infinity();
    const std::string marker = "O(";
    if (const auto pos = text.find(marker); pos != std::string::npos) {
        // Split "... + O(t^k)".
        std::size_t cut = pos;
        while (cut > 0 && std::isspace(static_cast<unsigned char>(text[cut - 1])))
            --cut;
        if (cut == 0 || text[cut - 1] != '+') {
            if (cut != 0)
                throw parse_error(errc::parse_error, pos, "O-term must be added last");
        } else {
            --cut;
        }
        std::size_t close = pos + 2;
        for (int depth = 1; close < text.size(); ++close) {
            depth += text[close] == '(' ? 1 : text[close] == ')' ? -1 : 0;
            if (depth == 0)
                break;
        }
        if (close >= text.size())
            throw parse_error(errc::parse_error, pos, "unclosed O-term");
        if (text.find_first_not_of(" \t", close + 1) != std::string::npos)
            throw parse_error(errc::parse_error, close + 1, "O-term must be added last");
        const auto o = detail::parse_gen(text.substr(pos + 2, close - pos - 2), {var}, field);
        if (o.terms.size() != 1 || !o.terms.begin()->second.is_one())
            throw parse_error(errc::parse_error, pos, "O-term must be a monomial");
        known = Precision(o.terms.begin()->first[0]);
        body = text.substr(0, cut);
        if (body.find_first_not_of(" \t") == std::string::npos)
            body = "0";
    }
    const auto g = detail::parse_gen(body, {var}, field);
    std::vector<Term> terms;
    for (const auto &[e, c] : g.terms)
        terms.push_back({e[0], c});
    return series_from_terms(terms, known);
}

} // namespace maxsub
