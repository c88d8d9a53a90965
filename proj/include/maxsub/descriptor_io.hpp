#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "maxsub.hpp"
#include "parse.hpp"

namespace maxsub {

using json = nlohmann::json;

// "zeta:N" (or "Q") to a conductor.
inline unsigned parse_field_spec(const std::string &s)
{
    if (s.empty() || s == "Q" || s == "QQ")
        return 1;
    if (s.rfind("zeta:", 0) != 0)
        fail(errc::invalid_descriptor, "field must be written zeta:N");
    try {
        const long n = std::stol(s.substr(5));
        if (n < 1 || n > 100000)
            throw std::out_of_range("conductor");
        return static_cast<unsigned>(n);
    } catch (const std::logic_error &) {
        fail(errc::invalid_descriptor, "bad conductor in '" + s + "'");
    }
}

namespace detail {

inline const json &require(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        fail(errc::invalid_descriptor, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string text_field(const json &j, const char *key)
{
    const json &v = require(j, key);
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<long>());
    fail(errc::invalid_descriptor, std::string("field '") + key + "' must be a string");
}

inline RulePtr rule_from_json(const json &j, unsigned field)
{
    const std::string name = text_field(j, "rule");
    const json params = j.value("params", json::object());
    long start = 1;
    FieldElem coeff(1);
    if (params.contains("start")) {
        const json &s = params.at("start");
        start = s.is_number_integer() ? s.get<long>() : std::stol(s.get<std::string>());
    }
    if (params.contains("coeff")) {
        const json &c = params.at("coeff");
        const std::string txt = c.is_string() ? c.get<std::string>() : c.dump();
        const LaurentPoly p = parse_expression(txt, "t", "y", field);
        if (p.y_degree() != 0 || p.is_zero() || p.min_t() != 0 || p.max_t() != 0)
            fail(errc::invalid_descriptor, "stream coefficient must be a nonzero constant");
        coeff = p.coeff(0, 0);
    }
    if (name == "geometric_gap")
        return std::make_shared<GeometricGapRule>(start, coeff);
    if (name == "integers")
        return std::make_shared<IntegersRule>(start, coeff);
    fail(errc::invalid_descriptor, "unknown stream rule '" + name + "'");
}

} // namespace detail

// Series variable sv; for algebraic alphas the minimal polynomial is
// written in (sv, rv).
inline AlphaDescriptor alpha_from_json(const json &j, const std::string &sv, const std::string &rv, unsigned field,
                                       const Options &opt = {})
{
    const std::string kind = detail::text_field(j, "kind");
    if (kind == "finite")
        return AlphaDescriptor::finite(parse_series(detail::text_field(j, "series"), sv, field));
    if (kind == "algebraic") {
        const LaurentPoly m = parse_expression(detail::text_field(j, "minpoly"), sv, rv, field);
        const HahnSeries prefix = parse_series(j.contains("prefix") ? detail::text_field(j, "prefix") : "0", sv, field);
        return AlphaDescriptor::algebraic(m, prefix, CycloField(field), opt);
    }
    if (kind == "stream") {
        RulePtr r = detail::rule_from_json(j, field);
        const bool tr = j.contains("transcendental") ? j.at("transcendental").get<bool>() : r->transcendental();
        return AlphaDescriptor::stream(std::move(r), tr);
    }
    fail(errc::invalid_descriptor, "unknown alpha kind '" + kind + "'");
}

inline unsigned descriptor_field(const json &j, unsigned fallback)
{
    if (j.is_object() && j.contains("field"))
        return parse_field_spec(j.at("field").get<std::string>());
    return fallback;
}

// {"case":"psi"|"units", "swap":bool, "twist":int, "poly_subring":bool,
//  "field":"zeta:N", "alpha":{...}}
inline SubalgebraDescriptor descriptor_from_json(const json &j, unsigned field = 1, const Options &opt = {})
{
    if (!j.is_object())
        fail(errc::invalid_descriptor, "descriptor must be a JSON object");
    field = descriptor_field(j, field);
    const std::string c = j.value("case", std::string("psi"));
    SubalgebraDescriptor d;
    if (c == "psi") {
        d.kind = CaseKind::psi;
        d.sigma.swap = j.value("swap", false);
        d.sigma.twist = j.value("twist", 0L);
        d.alpha = alpha_from_json(detail::require(j, "alpha"), "t", "y", field, opt);
    } else if (c == "units") {
        d.kind = CaseKind::units;
        d.alpha = alpha_from_json(detail::require(j, "alpha"), "u", "t", field, opt);
    } else {
        fail(errc::invalid_descriptor, "unknown case '" + c + "'");
    }
    d.poly_subring = j.value("poly_subring", false);
    validate(d, opt);
    return d;
}

inline json alpha_to_json(const AlphaDescriptor &a, const std::string &sv, const std::string &rv)
{
    json j;
    switch (a.kind()) {
    case AlphaKind::finite:
        j["kind"] = "finite";
        j["series"] = a.known().str(sv);
        break;
    case AlphaKind::algebraic:
        j["kind"] = "algebraic";
        j["minpoly"] = a.minpoly().str(sv, rv);
        j["prefix"] = a.known().str(sv);
        break;
    case AlphaKind::stream:
        j["kind"] = "stream";
        j["rule"] = a.rule()->name();
        j["params"] = a.rule()->params();
        j["transcendental"] = a.transcendental();
        break;
    }
    return j;
}

inline json descriptor_to_json(const SubalgebraDescriptor &d)
{
    json j;
    if (d.kind == CaseKind::psi) {
        j["case"] = "psi";
        j["swap"] = d.sigma.swap;
        j["twist"] = d.sigma.twist;
        j["alpha"] = alpha_to_json(d.alpha, "t", "y");
    } else {
        j["case"] = "units";
        j["alpha"] = alpha_to_json(d.alpha, "u", "t");
    }
    if (d.poly_subring)
        j["poly_subring"] = true;
    return j;
}

} // namespace maxsub
