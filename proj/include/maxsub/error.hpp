#pragma once

#include <stdexcept>
#include <string>

namespace maxsub {

enum class errc {
    conductor_mismatch,
    zero_or_undetermined,
    zero_division,
    insufficient_precision,
    invalid_pair,
    zero_input,
    incomplete_splitting,
    single_branch,
    undetermined,
    inconsistent,
    invalid_descriptor,
    point_off_variety,
    invalid_tangent,
    unsupported_construction,
    point_off_curve,
    singular_point,
    precondition_failed,
    parse_error,
    exponent_domain,
};

inline const char *errc_name(errc c) noexcept
{
    switch (c) {
    case errc::conductor_mismatch: return "ConductorMismatch";
    case errc::zero_or_undetermined: return "ZeroOrUndetermined";
    case errc::zero_division: return "ZeroDivision";
    case errc::insufficient_precision: return "InsufficientPrecision";
    case errc::invalid_pair: return "InvalidPair";
    case errc::zero_input: return "ZeroInput";
    case errc::incomplete_splitting: return "IncompleteSplitting";
    case errc::single_branch: return "SingleBranch";
    case errc::undetermined: return "Undetermined";
    case errc::inconsistent: return "Inconsistent";
    case errc::invalid_descriptor: return "InvalidDescriptor";
    case errc::point_off_variety: return "PointOffVariety";
    case errc::invalid_tangent: return "InvalidTangent";
    case errc::unsupported_construction: return "UnsupportedConstruction";
    case errc::point_off_curve: return "PointOffCurve";
    case errc::singular_point: return "SingularPoint";
    case errc::precondition_failed: return "PreconditionFailed";
    case errc::parse_error: return "ParseError";
    case errc::exponent_domain: return "ExponentDomainError";
    }
    return "Unknown";
}

// All library failures derive from this; code() identifies the contract
// violation named in the operation's documentation.
class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// valuation() of a series with no visible term. exact_zero() tells a finite
// zero series apart from one whose terms could not be reached.
class zero_or_undetermined : public error
{
public:
    zero_or_undetermined(bool exact_zero, const std::string &what)
        : error(errc::zero_or_undetermined, what), exact_zero_(exact_zero)
    {
    }
    bool exact_zero() const noexcept { return exact_zero_; }

private:
    bool exact_zero_;
};

class parse_error : public error
{
public:
    parse_error(errc code, std::size_t pos, const std::string &what)
        : error(code, what + " at position " + std::to_string(pos)), pos_(pos)
    {
    }
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

[[noreturn]] inline void fail(errc c, const std::string &what) { throw error(c, what); }

} // namespace maxsub
