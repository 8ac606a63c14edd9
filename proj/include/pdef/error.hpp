#ifndef PDEF_ERROR_HPP
#define PDEF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdef
{

enum class error_kind {
    syntax,
    unknown_variable,
    zero_polynomial,
    no_weights,
    ambiguous_weights,
    not_homogeneous,
    not_isolated,
    arity_mismatch,
    degree_overflow,
    invalid_label,
    not_a_cocycle,
    not_a_coboundary,
    slice_cap_exceeded,
    missing_lower_maps,
    arity_cap_exceeded,
    invalid_family,
    convention_mismatch,
    internal
};

inline const char *error_kind_name(error_kind k)
{
    switch (k) {
        case error_kind::syntax:
            return "SyntaxError";
        case error_kind::unknown_variable:
            return "UnknownVariable";
        case error_kind::zero_polynomial:
            return "ZeroPolynomial";
        case error_kind::no_weights:
            return "NoWeights";
        case error_kind::ambiguous_weights:
            return "AmbiguousWeights";
        case error_kind::not_homogeneous:
            return "NotHomogeneous";
        case error_kind::not_isolated:
            return "NotIsolated";
        case error_kind::arity_mismatch:
            return "ArityMismatch";
        case error_kind::degree_overflow:
            return "DegreeOverflow";
        case error_kind::invalid_label:
            return "InvalidLabel";
        case error_kind::not_a_cocycle:
            return "NotACocycle";
        case error_kind::not_a_coboundary:
            return "NotACoboundary";
        case error_kind::slice_cap_exceeded:
            return "SliceCapExceeded";
        case error_kind::missing_lower_maps:
            return "MissingLowerMaps";
        case error_kind::arity_cap_exceeded:
            return "ArityCapExceeded";
        case error_kind::invalid_family:
            return "InvalidFamily";
        case error_kind::convention_mismatch:
            return "ConventionMismatch";
        case error_kind::internal:
            return "InternalError";
    }
    return "Error";
}

// Every failure raised by the library. The kind is stable and is what the
// CLI reports; the message is for humans.
class error : public std::runtime_error
{
public:
    error(error_kind kind, const std::string &msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), m_kind(kind)
    {
    }

    error_kind kind() const noexcept
    {
        return m_kind;
    }

private:
    error_kind m_kind;
};

class parse_error : public error
{
public:
    parse_error(error_kind kind, std::size_t pos, const std::string &msg)
        : error(kind, msg + " at position " + std::to_string(pos)), m_pos(pos)
    {
    }

    std::size_t position() const noexcept
    {
        return m_pos;
    }

private:
    std::size_t m_pos;
};

} // namespace pdef

#endif
