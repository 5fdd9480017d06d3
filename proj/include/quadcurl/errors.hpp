/**
 * @file errors.hpp
 * @brief Exception hierarchy. Every library failure derives from quadcurl::Error.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace quadcurl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QUADCURL_DEFINE_ERROR(Name)          \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    };

QUADCURL_DEFINE_ERROR(RankDeficiency)
QUADCURL_DEFINE_ERROR(UnsupportedDegree)
QUADCURL_DEFINE_ERROR(DegenerateElement)
QUADCURL_DEFINE_ERROR(BadOrder)
QUADCURL_DEFINE_ERROR(SingularVandermonde)
QUADCURL_DEFINE_ERROR(ConsistencyFailure)
QUADCURL_DEFINE_ERROR(OddSubdivision)
QUADCURL_DEFINE_ERROR(NegativeDifference)
QUADCURL_DEFINE_ERROR(SolverFailure)
QUADCURL_DEFINE_ERROR(UsageError)
QUADCURL_DEFINE_ERROR(ArtifactError)

#undef QUADCURL_DEFINE_ERROR

}  // namespace quadcurl
