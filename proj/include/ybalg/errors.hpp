#pragma once

#include <stdexcept>
#include <string>

namespace ybalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define YBALG_DEFINE_ERROR(Name)              \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

// special functions
YBALG_DEFINE_ERROR(NomeTooLarge);
YBALG_DEFINE_ERROR(NonConvergent);

// operator construction
YBALG_DEFINE_ERROR(DynamicalPole);
YBALG_DEFINE_ERROR(SizeMismatch);
YBALG_DEFINE_ERROR(RegimeMismatch);
YBALG_DEFINE_ERROR(InvalidModel);

// functional equations and residue sums
YBALG_DEFINE_ERROR(SingularCoefficient);
YBALG_DEFINE_ERROR(CoincidentPoints);
YBALG_DEFINE_ERROR(SingularR);

// polynomials and interpolation
YBALG_DEFINE_ERROR(IndexError);
YBALG_DEFINE_ERROR(DegreeMismatch);
YBALG_DEFINE_ERROR(GridDegenerate);
YBALG_DEFINE_ERROR(InterpolationIllConditioned);

// command line harness
YBALG_DEFINE_ERROR(ConfigError);

#undef YBALG_DEFINE_ERROR

} // namespace ybalg
