#pragma once

#include <stdexcept>
#include <string>

namespace qtoric {

// Base of every library error. The `kind()` string is stable and is what
// the CLI puts into reports.
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

   private:
    std::string kind_;
};

#define QTORIC_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
       public:                                                      \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

QTORIC_DEFINE_ERROR(DivisionByZero);
QTORIC_DEFINE_ERROR(AmbiguousSign);
QTORIC_DEFINE_ERROR(Inconsistent);
QTORIC_DEFINE_ERROR(NotStronglyConvex);
QTORIC_DEFINE_ERROR(NoCompletion);
QTORIC_DEFINE_ERROR(DiagramFailure);
QTORIC_DEFINE_ERROR(NotAFace);
QTORIC_DEFINE_ERROR(EmptyIntersection);
QTORIC_DEFINE_ERROR(Mismatch);
QTORIC_DEFINE_ERROR(BlockFormViolation);
QTORIC_DEFINE_ERROR(KernelNotPreserved);
QTORIC_DEFINE_ERROR(ScaleExceeded);
QTORIC_DEFINE_ERROR(SchemaError);
QTORIC_DEFINE_ERROR(DimUnsupported);
QTORIC_DEFINE_ERROR(NotClassical);

#undef QTORIC_DEFINE_ERROR

}  // namespace qtoric
