#pragma once

#include <stdexcept>
#include <string>

namespace hopfsol {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HOPFSOL_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

HOPFSOL_DEFINE_ERROR(NotOnSphere);
HOPFSOL_DEFINE_ERROR(ResolutionTooLow);
HOPFSOL_DEFINE_ERROR(CurvesIntersect);
HOPFSOL_DEFINE_ERROR(PoleOnCurve);
HOPFSOL_DEFINE_ERROR(OriginSingular);
HOPFSOL_DEFINE_ERROR(CutoffExceedsMesh);
HOPFSOL_DEFINE_ERROR(BoundaryNotAsymptotic);
HOPFSOL_DEFINE_ERROR(MeshMismatch);
HOPFSOL_DEFINE_ERROR(SingularJacobian);
HOPFSOL_DEFINE_ERROR(WindowTooNarrow);
HOPFSOL_DEFINE_ERROR(InvalidArgument);

#undef HOPFSOL_DEFINE_ERROR

}  // namespace hopfsol
