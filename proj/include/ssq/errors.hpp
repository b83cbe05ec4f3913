#pragma once

#include <stdexcept>
#include <string>

namespace ssq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SSQ_DEFINE_ERROR(Name)                  \
  struct Name : Error {                         \
    explicit Name(const std::string& msg)       \
        : Error(std::string(#Name ": ") + msg) {} \
  }

SSQ_DEFINE_ERROR(NonDecayingProfile);
SSQ_DEFINE_ERROR(StepFailure);
SSQ_DEFINE_ERROR(RootCountMismatch);
SSQ_DEFINE_ERROR(DegenerateZero);
SSQ_DEFINE_ERROR(ContinuationUnreliable);
SSQ_DEFINE_ERROR(SystemSingular);
SSQ_DEFINE_ERROR(ExponentOverflow);
SSQ_DEFINE_ERROR(SymmetryBroken);
SSQ_DEFINE_ERROR(OnCutEvaluation);
SSQ_DEFINE_ERROR(BlowUp);
SSQ_DEFINE_ERROR(NoConvergence);
SSQ_DEFINE_ERROR(FitDegenerate);
SSQ_DEFINE_ERROR(Instability);
SSQ_DEFINE_ERROR(NonPeriodicInput);
SSQ_DEFINE_ERROR(GridMismatch);
SSQ_DEFINE_ERROR(NonpositiveTime);
SSQ_DEFINE_ERROR(IoError);

#undef SSQ_DEFINE_ERROR

}  // namespace ssq
