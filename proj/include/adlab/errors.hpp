#pragma once

#include <stdexcept>
#include <string>

namespace adlab {

// Base for every domain error. name() is the stable identifier printed by the
// CLI on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept = 0;
};

#define ADLAB_DEFINE_ERROR(Type)                                        \
  class Type : public Error {                                           \
   public:                                                              \
    explicit Type(const std::string& what) : Error(what) {}             \
    const char* name() const noexcept override { return #Type; }        \
  }

ADLAB_DEFINE_ERROR(InvalidModel);
ADLAB_DEFINE_ERROR(InvalidInput);
ADLAB_DEFINE_ERROR(DimError);
ADLAB_DEFINE_ERROR(InvalidBasis);
ADLAB_DEFINE_ERROR(NotAdmissible);
ADLAB_DEFINE_ERROR(ScaleOutOfRange);
ADLAB_DEFINE_ERROR(DegenerateInput);
ADLAB_DEFINE_ERROR(SingularGram);
ADLAB_DEFINE_ERROR(NumericalFailure);
ADLAB_DEFINE_ERROR(Aliasing);
ADLAB_DEFINE_ERROR(EdgeEnergy);
ADLAB_DEFINE_ERROR(IoError);
ADLAB_DEFINE_ERROR(FormatError);

#undef ADLAB_DEFINE_ERROR

}  // namespace adlab
