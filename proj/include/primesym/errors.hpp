#ifndef PRIMESYM_ERRORS_HPP_
#define PRIMESYM_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace primesym {

// Every domain error carries the name under which it is reported on the
// command line (e.g. "DegreeMismatch").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string const& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  std::string const& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PRIMESYM_DEFINE_ERROR(NAME)                                \
  class NAME : public Error {                                      \
   public:                                                         \
    explicit NAME(std::string const& what) : Error(#NAME, what) {} \
  };

PRIMESYM_DEFINE_ERROR(DegreeMismatch)
PRIMESYM_DEFINE_ERROR(MalformedCycle)
PRIMESYM_DEFINE_ERROR(PointOutOfRange)
PRIMESYM_DEFINE_ERROR(NotASubgroup)
PRIMESYM_DEFINE_ERROR(IndexExceedsLimit)
PRIMESYM_DEFINE_ERROR(StepLimit)
PRIMESYM_DEFINE_ERROR(NotTransitive)
PRIMESYM_DEFINE_ERROR(TrivialGroup)
PRIMESYM_DEFINE_ERROR(InvalidParams)
PRIMESYM_DEFINE_ERROR(FactorizationTimeout)
PRIMESYM_DEFINE_ERROR(InternalContradiction)
PRIMESYM_DEFINE_ERROR(ParseError)
PRIMESYM_DEFINE_ERROR(OrderMismatch)
PRIMESYM_DEFINE_ERROR(UnknownName)
PRIMESYM_DEFINE_ERROR(XInsideH)
PRIMESYM_DEFINE_ERROR(TooManyVertices)
PRIMESYM_DEFINE_ERROR(BrokenSymmetry)
PRIMESYM_DEFINE_ERROR(NotAnAutomorphism)
PRIMESYM_DEFINE_ERROR(DegenerateQuotient)
PRIMESYM_DEFINE_ERROR(NoHallSubgroupFound)
PRIMESYM_DEFINE_ERROR(AmbientTooLarge)
PRIMESYM_DEFINE_ERROR(UnknownClaim)

#undef PRIMESYM_DEFINE_ERROR

}  // namespace primesym

#endif  // PRIMESYM_ERRORS_HPP_
