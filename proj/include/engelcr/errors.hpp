#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace engelcr {

/// Chart point (x, y, u1, u2) or (x, y, p, q).
using Point = std::array<double, 4>;

std::string format_point(const Point& p);

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable tag, e.g. "EngelDegenerate".
  virtual const char* kind() const noexcept { return "Error"; }
};

#define ENGELCR_DEFINE_ERROR(Name)                                             \
  class Name : public Error                                                    \
  {                                                                            \
  public:                                                                      \
    using Error::Error;                                                        \
    const char* kind() const noexcept override { return #Name; }               \
  }

ENGELCR_DEFINE_ERROR(StructuralError);
ENGELCR_DEFINE_ERROR(SingularJet);
ENGELCR_DEFINE_ERROR(DomainError);
ENGELCR_DEFINE_ERROR(OrderExhausted);
ENGELCR_DEFINE_ERROR(InsufficientOrder);
ENGELCR_DEFINE_ERROR(NormalizationFailed);
ENGELCR_DEFINE_ERROR(ParseError);

#undef ENGELCR_DEFINE_ERROR

/// Raised when (X, Y, [X,Y], [X,[X,Y]]) fails to span the tangent space.
class EngelDegenerate : public Error
{
public:
  explicit EngelDegenerate(const Point& p, const std::string& detail = {});
  const char* kind() const noexcept override { return "EngelDegenerate"; }
  const Point& point() const noexcept { return point_; }

private:
  Point point_;
};

/// Raised when Y is not a section of the canonical line D0.
class NotD0Aligned : public Error
{
public:
  explicit NotD0Aligned(const Point& p, double residual);
  const char* kind() const noexcept override { return "NotD0Aligned"; }
  const Point& point() const noexcept { return point_; }
  double residual() const noexcept { return residual_; }

private:
  Point point_;
  double residual_;
};

} // namespace engelcr
