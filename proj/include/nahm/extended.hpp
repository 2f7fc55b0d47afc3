#pragma once
// Extended-precision mode: MPFR reals with a runtime working precision.

#include <boost/multiprecision/mpfr.hpp>

#include "nahm/asymptotics.hpp"

namespace nahm {

using ExtReal = boost::multiprecision::mpfr_float;

/** Sets the MPFR working precision (decimal digits) for its lifetime. */
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(ExtReal::default_precision()) {
    if (digits < 16) throw std::invalid_argument("extended precision needs at least 16 digits");
    ExtReal::default_precision(digits);
  }
  ~PrecisionScope() { ExtReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

}  // namespace nahm
