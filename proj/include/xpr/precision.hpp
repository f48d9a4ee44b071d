#pragma once

#include <mpfr.h>

namespace xpr::precision {

/// Working precision used by BigReal values constructed without an explicit
/// bit count. Defaults to 256; the CLI overrides it via --bits/XPRLAB_BITS.
mpfr_prec_t default_bits();
void set_default_bits(mpfr_prec_t bits);

/// Hard cap on the guard precision any single operation may request.
/// Argument reduction of |x| ~ 2^e needs roughly bits + e guard bits; if that
/// exceeds the ceiling the operation raises PrecisionExhausted instead of
/// silently losing accuracy.
mpfr_prec_t guard_ceiling();
void set_guard_ceiling(mpfr_prec_t bits);

inline constexpr mpfr_prec_t kMinBits = 16;

}  // namespace xpr::precision
