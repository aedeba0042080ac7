#pragma once

#include <gmpxx.h>

#include <string>

namespace ucover {

// Exact coefficients everywhere; boundary coefficients stay small but
// Smith/Groebner intermediate values do not.
using Integer = mpz_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_unit(const Integer& z) { return z == 1 || z == -1; }

inline Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }

}  // namespace ucover
