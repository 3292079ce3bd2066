#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pqstab {

// Exact rational. gmpxx keeps results of arithmetic in canonical form
// (reduced, positive denominator); values built through parse_scalar or
// make_scalar are canonicalized explicitly.
using Scalar = mpq_class;

Scalar make_scalar(long num, long den = 1);

// Accepts "7", "-3", "1/2", "-5/10", "0.125", "-2.5", "1e3" is rejected.
// Throws InputError on malformed text or a zero denominator.
Scalar parse_scalar(std::string_view text);

// Canonical text: "3", "-1/2".
std::string to_string(const Scalar& value);

}  // namespace pqstab
