#pragma once

#include <ostream>

namespace pqstab {

// The pair (p, q) of a (p,q)-property together with the Helly number h of
// the ambient system (h = 3 in the plane).
struct PQParams {
  int p = 0;
  int q = 0;
  int h = 3;

  int budget() const noexcept { return p - q + 1; }

  friend bool operator==(const PQParams&, const PQParams&) = default;
};

std::ostream& operator<<(std::ostream& os, const PQParams& pq);

// p >= q >= h and (h-2)p < (h-1)(q-1).
bool admissible(int h, int p, int q);
inline bool admissible(const PQParams& pq) { return admissible(pq.h, pq.p, pq.q); }

// Shrinks an admissible pair to one the stabbing recursion works with:
// (h, h) when p = q; otherwise (p-k, q-k) with k = (h-1)(q-1) - 1 - (h-2)p
// when k >= 1, else unchanged. The result is admissible and either equals
// (h, h) or satisfies (h-2)p' = (h-1)(q'-1) - 1. Throws PreconditionError on
// an inadmissible pair.
PQParams reduce_pq(const PQParams& pq);

}  // namespace pqstab
