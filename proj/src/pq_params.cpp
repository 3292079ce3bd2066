#include "pqstab/pq_params.hpp"

#include <string>

#include "pqstab/error.hpp"

namespace pqstab {

std::ostream& operator<<(std::ostream& os, const PQParams& pq) {
  return os << "(p=" << pq.p << ", q=" << pq.q << ", h=" << pq.h << ")";
}

bool admissible(int h, int p, int q) {
  if (h < 2) return false;
  return p >= q && q >= h && static_cast<long long>(h - 2) * p < static_cast<long long>(h - 1) * (q - 1);
}

PQParams reduce_pq(const PQParams& pq) {
  if (!admissible(pq)) {
    throw PreconditionError("reduce_pq: inadmissible pair p=" + std::to_string(pq.p) + " q=" +
                            std::to_string(pq.q) + " h=" + std::to_string(pq.h));
  }
  if (pq.p == pq.q) return PQParams{pq.h, pq.h, pq.h};
  const long long k = static_cast<long long>(pq.h - 1) * (pq.q - 1) - 1 - static_cast<long long>(pq.h - 2) * pq.p;
  if (k >= 1) return PQParams{pq.p - static_cast<int>(k), pq.q - static_cast<int>(k), pq.h};
  return pq;
}

}  // namespace pqstab
