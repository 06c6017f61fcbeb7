#pragma once

// Maya encoding of charged partitions.  A charged partition (m, lambda) is the
// strictly decreasing occupied-index sequence
//
//     d_i = m - i + 1 + lambda_i   (i = 1, 2, ...; lambda_i = 0 past the end),
//
// i.e. a semi-infinite wedge v_{d_1} ^ v_{d_2} ^ ...  We store the occupied
// set canonically as its finite symmetric difference against the charge-0
// vacuum {0, -1, -2, ...}: `particles` (occupied indices > 0) and `holes`
// (vacant indices <= 0).  Fermion generators become wedge insertion/removal
// with the sign (-1)^{#occupied indices greater than k}; this is the
// independent cross-check for the row-wise rules on partitions.

#include "topr/partition.hpp"

#include <optional>
#include <set>

namespace topr {

struct MayaDiagram {
  std::set<long> particles;  // occupied, all > 0
  std::set<long> holes;      // vacant, all <= 0

  int charge() const { return static_cast<int>(particles.size()) - static_cast<int>(holes.size()); }

  bool occupied(long k) const {
    if (k > 0) return particles.count(k) > 0;
    return holes.count(k) == 0;
  }

  // Number of occupied indices strictly greater than k (finite).
  long occupied_above(long k) const {
    if (k >= 0) {
      long c = 0;
      for (auto it = particles.upper_bound(k); it != particles.end(); ++it) ++c;
      return c;
    }
    long c = static_cast<long>(particles.size()) - k;  // particles plus slots k+1..0
    for (long h : holes)
      if (h > k) --c;
    return c;
  }

  // First r occupied indices in decreasing order.
  std::vector<long> head(int r) const {
    std::vector<long> out;
    for (auto it = particles.rbegin(); it != particles.rend() && static_cast<int>(out.size()) < r; ++it)
      out.push_back(*it);
    for (long k = 0; static_cast<int>(out.size()) < r; --k)
      if (occupied(k)) out.push_back(k);
    return out;
  }

  friend bool operator==(const MayaDiagram& a, const MayaDiagram& b) {
    return a.particles == b.particles && a.holes == b.holes;
  }
};

inline MayaDiagram to_maya(const ChargedPartition& cp) {
  MayaDiagram m;
  const int l = cp.partition.length();
  std::set<long> occ_head;
  for (long i = 1; i <= l; ++i) occ_head.insert(cp.charge - i + 1 + cp.partition.part(static_cast<int>(i)));
  // Occupied set = occ_head plus the full tail { k <= charge - l }.
  const long tail_top = cp.charge - l;
  for (long k : occ_head)
    if (k > 0) m.particles.insert(k);
  for (long k = 1; k <= tail_top; ++k) m.particles.insert(k);
  for (long k = 0; k > tail_top; --k)
    if (occ_head.count(k) == 0) m.holes.insert(k);
  return m;
}

inline ChargedPartition from_maya(const MayaDiagram& m) {
  ChargedPartition cp;
  cp.charge = m.charge();
  // All rows from position charge - B + 1 on are zero, where B is the top of
  // the fully occupied ray (just below the lowest hole).
  const long bottom = m.holes.empty() ? 0 : *m.holes.begin() - 1;
  const int r = static_cast<int>(std::max<long>(1, cp.charge - bottom + 1));
  std::vector<long> h = m.head(r);
  std::vector<int> parts;
  for (int i = 1; i <= static_cast<int>(h.size()); ++i) {
    long li = h[i - 1] - cp.charge + i - 1;
    parts.push_back(static_cast<int>(li));
  }
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  cp.partition = Partition(parts);
  return cp;
}

// Wedge insertion of index k: zero if occupied; otherwise sign
// (-1)^{occupied above k}.  Returns nullopt for zero.
struct SignedMaya {
  int sign;
  MayaDiagram maya;
};

inline std::optional<SignedMaya> maya_insert(const MayaDiagram& m, long k) {
  if (m.occupied(k)) return std::nullopt;
  SignedMaya r{m.occupied_above(k) % 2 == 0 ? 1 : -1, m};
  if (k > 0)
    r.maya.particles.insert(k);
  else
    r.maya.holes.erase(k);
  return r;
}

inline std::optional<SignedMaya> maya_remove(const MayaDiagram& m, long k) {
  if (!m.occupied(k)) return std::nullopt;
  SignedMaya r{m.occupied_above(k) % 2 == 0 ? 1 : -1, m};
  if (k > 0)
    r.maya.particles.erase(k);
  else
    r.maya.holes.insert(k);
  return r;
}

}  // namespace topr
