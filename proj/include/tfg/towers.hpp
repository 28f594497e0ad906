#ifndef TFG_TOWERS_HPP
#define TFG_TOWERS_HPP

// First-return maps, induced transformations and Kakutani-Rokhlin
// partitions, including nested sequences anchored at a point.

#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/group.hpp"
#include "tfg/systems.hpp"

namespace tfg {

/// A = disjoint union of cells A_k on which the first return time is k.
struct ReturnFunction {
  ClopenSet base;
  std::vector<std::pair<Power, ClopenSet>> cells;  // increasing k, nonempty
};

ReturnFunction first_return(ClopenSet const& a);

/// T_A: T^{t_A(x)} x on A, identity elsewhere.
GroupElement induced(ClopenSet const& a);

struct Tower {
  ClopenSet base;
  std::int64_t height = 0;
};

class KRPartition {
 public:
  /// Towers are kept sorted by (height, base text).
  explicit KRPartition(std::vector<Tower> towers);

  SystemRef const& system() const { return system_; }
  std::vector<Tower> const& towers() const { return towers_; }
  std::size_t size() const { return towers_.size(); }

  /// T^i B_v.
  ClopenSet atom(std::size_t v, std::int64_t i) const;
  /// All atoms, tower by tower, level by level.
  std::vector<ClopenSet> atoms() const;
  std::size_t atom_count() const;

  ClopenSet base_set() const;
  ClopenSet top_set() const;
  std::int64_t min_height() const;

  /// Throws VerificationError unless the atoms partition X and T(H) = B.
  void verify() const;

  /// `tower v: base=<clopen> height=<h>` lines, then `base=` and `top=`.
  std::string report() const;

 private:
  SystemRef system_;
  std::vector<Tower> towers_;
};

/// Towers (A_k, k) from the first return to A.
KRPartition kr_from_set(ClopenSet const& a);
/// Splits bases so that every atom lies inside B or misses it.
KRPartition refine_against(KRPartition const& xi, ClopenSet const& b);
/// Splits bases so that every atom lies inside one cell of `p`.
KRPartition refine_by_partition(KRPartition const& xi, Partition const& p);

/// U(i) = union of T^{h_v - i - 1} B_v; D(i) = union of T^i B_v.
ClopenSet u_set(KRPartition const& xi, std::int64_t i);
ClopenSet d_set(KRPartition const& xi, std::int64_t i);

using Schedule = std::function<std::int64_t(std::int64_t)>;

struct TowerLevel {
  std::int64_t index = 0;   // n
  std::int64_t m = 0;       // m_n
  std::int64_t radius = 0;  // E_n is the anchor cylinder of this radius
  KRPartition partition;
};

/// Radius r with 2^-r < 1/n used for the diameter condition: ceil(log2 n) + 1.
std::int64_t diameter_radius(std::int64_t n);

/// Levels Xi_1, Xi_2, ... built on demand from E_n = anchor cylinders.
/// Xi_n is the return partition of the smallest admissible E_n (no larger
/// than E_{n-1}) meeting the height and diameter conditions, refined
/// against the atoms of Xi_{n-1}.
class TowerSequence {
 public:
  explicit TowerSequence(PointRep anchor, Schedule schedule = {});

  PointRep const& anchor() const { return anchor_; }
  SystemRef const& system() const { return anchor_.system; }
  std::int64_t m(std::int64_t n) const { return schedule_(n); }

  /// 1-based; memoized, safe to call concurrently.
  TowerLevel const& level(std::int64_t n) const;

 private:
  TowerLevel build(std::int64_t n, TowerLevel const* previous) const;

  PointRep anchor_;
  Schedule schedule_;
  mutable std::mutex mutex_;
  mutable std::deque<TowerLevel> levels_;
};

/// Process-wide memoized sequence anchored at `anchor` with m_n = n.
TowerSequence const& anchored_sequence(PointRep const& anchor);

struct ConditionReport {
  bool partition = false;      // atoms partition X and T(H) = B
  bool generates = false;      // radius-n cylinders are unions of atoms of some level
  std::int64_t generating_level = 0;
  bool refines = false;        // Xi_{n+1} refines Xi_n
  bool nested_bases = false;   // B(Xi_{n+1}) in B(Xi_n), anchor in B(Xi_n)
  bool height = false;         // h_n >= 2 m_n + 2
  bool diameter = false;       // T^i B(Xi_n) inside one radius cylinder
  bool all() const {
    return partition && generates && refines && nested_bases && height && diameter;
  }
};

ConditionReport check_conditions(TowerSequence const& seq, std::int64_t n,
                                 std::int64_t search_limit = 64);

/// True if every atom of `fine` lies inside one atom of `coarse`.
bool partition_refines(std::vector<ClopenSet> const& fine, std::vector<ClopenSet> const& coarse);

}  // namespace tfg

#endif  // TFG_TOWERS_HPP
