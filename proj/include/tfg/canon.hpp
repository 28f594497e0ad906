#ifndef TFG_CANON_HPP
#define TFG_CANON_HPP

// Permutations and rotations relative to a Kakutani-Rokhlin partition, the
// factorization Q = P R, the index map and the constructions built on them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/group.hpp"
#include "tfg/towers.hpp"

namespace tfg {

/// T_{U(i)}: T^{h_w} on T^{h_v - i - 1} B_v where T^{i+1} x lies in B_w.
GroupElement t_u(KRPartition const& xi, std::int64_t i);
/// T_{D(i)}: T^{h_v} on T^i B_v.
GroupElement t_d(KRPartition const& xi, std::int64_t i);

/// Cocycle value on every atom (per tower, per level), or nothing if the
/// cocycle is not constant on some atom.
std::optional<std::vector<std::vector<Power>>> atom_values(GroupElement const& s,
                                                           KRPartition const& xi);

/// Element with cocycle `values[v][i]` on T^i B_v; bijectivity unchecked.
GroupElement element_on_atoms(KRPartition const& xi,
                              std::vector<std::vector<Power>> const& values);

using LevelPermutation = std::vector<std::int64_t>;

/// "[a b c]".
std::string one_line(LevelPermutation const& p);

struct PermutationForm {
  KRPartition partition;
  std::vector<LevelPermutation> perms;  // perms[v][i] = image level of T^i B_v

  GroupElement element() const;
};

struct PermutationCheck {
  std::optional<PermutationForm> form;
  std::string refusal;
  explicit operator bool() const { return form.has_value(); }
};

PermutationCheck is_n_permutation(GroupElement const& s, KRPartition const& xi);

struct RotationForm {
  KRPartition partition;
  std::int64_t m = 0;
  std::map<std::int64_t, Power> up;    // i in S_u -> l_i (nonzero)
  std::map<std::int64_t, Power> down;  // j in S_d -> k_j (nonzero)

  Power rotation_number() const;
  GroupElement element() const;
};

struct RotationCheck {
  std::optional<RotationForm> form;
  std::string refusal;
  explicit operator bool() const { return form.has_value(); }
};

/// Decides whether s is a rotation for level n of `seq`, recovering the
/// exponents from orbit points of the anchor.
RotationCheck is_n_rotation(GroupElement const& s, TowerSequence const& seq, std::int64_t n);

struct Factorization {
  GroupElement q;
  std::int64_t level = 0;
  std::int64_t n0 = 0;
  PermutationForm p;
  RotationForm r;
  GroupElement p_element;
  GroupElement r_element;

  /// `level n=.. n0=..`, `tower v: [..]`, then `U(i)^l` and `D(j)^k` lines.
  std::string report() const;
};

/// Factorization at the given level; PreconditionError below the valid threshold.
Factorization factorize(GroupElement const& q, TowerSequence const& seq, std::int64_t n);
/// Smallest valid level.
Factorization factorize(GroupElement const& q, TowerSequence const& seq);
/// Smallest valid level of the sequence anchored at the primary point.
Factorization factorize(GroupElement const& q);

/// Reasons level n is not valid for q, empty when it is.
std::string level_defect(GroupElement const& q, TowerSequence const& seq, std::int64_t n);

struct OrbitCounts {
  std::int64_t a = 0;
  std::int64_t b = 0;
};
OrbitCounts orbit_counts(GroupElement const& q, PointRep const& x);

/// a - b at the primary point, checked against |S_u| - |S_d|.
std::int64_t index(GroupElement const& q);

/// q preserves {T^n x : n >= 0}.
bool in_stabilizer(GroupElement const& q, PointRep const& x);

/// Certified answer for odometers; nothing for subshifts.
std::optional<bool> same_orbit(PointRep const& x, PointRep const& y);

struct KernelDecomposition {
  GroupElement p1;
  GroupElement p2;
  ClopenSet c;
  Power p = 0;                    // Y = C + T^p C
  std::vector<std::int64_t> i_minus;
  std::vector<std::int64_t> i_plus;
  GroupElement half_c;            // P2 restricted to the T^n C
  GroupElement half_pc;           // P2 restricted to the T^{n+p} C
  GroupElement swap;              // involution exchanging T^n C and T^{n+p} C
  std::vector<std::string> log;   // checks performed, one per line
};

/// q = P1 P2 with P1 fixing the forward orbit of x and P2 that of y.
KernelDecomposition kernel_decompose(GroupElement const& q, PointRep const& x,
                                     PointRep const& y, std::int64_t depth_budget = 40);

struct SeparationWitness {
  GroupElement g;  // commutator(s, t)
  GroupElement s;  // swaps V and W
  GroupElement t;  // swaps U and V
  ClopenSet u, v, w;
  Power p1 = 0;    // V = T^{p1} U
  Power p2 = 0;    // W = T^{p2} V
};

/// 3-cycle U -> T_O U -> T_O^2 U inside O moving x.
SeparationWitness separation_witness(ClopenSet const& o, PointRep const& x);

/// Element exchanging atoms T^a B_v and T^b B_v.
GroupElement level_transposition(KRPartition const& xi, std::size_t v, std::int64_t a,
                                 std::int64_t b);

}  // namespace tfg

#endif  // TFG_CANON_HPP
