#ifndef TFG_LEF_HPP
#define TFG_LEF_HPP

// The finite group H of n-permutations, LEF witnesses built from
// factorizations, and the structure checks for the dyadic odometer.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfg/canon.hpp"

namespace tfg {

/// One level permutation per tower.
using HElement = std::vector<LevelPermutation>;

std::string h_to_string(HElement const& h);
HElement parse_h(std::string_view text);

struct FinitePermGroupDesc {
  KRPartition partition;
  std::vector<std::int64_t> heights;

  HElement identity() const;
  /// (a b)(i) = a(b(i)) tower by tower.
  HElement multiply(HElement const& a, HElement const& b) const;
  HElement inverse(HElement const& a) const;
  bool contains(HElement const& a) const;
  /// Product of h_v! in decimal.
  std::string order() const;

  HElement from_form(PermutationForm const& p) const;
  PermutationForm to_form(HElement const& a) const;
};

FinitePermGroupDesc perm_group(KRPartition const& xi);

struct LEFEntry {
  GroupElement element;
  std::string hash;
  HElement image;
};

struct LEFWitness {
  SystemRef system;
  std::int64_t level = 0;
  std::vector<GroupElement> members;  // F, canonical, identity included
  std::vector<LEFEntry> table;        // F^2
  bool injective = false;
  bool multiplicative = false;

  /// `lef level=<n>`, then `<hash> -> <H-element>` lines, then `member <hash>` lines.
  std::string to_text() const;
  std::optional<HElement> image_of(std::string const& hash) const;
};

/// Smallest level of the primary anchored sequence at which the
/// permutation parts of F^2 separate and the table is a partial homomorphism.
LEFWitness lef_map(std::vector<GroupElement> const& f);
/// Same search, starting at `from_level`.
LEFWitness lef_map(std::vector<GroupElement> const& f, std::int64_t from_level);

struct LEFReport {
  bool pass = false;
  std::vector<std::string> lines;
  std::string violation;
};

/// Re-checks injectivity on F and multiplicativity on F x F from the table.
LEFReport verify_lef(LEFWitness const& w);

/// Reads a witness file; members and table rows are resolved by hash
/// against `known` elements.
LEFWitness parse_witness(std::string_view text, std::vector<GroupElement> const& known);

struct StructureReport {
  std::int64_t n = 0;
  bool surjective = false;
  bool commuting = false;
  bool unbounded_order = false;
  bool distinct = false;
  bool additive = false;
  bool factorization = false;
  std::vector<std::string> lines;
  bool all() const {
    return surjective && commuting && unbounded_order && distinct && additive && factorization;
  }
  std::string text() const;
};

/// Checks for the single tower over [0^n]: level transpositions realized,
/// kernel generators O_i commuting with large order, exponent tuples up to
/// `radius` distinct and additive, and S = P R recovered for sampled S.
StructureReport odometer_structure(SystemRef const& system, std::int64_t n,
                                   std::uint64_t seed = 1, std::int64_t radius = 5,
                                   std::int64_t order_bound = 64, int samples = 50);

}  // namespace tfg

#endif  // TFG_LEF_HPP
