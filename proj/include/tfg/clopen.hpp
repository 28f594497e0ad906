#ifndef TFG_CLOPEN_HPP
#define TFG_CLOPEN_HPP

// Clopen subsets of X as finite unions of cylinders over one common window.
//
// The stored form is trimmed: a boundary coordinate is dropped whenever the
// set does not depend on it. Equality and inclusion are decided on the hull
// of the two windows, so they never depend on how a set was produced.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfg/systems.hpp"

namespace tfg {

class ClopenSet {
 public:
  /// Builds the set of points whose word on `window` lies in `words`.
  /// Inadmissible words are dropped.
  ClopenSet(SystemRef system, Window window, std::vector<Word> words);

  static ClopenSet empty(SystemRef system);
  static ClopenSet full(SystemRef system);

  SystemRef const& system() const { return system_; }
  Window window() const { return window_; }
  std::vector<Word> const& words() const { return words_; }

  bool is_empty() const { return words_.empty(); }
  bool is_full() const { return window_.empty() && !words_.empty(); }

  /// The words describing this set on `w`, which must contain window().
  std::vector<Word> words_on(Window w) const;
  /// True if x's word `u` on `uw` (containing window()) puts x in the set.
  bool contains_word(Word const& u, Window uw) const;

  /// `word@offset` tokens joined by `+`; `EMPTY` and `FULL` literals.
  std::string to_string() const;

  friend bool operator==(ClopenSet const& a, ClopenSet const& b);

 private:
  ClopenSet(SystemRef system, Window window, std::vector<Word> words, bool trusted);
  void canonicalize();

  SystemRef system_;
  Window window_;
  std::vector<Word> words_;
};

using Partition = std::vector<ClopenSet>;

/// The cylinder of `word` at `offset`; EMPTY if the word is inadmissible.
ClopenSet cylinder(SystemRef const& system, Word const& word, std::int64_t offset);
/// The cylinder of radius r around p.
ClopenSet point_cylinder(PointRep const& p, std::int64_t radius);
/// All nonempty cylinders of radius r, a partition of X.
Partition radius_partition(SystemRef const& system, std::int64_t radius);

enum class BoolOp { unite, intersect, difference, complement };

ClopenSet boolean(BoolOp op, ClopenSet const& a, ClopenSet const* b = nullptr);
ClopenSet unite(ClopenSet const& a, ClopenSet const& b);
ClopenSet intersect(ClopenSet const& a, ClopenSet const& b);
ClopenSet difference(ClopenSet const& a, ClopenSet const& b);
ClopenSet complement(ClopenSet const& a);

/// T^n(A).
ClopenSet translate(ClopenSet const& a, Power n);

bool is_empty(ClopenSet const& a);
bool equals(ClopenSet const& a, ClopenSet const& b);
bool subset(ClopenSet const& a, ClopenSet const& b);
bool disjoint(ClopenSet const& a, ClopenSet const& b);
bool contains_point(ClopenSet const& a, PointRep const& p);

/// Largest r such that all points of A agree on the radius-r cylinder
/// window; nullopt for the empty set.
std::optional<std::int64_t> agreement_radius(ClopenSet const& a);
/// 2^(-agreement_radius); zero for the empty set.
double diameter(ClopenSet const& a);

/// Each input must partition X. Returns the nonempty cells of the common
/// refinement, ordered by their text form.
Partition refine_common(std::vector<Partition> const& partitions);
/// Throws PreconditionError naming the defect if `p` is not a partition of X.
void check_partition(Partition const& p);
bool is_partition(Partition const& p);

ClopenSet parse_clopen(SystemRef const& system, std::string_view text);

void check_same_system(ClopenSet const& a, ClopenSet const& b);

}  // namespace tfg

#endif  // TFG_CLOPEN_HPP
