#ifndef TFG_GROUP_HPP
#define TFG_GROUP_HPP

// Elements of the topological full group [[T]] as orbit cocycles: an
// integer-valued function f on the admissible words of one window, with
// S(x) = T^{f(x)} x. Every operation returns the trimmed form.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/systems.hpp"

namespace tfg {

using Piece = std::pair<ClopenSet, Power>;

class GroupElement {
 public:
  /// `powers[i]` is the cocycle on the i-th word of system->words(window).
  /// Bijectivity is not checked here; use make_element for untrusted input.
  GroupElement(SystemRef system, Window window, std::vector<Power> powers);

  SystemRef const& system() const { return system_; }
  Window window() const { return window_; }
  std::vector<Word> const& words() const { return system_->words(window_); }
  std::vector<Power> const& powers() const { return powers_; }

  /// Cocycle at any x whose word on `uw` (containing window()) is `u`.
  Power power_at(Word const& u, Window uw) const;
  /// Level sets of the cocycle, by increasing power.
  std::vector<Piece> pieces() const;

  /// Element file text: `system <name>` then `<clopen> -> <power>` lines.
  std::string to_string() const;

 private:
  void canonicalize();

  SystemRef system_;
  Window window_;
  std::vector<Power> powers_;
};

/// Validated construction: the domains must partition X and so must their
/// images T^{n_i} C_i.
GroupElement make_element(SystemRef const& system, std::vector<Piece> const& pieces);
/// Same, checking only that the domains partition X.
GroupElement from_pieces(SystemRef const& system, std::vector<Piece> const& pieces);

GroupElement identity(SystemRef const& system);
/// T^n.
GroupElement t_power(SystemRef const& system, Power n);

/// a∘b: apply b first. f(x) = f_b(x) + f_a(b x).
GroupElement compose(GroupElement const& a, GroupElement const& b);
GroupElement invert(GroupElement const& s);
GroupElement power(GroupElement const& s, std::int64_t k);

bool equals(GroupElement const& a, GroupElement const& b);
bool is_identity(GroupElement const& s);

Power value_at(GroupElement const& s, PointRep const& p);
PointRep apply(GroupElement const& s, PointRep const& p);
ClopenSet image(GroupElement const& s, ClopenSet const& a);
ClopenSet support(GroupElement const& s);
/// Sorted distinct values of the cocycle on A.
std::vector<Power> cocycle_values(GroupElement const& s, ClopenSet const& a);
/// max |f|.
Power cocycle_bound(GroupElement const& s);

struct OrderResult {
  std::optional<std::int64_t> order;  // least k with s^k = id, if <= bound
  bool proven_infinite = false;       // constant nonzero cocycle
  bool exceeds(std::int64_t) const { return !order.has_value(); }
};
OrderResult order(GroupElement const& s, std::int64_t bound);

/// s1 s2 s1^-1 s2^-1.
GroupElement commutator(GroupElement const& s1, GroupElement const& s2);
/// s2 s1 s2^-1.
GroupElement conjugate(GroupElement const& s1, GroupElement const& s2);

/// Acts as `perm` on the blocks U, TU, ..., T^{m-1}U (block i goes to
/// block perm[i]) and as the identity elsewhere.
GroupElement embed_symmetric(SystemRef const& system, std::int64_t m,
                             std::vector<std::int64_t> const& perm, ClopenSet const& u);

/// Q_k = T_{B'} T_{B''}^{-1}, B'' = T^q B', supported in the k-th member of a
/// fixed sequence of disjoint sets shrinking toward the alternate point.
struct DirectSumGenerator {
  GroupElement element;
  ClopenSet first;   // B'
  ClopenSet second;  // B''
  Power shift = 0;   // q
};
DirectSumGenerator directsum_generator(SystemRef const& system, std::int64_t k);

using SystemResolver = std::function<SystemRef(std::string const&)>;
GroupElement parse_element(std::string_view text, SystemResolver const& resolve);
GroupElement parse_element(std::string_view text, SystemRef const& system);

/// 16 hex digits of a 64-bit FNV-1a hash of the element text.
std::string element_hash(GroupElement const& s);

}  // namespace tfg

#endif  // TFG_GROUP_HPP
