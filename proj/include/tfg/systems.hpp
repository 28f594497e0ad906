#ifndef TFG_SYSTEMS_HPP
#define TFG_SYSTEMS_HPP

// Cantor minimal systems given symbolically: odometers over an eventually
// periodic base sequence, and subshifts of primitive aperiodic substitutions.
//
// Coordinates. A subshift point is a bi-infinite word x; T is the left shift,
// (Tx)_i = x_{i+1}. An odometer point is a one-sided digit stream x_0 x_1 ...
// with x_i < p_i; T adds one at digit 0 with carry to the right.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tfg {

using Word = std::string;
using Power = std::int64_t;

/// Closed integer coordinate interval [lo, hi]; empty when hi < lo.
/// Odometer windows always start at 0.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return hi < lo; }
  std::int64_t width() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(Window const& other) const {
    return other.empty() || (!empty() && lo <= other.lo && other.hi <= hi);
  }
  friend bool operator==(Window const&, Window const&) = default;
};

enum class SystemKind { odometer, substitution };

/// Parsed system descriptor, prior to validation.
struct SystemConfig {
  std::string name;
  SystemKind kind = SystemKind::odometer;
  std::vector<int> bases;   // odometer: leading bases
  std::vector<int> repeat;  // odometer: repeating tail; empty = last base repeats
  std::string alphabet;     // substitution letters, in order
  std::map<char, std::string> rule;
};

/// Parses `key = value` lines (`#` starts a comment).
SystemConfig parse_system_config(std::string_view text);
std::string emit_system_config(SystemConfig const& config);

enum class Anchor { primary, alternate };

/// Eventually periodic digit stream: prefix followed by period repeated.
struct DigitStream {
  std::string prefix;
  std::string period;
  friend bool operator==(DigitStream const&, DigitStream const&) = default;
};

/// Bi-infinite point obtained from a seed pair (left.right) fixed by the
/// power rule^seed_power, shifted by `shift` (point_i = seed_{i + shift}).
struct SubstitutiveSeed {
  char left = 0;
  char right = 0;
  int seed_power = 1;
  std::int64_t shift = 0;
  friend bool operator==(SubstitutiveSeed const&, SubstitutiveSeed const&) =
      default;
};

class System;
using SystemRef = std::shared_ptr<System const>;

struct PointRep {
  SystemRef system;
  std::variant<DigitStream, SubstitutiveSeed> data;
  /// False when the point was designated, not proven, to lie in an orbit
  /// distinct from the primary point's.
  bool certified = true;

  std::string to_string() const;
};

class System : public std::enable_shared_from_this<System> {
 public:
  explicit System(SystemConfig config) : config_(std::move(config)) {}
  System(System const&) = delete;
  System& operator=(System const&) = delete;
  virtual ~System() = default;

  SystemKind kind() const { return config_.kind; }
  std::string const& name() const { return config_.name; }
  SystemConfig const& config() const { return config_; }

  /// All admissible words on `w`, sorted. Empty window gives {""}.
  virtual std::vector<Word> const& words(Window w) const = 0;
  bool admissible(Word const& word, std::int64_t offset) const;

  /// Smallest window containing both (odometer: the deeper one).
  virtual Window hull(Window a, Window b) const = 0;
  /// Coordinates of x that determine T^n x on `w`.
  virtual Window pullback(Window w, Power n) const = 0;
  /// Word of T^n x on `target`, given x's word `u` on `uw`, where
  /// `uw` contains pullback(target, n).
  virtual Word push(Word const& u, Window uw, Power n, Window target) const = 0;
  /// Word of x on `target` given x's word on `uw` containing it.
  static Word restrict(Word const& u, Window uw, Window target);

  /// Window of the cylinder of radius r: coordinates |i| < r (subshift),
  /// 0 <= i < r (odometer).
  virtual Window central(std::int64_t radius) const = 0;
  /// Raises an error unless `w` is a legal window for this system.
  virtual void check_window(Window w) const = 0;

  virtual PointRep base_point(Anchor which) const = 0;
  virtual Word point_window(PointRep const& p, std::int64_t lo,
                            std::int64_t hi) const = 0;
  /// T^n p.
  virtual PointRep shift(PointRep const& p, Power n) const = 0;

  /// Least R such that every admissible word of length R contains `word`
  /// (odometer: the return time of the digit block, which is uniform).
  virtual std::int64_t recurrence_bound(Word const& word) const = 0;

  SystemRef self() const { return shared_from_this(); }

 private:
  SystemConfig config_;
};

/// Validates the descriptor and builds the system. Substitutions are
/// certified primitive and aperiodic here.
SystemRef make_system(SystemConfig config);

/// Built-in systems: "odometer2", "fibonacci", "thue-morse"; one shared instance each.
SystemRef builtin_system(std::string_view name);

/// Admissible words of length L (L >= 1).
std::vector<Word> language(System const& system, std::int64_t length);

PointRep base_point(System const& system, Anchor which);
Word point_window(PointRep const& p, std::int64_t lo, std::int64_t hi);

/// Digit symbol for odometer digit d (0-9 then a-z).
char digit_char(int d);
int digit_value(char c);

}  // namespace tfg

#endif  // TFG_SYSTEMS_HPP
