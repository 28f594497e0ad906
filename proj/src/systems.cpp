#include "tfg/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "tfg/errors.hpp"

namespace tfg {

namespace {

constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
constexpr std::size_t kMaxWordsPerWindow = std::size_t{1} << 21;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<int> parse_int_list(std::string const& value, std::string const& key) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (t.empty()) throw ParseError("empty entry in '" + key + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (std::exception const&) {
      throw ParseError("bad integer '" + t + "' in '" + key + "'");
    }
    if (used != t.size()) throw ParseError("bad integer '" + t + "' in '" + key + "'");
    out.push_back(v);
  }
  return out;
}

std::string join_ints(std::vector<int> const& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

// Shortest primitive root of a nonempty string.
std::string primitive_root(std::string const& s) {
  for (std::size_t len = 1; len <= s.size(); ++len) {
    if (s.size() % len) continue;
    bool ok = true;
    for (std::size_t i = len; i < s.size() && ok; ++i) ok = s[i] == s[i - len];
    if (ok) return s.substr(0, len);
  }
  return s;
}

DigitStream normalize_stream(DigitStream d) {
  d.period = primitive_root(d.period);
  while (!d.prefix.empty() && d.prefix.back() == d.period.back()) {
    d.prefix.pop_back();
    std::rotate(d.period.rbegin(), d.period.rbegin() + 1, d.period.rend());
  }
  return d;
}

// ---------------------------------------------------------------------------
// Odometer

class Odometer final : public System {
 public:
  explicit Odometer(SystemConfig config) : System(std::move(config)) {
    auto const& c = this->config();
    lead_ = c.bases;
    period_ = c.repeat;
    if (period_.empty()) {
      if (lead_.empty()) throw PreconditionError("odometer needs at least one base");
      period_.push_back(lead_.back());
      lead_.pop_back();
    }
    for (int b : lead_) check_base(b);
    for (int b : period_) check_base(b);
  }

  int base_at(std::int64_t i) const {
    if (i < static_cast<std::int64_t>(lead_.size())) return lead_[static_cast<std::size_t>(i)];
    auto j = static_cast<std::size_t>(i - static_cast<std::int64_t>(lead_.size()));
    return period_[j % period_.size()];
  }

  std::vector<Word> const& words(Window w) const override {
    check_window(w);
    std::lock_guard lock(mutex_);
    auto it = cache_.find(w.width());
    if (it != cache_.end()) return it->second;
    std::vector<Word> out{Word{}};
    for (std::int64_t i = 0; i < w.width(); ++i) {
      int b = base_at(i);
      if (out.size() * static_cast<std::size_t>(b) > kMaxWordsPerWindow)
        throw PreconditionError("odometer window too deep: " + std::to_string(w.width()));
      std::vector<Word> next;
      next.reserve(out.size() * static_cast<std::size_t>(b));
      for (auto const& u : out)
        for (int d = 0; d < b; ++d) next.push_back(u + digit_char(d));
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return cache_.emplace(w.width(), std::move(out)).first->second;
  }

  Window hull(Window a, Window b) const override {
    return Window{0, std::max(a.hi, b.hi)};
  }

  Window pullback(Window w, Power) const override { return w; }

  Word push(Word const& u, Window uw, Power n, Window target) const override {
    auto depth = target.width();
    if (depth > uw.width()) throw InternalError("odometer push: window too shallow");
    std::int64_t modulus = modulus_at(depth);
    std::int64_t value = 0;
    std::int64_t place = 1;
    for (std::int64_t i = 0; i < depth; ++i) {
      value += digit_value(u[static_cast<std::size_t>(i)]) * place;
      place *= base_at(i);
    }
    value = floor_mod(value + floor_mod(n, modulus), modulus);
    Word out(static_cast<std::size_t>(depth), '0');
    for (std::int64_t i = 0; i < depth; ++i) {
      int b = base_at(i);
      out[static_cast<std::size_t>(i)] = digit_char(static_cast<int>(value % b));
      value /= b;
    }
    return out;
  }

  Window central(std::int64_t radius) const override {
    return radius <= 0 ? Window{} : Window{0, radius - 1};
  }

  void check_window(Window w) const override {
    if (!w.empty() && w.lo != 0)
      throw PreconditionError("odometer windows start at coordinate 0");
  }

  PointRep base_point(Anchor which) const override {
    PointRep p;
    p.system = self();
    p.data = which == Anchor::primary ? DigitStream{"", "0"} : DigitStream{"", "10"};
    p.certified = true;
    return p;
  }

  Word point_window(PointRep const& p, std::int64_t lo, std::int64_t hi) const override {
    if (lo < 0) throw PreconditionError("odometer points have no negative coordinates");
    auto const& d = std::get<DigitStream>(p.data);
    Word out;
    for (std::int64_t i = lo; i <= hi; ++i) out += digit_at(d, i);
    return out;
  }

  PointRep shift(PointRep const& p, Power n) const override {
    auto const& d = std::get<DigitStream>(p.data);
    PointRep out = p;
    out.data = add(d, n);
    return out;
  }

  std::int64_t recurrence_bound(Word const& word) const override {
    if (!admissible(word, 0)) throw PreconditionError("inadmissible digit block " + word);
    return modulus_at(static_cast<std::int64_t>(word.size()));
  }

 private:
  static void check_base(int b) {
    if (b < 2) throw PreconditionError("odometer base " + std::to_string(b) + " < 2");
    if (b > 36) throw PreconditionError("odometer base " + std::to_string(b) + " > 36");
  }

  std::int64_t modulus_at(std::int64_t depth) const {
    std::int64_t m = 1;
    for (std::int64_t i = 0; i < depth; ++i) {
      if (m > (std::int64_t{1} << 52) / base_at(i))
        throw PreconditionError("odometer depth too large");
      m *= base_at(i);
    }
    return m;
  }

  static char digit_at(DigitStream const& d, std::int64_t i) {
    if (i < static_cast<std::int64_t>(d.prefix.size())) return d.prefix[static_cast<std::size_t>(i)];
    auto j = static_cast<std::size_t>(i - static_cast<std::int64_t>(d.prefix.size()));
    return d.period[j % d.period.size()];
  }

  // Adds n to the digit stream. The carry is bounded, so past the
  // nonperiodic part the pair (position mod joint period, carry) must repeat.
  DigitStream add(DigitStream const& d, Power n) const {
    auto start = static_cast<std::int64_t>(std::max(d.prefix.size(), lead_.size()));
    auto cycle = static_cast<std::int64_t>(std::lcm(d.period.size(), period_.size()));
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> seen;
    std::string out;
    std::int64_t carry = n;
    for (std::int64_t i = 0;; ++i) {
      if (carry == 0 && i >= static_cast<std::int64_t>(d.prefix.size())) {
        DigitStream r;
        r.prefix = out;
        r.period = d.period;
        auto rot = static_cast<std::size_t>(i - static_cast<std::int64_t>(d.prefix.size())) %
                   d.period.size();
        std::rotate(r.period.begin(), r.period.begin() + static_cast<std::ptrdiff_t>(rot),
                    r.period.end());
        return normalize_stream(std::move(r));
      }
      if (i >= start) {
        auto key = std::make_pair((i - start) % cycle, carry);
        auto [it, inserted] = seen.emplace(key, i);
        if (!inserted) {
          auto first = static_cast<std::size_t>(it->second);
          DigitStream r{out.substr(0, first), out.substr(first)};
          return normalize_stream(std::move(r));
        }
      }
      std::int64_t v = digit_value(digit_at(d, i)) + carry;
      int b = base_at(i);
      out += digit_char(static_cast<int>(floor_mod(v, b)));
      carry = floor_div(v, b);
    }
  }

  std::vector<int> lead_;
  std::vector<int> period_;
  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, std::vector<Word>> cache_;
};

// ---------------------------------------------------------------------------
// Substitution subshift

class Substitution final : public System {
 public:
  explicit Substitution(SystemConfig config) : System(std::move(config)) {
    auto const& c = this->config();
    alphabet_ = c.alphabet;
    if (alphabet_.empty()) throw PreconditionError("substitution alphabet is empty");
    std::set<char> seen;
    for (char a : alphabet_) {
      if (!seen.insert(a).second) throw PreconditionError(std::string("repeated letter ") + a);
      if (a == '@' || a == '+' || a == ' ' || a == '-' || a == '.')
        throw PreconditionError(std::string("reserved letter '") + a + "'");
    }
    for (char a : alphabet_) {
      auto it = c.rule.find(a);
      if (it == c.rule.end()) throw PreconditionError(std::string("no rule for letter ") + a);
      if (it->second.empty()) throw PreconditionError(std::string("empty image for ") + a);
      for (char b : it->second)
        if (!seen.count(b)) throw PreconditionError(std::string("image uses unknown letter ") + b);
      rule_[a] = it->second;
    }
    for (auto const& [a, _] : c.rule)
      if (!seen.count(a)) throw PreconditionError(std::string("rule for unknown letter ") + a);
    std::sort(alphabet_.begin(), alphabet_.end());
    check_primitive();
    two_factors_ = compute_two_factors();
    check_aperiodic();
  }

  std::vector<Word> const& words(Window w) const override {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(w.width());
    if (it != cache_.end()) return it->second;
    auto out = compute_language(w.width());
    return cache_.emplace(w.width(), std::move(out)).first->second;
  }

  Window hull(Window a, Window b) const override {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return Window{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
  }

  Window pullback(Window w, Power n) const override {
    if (w.empty()) return w;
    return Window{w.lo + n, w.hi + n};
  }

  Word push(Word const& u, Window uw, Power n, Window target) const override {
    if (target.empty()) return {};
    return restrict(u, uw, pullback(target, n));
  }

  Window central(std::int64_t radius) const override {
    return radius <= 0 ? Window{} : Window{-(radius - 1), radius - 1};
  }

  void check_window(Window) const override {}

  PointRep base_point(Anchor which) const override {
    auto seeds = seed_pairs();
    if (seeds.empty()) throw InternalError("no fixed-point seed found");
    PointRep p;
    p.system = self();
    if (which == Anchor::primary) {
      p.data = seeds.front();
      p.certified = true;
    } else {
      if (seeds.size() < 2) throw PreconditionError("no second seed pair to designate");
      p.data = seeds[1];
      p.certified = false;
    }
    return p;
  }

  Word point_window(PointRep const& p, std::int64_t lo, std::int64_t hi) const override {
    auto const& s = std::get<SubstitutiveSeed>(p.data);
    Word out;
    if (hi < lo) return out;
    lo += s.shift;
    hi += s.shift;
    // Negative coordinates come from the left half (read backwards).
    std::string left;
    if (lo < 0) left = half(s.left, s.seed_power, false, static_cast<std::size_t>(-lo));
    std::string right;
    if (hi >= 0) right = half(s.right, s.seed_power, true, static_cast<std::size_t>(hi + 1));
    for (std::int64_t i = lo; i <= hi; ++i) {
      if (i < 0)
        out += left[left.size() - static_cast<std::size_t>(-i)];
      else
        out += right[static_cast<std::size_t>(i)];
    }
    return out;
  }

  PointRep shift(PointRep const& p, Power n) const override {
    PointRep out = p;
    std::get<SubstitutiveSeed>(out.data).shift += n;
    return out;
  }

  std::int64_t recurrence_bound(Word const& word) const override {
    if (!admissible(word, 0)) throw PreconditionError("inadmissible word " + word);
    for (auto r = static_cast<std::int64_t>(word.size());; ++r) {
      auto const& lang = words(Window{0, r - 1});
      bool all = std::all_of(lang.begin(), lang.end(), [&](Word const& u) {
        return u.find(word) != Word::npos;
      });
      if (all) return r;
    }
  }

 private:
  std::string apply_rule(std::string const& w) const {
    std::string out;
    for (char c : w) out += rule_.at(c);
    return out;
  }

  // rule^k(c), memoized. Caller holds no lock.
  std::string const& image(char c, int k) const {
    std::lock_guard lock(image_mutex_);
    auto key = std::make_pair(c, k);
    auto it = images_.find(key);
    if (it != images_.end()) return it->second;
    std::string w(1, c);
    for (int i = 0; i < k; ++i) {
      w = apply_rule(w);
      if (w.size() > (std::size_t{1} << 24)) throw PreconditionError("substitution image too long");
    }
    return images_.emplace(key, std::move(w)).first->second;
  }

  void check_primitive() const {
    auto d = alphabet_.size();
    std::vector<std::vector<bool>> m(d, std::vector<bool>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (char b : rule_.at(alphabet_[i])) m[i][alphabet_.find(b)] = true;
    auto p = m;
    std::size_t bound = (d - 1) * (d - 1) + 1;
    for (std::size_t k = 1;; ++k) {
      bool positive = true;
      for (auto const& row : p)
        for (bool v : row) positive = positive && v;
      if (positive) break;
      if (k >= bound) throw PreconditionError("substitution is not primitive");
      std::vector<std::vector<bool>> q(d, std::vector<bool>(d));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t l = 0; l < d && !q[i][j]; ++l) q[i][j] = p[i][l] && m[l][j];
      p = std::move(q);
    }
    bool grows = std::any_of(rule_.begin(), rule_.end(),
                             [](auto const& kv) { return kv.second.size() >= 2; });
    if (!grows) throw PreconditionError("substitution does not grow: subshift is finite");
  }

  std::set<Word> compute_two_factors() const {
    std::set<Word> s;
    auto add_factors = [&](std::string const& w) {
      bool changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) changed |= s.insert(w.substr(i, 2)).second;
      return changed;
    };
    for (char c : alphabet_) add_factors(rule_.at(c));
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<Word> current(s.begin(), s.end());
      for (auto const& cd : current) changed |= add_factors(apply_rule(cd));
    }
    return s;
  }

  std::vector<Word> compute_language(std::int64_t length) const {
    if (length <= 0) return {Word{}};
    if (length == 1) {
      std::vector<Word> out;
      for (char c : alphabet_) out.emplace_back(1, c);
      return out;
    }
    int k = 0;
    for (;; ++k) {
      bool long_enough = std::all_of(alphabet_.begin(), alphabet_.end(), [&](char c) {
        return static_cast<std::int64_t>(image(c, k).size()) >= length;
      });
      if (long_enough) break;
    }
    std::set<Word> out;
    auto len = static_cast<std::size_t>(length);
    for (auto const& cd : two_factors_) {
      std::string s = image(cd[0], k) + image(cd[1], k);
      for (std::size_t i = 0; i + len <= s.size(); ++i) out.insert(s.substr(i, len));
      if (out.size() > kMaxWordsPerWindow) throw PreconditionError("language too large");
    }
    return {out.begin(), out.end()};
  }

  // Periodicity forces rational letter frequencies, hence an integer
  // Perron eigenvalue. Without one the subshift is certified aperiodic;
  // otherwise the complexity function is scanned for a plateau.
  void check_aperiodic() {
    auto d = alphabet_.size();
    std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d, 0));
    std::int64_t max_row = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (char b : rule_.at(alphabet_[i])) ++m[i][alphabet_.find(b)];
      max_row = std::max<std::int64_t>(max_row, static_cast<std::int64_t>(rule_.at(alphabet_[i]).size()));
    }
    bool integer_root = false;
    for (std::int64_t t = 1; t <= max_row && !integer_root; ++t) {
      auto a = m;
      for (std::size_t i = 0; i < d; ++i) a[i][i] -= t;
      integer_root = determinant(a) == 0;
    }
    if (!integer_root) {
      aperiodicity_certificate_ = "irrational Perron eigenvalue";
      return;
    }
    for (std::int64_t depth = 16; depth <= 512; depth *= 2) {
      auto p = compute_language(depth).size();
      auto q = compute_language(depth + 1).size();
      if (p == q) throw PreconditionError("substitution subshift is periodic");
    }
    aperiodicity_certificate_ = "complexity strictly increasing through depth 513";
  }

  static __int128 determinant(std::vector<std::vector<std::int64_t>> const& in) {
    // Bareiss fraction-free elimination.
    auto n = in.size();
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = in[i][j];
    __int128 sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k][k] == 0) {
        std::size_t swap = k + 1;
        while (swap < n && a[swap][k] == 0) ++swap;
        if (swap == n) return 0;
        std::swap(a[k], a[swap]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
  }

  // Seed pairs (l, r) with rule^k(r) starting with r, rule^k(l) ending
  // with l, and lr admissible; ordered by k then lexicographically.
  std::vector<SubstitutiveSeed> seed_pairs() const {
    std::vector<SubstitutiveSeed> out;
    for (int k = 1; k <= 64 && out.size() < 2; ++k) {
      for (char l : alphabet_) {
        auto const& il = image(l, k);
        if (il.size() < 2 || il.back() != l) continue;
        for (char r : alphabet_) {
          auto const& ir = image(r, k);
          if (ir.size() < 2 || ir.front() != r) continue;
          if (!two_factors_.count(std::string{l, r})) continue;
          bool dup = std::any_of(out.begin(), out.end(), [&](auto const& s) {
            return s.left == l && s.right == r;
          });
          if (!dup) out.push_back(SubstitutiveSeed{l, r, k, 0});
        }
      }
    }
    return out;
  }

  // Right half of a seed: rule^{kj}(r) for j large; left half: rule^{kj}(l)
  // (consumed from the end).
  std::string half(char c, int k, bool right, std::size_t min_len) const {
    std::lock_guard lock(half_mutex_);
    auto& w = halves_[{c, k, right}];
    if (w.empty()) w = std::string(1, c);
    while (w.size() < min_len) {
      std::string next;
      for (char a : w) next += rule_.at(a);
      for (int i = 1; i < k; ++i) {
        std::string again;
        for (char a : next) again += rule_.at(a);
        next = std::move(again);
      }
      w = std::move(next);
    }
    return w;
  }

  std::string alphabet_;
  std::map<char, std::string> rule_;
  std::set<Word> two_factors_;
  std::string aperiodicity_certificate_;

  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, std::vector<Word>> cache_;
  mutable std::mutex image_mutex_;
  mutable std::map<std::pair<char, int>, std::string> images_;
  mutable std::mutex half_mutex_;
  mutable std::map<std::tuple<char, int, bool>, std::string> halves_;
};

}  // namespace

// ---------------------------------------------------------------------------

char digit_char(int d) {
  if (d < 0 || d >= 36) throw InternalError("digit out of range");
  return kDigits[d];
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  throw ParseError(std::string("not a digit: ") + c);
}

bool System::admissible(Word const& word, std::int64_t offset) const {
  Window w{offset, offset + static_cast<std::int64_t>(word.size()) - 1};
  if (kind() == SystemKind::odometer && offset != 0 && !word.empty()) return false;
  auto const& lang = words(w);
  return std::binary_search(lang.begin(), lang.end(), word);
}

Word System::restrict(Word const& u, Window uw, Window target) {
  if (target.empty()) return {};
  if (!uw.contains(target)) throw InternalError("restrict: target outside window");
  return u.substr(static_cast<std::size_t>(target.lo - uw.lo),
                  static_cast<std::size_t>(target.width()));
}

SystemConfig parse_system_config(std::string_view text) {
  SystemConfig c;
  bool have_kind = false;
  std::stringstream ss{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    auto key = trim(std::string_view(t).substr(0, eq));
    auto value = trim(std::string_view(t).substr(eq + 1));
    if (key == "name") {
      c.name = value;
    } else if (key == "kind") {
      if (value == "odometer")
        c.kind = SystemKind::odometer;
      else if (value == "substitution")
        c.kind = SystemKind::substitution;
      else
        throw ParseError("unknown kind '" + value + "'");
      have_kind = true;
    } else if (key == "bases") {
      c.bases = parse_int_list(value, key);
    } else if (key == "repeat") {
      c.repeat = parse_int_list(value, key);
    } else if (key == "alphabet") {
      c.alphabet = value;
    } else if (key.rfind("rule.", 0) == 0 && key.size() == 6) {
      c.rule[key[5]] = value;
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw ParseError("missing 'kind'");
  return c;
}

std::string emit_system_config(SystemConfig const& c) {
  std::ostringstream os;
  if (!c.name.empty()) os << "name = " << c.name << '\n';
  if (c.kind == SystemKind::odometer) {
    os << "kind = odometer\n";
    os << "bases = " << join_ints(c.bases) << '\n';
    if (!c.repeat.empty()) os << "repeat = " << join_ints(c.repeat) << '\n';
  } else {
    os << "kind = substitution\n";
    os << "alphabet = " << c.alphabet << '\n';
    for (auto const& [a, w] : c.rule) os << "rule." << a << " = " << w << '\n';
  }
  return os.str();
}

SystemRef make_system(SystemConfig config) {
  if (config.kind == SystemKind::odometer) return std::make_shared<Odometer const>(std::move(config));
  return std::make_shared<Substitution const>(std::move(config));
}

SystemRef builtin_system(std::string_view name) {
  static std::mutex mutex;
  static std::map<std::string, SystemRef, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  SystemConfig c;
  c.name = std::string(name);
  if (name == "odometer2") {
    c.kind = SystemKind::odometer;
    c.bases = {2};
  } else if (name == "fibonacci") {
    c.kind = SystemKind::substitution;
    c.alphabet = "ab";
    c.rule = {{'a', "ab"}, {'b', "a"}};
  } else if (name == "thue-morse") {
    c.kind = SystemKind::substitution;
    c.alphabet = "ab";
    c.rule = {{'a', "ab"}, {'b', "ba"}};
  } else {
    throw PreconditionError("unknown built-in system '" + std::string(name) + "'");
  }
  auto sys = make_system(std::move(c));
  cache.emplace(std::string(name), sys);
  return sys;
}

std::vector<Word> language(System const& system, std::int64_t length) {
  if (length < 1) throw PreconditionError("language length must be >= 1");
  return system.words(Window{0, length - 1});
}

PointRep base_point(System const& system, Anchor which) { return system.base_point(which); }

Word point_window(PointRep const& p, std::int64_t lo, std::int64_t hi) {
  return p.system->point_window(p, lo, hi);
}

std::string PointRep::to_string() const {
  std::string out;
  if (auto const* d = std::get_if<DigitStream>(&data)) {
    out = d->prefix + "(" + d->period + ")";
  } else {
    auto const& s = std::get<SubstitutiveSeed>(data);
    out = std::string(1, s.left) + "." + std::string(1, s.right) + "^" +
          std::to_string(s.seed_power) + "@" + std::to_string(s.shift);
  }
  if (!certified) out += " uncertified";
  return out;
}

}  // namespace tfg
