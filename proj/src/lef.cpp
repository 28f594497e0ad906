#include "tfg/lef.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tfg/errors.hpp"

namespace tfg {

namespace {

void add_unique(std::vector<GroupElement>& list, GroupElement const& g) {
  for (auto const& h : list)
    if (equals(h, g)) return;
  list.push_back(g);
}

bool is_permutation(LevelPermutation const& p) {
  std::vector<bool> hit(p.size(), false);
  for (auto v : p) {
    if (v < 0 || v >= static_cast<std::int64_t>(p.size()) || hit[static_cast<std::size_t>(v)])
      return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

HElement h_multiply(HElement const& a, HElement const& b) {
  if (a.size() != b.size()) throw PreconditionError("H-elements of different shapes");
  HElement out;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v].size() != b[v].size()) throw PreconditionError("H-elements of different shapes");
    LevelPermutation p(a[v].size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[v][static_cast<std::size_t>(b[v][i])];
    out.push_back(std::move(p));
  }
  return out;
}

// Decimal product of small factors.
std::string decimal_product(std::vector<std::int64_t> const& factors) {
  std::vector<std::uint32_t> digits{1};  // base 1e9, little endian
  for (auto f : factors) {
    std::uint64_t carry = 0;
    for (auto& d : digits) {
      auto cur = static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(f) + carry;
      d = static_cast<std::uint32_t>(cur % 1000000000u);
      carry = cur / 1000000000u;
    }
    while (carry) {
      digits.push_back(static_cast<std::uint32_t>(carry % 1000000000u));
      carry /= 1000000000u;
    }
  }
  std::ostringstream os;
  os << digits.back();
  for (auto it = digits.rbegin() + 1; it != digits.rend(); ++it) {
    auto s = std::to_string(*it);
    os << std::string(9 - s.size(), '0') << s;
  }
  return os.str();
}

}  // namespace

std::string h_to_string(HElement const& h) {
  std::string out;
  for (std::size_t v = 0; v < h.size(); ++v) {
    if (v) out += ' ';
    out += one_line(h[v]);
  }
  return out;
}

HElement parse_h(std::string_view text) {
  HElement out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == '\t') {
      ++pos;
      continue;
    }
    if (text[pos] != '[') throw ParseError("expected '[' in permutation list");
    auto close = text.find(']', pos);
    if (close == std::string_view::npos) throw ParseError("unterminated permutation");
    std::istringstream is(std::string(text.substr(pos + 1, close - pos - 1)));
    LevelPermutation p;
    std::string tok;
    while (is >> tok) {
      try {
        std::size_t used = 0;
        p.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw ParseError("bad level '" + tok + "'");
      } catch (std::logic_error const&) {
        throw ParseError("bad level '" + tok + "'");
      }
    }
    if (!is_permutation(p)) throw ParseError("not a permutation: " + std::string(text.substr(pos, close - pos + 1)));
    out.push_back(std::move(p));
    pos = close + 1;
  }
  if (out.empty()) throw ParseError("empty permutation list");
  return out;
}

HElement FinitePermGroupDesc::identity() const {
  HElement out;
  for (auto h : heights) {
    LevelPermutation p(static_cast<std::size_t>(h));
    for (std::int64_t i = 0; i < h; ++i) p[static_cast<std::size_t>(i)] = i;
    out.push_back(std::move(p));
  }
  return out;
}

HElement FinitePermGroupDesc::multiply(HElement const& a, HElement const& b) const {
  if (!contains(a) || !contains(b)) throw PreconditionError("not an element of H");
  return h_multiply(a, b);
}

HElement FinitePermGroupDesc::inverse(HElement const& a) const {
  if (!contains(a)) throw PreconditionError("not an element of H");
  HElement out;
  for (auto const& p : a) {
    LevelPermutation q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<std::int64_t>(i);
    out.push_back(std::move(q));
  }
  return out;
}

bool FinitePermGroupDesc::contains(HElement const& a) const {
  if (a.size() != heights.size()) return false;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (static_cast<std::int64_t>(a[v].size()) != heights[v] || !is_permutation(a[v])) return false;
  return true;
}

std::string FinitePermGroupDesc::order() const {
  std::vector<std::int64_t> factors;
  for (auto h : heights)
    for (std::int64_t k = 2; k <= h; ++k) factors.push_back(k);
  return decimal_product(factors);
}

HElement FinitePermGroupDesc::from_form(PermutationForm const& p) const {
  if (!contains(p.perms)) throw PreconditionError("permutation form does not fit H");
  return p.perms;
}

PermutationForm FinitePermGroupDesc::to_form(HElement const& a) const {
  if (!contains(a)) throw PreconditionError("not an element of H");
  return PermutationForm{partition, a};
}

FinitePermGroupDesc perm_group(KRPartition const& xi) {
  FinitePermGroupDesc out{xi, {}};
  for (auto const& t : xi.towers()) out.heights.push_back(t.height);
  return out;
}

std::string LEFWitness::to_text() const {
  std::ostringstream os;
  os << "lef level=" << level << '\n';
  for (auto const& e : table) os << e.hash << " -> " << h_to_string(e.image) << '\n';
  for (auto const& m : members) os << "member " << element_hash(m) << '\n';
  return os.str();
}

std::optional<HElement> LEFWitness::image_of(std::string const& hash) const {
  for (auto const& e : table)
    if (e.hash == hash) return e.image;
  return std::nullopt;
}

LEFWitness lef_map(std::vector<GroupElement> const& f) { return lef_map(f, 1); }

LEFWitness lef_map(std::vector<GroupElement> const& f, std::int64_t from_level) {
  if (f.empty()) throw PreconditionError("empty set F");
  auto sys = f.front().system();
  std::vector<GroupElement> members{identity(sys)};
  for (auto const& g : f) {
    if (g.system() != sys) throw PreconditionError("F mixes systems");
    add_unique(members, g);
  }
  std::vector<GroupElement> square;
  for (auto const& a : members)
    for (auto const& b : members) add_unique(square, compose(a, b));
  std::set<std::string> hashes;
  for (auto const& q : square)
    if (!hashes.insert(element_hash(q)).second) throw InternalError("element hash collision");

  auto const& seq = anchored_sequence(sys->base_point(Anchor::primary));
  constexpr std::int64_t limit = 256;
  for (auto n = std::max<std::int64_t>(from_level, 1); n <= limit; ++n) {
    LEFWitness w{sys, n, members, {}, false, false};
    bool ok = true;
    for (auto const& q : square) {
      if (!level_defect(q, seq, n).empty()) {
        ok = false;
        break;
      }
      auto fac = factorize(q, seq, n);
      w.table.push_back(LEFEntry{q, element_hash(q), fac.p.perms});
    }
    if (!ok) continue;
    std::set<HElement> images;
    for (auto const& e : w.table) images.insert(e.image);
    if (images.size() != w.table.size()) continue;
    auto report = verify_lef(w);
    if (!report.pass) continue;
    w.injective = w.multiplicative = true;
    return w;
  }
  throw InternalError("no LEF level found up to " + std::to_string(limit));
}

LEFReport verify_lef(LEFWitness const& w) {
  LEFReport out;
  auto fail = [&](std::string const& why) {
    out.violation = why;
    out.lines.push_back("FAIL " + why);
    out.pass = false;
    return out;
  };
  std::vector<std::string> member_hashes;
  for (auto const& m : w.members) member_hashes.push_back(element_hash(m));
  for (std::size_t i = 0; i < w.members.size(); ++i) {
    if (!w.image_of(member_hashes[i])) return fail("member " + member_hashes[i] + " has no image");
  }
  for (std::size_t i = 0; i < w.members.size(); ++i) {
    for (std::size_t j = i + 1; j < w.members.size(); ++j) {
      auto a = *w.image_of(member_hashes[i]);
      auto b = *w.image_of(member_hashes[j]);
      if (a == b)
        return fail("injectivity " + member_hashes[i] + " " + member_hashes[j] + " share " +
                    h_to_string(a));
      out.lines.push_back("injective " + member_hashes[i] + " " + member_hashes[j] + " ok");
    }
  }
  for (std::size_t i = 0; i < w.members.size(); ++i) {
    for (std::size_t j = 0; j < w.members.size(); ++j) {
      auto prod = element_hash(compose(w.members[i], w.members[j]));
      auto img = w.image_of(prod);
      if (!img) return fail("product " + member_hashes[i] + "*" + member_hashes[j] + " missing");
      auto a = *w.image_of(member_hashes[i]);
      auto b = *w.image_of(member_hashes[j]);
      HElement ab;
      try {
        ab = h_multiply(a, b);
      } catch (PreconditionError const& e) {
        return fail("product " + member_hashes[i] + "*" + member_hashes[j] + ": " + e.what());
      }
      if (ab != *img)
        return fail("multiplicativity " + member_hashes[i] + "*" + member_hashes[j] + ": " +
                    h_to_string(*img) + " != " + h_to_string(ab));
      out.lines.push_back("multiplicative " + member_hashes[i] + "*" + member_hashes[j] + " ok");
    }
  }
  out.pass = true;
  return out;
}

LEFWitness parse_witness(std::string_view text, std::vector<GroupElement> const& known) {
  std::istringstream is{std::string(text)};
  std::string line;
  LEFWitness w;
  bool header = false;
  std::vector<std::pair<std::string, HElement>> rows;
  std::vector<std::string> member_hashes;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line.rfind("lef level=", 0) != 0) throw ParseError("expected 'lef level=<n>' header");
      try {
        w.level = std::stoll(line.substr(10));
      } catch (std::logic_error const&) {
        throw ParseError("bad level in header");
      }
      header = true;
      continue;
    }
    if (line.rfind("member ", 0) == 0) {
      member_hashes.push_back(line.substr(7));
      continue;
    }
    auto arrow = line.find(" -> ");
    if (arrow == std::string::npos) throw ParseError("expected '<hash> -> <permutations>': " + line);
    rows.emplace_back(line.substr(0, arrow), parse_h(line.substr(arrow + 4)));
  }
  if (!header) throw ParseError("empty witness");
  // The identity is always a member, whether or not F lists it.
  std::vector<GroupElement> pool = known;
  if (!known.empty()) pool.push_back(identity(known.front().system()));
  std::map<std::string, GroupElement const*> by_hash;
  for (auto const& g : pool) by_hash.emplace(element_hash(g), &g);
  for (auto const& h : member_hashes) {
    auto it = by_hash.find(h);
    if (it == by_hash.end()) throw PreconditionError("member " + h + " is not a known element");
    w.members.push_back(*it->second);
  }
  if (w.members.empty()) throw ParseError("witness lists no members");
  w.system = w.members.front().system();
  std::map<std::string, GroupElement> products;
  for (auto const& a : w.members)
    for (auto const& b : w.members) {
      auto ab = compose(a, b);
      products.emplace(element_hash(ab), ab);
    }
  for (auto& [h, img] : rows) {
    auto it = products.find(h);
    if (it == products.end()) throw ParseError("table row " + h + " is not a product of members");
    w.table.push_back(LEFEntry{it->second, h, std::move(img)});
  }
  return w;
}

std::string StructureReport::text() const {
  std::ostringstream os;
  os << "odometer structure n=" << n << '\n';
  for (auto const& l : lines) os << l << '\n';
  os << "result " << (all() ? "pass" : "fail") << '\n';
  return os.str();
}

StructureReport odometer_structure(SystemRef const& system, std::int64_t n, std::uint64_t seed,
                                   std::int64_t radius, std::int64_t order_bound, int samples) {
  if (system->kind() != SystemKind::odometer) throw PreconditionError("system is not an odometer");
  if (n < 1) throw PreconditionError("n must be positive");
  StructureReport r;
  r.n = n;
  auto base = cylinder(system, Word(static_cast<std::size_t>(n), '0'), 0);
  auto xi = kr_from_set(base);
  if (xi.size() != 1) throw InternalError("odometer partition over [0^n] is not a single tower");
  auto h = xi.towers()[0].height;
  auto hs = static_cast<std::size_t>(h);
  r.lines.push_back("tower base=" + base.to_string() + " height=" + std::to_string(h));
  std::mt19937_64 rng(seed);

  auto embed = [&](LevelPermutation const& p) { return embed_symmetric(system, h, p, base); };
  LevelPermutation id(hs);
  for (std::size_t i = 0; i < hs; ++i) id[i] = static_cast<std::int64_t>(i);

  r.surjective = true;
  for (std::int64_t i = 0; i + 1 < h; ++i) {
    auto p = id;
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i + 1)]);
    auto check = is_n_permutation(embed(p), xi);
    bool ok = check && check.form->perms[0] == p;
    r.surjective = r.surjective && ok;
    r.lines.push_back("transposition (" + std::to_string(i) + " " + std::to_string(i + 1) + ") " +
                      (ok ? "realized" : "NOT realized"));
  }

  std::vector<GroupElement> gens;
  for (std::int64_t i = 0; i < h; ++i) gens.push_back(induced(xi.atom(0, i)));
  r.commuting = true;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!is_identity(commutator(gens[i], gens[j]))) {
        r.commuting = false;
        r.lines.push_back("O_" + std::to_string(i) + " and O_" + std::to_string(j) + " do not commute");
      }
  r.lines.push_back("kernel generators pairwise commute: " + std::string(r.commuting ? "yes" : "no"));
  r.unbounded_order = true;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (order(gens[i], order_bound).order) r.unbounded_order = false;
  r.lines.push_back("kernel generator orders exceed " + std::to_string(order_bound) + ": " +
                    (r.unbounded_order ? "yes" : "no"));

  using Tuple = std::vector<std::int64_t>;
  auto kernel = [&](Tuple const& k) {
    auto out = identity(system);
    for (std::size_t i = 0; i < hs; ++i)
      if (k[i]) out = compose(out, power(gens[i], k[i]));
    return out;
  };
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  auto random_tuple = [&] {
    Tuple k(hs);
    for (auto& c : k) c = coord(rng);
    return k;
  };

  std::vector<Tuple> tuples;
  double total = 1;
  for (std::size_t i = 0; i < hs; ++i) total *= static_cast<double>(2 * radius + 1);
  bool exhaustive = total <= 20000;
  if (exhaustive) {
    Tuple k(hs, -radius);
    for (;;) {
      tuples.push_back(k);
      std::size_t i = 0;
      while (i < hs && k[i] == radius) k[i++] = -radius;
      if (i == hs) break;
      ++k[i];
    }
  } else {
    tuples.push_back(Tuple(hs, 0));
    for (std::size_t i = 0; i < hs; ++i)
      for (std::int64_t s : {-1, 1}) {
        Tuple k(hs, 0);
        k[i] = s;
        tuples.push_back(k);
      }
    for (int s = 0; s < 4 * samples; ++s) tuples.push_back(random_tuple());
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  }
  std::map<std::string, Tuple> seen;
  std::vector<GroupElement> kernel_elems;
  r.distinct = true;
  for (auto const& k : tuples) {
    auto e = kernel(k);
    auto [it, fresh] = seen.emplace(e.to_string(), k);
    if (!fresh) r.distinct = false;
    bool zero = std::all_of(k.begin(), k.end(), [](std::int64_t c) { return c == 0; });
    if (is_identity(e) != zero) r.distinct = false;
    kernel_elems.push_back(std::move(e));
  }
  r.lines.push_back(std::string("exponent tuples within radius ") + std::to_string(radius) + " " +
                    (exhaustive ? "(all " : "(sampled ") + std::to_string(tuples.size()) +
                    ") pairwise distinct: " + (r.distinct ? "yes" : "no"));

  r.additive = true;
  std::uniform_int_distribution<std::size_t> pick(0, tuples.size() - 1);
  int pairs = exhaustive && tuples.size() <= 121 ? static_cast<int>(tuples.size() * tuples.size())
                                                 : 4 * samples;
  for (int s = 0; s < pairs; ++s) {
    std::size_t a, b;
    if (exhaustive && tuples.size() <= 121) {
      a = static_cast<std::size_t>(s) / tuples.size();
      b = static_cast<std::size_t>(s) % tuples.size();
    } else {
      a = pick(rng);
      b = pick(rng);
    }
    Tuple sum(hs);
    for (std::size_t i = 0; i < hs; ++i) sum[i] = tuples[a][i] + tuples[b][i];
    if (!equals(compose(kernel_elems[a], kernel_elems[b]), kernel(sum))) r.additive = false;
  }
  r.lines.push_back("tuples add under composition (" + std::to_string(pairs) +
                    " pairs): " + (r.additive ? "yes" : "no"));

  r.factorization = true;
  LevelPermutation prev_perm;
  GroupElement prev = identity(system);
  for (int s = 0; s < samples; ++s) {
    auto sigma = id;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    auto k = random_tuple();
    auto elem = compose(embed(sigma), kernel(k));
    auto vals = atom_values(elem, xi);
    bool ok = vals.has_value();
    LevelPermutation perm(hs);
    if (ok)
      for (std::size_t i = 0; i < hs; ++i)
        perm[i] = ((static_cast<std::int64_t>(i) + (*vals)[0][i]) % h + h) % h;
    ok = ok && perm == sigma;
    if (ok) {
      auto p = embed(perm);
      auto rest = compose(invert(p), elem);
      auto rv = atom_values(rest, xi);
      ok = rv.has_value() && equals(compose(p, rest), elem);
      for (std::size_t i = 0; ok && i < hs; ++i) ok = (*rv)[0][i] == k[i] * h;
      if (ok && s > 0) {
        // the level map is a homomorphism on G_n
        auto both = atom_values(compose(elem, prev), xi);
        LevelPermutation bp(hs);
        for (std::size_t i = 0; both && i < hs; ++i)
          bp[i] = ((static_cast<std::int64_t>(i) + (*both)[0][i]) % h + h) % h;
        LevelPermutation expect(hs);
        for (std::size_t i = 0; i < hs; ++i) expect[i] = perm[static_cast<std::size_t>(prev_perm[i])];
        ok = both.has_value() && bp == expect;
      }
    }
    if (!ok) r.factorization = false;
    prev = elem;
    prev_perm = perm;
  }
  r.lines.push_back("S = P R recovered for " + std::to_string(samples) + " samples: " +
                    (r.factorization ? "yes" : "no"));
  return r;
}

}  // namespace tfg
