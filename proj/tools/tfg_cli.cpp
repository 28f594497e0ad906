// tfg: command-line front end over a plain-text workspace.
//
// Workspace layout (directory from $TFG_WORKSPACE, default "."):
//   systems/<name>.sys     system configs
//   elements/<name>.elt    element files
//   witnesses/<name>.lef   LEF witnesses
//
// Exit codes: 0 ok, 1 false answer (eq, stabilizer), 2 precondition,
// 3 verification, 4 parse, 5 internal.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfg/acceptance.hpp"
#include "tfg/canon.hpp"
#include "tfg/errors.hpp"
#include "tfg/lef.hpp"
#include "tfg/sampling.hpp"

namespace fs = std::filesystem;
using namespace tfg;

namespace {

std::string read_file(fs::path const& p) {
  std::ifstream in(p);
  if (!in) throw PreconditionError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(fs::path const& p, std::string const& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw PreconditionError("cannot write " + p.string());
  out << text;
}

bool valid_name(std::string const& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
      return false;
  return true;
}

class Workspace {
 public:
  Workspace() {
    auto const* env = std::getenv("TFG_WORKSPACE");
    root_ = env && *env ? fs::path(env) : fs::path(".");
  }

  SystemRef system(std::string const& name) {
    if (auto it = systems_.find(name); it != systems_.end()) return it->second;
    SystemRef s;
    auto file = root_ / "systems" / (name + ".sys");
    if (fs::exists(file)) {
      auto cfg = parse_system_config(read_file(file));
      cfg.name = name;
      s = make_system(cfg);
    } else {
      s = builtin_system(name);
    }
    systems_[name] = s;
    return s;
  }

  void save_system(std::string const& name, SystemConfig cfg) {
    if (!valid_name(name)) throw PreconditionError("bad system name '" + name + "'");
    cfg.name = name;
    make_system(cfg);  // validate before saving
    write_file(root_ / "systems" / (name + ".sys"), emit_system_config(cfg));
  }

  fs::path element_path(std::string const& ref) const {
    fs::path direct(ref);
    if (ref.find('/') != std::string::npos || direct.extension() == ".elt") return direct;
    return root_ / "elements" / (ref + ".elt");
  }

  GroupElement element(std::string const& ref) {
    auto p = element_path(ref);
    if (!fs::exists(p)) throw PreconditionError("unknown element '" + ref + "'");
    return parse_element(read_file(p), [this](std::string const& n) { return system(n); });
  }

  void save_element(std::string const& name, GroupElement const& g) {
    if (!valid_name(name)) throw PreconditionError("bad element name '" + name + "'");
    write_file(root_ / "elements" / (name + ".elt"), g.to_string());
  }

  std::vector<GroupElement> all_elements() {
    std::vector<GroupElement> out;
    auto dir = root_ / "elements";
    if (!fs::exists(dir)) return out;
    for (auto const& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".elt") out.push_back(element(e.path().string()));
    return out;
  }

  fs::path const& root() const { return root_; }

 private:
  fs::path root_;
  std::map<std::string, SystemRef> systems_;
};

PointRep point(SystemRef const& s, std::string const& which, Power shift) {
  Anchor a;
  if (which == "primary") {
    a = Anchor::primary;
  } else if (which == "alternate") {
    a = Anchor::alternate;
  } else {
    throw ParseError("point must be 'primary' or 'alternate', not '" + which + "'");
  }
  auto p = s->base_point(a);
  return shift ? s->shift(p, shift) : p;
}

std::string describe(PointRep const& p) {
  return p.to_string() + " window[-4,8]=" +
         (p.system->kind() == SystemKind::odometer ? point_window(p, 0, 8)
                                                   : point_window(p, -4, 8));
}

void emit(GroupElement const& g, std::string const& out, Workspace& ws) {
  if (!out.empty()) ws.save_element(out, g);
  std::cout << g.to_string();
}

int run(int argc, char** argv) {
  Workspace ws;
  CLI::App app{"Topological full groups of Cantor minimal systems"};
  app.require_subcommand(1);
  std::function<int()> action;

  // system
  auto* sys_cmd = app.add_subcommand("system", "Define or inspect systems");
  sys_cmd->require_subcommand(1);
  {
    auto* def = sys_cmd->add_subcommand("define", "Store a system config");
    static std::string name, file;
    def->add_option("name", name)->required();
    def->add_option("--file", file, "config file (key = value lines)")->required();
    def->callback([&] {
      action = [&] {
        auto cfg = parse_system_config(read_file(file));
        ws.save_system(name, cfg);
        std::cout << emit_system_config(ws.system(name)->config());
        return 0;
      };
    });
    auto* show = sys_cmd->add_subcommand("show", "Summarize a system");
    static std::string sname;
    show->add_option("name", sname)->required();
    show->callback([&] {
      action = [&] {
        auto s = ws.system(sname);
        std::cout << emit_system_config(s->config());
        for (std::int64_t n : {1, 2, 4, 8})
          std::cout << "words of length " << n << ": " << language(*s, n).size() << '\n';
        std::cout << "primary " << describe(s->base_point(Anchor::primary)) << '\n';
        std::cout << "alternate " << describe(s->base_point(Anchor::alternate)) << '\n';
        return 0;
      };
    });
  }

  // element
  auto* el = app.add_subcommand("element", "Build and manipulate elements");
  el->require_subcommand(1);
  {
    auto* make = el->add_subcommand("make", "Create an element");
    static std::string name, system, induced_set, swap_set, cycle_set, pieces, from;
    static std::optional<Power> tpow;
    static std::int64_t cycle_len = 3;
    static bool ident = false;
    make->add_option("name", name)->required();
    make->add_option("--system", system, "system name");
    make->add_option("--power", tpow, "T^k");
    make->add_flag("--identity", ident);
    make->add_option("--induced", induced_set, "induced map on a clopen set");
    make->add_option("--swap", swap_set, "exchange U and TU");
    make->add_option("--cycle", cycle_set, "cycle U -> TU -> ... -> T^{m-1}U -> U");
    make->add_option("--m", cycle_len, "cycle length for --cycle");
    make->add_option("--pieces", pieces, "'<clopen> -> <power>' separated by ';'");
    make->add_option("--from", from, "element file to import");
    make->callback([&] {
      action = [&] {
        std::optional<GroupElement> g;
        if (!from.empty()) {
          g = parse_element(read_file(from), [&](std::string const& n) { return ws.system(n); });
        } else {
          if (system.empty()) throw PreconditionError("--system is required");
          auto s = ws.system(system);
          if (tpow) g = t_power(s, *tpow);
          if (ident) g = identity(s);
          if (!induced_set.empty()) g = induced(parse_clopen(s, induced_set));
          if (!swap_set.empty()) g = embed_symmetric(s, 2, {1, 0}, parse_clopen(s, swap_set));
          if (!cycle_set.empty()) {
            std::vector<std::int64_t> perm;
            for (std::int64_t i = 0; i < cycle_len; ++i) perm.push_back((i + 1) % cycle_len);
            g = embed_symmetric(s, cycle_len, perm, parse_clopen(s, cycle_set));
          }
          if (!pieces.empty()) {
            std::string text = "system " + system + "\n";
            for (char c : pieces) text += c == ';' ? '\n' : c;
            g = parse_element(text, s);
          }
        }
        if (!g) throw PreconditionError("nothing to make: give --power, --identity, --induced, "
                                        "--swap, --cycle, --pieces or --from");
        emit(*g, name, ws);
        return 0;
      };
    });

    auto* comp = el->add_subcommand("compose", "out = a b (b first)");
    static std::string c_out, c_a, c_b;
    comp->add_option("out", c_out)->required();
    comp->add_option("a", c_a)->required();
    comp->add_option("b", c_b)->required();
    comp->callback([&] {
      action = [&] {
        emit(compose(ws.element(c_a), ws.element(c_b)), c_out, ws);
        return 0;
      };
    });

    auto* inv = el->add_subcommand("invert", "out = a^-1");
    static std::string i_out, i_a;
    inv->add_option("out", i_out)->required();
    inv->add_option("a", i_a)->required();
    inv->callback([&] {
      action = [&] {
        emit(invert(ws.element(i_a)), i_out, ws);
        return 0;
      };
    });

    auto* eq = el->add_subcommand("eq", "Exit 0 if equal, 1 otherwise");
    static std::string e_a, e_b;
    eq->add_option("a", e_a)->required();
    eq->add_option("b", e_b)->required();
    eq->callback([&] {
      action = [&] {
        bool same = equals(ws.element(e_a), ws.element(e_b));
        std::cout << (same ? "equal" : "different") << '\n';
        return same ? 0 : 1;
      };
    });

    auto* ord = el->add_subcommand("order", "Order up to a bound");
    static std::string o_a;
    static std::int64_t o_bound = 64;
    ord->add_option("a", o_a)->required();
    ord->add_option("--bound", o_bound);
    ord->callback([&] {
      action = [&] {
        auto r = order(ws.element(o_a), o_bound);
        if (r.order) {
          std::cout << *r.order << '\n';
        } else {
          std::cout << (r.proven_infinite ? "infinite" : "> " + std::to_string(o_bound)) << '\n';
        }
        return 0;
      };
    });

    auto* sup = el->add_subcommand("support", "Support as a clopen set");
    static std::string s_a;
    sup->add_option("a", s_a)->required();
    sup->callback([&] {
      action = [&] {
        std::cout << support(ws.element(s_a)).to_string() << '\n';
        return 0;
      };
    });

    auto* ap = el->add_subcommand("apply", "Image of a base point");
    static std::string ap_a, ap_point = "primary";
    static Power ap_shift = 0;
    ap->add_option("a", ap_a)->required();
    ap->add_option("--point", ap_point);
    ap->add_option("--shift", ap_shift, "apply to T^shift of the point");
    ap->callback([&] {
      action = [&] {
        auto g = ws.element(ap_a);
        auto p = point(g.system(), ap_point, ap_shift);
        std::cout << "power " << value_at(g, p) << '\n';
        std::cout << "image " << describe(apply(g, p)) << '\n';
        return 0;
      };
    });
  }

  // towers
  auto* tw = app.add_subcommand("towers", "Kakutani-Rokhlin partitions");
  tw->require_subcommand(1);
  {
    auto* fset = tw->add_subcommand("from-set", "Return partition of a clopen set");
    static std::string system, set;
    fset->add_option("system", system)->required();
    fset->add_option("--set", set)->required();
    fset->callback([&] {
      action = [&] {
        auto s = ws.system(system);
        auto xi = kr_from_set(parse_clopen(s, set));
        xi.verify();
        std::cout << xi.report();
        return 0;
      };
    });

    auto* seqc = tw->add_subcommand("sequence", "Anchored sequence with condition checks");
    static std::string q_system, q_point = "primary";
    static std::int64_t q_levels = 4;
    seqc->add_option("system", q_system)->required();
    seqc->add_option("--levels", q_levels);
    seqc->add_option("--anchor", q_point);
    seqc->callback([&] {
      action = [&] {
        auto s = ws.system(q_system);
        auto const& seq = anchored_sequence(point(s, q_point, 0));
        bool all = true;
        for (std::int64_t n = 1; n <= q_levels; ++n) {
          auto const& lv = seq.level(n);
          auto rep = check_conditions(seq, n);
          all = all && rep.all();
          std::cout << "level " << n << " m=" << lv.m << " radius=" << lv.radius
                    << " towers=" << lv.partition.size() << " min_height=" << lv.partition.min_height()
                    << " conditions=" << (rep.all() ? "ok" : "FAILED") << '\n';
        }
        if (!all) throw VerificationError("a tower condition failed");
        return 0;
      };
    });

    auto* show = tw->add_subcommand("show", "One level of the anchored sequence");
    static std::string w_system, w_point = "primary";
    static std::int64_t w_level = 1;
    show->add_option("system", w_system)->required();
    show->add_option("--level", w_level);
    show->add_option("--anchor", w_point);
    show->callback([&] {
      action = [&] {
        auto s = ws.system(w_system);
        auto const& lv = anchored_sequence(point(s, w_point, 0)).level(w_level);
        std::cout << "level " << w_level << " m=" << lv.m << " radius=" << lv.radius << '\n'
                  << lv.partition.report();
        return 0;
      };
    });
  }

  // factorize / index / stabilizer
  auto* fac = app.add_subcommand("factorize", "Q = P R at a level");
  static std::string f_el, f_level = "auto";
  fac->add_option("element", f_el)->required();
  fac->add_option("--level", f_level, "level number or 'auto'");
  fac->callback([&] {
    action = [&] {
      auto q = ws.element(f_el);
      auto const& seq = anchored_sequence(q.system()->base_point(Anchor::primary));
      Factorization f = f_level == "auto" ? factorize(q, seq) : [&] {
        std::int64_t n = 0;
        try {
          n = std::stoll(f_level);
        } catch (std::logic_error const&) {
          throw ParseError("--level must be a number or 'auto'");
        }
        return factorize(q, seq, n);
      }();
      std::cout << f.report();
      return 0;
    };
  });

  auto* idx = app.add_subcommand("index", "Index of an element");
  static std::string x_el;
  idx->add_option("element", x_el)->required();
  idx->callback([&] {
    action = [&] {
      std::cout << index(ws.element(x_el)) << '\n';
      return 0;
    };
  });

  auto* stab = app.add_subcommand("stabilizer", "Does the element preserve a forward orbit");
  static std::string st_el, st_point = "primary";
  stab->add_option("element", st_el)->required();
  stab->add_option("--point", st_point);
  stab->callback([&] {
    action = [&] {
      auto q = ws.element(st_el);
      bool in = in_stabilizer(q, point(q.system(), st_point, 0));
      std::cout << (in ? "true" : "false") << '\n';
      return in ? 0 : 1;
    };
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "Q = P1 P2 for index-0 Q");
  static std::string d_el, d_x = "primary", d_y = "alternate", d_out;
  static std::int64_t d_budget = 40;
  dec->add_option("element", d_el)->required();
  dec->add_option("--x", d_x);
  dec->add_option("--y", d_y);
  dec->add_option("--out", d_out, "stores <out>_p1 and <out>_p2");
  dec->add_option("--budget", d_budget, "cylinder depth budget for Y");
  dec->callback([&] {
    action = [&] {
      auto q = ws.element(d_el);
      auto s = q.system();
      auto d = kernel_decompose(q, point(s, d_x, 0), point(s, d_y, 0), d_budget);
      auto base = d_out.empty() ? fs::path(d_el).stem().string() : d_out;
      ws.save_element(base + "_p1", d.p1);
      ws.save_element(base + "_p2", d.p2);
      std::cout << "# " << base << "_p1\n" << d.p1.to_string() << "# " << base << "_p2\n"
                << d.p2.to_string();
      for (auto const& l : d.log) std::cout << "check " << l << '\n';
      return 0;
    };
  });

  // witness separation
  auto* wit = app.add_subcommand("witness", "Explicit witnesses");
  wit->require_subcommand(1);
  {
    auto* sep = wit->add_subcommand("separation", "g in the commutator subgroup moving x inside O");
    static std::string system = "odometer2", set, pt = "primary", out;
    static Power shift = 0;
    sep->add_option("--system", system);
    sep->add_option("--set", set)->required();
    sep->add_option("--point", pt);
    sep->add_option("--shift", shift);
    sep->add_option("--out", out);
    sep->callback([&] {
      action = [&] {
        auto s = ws.system(system);
        auto w = separation_witness(parse_clopen(s, set), point(s, pt, shift));
        std::cout << "# g = [s, t], t swaps " << w.u.to_string() << " and " << w.v.to_string()
                  << ", s swaps " << w.v.to_string() << " and " << w.w.to_string() << '\n';
        emit(w.g, out, ws);
        return 0;
      };
    });
  }

  // lef
  auto* lef = app.add_subcommand("lef", "LEF witnesses");
  static std::string l_set, l_out;
  static std::int64_t l_from = 1;
  lef->add_option("--set", l_set, "file listing element names, one per line");
  lef->add_option("--out", l_out, "witness name");
  lef->add_option("--from-level", l_from);
  {
    auto* ver = lef->add_subcommand("verify", "Re-check a witness file");
    static std::string v_file, v_set;
    ver->add_option("witness", v_file)->required();
    ver->add_option("--set", v_set, "element list; default: every workspace element");
    ver->callback([&] {
      action = [&] {
        std::vector<GroupElement> known;
        if (!v_set.empty()) {
          std::istringstream is(read_file(v_set));
          for (std::string line; std::getline(is, line);)
            if (!line.empty() && line[0] != '#') known.push_back(ws.element(line));
        } else {
          known = ws.all_elements();
        }
        fs::path p(v_file);
        if (!fs::exists(p)) p = ws.root() / "witnesses" / (v_file + ".lef");
        auto r = verify_lef(parse_witness(read_file(p), known));
        for (auto const& l : r.lines) std::cout << l << '\n';
        std::cout << (r.pass ? "pass" : "fail") << '\n';
        if (!r.pass) throw VerificationError(r.violation);
        return 0;
      };
    });
  }
  lef->callback([&] {
    if (lef->get_subcommands().empty()) {
      action = [&] {
        if (l_set.empty()) throw PreconditionError("--set is required");
        std::vector<GroupElement> f;
        std::istringstream is(read_file(l_set));
        for (std::string line; std::getline(is, line);)
          if (!line.empty() && line[0] != '#') f.push_back(ws.element(line));
        auto w = lef_map(f, l_from);
        auto text = w.to_text();
        if (!l_out.empty()) write_file(ws.root() / "witnesses" / (l_out + ".lef"), text);
        std::cout << text;
        auto r = verify_lef(w);
        for (auto const& l : r.lines) std::cout << "# " << l << '\n';
        if (!r.pass) throw VerificationError(r.violation);
        return 0;
      };
    }
  });

  // odometer-structure
  auto* ost = app.add_subcommand("odometer-structure", "Wreath-product checks at level n");
  static std::int64_t os_n = 1;
  static std::uint64_t os_seed = 1;
  static std::string os_system = "odometer2";
  ost->add_option("--n", os_n)->required();
  ost->add_option("--seed", os_seed);
  ost->add_option("--system", os_system);
  ost->callback([&] {
    action = [&] {
      auto r = odometer_structure(ws.system(os_system), os_n, os_seed);
      std::cout << r.text();
      if (!r.all()) throw VerificationError("structure check failed");
      return 0;
    };
  });

  // selftest
  auto* self = app.add_subcommand("selftest", "Run the acceptance criteria");
  static std::uint64_t seed = 1;
  static std::vector<int> only;
  self->add_option("--seed", seed);
  self->add_option("--criterion", only, "run only these criteria");
  self->callback([&] {
    action = [&] {
      std::vector<int> ids = only;
      if (ids.empty())
        for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
      int failed = 0;
      for (int id : ids) {
        auto r = run_criterion(id, seed);
        std::cout << r.line() << std::endl;
        if (!r.pass) ++failed;
      }
      if (failed) throw VerificationError(std::to_string(failed) + " criteria failed");
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 4;
  }
  return action ? action() : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (PreconditionError const& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return 2;
  } catch (VerificationError const& e) {
    std::cerr << "verification: " << e.what() << '\n';
    return 3;
  } catch (ParseError const& e) {
    std::cerr << "parse: " << e.what() << '\n';
    return 4;
  } catch (InternalError const& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return 5;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  }
}
