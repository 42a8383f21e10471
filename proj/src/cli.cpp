#include "colift/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "colift/error.hpp"
#include "colift/harness.hpp"
#include "colift/simulation.hpp"
#include "colift/system.hpp"

namespace colift {

namespace {

struct Options {
  std::string system;
  std::string relation;
  std::string order;
  std::string nu;
  std::string formula;
  std::string state;
  std::string left;
  std::string right;
  std::string coalgebra;
  std::vector<std::string> carriers;
  std::string check = "preorder";
  std::string image;
  std::string direction = "direct";
  std::string suite = "all";
  std::vector<std::string> operators;
  std::string emit_dir;
  bool probe = false;
  std::uint64_t seed = 42;
  std::size_t trials = 500;
  std::size_t max_states = 4;
  std::size_t depth = 3;
  std::optional<std::uint64_t> guard;
  std::string format = "text";
};

// Result of one command: a JSON report plus its text rendering.
struct Outcome {
  int code = kHolds;
  Json report = Json::object();
  std::string text;
};

template <class T>
const T& pick_entry(const Registry<T>& reg, const std::string& name, const std::string& kind) {
  if (!name.empty()) return reg.at(name);
  if (reg.empty()) throw ConfigError("the system declares no " + kind);
  return reg.entries().front().second;
}

template <class T>
std::string entry_name(const Registry<T>& reg, const std::string& name) {
  return name.empty() ? reg.entries().front().first : name;
}

SystemDescription load(const Options& o) {
  if (o.system.empty()) throw ConfigError("--system is required for this command");
  SystemDescription sys = load_system(o.system);
  if (o.guard) sys.limits.guard = *o.guard;
  return sys;
}

// The coalgebra named `name`, else the first one over `states`.
const Coalgebra& coalgebra_over(const SystemDescription& sys, const std::string& name, const Carrier& states,
                                const std::string& role) {
  if (!name.empty()) return sys.coalgebras.at(name);
  for (const auto& [n, c] : sys.coalgebras.entries())
    if (c.states() == states) return c;
  throw ConfigError("no coalgebra over '" + states.name() + "' for the " + role + " side; pass --" + role);
}

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return Json{{"states", w->states}, {"explanation", w->explanation}};
}

Json pairs_json(const Relation& r) {
  Json out = Json::array();
  for (const auto& [x, y] : r.id_pairs()) out.push_back(Json::array({x, y}));
  return out;
}

Outcome relation_check(const Options& o, bool ordered) {
  const SystemDescription sys = load(o);
  const Relation& r = pick_entry(sys.relations, o.relation, "relations");
  const Coalgebra& c = coalgebra_over(sys, o.left, r.domain(), "left");
  const Coalgebra& d = coalgebra_over(sys, o.right, r.codomain(), "right");
  Outcome out;
  CheckReport rep;
  if (ordered) {
    const OrderSpec& ord = pick_entry(sys.orders, o.order, "orders");
    rep = is_simulation(c, d, ord, r, sys.limits);
    out.report["order"] = entry_name(sys.orders, o.order);
  } else {
    rep = is_bisimulation(c, d, r);
  }
  out.code = rep.holds ? kHolds : kFails;
  out.report["check"] = ordered ? "simulation" : "bisimulation";
  out.report["relation"] = entry_name(sys.relations, o.relation);
  out.report["holds"] = rep.holds;
  out.report["witness"] = witness_json(rep.witness);
  out.text = entry_name(sys.relations, o.relation) + (rep.holds ? " is " : " is not ") + "a " +
             (ordered ? "simulation" : "bisimulation") + "\n";
  if (rep.witness) out.text += "  witness: " + rep.witness->explanation + "\n";
  return out;
}

Outcome largest(const Options& o, bool ordered) {
  const SystemDescription sys = load(o);
  const Coalgebra& c = o.left.empty() ? sys.coalgebras.entries().at(0).second : sys.coalgebras.at(o.left);
  const Coalgebra& d = o.right.empty() ? sys.coalgebras.entries().at(sys.coalgebras.size() > 1 ? 1 : 0).second
                                       : sys.coalgebras.at(o.right);
  const Relation r = ordered ? largest_simulation(c, d, pick_entry(sys.orders, o.order, "orders"), sys.limits)
                             : largest_bisimulation(c, d);
  Outcome out;
  out.report["check"] = ordered ? "largest-simulation" : "largest-bisimulation";
  out.report["pairs"] = pairs_json(r);
  out.text = r.to_string() + "\n";
  return out;
}

Outcome evaluate(const Options& o) {
  const SystemDescription sys = load(o);
  if (o.formula.empty()) throw ConfigError("--formula is required");
  Formula phi = sys.formula(o.formula);
  if (!o.image.empty()) {
    if (o.direction != "direct" && o.direction != "inverse") throw ConfigError("--direction must be direct or inverse");
    phi = image_formula(phi, RelationRef{o.image}, o.direction == "inverse" ? Direction::Inverse : Direction::Direct);
  }
  const Coalgebra* c = nullptr;
  if (!o.coalgebra.empty()) {
    c = &sys.coalgebras.at(o.coalgebra);
  } else if (!o.state.empty()) {
    for (const auto& [n, k] : sys.coalgebras.entries())
      if (k.states().contains(o.state)) {
        c = &k;
        break;
      }
    if (c == nullptr) throw ConfigError("no coalgebra has a state '" + o.state + "'");
  } else {
    c = &pick_entry(sys.coalgebras, "", "coalgebras");
  }
  const NatTrans* nu = nullptr;
  if (!o.nu.empty()) {
    nu = &sys.nus.at(o.nu);
  } else if (!sys.nus.empty()) {
    nu = &sys.nus.entries().front().second;
  }
  const Predicate sat = eval(*c, phi, sys.env(), nu);
  Outcome out;
  out.report["formula"] = phi.to_string();
  out.report["states"] = c->states().name();
  out.report["satisfied_by"] = sat.members();
  out.text = "[[" + phi.to_string() + "]] = " + sat.to_string() + "\n";
  if (!o.state.empty()) {
    const bool holds = sat.contains(std::string_view(o.state));
    out.report["state"] = o.state;
    out.report["holds"] = holds;
    out.code = holds ? kHolds : kFails;
    out.text += o.state + (holds ? " satisfies " : " does not satisfy ") + phi.to_string() + "\n";
  }
  return out;
}

Outcome check_order(const Options& o) {
  const SystemDescription sys = load(o);
  std::vector<Carrier> carriers;
  for (const auto& name : o.carriers) {
    if (const Coalgebra* c = sys.coalgebras.find(name)) {
      carriers.push_back(c->states());
    } else {
      carriers.push_back(sys.sets.at(name));
    }
  }
  if (carriers.empty()) {
    for (const auto& [n, c] : sys.coalgebras.entries())
      if (std::find(carriers.begin(), carriers.end(), c.states()) == carriers.end()) carriers.push_back(c.states());
  }
  if (carriers.empty()) throw ConfigError("no carrier to check; pass --carrier");

  Outcome out;
  out.report["check"] = o.check;
  Json results = Json::array();
  bool all = true;
  auto add = [&](const std::string& where, bool holds, Json detail, const std::string& why) {
    all = all && holds;
    results.push_back(Json{{"carrier", where}, {"holds", holds}, {"counterexample", holds ? Json(nullptr) : detail}});
    out.text += o.check + " on " + where + ": " + (holds ? "holds" : "fails") + "\n";
    if (!holds) out.text += "  " + why + "\n";
  };

  if (o.check == "naturality") {
    const NatTrans& nu = pick_entry(sys.nus, o.nu, "natural transformations");
    out.report["nu"] = entry_name(sys.nus, o.nu);
    auto v = check_naturality(nu, carriers, sys.limits);
    std::string why;
    Json detail = nullptr;
    if (!v.holds()) {
      const auto& w = *v.counterexample;
      detail = Json{{"from", w.from.name()}, {"to", w.to.name()}, {"mapping", w.mapping},
                    {"value", w.value.to_string()}, {"before", w.before.members()}, {"after", w.after.members()}};
      why = "nu(" + w.value.to_string() + ") = " + w.before.to_string() + " but after renaming it is " +
            w.after.to_string();
    }
    std::string where;
    for (const auto& c : carriers) where += (where.empty() ? "" : ",") + c.name();
    add(where, v.holds(), detail, why);
  } else {
    const OrderSpec& ord = pick_entry(sys.orders, o.order, "orders");
    out.report["order"] = entry_name(sys.orders, o.order);
    for (const auto& carrier : carriers) {
      if (o.check == "preorder") {
        auto v = is_preorder(ord, carrier, sys.limits);
        std::string why;
        Json detail = nullptr;
        if (!v.holds()) {
          const auto& w = *v.counterexample;
          detail = w.reflexivity ? Json{{"kind", "reflexivity"}, {"a", w.a.to_string()}}
                                 : Json{{"kind", "transitivity"},
                                        {"a", w.a.to_string()},
                                        {"b", w.b.to_string()},
                                        {"c", w.c.to_string()}};
          why = w.reflexivity ? "not reflexive at " + w.a.to_string()
                              : w.a.to_string() + " <= " + w.b.to_string() + " <= " + w.c.to_string() +
                                    " but not " + w.a.to_string() + " <= " + w.c.to_string();
        }
        add(carrier.name(), v.holds(), detail, why);
      } else if (o.check == "down-closed" || o.check == "up-closed") {
        auto v = o.check == "down-closed" ? is_down_closed(ord, carrier, sys.limits) : is_up_closed(ord, carrier, sys.limits);
        std::string why;
        Json detail = nullptr;
        if (!v.holds()) {
          const auto& w = *v.counterexample;
          detail = Json{{"smaller", w.smaller.to_string()}, {"larger", w.larger.to_string()},
                        {"predicate", w.predicate.members()}};
          why = w.smaller.to_string() + " <= " + w.larger.to_string() + " but membership in the lifting of " +
                w.predicate.to_string() + " does not transfer";
        }
        add(carrier.name(), v.holds(), detail, why);
      } else if (o.check == "down-natural" || o.check == "up-natural") {
        const NatTrans& nu = pick_entry(sys.nus, o.nu, "natural transformations");
        out.report["nu"] = entry_name(sys.nus, o.nu);
        auto v = o.check == "down-natural" ? is_down_natural(ord, nu, carrier, sys.limits)
                                           : is_up_natural(ord, nu, carrier, sys.limits);
        std::string why;
        Json detail = nullptr;
        if (!v.holds()) {
          const auto& w = *v.counterexample;
          detail = Json{{"smaller", w.smaller.to_string()}, {"larger", w.larger.to_string()},
                        {"nu_smaller", w.nu_smaller.members()}, {"nu_larger", w.nu_larger.members()}};
          why = w.smaller.to_string() + " <= " + w.larger.to_string() + " with nu " + w.nu_smaller.to_string() +
                " and " + w.nu_larger.to_string();
        }
        add(carrier.name(), v.holds(), detail, why);
      } else {
        throw ConfigError("unknown --check '" + o.check + "'");
      }
    }
  }
  out.report["results"] = results;
  out.report["holds"] = all;
  out.code = all ? kHolds : kFails;
  return out;
}

std::set<Op> parse_operators(const std::vector<std::string>& names) {
  static const std::map<std::string, Op> table = {
      {"not", Op::Not},   {"and", Op::And},     {"or", Op::Or},         {"implies", Op::Implies},
      {"next", Op::Next}, {"always", Op::Always}, {"eventually", Op::Eventually}, {"until", Op::Until}};
  std::set<Op> ops;
  for (const auto& n : names) {
    auto it = table.find(n);
    if (it == table.end()) throw ConfigError("unknown operator '" + n + "'");
    ops.insert(it->second);
  }
  return ops;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

Outcome suites(const Options& o, const std::vector<SuiteReport>& reports) {
  Outcome out;
  Json list = Json::array();
  bool ok = true;
  std::ostringstream text;
  text << pad("suite", 34) << pad("result", 8) << pad("trials", 8) << pad("nonempty", 10) << pad("formulas", 10)
       << "violations\n";
  for (const auto& r : reports) {
    ok = ok && r.passed();
    list.push_back(report_to_json(r));
    const std::string result = r.empirical ? "INFO" : r.passed() ? "PASS" : "FAIL";
    text << pad(r.name, 34) << pad(result, 8) << pad(std::to_string(r.trials_run), 8)
         << pad(std::to_string(r.nonempty_relations), 10) << pad(std::to_string(r.formulas_checked), 10)
         << r.violation_count << "\n";
    for (const auto& c : r.checks)
      if (!c.passed()) text << "  check failed: " << c.name << " (expected " << c.expected << ")\n";
    for (const auto& v : r.violations) text << "  trial " << v.trial << ": " << v.description << "\n";
  }
  if (!o.emit_dir.empty()) {
    std::filesystem::create_directories(o.emit_dir);
    for (const auto& r : reports)
      for (std::size_t i = 0; i < r.violations.size(); ++i) {
        const auto path = std::filesystem::path(o.emit_dir) / (r.name + "-" + std::to_string(i + 1) + ".json");
        std::ofstream(path) << dump_system(r.violations[i].instance);
      }
  }
  out.report["seed"] = o.seed;
  out.report["suites"] = list;
  out.report["passed"] = ok;
  out.text = text.str();
  out.code = ok ? kHolds : kFails;
  return out;
}

TrialConfig trial_config(const Options& o) {
  TrialConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.max_states = std::max<std::size_t>(1, o.max_states);
  cfg.formula_depth = o.depth;
  cfg.operators = parse_operators(o.operators);
  if (o.guard) cfg.limits.guard = *o.guard;
  return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Check bisimulations, simulations and temporal properties of finite coalgebras", "colift"};
  app.require_subcommand(1);
  Options o;

  auto system_flags = [&](CLI::App* sub) {
    sub->add_option("--system", o.system, "system description (JSON)")->required();
    sub->add_option("--guard", o.guard, "largest enumeration allowed");
  };
  auto format_flag = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
  };
  auto pair_flags = [&](CLI::App* sub) {
    sub->add_option("--left", o.left, "coalgebra on the domain side");
    sub->add_option("--right", o.right, "coalgebra on the codomain side");
  };

  auto* bisim = app.add_subcommand("check-bisim", "is a relation a bisimulation");
  auto* sim = app.add_subcommand("check-sim", "is a relation a simulation under an order");
  for (auto* sub : {bisim, sim}) {
    system_flags(sub);
    format_flag(sub);
    pair_flags(sub);
    sub->add_option("--relation", o.relation, "relation name (default: the first)");
  }
  sim->add_option("--order", o.order, "order name (default: the first)");

  auto* lbisim = app.add_subcommand("largest-bisim", "greatest bisimulation between two coalgebras");
  auto* lsim = app.add_subcommand("largest-sim", "greatest simulation under an order");
  for (auto* sub : {lbisim, lsim}) {
    system_flags(sub);
    format_flag(sub);
    pair_flags(sub);
  }
  lsim->add_option("--order", o.order, "order name (default: the first)");

  auto* ev = app.add_subcommand("eval", "states satisfying a formula");
  system_flags(ev);
  format_flag(ev);
  ev->add_option("--formula", o.formula, "registered formula name or formula text")->required();
  ev->add_option("--state", o.state, "report on this state; exit 1 if it fails the formula");
  ev->add_option("--coalgebra", o.coalgebra, "coalgebra to evaluate on");
  ev->add_option("--nu", o.nu, "meaning of atoms (default: the first declared)");
  ev->add_option("--image", o.image, "rewrite predicates to their image along this relation first");
  ev->add_option("--direction", o.direction, "image direction")->check(CLI::IsMember({"direct", "inverse"}));

  auto* co = app.add_subcommand("check-order", "properties of an order or natural transformation");
  system_flags(co);
  format_flag(co);
  co->add_option("--check", o.check, "property to check")
      ->check(CLI::IsMember({"preorder", "down-closed", "up-closed", "down-natural", "up-natural", "naturality"}));
  co->add_option("--order", o.order, "order name (default: the first)");
  co->add_option("--nu", o.nu, "natural transformation name (default: the first)");
  co->add_option("--carrier", o.carriers, "set or coalgebra whose state space to check (repeatable)");

  auto* vt = app.add_subcommand("verify-theorems", "randomised transfer suites");
  format_flag(vt);
  std::vector<std::string> names = {"all"};
  for (const auto& n : suite_names())
    if (n.rfind("counterexample", 0) != 0 && n != "probe-negation") names.push_back(n);
  vt->add_option("--suite", o.suite, "suite to run")->check(CLI::IsMember(names));
  vt->add_option("--seed", o.seed, "random seed");
  vt->add_option("--trials", o.trials, "trials per suite");
  vt->add_option("--max-states", o.max_states, "largest state space drawn");
  vt->add_option("--depth", o.depth, "largest formula depth");
  vt->add_option("--operators", o.operators, "connectives to draw from (not,and,or,implies,next,always,eventually,until)")
      ->delimiter(',');
  vt->add_option("--guard", o.guard, "largest enumeration allowed");
  vt->add_flag("--probe", o.probe, "also run the negation probes (reported, not asserted)");
  vt->add_option("--emit-violations", o.emit_dir, "write each kept violation as a loadable system file here");

  auto* cx = app.add_subcommand("counterexamples", "replay the two fixed counterexamples");
  format_flag(cx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Outcome result;
    if (bisim->parsed()) result = relation_check(o, false);
    else if (sim->parsed()) result = relation_check(o, true);
    else if (lbisim->parsed()) result = largest(o, false);
    else if (lsim->parsed()) result = largest(o, true);
    else if (ev->parsed()) result = evaluate(o);
    else if (co->parsed()) result = check_order(o);
    else if (vt->parsed()) {
      const TrialConfig cfg = trial_config(o);
      auto reports = run_suites(o.suite, cfg);
      if (o.probe)
        for (auto& r : probe_negation(cfg)) reports.push_back(std::move(r));
      result = suites(o, reports);
    } else {
      result = suites(o, {counterexample_next(), counterexample_eventually()});
    }
    if (o.format == "json") {
      out << result.report.dump(2) << "\n";
    } else {
      out << result.text;
    }
    return result.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace colift
