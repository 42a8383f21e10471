#include "colift/system.hpp"

#include <fstream>
#include <sstream>

namespace colift {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError(what); }

// Runs `body`, prefixing any validation or lookup failure with `where`.
template <class F>
auto within(const std::string& where, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const UnsupportedConstructor& e) {
    throw UnsupportedConstructor(where + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

const std::string& as_string(const Json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string, got " + j.dump());
  return j.get_ref<const std::string&>();
}

const Json& as_array(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array, got " + j.dump());
  return j;
}

// The single key of a tagged object such as {"pow": ...}.
std::pair<std::string, const Json*> tag_of(const Json& j, const std::string& what) {
  if (!j.is_object() || j.size() != 1) bad(what + " must be an object with exactly one key, got " + j.dump());
  return {j.begin().key(), &j.begin().value()};
}

std::pair<std::string, std::string> id_pair(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) bad(what + " must be a two-element array, got " + j.dump());
  return {as_string(j[0], what), as_string(j[1], what)};
}

const Carrier& set_named(const Registry<Carrier>& sets, const Json& j, const std::string& what) {
  return sets.at(as_string(j, what));
}

}  // namespace

// ---------------------------------------------------------------------------
// Functors and values

Json functor_to_json(const FunctorExpr& f) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return "id";
    case FunctorKind::Const:
      return Json{{"const", f.set().name()}};
    case FunctorKind::Prod:
      return Json{{"prod", Json::array({functor_to_json(f.left()), functor_to_json(f.right())})}};
    case FunctorKind::Coprod:
      return Json{{"coprod", Json::array({functor_to_json(f.left()), functor_to_json(f.right())})}};
    case FunctorKind::Exp:
      return Json{{"exp", Json::array({functor_to_json(f.base()), f.set().name()})}};
    case FunctorKind::Pow:
      return Json{{"pow", functor_to_json(f.base())}};
    case FunctorKind::Seq:
      return Json{{"seq", functor_to_json(f.base())}};
  }
  return nullptr;
}

FunctorExpr functor_from_json(const Json& j, const Registry<Carrier>& sets) {
  if (j.is_string()) {
    if (j == "id") return FunctorExpr::id();
    bad("unknown functor '" + j.get<std::string>() + "' (expected \"id\" or a tagged object)");
  }
  auto [tag, body] = tag_of(j, "functor");
  auto binary = [&](const char* name) {
    if (!body->is_array() || body->size() != 2) bad(std::string(name) + " needs two operands");
    return std::pair{functor_from_json((*body)[0], sets), functor_from_json((*body)[1], sets)};
  };
  if (tag == "const") return FunctorExpr::constant(set_named(sets, *body, "const"));
  if (tag == "prod") {
    auto [l, r] = binary("prod");
    return FunctorExpr::product(l, r);
  }
  if (tag == "coprod") {
    auto [l, r] = binary("coprod");
    return FunctorExpr::coproduct(l, r);
  }
  if (tag == "exp") {
    if (!body->is_array() || body->size() != 2) bad("exp needs [base, index-set]");
    return FunctorExpr::exponent(functor_from_json((*body)[0], sets), set_named(sets, (*body)[1], "exp index"));
  }
  if (tag == "pow") return FunctorExpr::powerset(functor_from_json(*body, sets));
  if (tag == "seq") return FunctorExpr::sequence(functor_from_json(*body, sets));
  bad("unknown functor tag '" + tag + "'");
}

Json value_to_json(const FValue& v) {
  auto items = [&] {
    Json a = Json::array();
    for (const auto& c : v.items()) a.push_back(value_to_json(c));
    return a;
  };
  switch (v.kind()) {
    case ValueKind::State:
    case ValueKind::Const:
      return v.id();
    case ValueKind::Pair:
      return Json{{"pair", items()}};
    case ValueKind::Inl:
      return Json{{"inl", value_to_json(v.inner())}};
    case ValueKind::Inr:
      return Json{{"inr", value_to_json(v.inner())}};
    case ValueKind::Func: {
      Json m = Json::object();
      for (std::size_t i = 0; i < v.keys().size(); ++i) m[v.keys()[i]] = value_to_json(v.items()[i]);
      return Json{{"fun", m}};
    }
    case ValueKind::Set:
      return Json{{"set", items()}};
    case ValueKind::List:
      return Json{{"list", items()}};
  }
  return nullptr;
}

FValue value_from_json(const Json& j, const FunctorExpr& f, const Carrier& states) {
  auto expect = [&](const char* tag) -> const Json& {
    if (!j.is_object() || j.size() != 1 || !j.contains(tag)) {
      bad(std::string("expected {\"") + tag + "\": ...} for " + f.to_string() + ", got " + j.dump());
    }
    return j.at(tag);
  };
  switch (f.kind()) {
    case FunctorKind::Id: {
      const auto& id = as_string(j, "state of " + states.name());
      states.require(id);
      return FValue::state(id);
    }
    case FunctorKind::Const: {
      const auto& id = as_string(j, "element of " + f.set().name());
      f.set().require(id);
      return FValue::constant(id);
    }
    case FunctorKind::Prod: {
      const Json& a = expect("pair");
      if (!a.is_array() || a.size() != 2) bad("pair needs two components, got " + a.dump());
      return FValue::pair(value_from_json(a[0], f.left(), states), value_from_json(a[1], f.right(), states));
    }
    case FunctorKind::Coprod:
      if (j.is_object() && j.size() == 1 && j.contains("inl")) {
        return FValue::inl(value_from_json(j.at("inl"), f.left(), states));
      }
      if (j.is_object() && j.size() == 1 && j.contains("inr")) {
        return FValue::inr(value_from_json(j.at("inr"), f.right(), states));
      }
      bad("expected {\"inl\": ...} or {\"inr\": ...} for " + f.to_string() + ", got " + j.dump());
    case FunctorKind::Exp: {
      const Json& m = expect("fun");
      if (!m.is_object()) bad("fun needs an object, got " + m.dump());
      std::vector<std::pair<std::string, FValue>> entries;
      for (const auto& [key, val] : m.items()) {
        f.set().require(key);
        entries.emplace_back(key, value_from_json(val, f.base(), states));
      }
      if (entries.size() != f.set().size()) {
        bad("function " + m.dump() + " is not total on '" + f.set().name() + "'");
      }
      return FValue::function(std::move(entries));
    }
    case FunctorKind::Pow: {
      const Json& a = as_array(expect("set"), "set");
      std::vector<FValue> members;
      for (const auto& e : a) members.push_back(value_from_json(e, f.base(), states));
      FValue out = FValue::set(members);
      if (out.items().size() != members.size()) bad("set " + a.dump() + " lists a member twice");
      return out;
    }
    case FunctorKind::Seq: {
      const Json& a = as_array(expect("list"), "list");
      std::vector<FValue> items;
      for (const auto& e : a) items.push_back(value_from_json(e, f.base(), states));
      return FValue::list(std::move(items));
    }
  }
  bad("unreachable functor kind");
}

// ---------------------------------------------------------------------------
// Formulas

Json formula_to_json(const Formula& phi) {
  auto kids = [&] { return Json::array({formula_to_json(phi.child(0)), formula_to_json(phi.child(1))}); };
  switch (phi.op()) {
    case Op::Pred:
      return Json{{"pred", phi.name()}};
    case Op::Atom:
      return Json{{"atom", phi.name()}};
    case Op::Image:
      return Json{{"img",
                   Json{{"pred", phi.name()},
                        {"rel", phi.relation()},
                        {"dir", phi.direction() == Direction::Direct ? "direct" : "inverse"}}}};
    case Op::Not:
      return Json{{"not", formula_to_json(phi.child(0))}};
    case Op::Next:
      return Json{{"next", formula_to_json(phi.child(0))}};
    case Op::Eventually:
      return Json{{"eventually", formula_to_json(phi.child(0))}};
    case Op::Always:
      return Json{{"always", formula_to_json(phi.child(0))}};
    case Op::And:
      return Json{{"and", kids()}};
    case Op::Or:
      return Json{{"or", kids()}};
    case Op::Implies:
      return Json{{"implies", kids()}};
    case Op::Until:
      return Json{{"until", kids()}};
  }
  return nullptr;
}

Formula formula_from_json(const Json& j, const std::set<std::string>& predicates, const std::set<std::string>& ap) {
  if (j.is_string()) return parse_formula(j.get<std::string>(), predicates, ap);
  auto [tag, body] = tag_of(j, "formula");
  auto sub = [&](const Json& k) { return formula_from_json(k, predicates, ap); };
  auto fold = [&](auto make) {
    if (!body->is_array() || body->size() < 2) bad(tag + " needs at least two operands");
    Formula acc = sub((*body)[0]);
    for (std::size_t i = 1; i < body->size(); ++i) acc = make(std::move(acc), sub((*body)[i]));
    return acc;
  };
  if (tag == "pred") {
    const auto& name = as_string(*body, "pred");
    if (!predicates.contains(name)) throw ConfigError("unknown predicate '" + name + "'");
    return Formula::pred(name);
  }
  if (tag == "atom") {
    const auto& name = as_string(*body, "atom");
    if (!ap.contains(name)) throw ConfigError("unknown atomic proposition '" + name + "'");
    return Formula::atom(name);
  }
  if (tag == "img") {
    if (!body->is_object()) bad("img needs {\"pred\", \"rel\", \"dir\"}");
    const auto& dir = as_string(body->at("dir"), "img dir");
    if (dir != "direct" && dir != "inverse") bad("img dir must be \"direct\" or \"inverse\"");
    return Formula::image(as_string(body->at("pred"), "img pred"), as_string(body->at("rel"), "img rel"),
                          dir == "direct" ? Direction::Direct : Direction::Inverse);
  }
  if (tag == "not") return Formula::negation(sub(*body));
  if (tag == "next") return Formula::next(sub(*body));
  if (tag == "eventually") return Formula::eventually(sub(*body));
  if (tag == "always") return Formula::always(sub(*body));
  if (tag == "and") return fold(Formula::conj);
  if (tag == "or") return fold(Formula::disj);
  if (tag == "implies" || tag == "until") {
    if (!body->is_array() || body->size() != 2) bad(tag + " needs exactly two operands");
    return tag == "implies" ? Formula::implies(sub((*body)[0]), sub((*body)[1]))
                            : Formula::until(sub((*body)[0]), sub((*body)[1]));
  }
  bad("unknown formula tag '" + tag + "'");
}

// ---------------------------------------------------------------------------
// Orders and natural transformations

Json order_to_json(const OrderSpec& ord) {
  Json out;
  switch (ord.kind()) {
    case OrderSpec::Kind::Equality:
      out = Json{{"builtin", "equality"}};
      break;
    case OrderSpec::Kind::PowSubset:
      out = Json{{"builtin", "pow-subset"}};
      break;
    case OrderSpec::Kind::PowSupset:
      out = Json{{"builtin", "pow-supset"}};
      break;
    case OrderSpec::Kind::Structural: {
      Json bases = Json::object();
      for (const auto& [name, base] : ord.bases()) {
        if (base.is_equality()) {
          bases[name] = "equality";
        } else {
          Json pairs = Json::array();
          for (const auto& [a, b] : base.pairs()) pairs.push_back(Json::array({a, b}));
          bases[name] = pairs;
        }
      }
      out = Json{{"structural", bases}};
      break;
    }
    case OrderSpec::Kind::Extensional: {
      Json scopes = Json::array();
      for (const auto& scope : ord.scopes()) {
        Json pairs = Json::array();
        for (const auto& [u, v] : scope.pairs) pairs.push_back(Json::array({value_to_json(u), value_to_json(v)}));
        scopes.push_back(Json{{"carrier", scope.carrier.name()}, {"pairs", pairs}});
      }
      out = Json{{"extensional", scopes}};
      break;
    }
  }
  if (ord.is_opposite()) out["opposite"] = true;
  return out;
}

OrderSpec order_from_json(const Json& j, const FunctorExpr& f, const Registry<Carrier>& sets) {
  if (!j.is_object()) bad("order must be an object, got " + j.dump());
  bool opposite = false;
  if (j.contains("opposite")) {
    if (!j.at("opposite").is_boolean()) bad("\"opposite\" must be a boolean");
    opposite = j.at("opposite").get<bool>();
  }
  const std::size_t kinds = j.size() - (j.contains("opposite") ? 1 : 0);
  if (kinds != 1) bad("order needs exactly one of builtin, structural, extensional");
  auto finish = [&](OrderSpec o) { return opposite ? o.opposite() : o; };

  if (j.contains("builtin")) {
    const auto& name = as_string(j.at("builtin"), "builtin order");
    if (name == "equality") return finish(OrderSpec::equality(f));
    if (name == "pow-subset" || name == "subset") return finish(OrderSpec::pow_subset(f));
    if (name == "pow-supset" || name == "supset") return finish(OrderSpec::pow_supset(f));
    bad("unknown builtin order '" + name + "'");
  }
  if (j.contains("structural")) {
    const Json& spec = j.at("structural");
    if (!spec.is_object()) bad("structural order needs an object of base preorders");
    std::map<std::string, BasePreorder> bases;
    for (const auto& [name, rel] : spec.items()) {
      const Carrier& set = sets.at(name);
      if (rel == "total") {
        bases.emplace(name, BasePreorder::total(set));
      } else if (rel == "equality") {
        bases.emplace(name, BasePreorder::equality(set));
      } else {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : as_array(rel, "base preorder on " + name)) pairs.push_back(id_pair(p, "preorder pair"));
        bases.emplace(name, within("base preorder on '" + name + "'",
                                   [&] { return BasePreorder::from_pairs(set, pairs); }));
      }
    }
    return finish(build_order_class(f, bases));
  }
  if (j.contains("extensional")) {
    Json scopes = j.at("extensional");
    if (scopes.is_object()) scopes = Json::array({scopes});
    std::vector<ExtensionalScope> out;
    for (const auto& s : as_array(scopes, "extensional order")) {
      const Carrier& carrier = set_named(sets, s.at("carrier"), "extensional carrier");
      ExtensionalScope scope{carrier, {}};
      for (const auto& p : as_array(s.at("pairs"), "extensional pairs")) {
        if (!p.is_array() || p.size() != 2) bad("extensional pair must be [u, v], got " + p.dump());
        scope.pairs.emplace_back(value_from_json(p[0], f, carrier), value_from_json(p[1], f, carrier));
      }
      out.push_back(std::move(scope));
    }
    return finish(OrderSpec::extensional(f, std::move(out)));
  }
  bad("order needs exactly one of builtin, structural, extensional");
}

Json nu_to_json(const NatTrans& nu) {
  switch (nu.kind()) {
    case NatTrans::Kind::KripkeProj:
      return Json{{"kripke-projection", nu.ap().name()}};
    case NatTrans::Kind::KripkeComplement:
      return Json{{"kripke-complement", nu.ap().name()}};
    case NatTrans::Kind::Table: {
      Json carriers = Json::object();
      for (const auto& t : nu.tables()) {
        Json rows = Json::array();
        for (const auto& [u, labels] : t.entries) rows.push_back(Json::array({value_to_json(u), labels.members()}));
        carriers[t.carrier.name()] = rows;
      }
      return Json{{"table", Json{{"ap", nu.ap().name()}, {"carriers", carriers}}}};
    }
  }
  return nullptr;
}

NatTrans nu_from_json(const Json& j, const FunctorExpr& f, const Registry<Carrier>& sets) {
  auto [tag, body] = tag_of(j, "natural transformation");
  if (tag == "kripke-projection") return NatTrans::kripke_projection(f, set_named(sets, *body, tag));
  if (tag == "kripke-complement") return NatTrans::kripke_complement(f, set_named(sets, *body, tag));
  if (tag == "table") {
    const Carrier& ap = set_named(sets, body->at("ap"), "table ap");
    std::vector<NuTable> tables;
    for (const auto& [name, rows] : body->at("carriers").items()) {
      NuTable t{sets.at(name), {}};
      for (const auto& row : as_array(rows, "table rows")) {
        if (!row.is_array() || row.size() != 2) bad("table row must be [value, [labels]], got " + row.dump());
        std::vector<std::string> labels;
        for (const auto& l : as_array(row[1], "labels")) labels.push_back(as_string(l, "label"));
        t.entries.emplace_back(value_from_json(row[0], f, t.carrier), Predicate(ap, labels));
      }
      tables.push_back(std::move(t));
    }
    return NatTrans::table(f, ap, std::move(tables));
  }
  bad("unknown natural transformation '" + tag + "'");
}

// ---------------------------------------------------------------------------
// Documents

EvalEnv SystemDescription::env() const {
  EvalEnv out;
  for (const auto& [name, p] : predicates.entries()) out.predicates.emplace(name, p);
  for (const auto& [name, r] : relations.entries()) out.relations.emplace(name, r);
  return out;
}

namespace {

std::set<std::string> predicate_names(const SystemDescription& sys) {
  auto names = sys.predicates.names();
  return {names.begin(), names.end()};
}

std::set<std::string> ap_names(const SystemDescription& sys) {
  std::set<std::string> out;
  for (const auto& [name, nu] : sys.nus.entries())
    for (const auto& p : nu.ap().elements()) out.insert(p);
  return out;
}

}  // namespace

Formula SystemDescription::formula(std::string_view text) const {
  if (const Formula* f = formulas.find(text)) return *f;
  return parse_formula(text, predicate_names(*this), ap_names(*this));
}

SystemDescription parse_system(std::string_view text, std::string_view origin) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = e.byte == 0 ? 0 : e.byte - 1;
    for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(std::string(origin) + ": " + msg, line, column);
  }
  if (!doc.is_object()) throw ValidationError(std::string(origin) + ": top level must be an object");

  static const std::set<std::string> known = {"meta",      "sets",       "functor", "max_seq_length",
                                              "guard",     "coalgebras", "relations", "predicates",
                                              "orders",    "nus",        "formulas"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ValidationError(std::string(origin) + ": unknown key '" + key + "'");
  }

  SystemDescription sys;
  auto section = [&](const char* key) -> const Json& {
    static const Json empty = Json::object();
    if (!doc.contains(key)) return empty;
    const Json& s = doc.at(key);
    if (!s.is_object()) throw ValidationError(std::string(key) + " must be an object");
    return s;
  };
  if (doc.contains("meta")) sys.meta = doc.at("meta");

  for (const auto& [name, elems] : section("sets").items()) {
    within("set '" + name + "'", [&] {
      std::vector<std::string> ids;
      for (const auto& e : as_array(elems, "elements")) ids.push_back(as_string(e, "element"));
      sys.sets.add(name, Carrier(name, std::move(ids)));
    });
  }
  if (doc.contains("functor")) {
    sys.functor = within("functor", [&] { return functor_from_json(doc.at("functor"), sys.sets); });
  } else if (doc.contains("coalgebras") || doc.contains("orders") || doc.contains("nus")) {
    throw ValidationError(std::string(origin) + ": missing \"functor\"");
  }
  within("limits", [&] {
    if (doc.contains("max_seq_length")) sys.limits.max_seq_length = doc.at("max_seq_length").get<std::size_t>();
    if (doc.contains("guard")) sys.limits.guard = doc.at("guard").get<std::uint64_t>();
  });

  for (const auto& [name, spec] : section("coalgebras").items()) {
    within("coalgebra '" + name + "'", [&] {
      const Carrier& states = set_named(sys.sets, spec.at("states"), "states");
      const Json& map = spec.at("map");
      if (!map.is_object()) bad("map must be an object from state to value");
      std::vector<FValue> images(states.size());
      std::vector<bool> seen(states.size(), false);
      for (const auto& [state, value] : map.items()) {
        const std::size_t i = states.require(state);
        images[i] = within("state '" + state + "'", [&] { return value_from_json(value, sys.functor, states); });
        seen[i] = true;
      }
      for (std::size_t i = 0; i < states.size(); ++i)
        if (!seen[i]) bad("map has no entry for state '" + states[i] + "'");
      sys.coalgebras.add(name, Coalgebra(states, sys.functor, std::move(images)));
    });
  }
  for (const auto& [name, spec] : section("relations").items()) {
    within("relation '" + name + "'", [&] {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& p : as_array(spec.at("pairs"), "pairs")) pairs.push_back(id_pair(p, "pair"));
      sys.relations.add(name, Relation(set_named(sys.sets, spec.at("domain"), "domain"),
                                       set_named(sys.sets, spec.at("codomain"), "codomain"), pairs));
    });
  }
  for (const auto& [name, spec] : section("predicates").items()) {
    within("predicate '" + name + "'", [&] {
      std::vector<std::string> members;
      for (const auto& m : as_array(spec.at("members"), "members")) members.push_back(as_string(m, "member"));
      sys.predicates.add(name, Predicate(set_named(sys.sets, spec.at("carrier"), "carrier"), members));
    });
  }
  for (const auto& [name, spec] : section("orders").items()) {
    within("order '" + name + "'", [&] { sys.orders.add(name, order_from_json(spec, sys.functor, sys.sets)); });
  }
  for (const auto& [name, spec] : section("nus").items()) {
    within("natural transformation '" + name + "'",
           [&] { sys.nus.add(name, nu_from_json(spec, sys.functor, sys.sets)); });
  }
  const auto preds = predicate_names(sys);
  const auto aps = ap_names(sys);
  for (const auto& [name, spec] : section("formulas").items()) {
    within("formula '" + name + "'", [&] { sys.formulas.add(name, formula_from_json(spec, preds, aps)); });
  }
  return sys;
}

SystemDescription load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str(), path);
}

Json to_json(const SystemDescription& sys) {
  Json doc = Json::object();
  if (!sys.meta.empty()) doc["meta"] = sys.meta;
  Json sets = Json::object();
  for (const auto& [name, set] : sys.sets.entries()) {
    sets[name] = Json(std::vector<std::string>(set.elements().begin(), set.elements().end()));
  }
  doc["sets"] = sets;
  doc["functor"] = functor_to_json(sys.functor);
  if (sys.limits.max_seq_length != Limits{}.max_seq_length) doc["max_seq_length"] = sys.limits.max_seq_length;
  if (sys.limits.guard != Limits{}.guard) doc["guard"] = sys.limits.guard;

  auto put = [&](const char* key, const auto& reg, auto encode) {
    if (reg.empty()) return;
    Json section = Json::object();
    for (const auto& [name, value] : reg.entries()) section[name] = encode(value);
    doc[key] = section;
  };
  put("coalgebras", sys.coalgebras, [](const Coalgebra& c) {
    Json map = Json::object();
    for (std::size_t i = 0; i < c.states().size(); ++i) map[c.states()[i]] = value_to_json(c(i));
    return Json{{"states", c.states().name()}, {"map", map}};
  });
  put("relations", sys.relations, [](const Relation& r) {
    Json pairs = Json::array();
    for (const auto& [x, y] : r.id_pairs()) pairs.push_back(Json::array({x, y}));
    return Json{{"domain", r.domain().name()}, {"codomain", r.codomain().name()}, {"pairs", pairs}};
  });
  put("predicates", sys.predicates,
      [](const Predicate& p) { return Json{{"carrier", p.carrier().name()}, {"members", p.members()}}; });
  put("orders", sys.orders, [](const OrderSpec& o) { return order_to_json(o); });
  put("nus", sys.nus, [](const NatTrans& n) { return nu_to_json(n); });
  put("formulas", sys.formulas, [](const Formula& f) { return formula_to_json(f); });
  return doc;
}

std::string dump_system(const SystemDescription& sys) { return to_json(sys).dump(2) + "\n"; }

}  // namespace colift
