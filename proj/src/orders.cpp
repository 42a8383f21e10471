#include "colift/orders.hpp"

#include <algorithm>
#include <random>

#include "colift/error.hpp"

namespace colift {

// ---------------------------------------------------------------------------
// BasePreorder

BasePreorder BasePreorder::equality(Carrier set) {
  const std::size_t n = set.size();
  std::vector<bool> rel(n * n, false);
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = true;
  return BasePreorder(std::move(set), std::move(rel));
}

BasePreorder BasePreorder::total(Carrier set) {
  const std::size_t n = set.size();
  return BasePreorder(std::move(set), std::vector<bool>(n * n, true));
}

BasePreorder BasePreorder::from_pairs(Carrier set, const std::vector<std::pair<std::string, std::string>>& pairs) {
  const std::size_t n = set.size();
  std::vector<bool> rel(n * n, false);
  for (const auto& [a, b] : pairs) rel[set.require(a) * n + set.require(b)] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i * n + i]) {
      throw ValidationError("preorder on '" + set.name() + "' is not reflexive at '" + set[i] + "'");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i * n + j] && rel[j * n + k] && !rel[i * n + k]) {
          throw ValidationError("preorder on '" + set.name() + "' is not transitive: " + set[i] + " <= " + set[j] +
                                " <= " + set[k]);
        }
  return BasePreorder(std::move(set), std::move(rel));
}

bool BasePreorder::leq(std::string_view a, std::string_view b) const {
  return leq(set_.require(a), set_.require(b));
}

std::vector<std::pair<std::string, std::string>> BasePreorder::pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < set_.size(); ++i)
    for (std::size_t j = 0; j < set_.size(); ++j)
      if (leq(i, j)) out.emplace_back(set_[i], set_[j]);
  return out;
}

bool BasePreorder::is_equality() const {
  for (std::size_t i = 0; i < set_.size(); ++i)
    for (std::size_t j = 0; j < set_.size(); ++j)
      if (leq(i, j) != (i == j)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// OrderSpec

OrderSpec OrderSpec::equality(FunctorExpr f) { return OrderSpec(Kind::Equality, std::move(f)); }

OrderSpec OrderSpec::pow_subset(FunctorExpr f) {
  if (f.kind() != FunctorKind::Pow) {
    throw ValidationError("subset order needs a powerset functor, got " + f.to_string());
  }
  return OrderSpec(Kind::PowSubset, std::move(f));
}

OrderSpec OrderSpec::pow_supset(FunctorExpr f) {
  if (f.kind() != FunctorKind::Pow) {
    throw ValidationError("superset order needs a powerset functor, got " + f.to_string());
  }
  return OrderSpec(Kind::PowSupset, std::move(f));
}

OrderSpec OrderSpec::extensional(FunctorExpr f, std::vector<ExtensionalScope> scopes) {
  OrderSpec ord(Kind::Extensional, std::move(f));
  for (std::size_t i = 0; i < scopes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (scopes[j].carrier == scopes[i].carrier) {
        throw ValidationError("extensional order declares carrier '" + scopes[i].carrier.name() + "' twice");
      }
    }
    std::set<std::pair<FValue, FValue>> lookup;
    for (const auto& [u, v] : scopes[i].pairs) {
      require_value(ord.functor_, scopes[i].carrier, u);
      require_value(ord.functor_, scopes[i].carrier, v);
      lookup.emplace(u, v);
    }
    ord.lookup_.push_back(std::move(lookup));
  }
  ord.scopes_ = std::move(scopes);
  return ord;
}

OrderSpec OrderSpec::opposite() const {
  OrderSpec o = *this;
  o.opposite_ = !opposite_;
  return o;
}

std::string OrderSpec::describe() const {
  std::string out;
  switch (kind_) {
    case Kind::Equality:
      out = "equality";
      break;
    case Kind::PowSubset:
      out = "pow-subset";
      break;
    case Kind::PowSupset:
      out = "pow-supset";
      break;
    case Kind::Structural: {
      out = "structural";
      std::string bases;
      for (const auto& [name, base] : bases_) {
        if (!bases.empty()) bases += ", ";
        bases += name + ": " + std::to_string(base.pairs().size()) + " pairs";
      }
      if (!bases.empty()) out += "(" + bases + ")";
      break;
    }
    case Kind::Extensional: {
      std::size_t n = 0;
      for (const auto& s : scopes_) n += s.pairs.size();
      out = "extensional(" + std::to_string(scopes_.size()) + " carriers, " + std::to_string(n) + " pairs)";
      break;
    }
  }
  return opposite_ ? out + " (opposite)" : out;
}

namespace {

bool subset_of(const FValue& u, const FValue& v) {
  return std::all_of(u.items().begin(), u.items().end(), [&](const FValue& a) { return v.has_member(a); });
}

bool structural_leq(const FunctorExpr& f, const std::map<std::string, BasePreorder>& bases, const FValue& u,
                    const FValue& v) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return u == v;
    case FunctorKind::Const: {
      auto it = bases.find(f.set().name());
      if (it == bases.end()) return u.id() == v.id();
      return it->second.leq(u.id(), v.id());
    }
    case FunctorKind::Prod:
      return structural_leq(f.left(), bases, u.first(), v.first()) &&
             structural_leq(f.right(), bases, u.second(), v.second());
    case FunctorKind::Coprod:
      if (u.kind() != v.kind()) return false;
      return structural_leq(u.kind() == ValueKind::Inl ? f.left() : f.right(), bases, u.inner(), v.inner());
    case FunctorKind::Exp:
      for (std::size_t i = 0; i < u.items().size(); ++i) {
        if (!structural_leq(f.base(), bases, u.items()[i], v.items()[i])) return false;
      }
      return true;
    case FunctorKind::Pow: {
      for (const auto& a : u.items()) {
        bool ok = std::any_of(v.items().begin(), v.items().end(),
                              [&](const FValue& b) { return structural_leq(f.base(), bases, a, b); });
        if (!ok) return false;
      }
      for (const auto& b : v.items()) {
        bool ok = std::any_of(u.items().begin(), u.items().end(),
                              [&](const FValue& a) { return structural_leq(f.base(), bases, a, b); });
        if (!ok) return false;
      }
      return true;
    }
    case FunctorKind::Seq:
      throw UnsupportedConstructor("the Order class has no clause for finite sequences");
  }
  return false;
}

void check_order_class_shape(const FunctorExpr& f, const std::map<std::string, BasePreorder>& bases) {
  switch (f.kind()) {
    case FunctorKind::Seq:
      throw UnsupportedConstructor("the Order class has no clause for finite sequences (" + f.to_string() + ")");
    case FunctorKind::Id:
      return;
    case FunctorKind::Const: {
      auto it = bases.find(f.set().name());
      if (it != bases.end() && !(it->second.set() == f.set())) {
        throw ValidationError("base preorder for '" + f.set().name() + "' is over a different set");
      }
      return;
    }
    case FunctorKind::Prod:
    case FunctorKind::Coprod:
      check_order_class_shape(f.left(), bases);
      check_order_class_shape(f.right(), bases);
      return;
    default:
      check_order_class_shape(f.base(), bases);
  }
}

}  // namespace

OrderSpec build_order_class(const FunctorExpr& f, const std::map<std::string, BasePreorder>& bases) {
  check_order_class_shape(f, bases);
  OrderSpec ord(OrderSpec::Kind::Structural, f);
  ord.bases_ = bases;
  return ord;
}

bool leq(const OrderSpec& ord, const Carrier& carrier, const FValue& u, const FValue& v) {
  const FValue& a = ord.opposite_ ? v : u;
  const FValue& b = ord.opposite_ ? u : v;
  switch (ord.kind_) {
    case OrderSpec::Kind::Equality:
      return a == b;
    case OrderSpec::Kind::PowSubset:
      return subset_of(a, b);
    case OrderSpec::Kind::PowSupset:
      return subset_of(b, a);
    case OrderSpec::Kind::Structural:
      return structural_leq(ord.functor_, ord.bases_, a, b);
    case OrderSpec::Kind::Extensional:
      for (std::size_t i = 0; i < ord.scopes_.size(); ++i) {
        if (ord.scopes_[i].carrier == carrier) return ord.lookup_[i].count({a, b}) > 0;
      }
      throw ConfigError("extensional order is not declared on carrier '" + carrier.name() + "'");
  }
  return false;
}

// ---------------------------------------------------------------------------
// Order checks

namespace {

// Pairwise checks look at every ordered pair of values; bound that count too.
std::vector<FValue> enumerate_for_pairs(const FunctorExpr& f, const Carrier& carrier, const Limits& limits,
                                        const std::string& what) {
  auto values = enumerate_values(f, carrier, limits);
  const std::uint64_t n = values.size();
  if (n != 0 && n > limits.guard / n) {
    throw EnumerationTooLarge(n * n, limits.guard, what + ": pairs of values over '" + carrier.name() + "'");
  }
  return values;
}

std::vector<std::vector<bool>> order_matrix(const OrderSpec& ord, const Carrier& carrier,
                                            const std::vector<FValue>& values) {
  std::vector<std::vector<bool>> m(values.size(), std::vector<bool>(values.size(), false));
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < values.size(); ++j) m[i][j] = leq(ord, carrier, values[i], values[j]);
  return m;
}

Verdict<ClosureViolation> closure_check(const OrderSpec& ord, const Carrier& carrier, const Limits& limits,
                                        bool downward) {
  const FunctorExpr& f = ord.functor();
  auto values = enumerate_for_pairs(f, carrier, limits, downward ? "down-closed check" : "up-closed check");
  if (carrier.size() >= 63 || (std::uint64_t{1} << carrier.size()) > limits.guard) {
    throw EnumerationTooLarge(carrier.size() >= 63 ? UINT64_MAX : std::uint64_t{1} << carrier.size(), limits.guard,
                              "predicates over '" + carrier.name() + "'");
  }
  const std::uint64_t predicates = std::uint64_t{1} << carrier.size();
  // membership[i][mask]: values[i] in Pred(f)(P_mask)
  std::vector<std::vector<bool>> membership(values.size(), std::vector<bool>(predicates, false));
  for (std::uint64_t mask = 0; mask < predicates; ++mask) {
    const Predicate p = Predicate::from_mask(carrier, mask);
    for (std::size_t i = 0; i < values.size(); ++i) membership[i][mask] = pred_lift(f, p, values[i]);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!leq(ord, carrier, values[i], values[j])) continue;
      // i <= j; down: j member => i member; up: i member => j member
      const std::size_t from = downward ? j : i;
      const std::size_t to = downward ? i : j;
      for (std::uint64_t mask = 0; mask < predicates; ++mask) {
        if (membership[from][mask] && !membership[to][mask]) {
          return {ClosureViolation{values[i], values[j], Predicate::from_mask(carrier, mask)}};
        }
      }
    }
  }
  return {};
}

}  // namespace

Verdict<PreorderViolation> is_preorder(const OrderSpec& ord, const Carrier& carrier, const Limits& limits) {
  auto values = enumerate_for_pairs(ord.functor(), carrier, limits, "preorder check");
  auto m = order_matrix(ord, carrier, values);
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i][i]) return {PreorderViolation{true, values[i], values[i], values[i]}};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (m[j][k] && !m[i][k]) return {PreorderViolation{false, values[i], values[j], values[k]}};
      }
    }
  return {};
}

Verdict<ClosureViolation> is_down_closed(const OrderSpec& ord, const Carrier& carrier, const Limits& limits) {
  return closure_check(ord, carrier, limits, true);
}

Verdict<ClosureViolation> is_up_closed(const OrderSpec& ord, const Carrier& carrier, const Limits& limits) {
  return closure_check(ord, carrier, limits, false);
}

// ---------------------------------------------------------------------------
// Natural transformations

namespace {

void require_kripke_shape(const FunctorExpr& source, const Carrier& ap) {
  const bool ok = source.kind() == FunctorKind::Prod && source.left().kind() == FunctorKind::Pow &&
                  source.left().base().kind() == FunctorKind::Const && source.left().base().set() == ap;
  if (!ok) {
    throw ValidationError("Kripke projection needs a functor of the form P(" + ap.name() + ") x G, got " +
                          source.to_string());
  }
}

}  // namespace

NatTrans NatTrans::kripke_projection(FunctorExpr source, Carrier ap) {
  require_kripke_shape(source, ap);
  return NatTrans(Kind::KripkeProj, std::move(source), std::move(ap));
}

NatTrans NatTrans::kripke_complement(FunctorExpr source, Carrier ap) {
  require_kripke_shape(source, ap);
  return NatTrans(Kind::KripkeComplement, std::move(source), std::move(ap));
}

NatTrans NatTrans::table(FunctorExpr source, Carrier ap, std::vector<NuTable> tables) {
  NatTrans nu(Kind::Table, std::move(source), std::move(ap));
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (tables[j].carrier == tables[i].carrier) {
        throw ValidationError("natural transformation declares carrier '" + tables[i].carrier.name() + "' twice");
      }
    }
    std::set<FValue> seen;
    for (const auto& [u, labels] : tables[i].entries) {
      require_value(nu.source_, tables[i].carrier, u);
      if (!(labels.carrier() == nu.ap_)) {
        throw ValidationError("table entry for " + u.to_string() + " is not a subset of '" + nu.ap_.name() + "'");
      }
      if (!seen.insert(u).second) {
        throw ValidationError("table for '" + tables[i].carrier.name() + "' lists " + u.to_string() + " twice");
      }
    }
  }
  nu.tables_ = std::move(tables);
  return nu;
}

std::string NatTrans::describe() const {
  switch (kind_) {
    case Kind::KripkeProj:
      return "kripke-projection(" + ap_.name() + ")";
    case Kind::KripkeComplement:
      return "kripke-complement(" + ap_.name() + ")";
    case Kind::Table:
      return "table(" + ap_.name() + ", " + std::to_string(tables_.size()) + " carriers)";
  }
  return "?";
}

Predicate apply_nu(const NatTrans& nu, const Carrier& carrier, const FValue& u) {
  switch (nu.kind_) {
    case NatTrans::Kind::KripkeProj:
    case NatTrans::Kind::KripkeComplement: {
      if (u.kind() != ValueKind::Pair || u.first().kind() != ValueKind::Set) {
        throw ValidationError("value " + u.to_string() + " does not have the shape of " + nu.source_.to_string());
      }
      Predicate labels(nu.ap_);
      for (const auto& a : u.first().items()) labels.insert(nu.ap_.require(a.id()));
      return nu.kind_ == NatTrans::Kind::KripkeProj ? labels : labels.complement();
    }
    case NatTrans::Kind::Table:
      for (const auto& table : nu.tables_) {
        if (!(table.carrier == carrier)) continue;
        for (const auto& [v, labels] : table.entries) {
          if (v == u) return labels;
        }
        throw ConfigError("natural transformation table for '" + carrier.name() + "' has no entry for " +
                          u.to_string());
      }
      throw ConfigError("natural transformation has no table for carrier '" + carrier.name() + "'");
  }
  return Predicate(nu.ap_);
}

Verdict<NaturalityViolation> check_naturality(const NatTrans& nu, std::span<const Carrier> carriers,
                                              const Limits& limits) {
  constexpr std::size_t kSamples = 64;
  std::mt19937_64 rng(0x6e61747572616cULL);
  const FunctorExpr& f = nu.source();
  for (const Carrier& from : carriers) {
    const auto values = enumerate_values(f, from, limits);
    std::vector<Predicate> before;
    before.reserve(values.size());
    for (const auto& u : values) before.push_back(apply_nu(nu, from, u));
    for (const Carrier& to : carriers) {
      if (to.empty() && !from.empty()) continue;
      const std::size_t n = from.size();
      std::uint64_t functions = 1;
      for (std::size_t i = 0; i < n && functions <= limits.guard; ++i) functions *= to.size();
      const bool exhaustive = n <= 3 && functions <= limits.guard;
      const std::uint64_t rounds = exhaustive ? functions : kSamples;
      std::vector<std::size_t> digits(n, 0);
      for (std::uint64_t round = 0; round < rounds; ++round) {
        if (exhaustive) {
          std::uint64_t code = round;
          for (std::size_t i = n; i-- > 0;) {
            digits[i] = code % to.size();
            code /= to.size();
          }
        } else {
          for (auto& d : digits) d = rng() % to.size();
        }
        std::vector<std::string> mapping;
        mapping.reserve(n);
        for (std::size_t i = 0; i < n; ++i) mapping.push_back(to[digits[i]]);
        auto g = [&](const std::string& id) { return mapping[from.require(id)]; };
        for (std::size_t k = 0; k < values.size(); ++k) {
          Predicate after = apply_nu(nu, to, fmap(f, values[k], g));
          if (after.bits() != before[k].bits()) {
            return {NaturalityViolation{from, to, mapping, values[k], before[k], after}};
          }
        }
      }
    }
  }
  return {};
}

namespace {

Verdict<NaturalOrderViolation> natural_order_check(const OrderSpec& ord, const NatTrans& nu, const Carrier& carrier,
                                                   const Limits& limits, bool downward) {
  auto values = enumerate_for_pairs(ord.functor(), carrier, limits, downward ? "down-natural check" : "up-natural check");
  std::vector<Predicate> labels;
  labels.reserve(values.size());
  for (const auto& u : values) labels.push_back(apply_nu(nu, carrier, u));
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!leq(ord, carrier, values[i], values[j])) continue;
      const bool ok = downward ? labels[j].subset_of(labels[i]) : labels[i].subset_of(labels[j]);
      if (!ok) return {NaturalOrderViolation{values[i], values[j], labels[i], labels[j]}};
    }
  return {};
}

}  // namespace

Verdict<NaturalOrderViolation> is_down_natural(const OrderSpec& ord, const NatTrans& nu, const Carrier& carrier,
                                               const Limits& limits) {
  return natural_order_check(ord, nu, carrier, limits, true);
}

Verdict<NaturalOrderViolation> is_up_natural(const OrderSpec& ord, const NatTrans& nu, const Carrier& carrier,
                                             const Limits& limits) {
  return natural_order_check(ord, nu, carrier, limits, false);
}

}  // namespace colift
