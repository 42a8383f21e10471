#include "colift/lifting.hpp"

#include <algorithm>
#include <set>

#include "colift/error.hpp"
#include "colift/orders.hpp"

namespace colift {

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(Carrier domain, Carrier codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), bits_(domain_.size() * codomain_.size(), false) {}

Relation::Relation(Carrier domain, Carrier codomain, const std::vector<std::pair<std::string, std::string>>& pairs)
    : Relation(std::move(domain), std::move(codomain)) {
  for (const auto& [x, y] : pairs) insert(domain_.require(x), codomain_.require(y));
}

Relation Relation::full(Carrier domain, Carrier codomain) {
  Relation r(std::move(domain), std::move(codomain));
  r.bits_.assign(r.bits_.size(), true);
  return r;
}

Relation Relation::diagonal(const Carrier& carrier) {
  Relation r(carrier, carrier);
  for (std::size_t i = 0; i < carrier.size(); ++i) r.insert(i, i);
  return r;
}

bool Relation::contains(std::string_view x, std::string_view y) const {
  auto i = domain_.index_of(x);
  auto j = codomain_.index_of(y);
  return i && j && contains(*i, *j);
}

std::size_t Relation::size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < domain_.size(); ++i)
    for (std::size_t j = 0; j < codomain_.size(); ++j)
      if (contains(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<std::string, std::string>> Relation::id_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [i, j] : pairs()) out.emplace_back(domain_[i], codomain_[j]);
  return out;
}

Relation Relation::inverse() const {
  Relation r(codomain_, domain_);
  for (auto [i, j] : pairs()) r.insert(j, i);
  return r;
}

void Relation::require_same_carriers(const Relation& other) const {
  if (!(domain_ == other.domain_) || !(codomain_ == other.codomain_)) {
    throw ValidationError("relations over different carriers");
  }
}

bool Relation::subset_of(const Relation& other) const {
  require_same_carriers(other);
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] && !other.bits_[k]) return false;
  return true;
}

Relation Relation::unite(const Relation& other) const {
  require_same_carriers(other);
  Relation r = *this;
  for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] = bits_[k] || other.bits_[k];
  return r;
}

Relation Relation::intersect(const Relation& other) const {
  require_same_carriers(other);
  Relation r = *this;
  for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] = bits_[k] && other.bits_[k];
  return r;
}

std::string Relation::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, y] : id_pairs()) {
    if (!first) out += ", ";
    first = false;
    out += "(" + x + "," + y + ")";
  }
  return out + "}";
}

bool operator==(const Relation& a, const Relation& b) {
  return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.bits_ == b.bits_;
}

// ---------------------------------------------------------------------------
// Predicate

Predicate::Predicate(Carrier carrier) : carrier_(std::move(carrier)), bits_(carrier_.size(), false) {}

Predicate::Predicate(Carrier carrier, const std::vector<std::string>& members) : Predicate(std::move(carrier)) {
  for (const auto& m : members) insert(carrier_.require(m));
}

Predicate Predicate::full(Carrier carrier) {
  Predicate p(std::move(carrier));
  p.bits_.assign(p.bits_.size(), true);
  return p;
}

Predicate Predicate::from_mask(Carrier carrier, std::uint64_t mask) {
  Predicate p(std::move(carrier));
  for (std::size_t i = 0; i < p.bits_.size() && i < 64; ++i) p.bits_[i] = (mask >> i & 1U) != 0;
  return p;
}

bool Predicate::contains(std::string_view id) const {
  auto i = carrier_.index_of(id);
  return i && bits_[*i];
}

std::size_t Predicate::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::string> Predicate::members() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(carrier_[i]);
  return out;
}

Predicate Predicate::complement() const {
  Predicate p = *this;
  p.bits_.flip();
  return p;
}

void Predicate::require_same_carrier(const Predicate& other) const {
  if (!(carrier_ == other.carrier_)) {
    throw ValidationError("predicates over different carriers '" + carrier_.name() + "' and '" +
                          other.carrier_.name() + "'");
  }
}

Predicate Predicate::unite(const Predicate& other) const {
  require_same_carrier(other);
  Predicate p = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) p.bits_[i] = bits_[i] || other.bits_[i];
  return p;
}

Predicate Predicate::intersect(const Predicate& other) const {
  require_same_carrier(other);
  Predicate p = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) p.bits_[i] = bits_[i] && other.bits_[i];
  return p;
}

bool Predicate::subset_of(const Predicate& other) const {
  require_same_carrier(other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

std::string Predicate::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& m : members()) {
    if (!first) out += ", ";
    first = false;
    out += m;
  }
  return out + "}";
}

bool operator==(const Predicate& a, const Predicate& b) {
  return a.carrier_ == b.carrier_ && a.bits_ == b.bits_;
}

Relation diagonal(const Predicate& p) {
  Relation r(p.carrier(), p.carrier());
  for (std::size_t i = 0; i < p.carrier().size(); ++i)
    if (p.contains(i)) r.insert(i, i);
  return r;
}

// ---------------------------------------------------------------------------
// Liftings

namespace {

[[noreturn]] void shape_mismatch(const FunctorExpr& f, const FValue& v) {
  throw ValidationError("value " + v.to_string() + " does not have the shape of " + f.to_string());
}

void expect(const FunctorExpr& f, const FValue& v, ValueKind k) {
  if (v.kind() != k) shape_mismatch(f, v);
}

}  // namespace

bool rel_lift(const FunctorExpr& f, const Relation& r, const FValue& u, const FValue& v) {
  switch (f.kind()) {
    case FunctorKind::Id: {
      expect(f, u, ValueKind::State);
      expect(f, v, ValueKind::State);
      return r.contains(r.domain().require(u.id()), r.codomain().require(v.id()));
    }
    case FunctorKind::Const:
      expect(f, u, ValueKind::Const);
      expect(f, v, ValueKind::Const);
      return u.id() == v.id();
    case FunctorKind::Prod:
      expect(f, u, ValueKind::Pair);
      expect(f, v, ValueKind::Pair);
      return rel_lift(f.left(), r, u.first(), v.first()) && rel_lift(f.right(), r, u.second(), v.second());
    case FunctorKind::Coprod:
      if (u.kind() != ValueKind::Inl && u.kind() != ValueKind::Inr) shape_mismatch(f, u);
      if (v.kind() != ValueKind::Inl && v.kind() != ValueKind::Inr) shape_mismatch(f, v);
      if (u.kind() != v.kind()) return false;
      return rel_lift(u.kind() == ValueKind::Inl ? f.left() : f.right(), r, u.inner(), v.inner());
    case FunctorKind::Exp: {
      expect(f, u, ValueKind::Func);
      expect(f, v, ValueKind::Func);
      if (u.keys().size() != v.keys().size()) shape_mismatch(f, v);
      for (std::size_t i = 0; i < u.keys().size(); ++i) {
        if (u.keys()[i] != v.keys()[i]) shape_mismatch(f, v);
        if (!rel_lift(f.base(), r, u.items()[i], v.items()[i])) return false;
      }
      return true;
    }
    case FunctorKind::Pow: {
      expect(f, u, ValueKind::Set);
      expect(f, v, ValueKind::Set);
      for (const auto& a : u.items()) {
        bool matched = std::any_of(v.items().begin(), v.items().end(),
                                   [&](const FValue& b) { return rel_lift(f.base(), r, a, b); });
        if (!matched) return false;
      }
      for (const auto& b : v.items()) {
        bool matched = std::any_of(u.items().begin(), u.items().end(),
                                   [&](const FValue& a) { return rel_lift(f.base(), r, a, b); });
        if (!matched) return false;
      }
      return true;
    }
    case FunctorKind::Seq: {
      expect(f, u, ValueKind::List);
      expect(f, v, ValueKind::List);
      if (u.items().size() != v.items().size()) return false;
      for (std::size_t i = 0; i < u.items().size(); ++i) {
        if (!rel_lift(f.base(), r, u.items()[i], v.items()[i])) return false;
      }
      return true;
    }
  }
  return false;
}

bool pred_lift(const FunctorExpr& f, const Predicate& p, const FValue& u) {
  switch (f.kind()) {
    case FunctorKind::Id:
      expect(f, u, ValueKind::State);
      return p.contains(p.carrier().require(u.id()));
    case FunctorKind::Const:
      expect(f, u, ValueKind::Const);
      return true;
    case FunctorKind::Prod:
      expect(f, u, ValueKind::Pair);
      return pred_lift(f.left(), p, u.first()) && pred_lift(f.right(), p, u.second());
    case FunctorKind::Coprod:
      if (u.kind() == ValueKind::Inl) return pred_lift(f.left(), p, u.inner());
      if (u.kind() == ValueKind::Inr) return pred_lift(f.right(), p, u.inner());
      shape_mismatch(f, u);
    case FunctorKind::Exp:
      expect(f, u, ValueKind::Func);
      return std::all_of(u.items().begin(), u.items().end(),
                         [&](const FValue& m) { return pred_lift(f.base(), p, m); });
    case FunctorKind::Pow:
      expect(f, u, ValueKind::Set);
      return std::all_of(u.items().begin(), u.items().end(),
                         [&](const FValue& m) { return pred_lift(f.base(), p, m); });
    case FunctorKind::Seq:
      expect(f, u, ValueKind::List);
      return std::all_of(u.items().begin(), u.items().end(),
                         [&](const FValue& m) { return pred_lift(f.base(), p, m); });
  }
  return false;
}

bool pred_lift_via_rel(const FunctorExpr& f, const Predicate& p, const FValue& u, const Limits& limits) {
  require_value(f, p.carrier(), u);
  const Relation diag = diagonal(p);
  for (const auto& v : enumerate_values(f, p.carrier(), limits)) {
    if (rel_lift(f, diag, u, v)) return true;
  }
  return false;
}

PairCarrier pair_carrier(const Relation& r) {
  PairCarrier out;
  std::vector<std::string> ids;
  std::set<std::string> seen;
  bool clash = false;
  for (const auto& [x, y] : r.id_pairs()) {
    std::string id = "(" + x + "," + y + ")";
    clash = clash || !seen.insert(id).second;
    ids.push_back(std::move(id));
    out.first.push_back(x);
    out.second.push_back(y);
  }
  if (clash) {
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = "#" + std::to_string(i);
  }
  out.carrier = Carrier(r.domain().name() + "x" + r.codomain().name(), std::move(ids));
  return out;
}

bool rel_lift_ordered(const FunctorExpr& f, const OrderSpec& ord, const Relation& r, const FValue& u,
                      const FValue& v, const Limits& limits) {
  require_value(f, r.domain(), u);
  require_value(f, r.codomain(), v);
  const auto left = enumerate_values(f, r.domain(), limits);
  const auto right = enumerate_values(f, r.codomain(), limits);
  std::vector<const FValue*> below_v;
  for (const auto& b : right) {
    if (leq(ord, r.codomain(), b, v)) below_v.push_back(&b);
  }
  if (below_v.empty()) return false;
  for (const auto& a : left) {
    if (!leq(ord, r.domain(), u, a)) continue;
    for (const FValue* b : below_v) {
      if (rel_lift(f, r, a, *b)) return true;
    }
  }
  return false;
}

std::optional<LiftWitness> rel_lift_ordered_witness(const FunctorExpr& f, const OrderSpec& ord,
                                                    const Relation& r, const FValue& u, const FValue& v,
                                                    const Limits& limits) {
  require_value(f, r.domain(), u);
  require_value(f, r.codomain(), v);
  const PairCarrier pc = pair_carrier(r);
  auto index = [&](const std::string& id) { return pc.carrier.require(id); };
  auto proj1 = [&](const std::string& id) { return pc.first[index(id)]; };
  auto proj2 = [&](const std::string& id) { return pc.second[index(id)]; };
  for (const auto& w : enumerate_values(f, pc.carrier, limits)) {
    FValue left = fmap(f, w, proj1);
    if (!leq(ord, r.domain(), u, left)) continue;
    FValue right = fmap(f, w, proj2);
    if (leq(ord, r.codomain(), right, v)) return LiftWitness{w, std::move(left), std::move(right)};
  }
  return std::nullopt;
}

}  // namespace colift
