#include "colift/functor.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "colift/error.hpp"

namespace colift {

struct FunctorExpr::Node {
  FunctorKind kind = FunctorKind::Id;
  Carrier set;
  std::optional<FunctorExpr> left;
  std::optional<FunctorExpr> right;
};

FunctorExpr::FunctorExpr() {
  static const auto identity = std::make_shared<const Node>();
  node_ = identity;
}

FunctorExpr FunctorExpr::constant(Carrier set) {
  auto n = std::make_shared<Node>();
  n->kind = FunctorKind::Const;
  n->set = std::move(set);
  return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::product(FunctorExpr left, FunctorExpr right) {
  auto n = std::make_shared<Node>();
  n->kind = FunctorKind::Prod;
  n->left = std::move(left);
  n->right = std::move(right);
  return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::coproduct(FunctorExpr left, FunctorExpr right) {
  auto n = std::make_shared<Node>();
  n->kind = FunctorKind::Coprod;
  n->left = std::move(left);
  n->right = std::move(right);
  return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::exponent(FunctorExpr base, Carrier index) {
  auto n = std::make_shared<Node>();
  n->kind = FunctorKind::Exp;
  n->left = std::move(base);
  n->set = std::move(index);
  return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::powerset(FunctorExpr base) {
  auto n = std::make_shared<Node>();
  n->kind = FunctorKind::Pow;
  n->left = std::move(base);
  return FunctorExpr(std::move(n));
}

FunctorExpr FunctorExpr::sequence(FunctorExpr base) {
  auto n = std::make_shared<Node>();
  n->kind = FunctorKind::Seq;
  n->left = std::move(base);
  return FunctorExpr(std::move(n));
}

FunctorKind FunctorExpr::kind() const noexcept { return node_->kind; }

const Carrier& FunctorExpr::set() const {
  if (kind() != FunctorKind::Const && kind() != FunctorKind::Exp) {
    throw std::logic_error("FunctorExpr::set on " + to_string());
  }
  return node_->set;
}

const FunctorExpr& FunctorExpr::left() const {
  if (kind() == FunctorKind::Id || kind() == FunctorKind::Const) {
    throw std::logic_error("FunctorExpr::left on leaf " + to_string());
  }
  return *node_->left;
}

const FunctorExpr& FunctorExpr::right() const {
  if (kind() != FunctorKind::Prod && kind() != FunctorKind::Coprod) {
    throw std::logic_error("FunctorExpr::right on " + to_string());
  }
  return *node_->right;
}

std::size_t FunctorExpr::depth() const {
  switch (kind()) {
    case FunctorKind::Id:
    case FunctorKind::Const:
      return 1;
    case FunctorKind::Prod:
    case FunctorKind::Coprod:
      return 1 + std::max(left().depth(), right().depth());
    default:
      return 1 + base().depth();
  }
}

bool FunctorExpr::contains(FunctorKind k) const {
  if (kind() == k) return true;
  switch (kind()) {
    case FunctorKind::Id:
    case FunctorKind::Const:
      return false;
    case FunctorKind::Prod:
    case FunctorKind::Coprod:
      return left().contains(k) || right().contains(k);
    default:
      return base().contains(k);
  }
}

std::string FunctorExpr::to_string() const {
  auto wrapped = [](const FunctorExpr& e) {
    bool binary = e.kind() == FunctorKind::Prod || e.kind() == FunctorKind::Coprod;
    return binary ? "(" + e.to_string() + ")" : e.to_string();
  };
  switch (kind()) {
    case FunctorKind::Id:
      return "Id";
    case FunctorKind::Const:
      return set().name();
    case FunctorKind::Prod:
      return wrapped(left()) + " x " + wrapped(right());
    case FunctorKind::Coprod:
      return wrapped(left()) + " + " + wrapped(right());
    case FunctorKind::Exp:
      return wrapped(base()) + "^" + set().name();
    case FunctorKind::Pow:
      return "P(" + base().to_string() + ")";
    case FunctorKind::Seq:
      return "Seq(" + base().to_string() + ")";
  }
  return "?";
}

bool operator==(const FunctorExpr& a, const FunctorExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FunctorKind::Id:
      return true;
    case FunctorKind::Const:
      return a.set() == b.set();
    case FunctorKind::Prod:
    case FunctorKind::Coprod:
      return a.left() == b.left() && a.right() == b.right();
    case FunctorKind::Exp:
      return a.set() == b.set() && a.base() == b.base();
    default:
      return a.base() == b.base();
  }
}

// ---------------------------------------------------------------------------
// FValue

FValue FValue::state(std::string id) { return FValue(ValueKind::State, std::move(id), nullptr); }

FValue FValue::constant(std::string id) { return FValue(ValueKind::Const, std::move(id), nullptr); }

FValue FValue::pair(FValue first, FValue second) {
  auto p = std::make_shared<Payload>();
  p->items.reserve(2);
  p->items.push_back(std::move(first));
  p->items.push_back(std::move(second));
  return FValue(ValueKind::Pair, {}, std::move(p));
}

FValue FValue::inl(FValue v) {
  auto p = std::make_shared<Payload>();
  p->items.push_back(std::move(v));
  return FValue(ValueKind::Inl, {}, std::move(p));
}

FValue FValue::inr(FValue v) {
  auto p = std::make_shared<Payload>();
  p->items.push_back(std::move(v));
  return FValue(ValueKind::Inr, {}, std::move(p));
}

FValue FValue::function(std::vector<std::pair<std::string, FValue>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return compare_ids(a.first, b.first) < 0; });
  auto p = std::make_shared<Payload>();
  p->keys.reserve(entries.size());
  p->items.reserve(entries.size());
  for (auto& [key, value] : entries) {
    if (!p->keys.empty() && p->keys.back() == key) {
      throw ValidationError("function value: key '" + key + "' given twice");
    }
    p->keys.push_back(std::move(key));
    p->items.push_back(std::move(value));
  }
  return FValue(ValueKind::Func, {}, std::move(p));
}

FValue FValue::set(std::vector<FValue> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto p = std::make_shared<Payload>();
  p->items = std::move(members);
  return FValue(ValueKind::Set, {}, std::move(p));
}

FValue FValue::list(std::vector<FValue> items) {
  auto p = std::make_shared<Payload>();
  p->items = std::move(items);
  return FValue(ValueKind::List, {}, std::move(p));
}

std::span<const FValue> FValue::items() const noexcept {
  if (!payload_) return {};
  return payload_->items;
}

std::span<const std::string> FValue::keys() const noexcept {
  if (!payload_) return {};
  return payload_->keys;
}

const FValue* FValue::at(std::string_view key) const {
  auto ks = keys();
  auto it = std::lower_bound(ks.begin(), ks.end(), key,
                             [](const std::string& a, std::string_view b) { return compare_ids(a, b) < 0; });
  if (it == ks.end() || *it != key) return nullptr;
  return &items()[static_cast<std::size_t>(it - ks.begin())];
}

bool FValue::has_member(const FValue& v) const {
  auto ms = items();
  return std::binary_search(ms.begin(), ms.end(), v);
}

std::string FValue::to_string() const {
  auto join = [](std::span<const FValue> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += xs[i].to_string();
    }
    return out;
  };
  switch (kind_) {
    case ValueKind::State:
    case ValueKind::Const:
      return id_;
    case ValueKind::Pair:
      return "(" + first().to_string() + ", " + second().to_string() + ")";
    case ValueKind::Inl:
      return "inl(" + inner().to_string() + ")";
    case ValueKind::Inr:
      return "inr(" + inner().to_string() + ")";
    case ValueKind::Func: {
      std::string out = "[";
      for (std::size_t i = 0; i < keys().size(); ++i) {
        if (i) out += ", ";
        out += keys()[i] + ": " + items()[i].to_string();
      }
      return out + "]";
    }
    case ValueKind::Set:
      return "{" + join(items()) + "}";
    case ValueKind::List:
      return "<" + join(items()) + ">";
  }
  return "?";
}

std::strong_ordering operator<=>(const FValue& a, const FValue& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (int c = compare_ids(a.id_, b.id_); c != 0) return c <=> 0;
  if (a.payload_ == b.payload_) return std::strong_ordering::equal;
  auto ak = a.keys(), bk = b.keys();
  auto keys = std::lexicographical_compare_three_way(
      ak.begin(), ak.end(), bk.begin(), bk.end(),
      [](const std::string& x, const std::string& y) { return compare_ids(x, y) <=> 0; });
  if (keys != 0) return keys;
  auto ai = a.items(), bi = b.items();
  return std::lexicographical_compare_three_way(ai.begin(), ai.end(), bi.begin(), bi.end());
}

// ---------------------------------------------------------------------------
// Validation

namespace {

const char* kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::State: return "a state";
    case ValueKind::Const: return "a constant";
    case ValueKind::Pair: return "a pair";
    case ValueKind::Inl: return "a left injection";
    case ValueKind::Inr: return "a right injection";
    case ValueKind::Func: return "a function";
    case ValueKind::Set: return "a set";
    case ValueKind::List: return "a list";
  }
  return "?";
}

std::optional<std::string> shape_error(const FunctorExpr& f, const Carrier& x, const FValue& v) {
  auto mismatch = [&](const char* expected) -> std::optional<std::string> {
    return std::string("expected ") + expected + " for " + f.to_string() + ", got " +
           kind_name(v.kind()) + " " + v.to_string();
  };
  switch (f.kind()) {
    case FunctorKind::Id:
      if (v.kind() != ValueKind::State) return mismatch("a state");
      if (!x.contains(v.id())) return "'" + v.id() + "' is not a state of '" + x.name() + "'";
      return std::nullopt;
    case FunctorKind::Const:
      if (v.kind() != ValueKind::Const) return mismatch("a constant");
      if (!f.set().contains(v.id())) {
        return "'" + v.id() + "' is not an element of '" + f.set().name() + "'";
      }
      return std::nullopt;
    case FunctorKind::Prod:
      if (v.kind() != ValueKind::Pair) return mismatch("a pair");
      if (auto e = shape_error(f.left(), x, v.first())) return e;
      return shape_error(f.right(), x, v.second());
    case FunctorKind::Coprod:
      if (v.kind() == ValueKind::Inl) return shape_error(f.left(), x, v.inner());
      if (v.kind() == ValueKind::Inr) return shape_error(f.right(), x, v.inner());
      return mismatch("an injection");
    case FunctorKind::Exp: {
      if (v.kind() != ValueKind::Func) return mismatch("a function");
      const Carrier& index = f.set();
      if (v.keys().size() != index.size()) {
        return "function over '" + index.name() + "' must have " + std::to_string(index.size()) +
               " entries, got " + std::to_string(v.keys().size());
      }
      for (std::size_t i = 0; i < v.keys().size(); ++i) {
        if (!index.contains(v.keys()[i])) {
          return "function key '" + v.keys()[i] + "' is not an element of '" + index.name() + "'";
        }
        if (auto e = shape_error(f.base(), x, v.items()[i])) return e;
      }
      return std::nullopt;
    }
    case FunctorKind::Pow:
      if (v.kind() != ValueKind::Set) return mismatch("a set");
      for (const auto& m : v.items()) {
        if (auto e = shape_error(f.base(), x, m)) return e;
      }
      return std::nullopt;
    case FunctorKind::Seq:
      if (v.kind() != ValueKind::List) return mismatch("a list");
      for (const auto& m : v.items()) {
        if (auto e = shape_error(f.base(), x, m)) return e;
      }
      return std::nullopt;
  }
  return "unknown functor";
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == UINT64_MAX || r == 0) break;
  }
  return r;
}

// Odometer over `slots` positions, each ranging over `choices`.
template <class Emit>
void for_each_tuple(std::size_t slots, const std::vector<FValue>& choices, Emit&& emit) {
  if (slots > 0 && choices.empty()) return;
  std::vector<std::size_t> digits(slots, 0);
  std::vector<FValue> tuple(slots, choices.empty() ? FValue() : choices[0]);
  while (true) {
    emit(tuple);
    std::size_t pos = slots;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < choices.size()) {
        tuple[pos] = choices[digits[pos]];
        break;
      }
      digits[pos] = 0;
      tuple[pos] = choices[0];
      if (pos == 0) return;
    }
    if (slots == 0) return;
  }
}

std::vector<FValue> enumerate_rec(const FunctorExpr& f, const Carrier& x, const Limits& limits) {
  std::vector<FValue> out;
  switch (f.kind()) {
    case FunctorKind::Id:
      for (const auto& e : x.elements()) out.push_back(FValue::state(e));
      break;
    case FunctorKind::Const:
      for (const auto& e : f.set().elements()) out.push_back(FValue::constant(e));
      break;
    case FunctorKind::Prod: {
      auto ls = enumerate_rec(f.left(), x, limits);
      auto rs = enumerate_rec(f.right(), x, limits);
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(FValue::pair(l, r));
      break;
    }
    case FunctorKind::Coprod:
      for (auto& l : enumerate_rec(f.left(), x, limits)) out.push_back(FValue::inl(std::move(l)));
      for (auto& r : enumerate_rec(f.right(), x, limits)) out.push_back(FValue::inr(std::move(r)));
      break;
    case FunctorKind::Exp: {
      auto bs = enumerate_rec(f.base(), x, limits);
      const Carrier& index = f.set();
      for_each_tuple(index.size(), bs, [&](const std::vector<FValue>& t) {
        std::vector<std::pair<std::string, FValue>> entries;
        entries.reserve(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) entries.emplace_back(index[i], t[i]);
        out.push_back(FValue::function(std::move(entries)));
      });
      break;
    }
    case FunctorKind::Pow: {
      auto bs = enumerate_rec(f.base(), x, limits);
      const std::uint64_t count = std::uint64_t{1} << bs.size();
      out.reserve(count);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::vector<FValue> members;
        for (std::size_t i = 0; i < bs.size(); ++i) {
          if (mask >> i & 1U) members.push_back(bs[i]);
        }
        out.push_back(FValue::set(std::move(members)));
      }
      break;
    }
    case FunctorKind::Seq: {
      auto bs = enumerate_rec(f.base(), x, limits);
      for (std::size_t len = 0; len <= limits.max_seq_length; ++len) {
        for_each_tuple(len, bs, [&](const std::vector<FValue>& t) { out.push_back(FValue::list(t)); });
      }
      break;
    }
  }
  return out;
}

}  // namespace

bool validate_value(const FunctorExpr& f, const Carrier& x, const FValue& v) {
  return !shape_error(f, x, v).has_value();
}

void require_value(const FunctorExpr& f, const Carrier& x, const FValue& v) {
  if (auto e = shape_error(f, x, v)) throw ValidationError(*e);
}

std::uint64_t cardinality(const FunctorExpr& f, const Carrier& x, const Limits& limits) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return x.size();
    case FunctorKind::Const:
      return f.set().size();
    case FunctorKind::Prod:
      return sat_mul(cardinality(f.left(), x, limits), cardinality(f.right(), x, limits));
    case FunctorKind::Coprod:
      return sat_add(cardinality(f.left(), x, limits), cardinality(f.right(), x, limits));
    case FunctorKind::Exp:
      return sat_pow(cardinality(f.base(), x, limits), f.set().size());
    case FunctorKind::Pow: {
      auto n = cardinality(f.base(), x, limits);
      return n >= 64 ? UINT64_MAX : std::uint64_t{1} << n;
    }
    case FunctorKind::Seq: {
      auto n = cardinality(f.base(), x, limits);
      std::uint64_t total = 0;
      for (std::size_t len = 0; len <= limits.max_seq_length; ++len) {
        total = sat_add(total, sat_pow(n, len));
      }
      return total;
    }
  }
  return 0;
}

std::vector<FValue> enumerate_values(const FunctorExpr& f, const Carrier& x, const Limits& limits) {
  auto n = cardinality(f, x, limits);
  if (n > limits.guard) {
    throw EnumerationTooLarge(n, limits.guard, "enumerating " + f.to_string() + " over '" + x.name() + "'");
  }
  return enumerate_rec(f, x, limits);
}

FValue fmap(const FunctorExpr& f, const FValue& v,
            const std::function<std::string(const std::string&)>& g) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return FValue::state(g(v.id()));
    case FunctorKind::Const:
      return v;
    case FunctorKind::Prod:
      return FValue::pair(fmap(f.left(), v.first(), g), fmap(f.right(), v.second(), g));
    case FunctorKind::Coprod:
      return v.kind() == ValueKind::Inl ? FValue::inl(fmap(f.left(), v.inner(), g))
                                        : FValue::inr(fmap(f.right(), v.inner(), g));
    case FunctorKind::Exp: {
      std::vector<std::pair<std::string, FValue>> entries;
      for (std::size_t i = 0; i < v.keys().size(); ++i) {
        entries.emplace_back(v.keys()[i], fmap(f.base(), v.items()[i], g));
      }
      return FValue::function(std::move(entries));
    }
    case FunctorKind::Pow:
    case FunctorKind::Seq: {
      std::vector<FValue> items;
      items.reserve(v.items().size());
      for (const auto& m : v.items()) items.push_back(fmap(f.base(), m, g));
      return f.kind() == FunctorKind::Pow ? FValue::set(std::move(items)) : FValue::list(std::move(items));
    }
  }
  return v;
}

Coalgebra::Coalgebra(Carrier states, FunctorExpr functor, std::vector<FValue> images)
    : states_(std::move(states)), functor_(std::move(functor)), images_(std::move(images)) {
  if (images_.size() != states_.size()) {
    throw ValidationError("coalgebra over '" + states_.name() + "' has " + std::to_string(images_.size()) +
                          " images for " + std::to_string(states_.size()) + " states");
  }
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (auto e = shape_error(functor_, states_, images_[i])) {
      throw ValidationError("image of state '" + states_[i] + "': " + *e);
    }
  }
}

}  // namespace colift
