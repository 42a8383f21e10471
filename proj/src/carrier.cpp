#include "colift/carrier.hpp"

#include "colift/error.hpp"

namespace colift {

Carrier::Carrier() : data_(std::make_shared<const Data>()) {}

Carrier::Carrier(std::string name, std::vector<std::string> elements) {
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].empty()) {
      throw ValidationError("set '" + data->name + "': empty element id");
    }
    if (!data->index.emplace(elements[i], i).second) {
      throw ValidationError("set '" + data->name + "': duplicate element '" + elements[i] + "'");
    }
  }
  data->elements = std::move(elements);
  data_ = std::move(data);
}

std::optional<std::size_t> Carrier::index_of(std::string_view id) const {
  auto it = data_->index.find(id);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Carrier::require(std::string_view id) const {
  if (auto i = index_of(id)) return *i;
  throw ValidationError("'" + std::string(id) + "' is not an element of '" + name() + "'");
}

bool operator==(const Carrier& a, const Carrier& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->name == b.data_->name && a.data_->elements == b.data_->elements;
}

int compare_ids(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace colift
