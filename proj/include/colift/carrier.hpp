#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace colift {

/// A named finite set with a fixed element order.
///
/// Used both for state spaces and for the constant, exponent and
/// atomic-proposition sets a functor refers to. Copies share storage.
class Carrier {
 public:
  Carrier();
  /// Throws ValidationError on duplicate or empty element ids.
  Carrier(std::string name, std::vector<std::string> elements);

  const std::string& name() const noexcept { return data_->name; }
  std::span<const std::string> elements() const noexcept { return data_->elements; }
  std::size_t size() const noexcept { return data_->elements.size(); }
  bool empty() const noexcept { return data_->elements.empty(); }
  const std::string& operator[](std::size_t i) const { return data_->elements[i]; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return index_of(id).has_value(); }

  /// Index of `id`; throws ValidationError naming this carrier when absent.
  std::size_t require(std::string_view id) const;

  friend bool operator==(const Carrier& a, const Carrier& b);

 private:
  struct Data {
    std::string name;
    std::vector<std::string> elements;
    std::map<std::string, std::size_t, std::less<>> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Total order on element ids: shorter ids first, then lexicographic, so
/// that "x2" sorts before "x10".
int compare_ids(std::string_view a, std::string_view b) noexcept;

}  // namespace colift
