#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace evalcast {

template <typename T>
struct ModelResult {
  std::string model;
  T value;
};

/// Results keyed by model name, in dataset order.
template <typename T>
using PerModel = std::vector<ModelResult<T>>;

template <typename T>
const T* find_model(const PerModel<T>& results, std::string_view model) {
  for (const auto& r : results) {
    if (r.model == model) return &r.value;
  }
  return nullptr;
}

}  // namespace evalcast
