#pragma once

// Exhaustive syllable segmentation over a C/V skeleton, for checking the greedy
// syllabifier.

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

inline constexpr std::array<std::string_view, 6> kSyllableShapes = {"V", "VC", "VCC", "CV", "CVC", "CVCC"};

/// Every way to cut `skeleton` into allowed shapes. A segmentation placing two vowels
/// side by side (inside a syllable or across a boundary) is not a valid one.
inline std::vector<std::vector<std::string>> all_segmentations(std::string_view skeleton) {
  std::vector<std::vector<std::string>> out;
  if (skeleton.find("VV") != std::string_view::npos) return out;
  std::vector<std::string> current;
  auto recurse = [&](auto&& self, std::string_view rest) -> void {
    if (rest.empty()) {
      if (!current.empty()) out.push_back(current);
      return;
    }
    for (std::string_view shape : kSyllableShapes) {
      if (rest.starts_with(shape)) {
        current.emplace_back(shape);
        self(self, rest.substr(shape.size()));
        current.pop_back();
      }
    }
  };
  recurse(recurse, skeleton);
  return out;
}

}  // namespace oracle
