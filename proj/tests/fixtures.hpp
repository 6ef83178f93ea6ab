#pragma once

#include <filesystem>

inline std::filesystem::path fixture(const char* name) {
  return std::filesystem::path(FIBREP_TEST_DATA) / name;
}
