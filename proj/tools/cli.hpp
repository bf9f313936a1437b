#pragma once

#include <string>
#include <vector>

namespace elastica::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNonConvergence = 1;
inline constexpr int kExitInvalid = 2;

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  bool informational = false;
};

// Suites: scaling, closed-form, line, disk, buckling, all.
bool is_suite(const std::string& suite);
std::vector<Check> run_suite(const std::string& suite, int jobs);

int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace elastica::cli
