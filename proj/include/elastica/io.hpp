#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace elastica {

// Shortest round-trip representation (at most 17 significant digits).
std::string format_double(double v);

void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<Eigen::VectorXd>& columns);

}  // namespace elastica
