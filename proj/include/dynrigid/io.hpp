#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dynrigid/deformation.hpp"
#include "dynrigid/geometry.hpp"

namespace dynrigid::io {

/// Domain file (YAML):
///   smoothness_r: 8          # optional
///   n_samples: 4096          # optional, power of two
///   coefficients: [[0, 1.0], [3, 0.01]]
///   sine: [[k, b_k], ...]    # optional; any nonzero entry is a symmetry violation
/// Unknown keys and malformed values throw ParseError.
DomainSpec parse_domain(const std::string& text);
DomainSpec load_domain(const std::filesystem::path& path);

/// Family file (YAML):
///   base: circle.yaml        # relative to the family file
///   direction: [[2, 1.0]]
///   tau_range: [-0.001, 0.001]
///   tau_grid: [0.0]          # optional, defaults to the midpoint
DeformationFamily load_family(const std::filesystem::path& path);

/// Canonical text of a spec; equal specs give equal text.
std::string canonical(const DomainSpec& spec);
std::string canonical(const DeformationFamily& family);

std::uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

/// Shortest round-trip decimal form of a double.
std::string fmt(double v);

/// CSV file whose first line is "# config_hash=<hash>".
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& config_hash, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_ = 0;
};

/// JSON sidecar next to the outputs; carries the run timestamp and parameters.
void write_sidecar(const std::filesystem::path& path, const std::string& command, const std::string& config_hash,
                   const std::vector<std::pair<std::string, std::string>>& params);

}  // namespace dynrigid::io
