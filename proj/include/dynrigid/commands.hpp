#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "dynrigid/errors.hpp"
#include "dynrigid/rigidity.hpp"

namespace dynrigid {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvariant = 3;

/// Output directory used when --out is not given: $DYNRIGID_OUT_DIR, else ./dynrigid_out.
std::filesystem::path default_out_dir();

struct RunConfig {
  std::filesystem::path domain_file;
  std::filesystem::path family_file;
  int qmax = 8;
  int Q = 32;
  int J = 32;
  double gamma = kDefaultGamma;
  std::string route = "direct";  // direct, model or both
  std::filesystem::path out_dir;
  std::size_t samples = 0;       // 0 keeps n_samples from the file
  unsigned seed = 0;
};

/// Each command validates its parameters, writes its files under out_dir and
/// returns an exit status. Library errors are mapped by exit_code_for.
int cmd_validate(const RunConfig& cfg, std::ostream& out);
int cmd_orbits(const RunConfig& cfg, std::ostream& out);
int cmd_operator(const RunConfig& cfg, std::ostream& out);
int cmd_deform(const RunConfig& cfg, std::ostream& out);

int exit_code_for(ErrorKind kind);

/// Runs `fn`, printing any library error to `err` and translating it to an exit status.
int guarded(const std::function<int()>& fn, std::ostream& err);

}  // namespace dynrigid
