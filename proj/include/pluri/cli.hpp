#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pluri::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomain = 1;
inline constexpr int kMismatch = 2;
inline constexpr int kPrecision = 3;
inline constexpr int kUsage = 64;

// Default precision cap comes from this variable when set.
inline constexpr const char* kPrecisionEnv = "PLURI_PRECISION_CAP";

extern const char* const kGrammar;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace pluri::cli
