#pragma once

// Subcommand bodies for the kclass tool, free of any argument parsing so that
// tests drive them directly. Each returns what the process would print and
// its exit code:
//   0 pass, 1 verdict failure or internal contradiction, 2 usage error,
//   3 insufficient data (too few generators or a missing bundle entry).

#include "kclass/reconstruct.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kclass {

struct CommandResult {
  int exit_code = 0;
  std::string output;  // stdout
  std::string error;   // stderr
};

// Exactly one of `discriminant` or `spec_path` must be set; otherwise
// InvalidArgument.
FieldSpec load_field_spec(const std::optional<std::string>& discriminant, const std::optional<std::string>& spec_path);

// "Z/2; forms: (1,0,5),(2,2,3)" for a quadratic field, the bare group for a
// synthetic one.
CommandResult cmd_classgroup(const std::optional<std::string>& discriminant, const std::optional<std::string>& spec_path);

struct InvariantsOptions {
  std::optional<std::string> discriminant;
  std::optional<std::string> spec_path;
  std::optional<std::string> prime_bound;  // every prime ideal of norm <= bound
  std::vector<std::string> set;            // prime names; the set itself gets an entry
};

// With only a prime bound, the bundle also carries every entry the
// reconstruction chain asks for, so `reconstruct` can run on it offline.
CommandResult cmd_invariants(const InvariantsOptions& opt);

// zeta_bound 0 means: up to the largest recovered norm, capped at 10^4.
CommandResult cmd_reconstruct(const std::string& bundle_text, std::size_t zeta_bound);

struct RoundtripOptions {
  std::optional<std::string> discriminant;
  std::optional<std::string> spec_path;
  std::string prime_bound = "50";
  std::optional<std::size_t> zeta_bound;  // defaults to the prime bound
};

CommandResult cmd_roundtrip(const RoundtripOptions& opt);

struct CompareOptions {
  std::optional<std::string> discriminant_a, spec_path_a;
  std::optional<std::string> discriminant_b, spec_path_b;
  std::size_t bound = 100;
};

CommandResult cmd_compare(const CompareOptions& opt);

}  // namespace kclass
