// Command-line front end. Parsing only; every decision lives in commands.cpp.

#include "kclass/commands.hpp"

#include <CLI11.hpp>

#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

namespace {

int emit(const kclass::CommandResult& r, const std::string& out_path) {
  std::cerr << r.error;
  if (out_path.empty() || r.output.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << r.output;
  }
  return r.exit_code;
}

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("bundle", "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

int main(int argc, char** argv) {
  // CLI11 reads "-D2" as "-D" with value "2".
  std::vector<std::string> args(argv, argv + argc);
  for (auto& a : args)
    if (a == "-D2") a = "--D2";
  std::vector<char*> argp;
  for (auto& a : args) argp.push_back(a.data());

  CLI::App app{"Class groups, Z[Cl] quotients and blind reconstruction"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("-o,--output", out_path, "Write the result here instead of stdout");

  std::optional<std::string> disc, spec, disc2, spec2;
  auto field_flags = [&](CLI::App* sub) {
    sub->add_option("-D,--discriminant", disc, "Negative fundamental discriminant");
    sub->add_option("--spec", spec, "Synthetic field spec (JSON)");
  };

  auto* classgroup = app.add_subcommand("classgroup", "Invariant factors and reduced forms");
  field_flags(classgroup);

  kclass::InvariantsOptions inv;
  auto* invariants = app.add_subcommand("invariants", "Emit a bundle of quotient isomorphism types");
  field_flags(invariants);
  invariants->add_option("--primes", inv.prime_bound, "Use every prime ideal of norm at most this");
  invariants->add_option("--set", inv.set, "Prime names for one extra entry, e.g. p_3,p_7")->delimiter(',');

  std::string bundle_path;
  std::size_t zeta = 0;
  auto* reconstruct = app.add_subcommand("reconstruct", "Blind reconstruction from a bundle file");
  reconstruct->add_option("bundle", bundle_path, "Bundle file, or - for stdin")->required();
  reconstruct->add_option("--zeta", zeta, "Zeta coefficients up to this n (default: largest norm)");

  kclass::RoundtripOptions rt;
  auto* roundtrip = app.add_subcommand("roundtrip", "Build, blind, reconstruct, compare with the truth");
  field_flags(roundtrip);
  roundtrip->add_option("--primes", rt.prime_bound, "Prime ideal norm bound")->capture_default_str();
  roundtrip->add_option("--zeta", rt.zeta_bound, "Zeta coefficients up to this n (default: prime bound)");

  kclass::CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Compare zeta coefficients and class groups of two fields");
  field_flags(compare);
  compare->add_option("--D2", disc2, "Second discriminant");
  compare->add_option("--spec2", spec2, "Second synthetic spec");
  compare->add_option("--bound", cmp.bound, "Compare a_1..a_bound")->capture_default_str();

  try {
    app.parse(static_cast<int>(argp.size()), argp.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*classgroup) return emit(kclass::cmd_classgroup(disc, spec), out_path);
  if (*invariants) {
    inv.discriminant = disc;
    inv.spec_path = spec;
    return emit(kclass::cmd_invariants(inv), out_path);
  }
  if (*reconstruct) {
    std::string text;
    try {
      text = slurp(bundle_path);
    } catch (const CLI::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return emit(kclass::cmd_reconstruct(text, zeta), out_path);
  }
  if (*roundtrip) {
    rt.discriminant = disc;
    rt.spec_path = spec;
    return emit(kclass::cmd_roundtrip(rt), out_path);
  }
  cmp.discriminant_a = disc;
  cmp.spec_path_a = spec;
  cmp.discriminant_b = disc2;
  cmp.spec_path_b = spec2;
  return emit(kclass::cmd_compare(cmp), out_path);
}
