#include "kclass/commands.hpp"

#include "kclass/error.hpp"
#include "kclass/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace kclass {

namespace {

constexpr std::size_t kMaxDefaultZeta = 10000;

CommandResult guarded(const std::function<CommandResult()>& body) {
  auto fail = [](int code, const std::string& what) { return CommandResult{code, "", "error: " + what + "\n"}; };
  try {
    return body();
  } catch (const ValidationError& e) {
    return fail(2, e.what());
  } catch (const InvalidArgument& e) {
    return fail(2, e.what());
  } catch (const InsufficientGenerators& e) {
    return fail(3, e.what());
  } catch (const MissingEntry& e) {
    return fail(3, e.what());
  } catch (const std::exception& e) {
    return fail(1, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Integer parse_bound(const std::string& text) {
  Integer b = parse_integer(text);
  if (b < 1) throw InvalidArgument("bound " + text + " must be at least 1");
  return b;
}

// Largest norm any of the named primes could have, so one enumeration finds
// them all.
Integer search_bound(const FieldSpec& spec, const std::vector<std::string>& names) {
  if (const auto* s = std::get_if<SyntheticSpec>(&spec)) {
    Integer m = 1;
    for (const auto& p : s->primes) m = std::max(m, p.norm);
    return m;
  }
  Integer m = 1;
  for (const auto& n : names) {
    if (n.size() < 3 || n.rfind("p_", 0) != 0) throw InvalidArgument("prime name '" + n + "' is not of the form p_<q>");
    std::string digits = n.substr(2);
    if (!digits.empty() && digits.back() == '\'') digits.pop_back();
    Integer q = parse_integer(digits);
    if (!is_prime(q)) throw InvalidArgument("prime name '" + n + "' does not name a prime");
    m = std::max(m, Integer(q * q));
  }
  return m;
}

std::string legend(std::span<const PrimeIdealDatum> primes) {
  std::string s;
  for (const auto& p : primes)
    s += "label " + std::to_string(p.label) + " = " + p.name + " (norm " + to_string(p.norm) + ")\n";
  return s;
}

}  // namespace

FieldSpec load_field_spec(const std::optional<std::string>& discriminant, const std::optional<std::string>& spec_path) {
  if (discriminant.has_value() == spec_path.has_value())
    throw InvalidArgument("give exactly one of a discriminant or a spec file");
  if (spec_path) return synthetic_spec_from_json(read_file(*spec_path));
  Integer d = parse_integer(*discriminant);
  if (d >= 0) throw InvalidArgument("discriminant " + *discriminant + " is not negative");
  if (!is_fundamental_discriminant(d)) throw InvalidArgument("discriminant " + *discriminant + " is not fundamental");
  return QuadraticSpec{d};
}

CommandResult cmd_classgroup(const std::optional<std::string>& discriminant, const std::optional<std::string>& spec_path) {
  return guarded([&] {
    FieldSpec spec = load_field_spec(discriminant, spec_path);
    if (const auto* q = std::get_if<QuadraticSpec>(&spec)) {
      std::string out = QuadraticClassGroup(q->discriminant).model().group().to_string() + "; forms: ";
      auto forms = reduced_forms(q->discriminant);
      for (std::size_t i = 0; i < forms.size(); ++i) out += (i ? "," : "") + forms[i].to_string();
      return CommandResult{0, out + "\n", ""};
    }
    return CommandResult{0, class_group_of(spec).group().to_string() + "\n", ""};
  });
}

CommandResult cmd_invariants(const InvariantsOptions& opt) {
  return guarded([&] {
    FieldSpec spec = load_field_spec(opt.discriminant, opt.spec_path);
    if (opt.set.empty() && !opt.prime_bound) throw InvalidArgument("give --primes or --set");

    Integer bound = opt.prime_bound ? parse_bound(*opt.prime_bound) : Integer(1);
    if (!opt.set.empty()) {
      std::map<std::string, Integer> norm_of;
      for (const auto& p : enumerate_prime_ideals(spec, search_bound(spec, opt.set))) norm_of.emplace(p.name, p.norm);
      for (const auto& n : opt.set) {
        auto it = norm_of.find(n);
        if (it == norm_of.end()) throw InvalidArgument("no prime ideal named '" + n + "'");
        bound = std::max(bound, it->second);
      }
    }

    FieldData fd = field_data(spec, bound);
    InvariantBundle b = make_lazy_bundle(fd.cl, fd.primes);
    if (!opt.set.empty()) {
      std::vector<Label> f;
      for (const auto& n : opt.set)
        for (const auto& p : fd.primes)
          if (p.name == n) f.push_back(p.label);
      b.entry(make_label_set(std::move(f)));
    }
    if (opt.prime_bound) {
      // Memoize what the chain requests; a short chain still yields a valid bundle.
      try {
        reconstruct_class_group(b);
      } catch (const InsufficientGenerators&) {
      }
    }
    return CommandResult{0, bundle_to_json(b), legend(fd.primes)};
  });
}

CommandResult cmd_reconstruct(const std::string& bundle_text, std::size_t zeta_bound) {
  return guarded([&] {
    InvariantBundle b = bundle_from_json(bundle_text);
    if (zeta_bound == 0) {
      Integer m = 1;
      for (Label l : b.labels()) m = std::max(m, recover_norm(b, l));
      zeta_bound = m > static_cast<unsigned long>(kMaxDefaultZeta) ? kMaxDefaultZeta : to_size(m);
    }
    ReconstructionReport r = reconstruct(b, zeta_bound);
    return CommandResult{r.all_passed() ? 0 : 1, report_to_json(r), ""};
  });
}

CommandResult cmd_roundtrip(const RoundtripOptions& opt) {
  return guarded([&] {
    FieldSpec spec = load_field_spec(opt.discriminant, opt.spec_path);
    Integer bound = parse_bound(opt.prime_bound);
    std::size_t zeta = opt.zeta_bound ? *opt.zeta_bound : to_size(bound);
    ReconstructionReport r = roundtrip(spec, bound, zeta);
    return CommandResult{r.all_passed() ? 0 : 1, report_to_json(r), ""};
  });
}

CommandResult cmd_compare(const CompareOptions& opt) {
  return guarded([&] {
    FieldSpec a = load_field_spec(opt.discriminant_a, opt.spec_path_a);
    FieldSpec b = load_field_spec(opt.discriminant_b, opt.spec_path_b);
    if (opt.bound < 1) throw InvalidArgument("bound must be at least 1");
    FieldComparison c = compare_fields(a, b, opt.bound);
    std::string summary;
    if (c.equivalent)
      summary = "equivalent up to n = " + std::to_string(opt.bound);
    else if (c.first_discrepancy)
      summary = "differ at n = " + std::to_string(*c.first_discrepancy);
    else
      summary = "equal zeta up to n = " + std::to_string(opt.bound) + " but class groups differ";
    return CommandResult{c.equivalent ? 0 : 1, comparison_to_json(c), summary + "\n"};
  });
}

}  // namespace kclass
