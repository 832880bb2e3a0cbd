#include "kclass/serialize.hpp"

#include "kclass/error.hpp"

#include <nlohmann/json.hpp>

namespace kclass {

using nlohmann::json;

namespace {

json integers(std::span<const Integer> xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

// Accepts a decimal string or a JSON integer.
Integer read_integer(const json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return parse_integer(j.dump());
  throw InvalidArgument("expected an integer or decimal string, got " + j.dump());
}

IntVector read_integers(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array, got " + j.dump());
  IntVector out;
  for (const auto& x : j) out.push_back(read_integer(x));
  return out;
}

}  // namespace

std::string bundle_to_json(const InvariantBundle& b) {
  json entries = json::array();
  for (const auto& [f, g] : b.entries()) entries.push_back({{"labels", f}, {"factors", integers(g.factors())}});
  json j = {{"version", kBundleVersion}, {"rank", b.rank()}, {"labels", b.labels()}, {"entries", std::move(entries)}};
  return j.dump(2) + "\n";
}

InvariantBundle bundle_from_json(std::string_view text) {
  try {
    json j = json::parse(text);
    if (j.at("version").get<std::string>() != kBundleVersion)
      throw CorruptBundle("unsupported bundle version " + j.at("version").dump());
    auto all = j.at("labels").get<std::vector<Label>>();
    if (make_label_set(all) != all) throw CorruptBundle("bundle labels are not sorted and distinct");
    InvariantBundle b(j.at("rank").get<std::size_t>(), std::move(all));
    for (const auto& e : j.at("entries")) {
      auto labels = e.at("labels").get<std::vector<Label>>();
      LabelSet f = make_label_set(labels);
      if (f != labels) throw CorruptBundle("entry labels " + e.at("labels").dump() + " are not sorted and distinct");
      if (b.contains(f)) throw CorruptBundle("duplicate entry for labels " + e.at("labels").dump());
      IntVector factors = read_integers(e.at("factors"));
      FinGenAbGroup g = FinGenAbGroup::from_cyclic_orders(factors);
      if (g.factors() != factors) throw CorruptBundle("factors " + e.at("factors").dump() + " are not in canonical form");
      b.insert(f, std::move(g));
    }
    b.validate();
    return b;
  } catch (const json::exception& e) {
    throw CorruptBundle(std::string("malformed bundle: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw CorruptBundle(std::string("malformed bundle: ") + e.what());
  }
}

std::string report_to_json(const ReconstructionReport& r) {
  json norms = json::array();
  for (const auto& [label, n] : r.norms) norms.push_back({{"label", label}, {"norm", to_string(n)}});
  json zeta = json::array();
  for (auto a : r.zeta.coefficients) zeta.push_back(std::to_string(a));
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"message", v.message}});
  json j = {{"version", kReportVersion},
            {"class_number", std::to_string(r.class_number)},
            {"class_group_factors", integers(r.class_group.factors())},
            {"norms", std::move(norms)},
            {"zeta_bound", r.zeta.coefficients.size()},
            {"zeta_coefficients", std::move(zeta)},
            {"verdicts", std::move(verdicts)},
            {"passed", r.all_passed()}};
  return j.dump(2) + "\n";
}

std::string comparison_to_json(const FieldComparison& c) {
  auto side = [](const ZetaData& z, const FinGenAbGroup& g) {
    json coeffs = json::array();
    for (auto a : z.coefficients) coeffs.push_back(std::to_string(a));
    return json{{"class_group_factors", integers(g.factors())}, {"zeta_coefficients", std::move(coeffs)}};
  };
  json j = {{"equivalent", c.equivalent},
            {"zeta_equal", c.zeta_equal},
            {"class_groups_equal", c.class_groups_equal},
            {"first_discrepancy", c.first_discrepancy ? json(*c.first_discrepancy) : json(nullptr)},
            {"a", side(c.zeta_a, c.group_a)},
            {"b", side(c.zeta_b, c.group_b)}};
  return j.dump(2) + "\n";
}

SyntheticSpec synthetic_spec_from_json(std::string_view text) {
  SyntheticSpec s;
  try {
    json j = json::parse(text);
    s.invariant_factors = read_integers(j.at("invariant_factors"));
    for (const auto& p : j.at("primes")) {
      SyntheticPrime sp;
      sp.norm = read_integer(p.at("norm"));
      sp.cls = read_integers(p.at("class"));
      sp.residue_char = p.contains("residue_char") ? read_integer(p.at("residue_char")) : Integer(0);
      s.primes.push_back(std::move(sp));
    }
    s.quadratic_like = j.value("quadratic_like", false);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed field spec: ") + e.what());
  }
  return validate_synthetic(std::move(s));
}

std::string synthetic_spec_to_json(const SyntheticSpec& s) {
  json primes = json::array();
  for (const auto& p : s.primes)
    primes.push_back({{"norm", to_string(p.norm)}, {"class", integers(p.cls)}, {"residue_char", to_string(p.residue_char)}});
  json j = {{"invariant_factors", integers(s.invariant_factors)}, {"primes", std::move(primes)},
            {"quadratic_like", s.quadratic_like}};
  return j.dump(2) + "\n";
}

}  // namespace kclass
