#include "core/jsonio.hpp"

#include "core/errors.hpp"

namespace divr {

namespace {

ordered_json ratios_to_json(const RatioTriple& t) {
  ordered_json out;
  out["1-2"] = t.pair12.str();
  out["2-3"] = t.pair23.str();
  out["1-3"] = t.pair13.str();
  return out;
}

}  // namespace

ordered_json decompose_document(const Rational& target, const GenWord& word) {
  ordered_json doc;
  doc["command"] = "decompose";
  doc["target"] = target.str();
  doc["word"] = word.str();
  ordered_json terms = ordered_json::array();
  for (const WordTerm& t : word.terms()) {
    ordered_json term;
    term["x"] = std::to_string(t.gen.x);
    term["y"] = std::to_string(t.gen.y);
    term["exponent"] = std::to_string(t.exponent);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  Rational value = word.value();
  doc["value"] = value.str();
  doc["round_trip"] = value == target ? "PASS" : "FAIL";
  return doc;
}

ordered_json params_to_json(const SieveParams& P) {
  ordered_json doc;
  doc["a"] = dec(P.a.value());
  doc["r"] = {dec(P.r[0].value()), dec(P.r[1].value()), dec(P.r[2].value())};
  if (P.C) {
    doc["C"] = *P.C;
  } else {
    doc["C"] = nullptr;
  }
  ordered_json factors;
  factors["a1"] = P.a.factors().str();
  factors["half_a1"] = P.half_a1.factors().str();
  factors["a2"] = P.a2 ? ordered_json(P.a2->factors().str()) : nullptr;
  factors["a3"] = P.a3 ? ordered_json(P.a3->factors().str()) : nullptr;
  factors["half_a3"] =
      P.half_a3 ? ordered_json(P.half_a3->factors().str()) : nullptr;
  factors["r1"] = P.r[0].factors().str();
  factors["r2"] = P.r[1].factors().str();
  factors["r3"] = P.r[2].factors().str();
  doc["factors"] = std::move(factors);
  return doc;
}

SieveParams params_from_json(const ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("factors") ||
      !doc["factors"].is_object()) {
    raise(ErrorKind::domain, "instance document needs a 'factors' object");
  }
  const ordered_json& f = doc["factors"];
  auto factored = [&](const char* key) {
    if (!f.contains(key) || !f[key].is_string()) {
      raise(ErrorKind::domain,
            std::string("instance document needs factors.") + key);
    }
    return FactoredInt::from_factors(
        Factorization::parse(f[key].get<std::string>()));
  };
  auto optional_factored =
      [&](const char* key) -> std::optional<FactoredInt> {
    if (!f.contains(key) || f[key].is_null()) return std::nullopt;
    return factored(key);
  };

  SieveParams P;
  P.a = factored("a1");
  P.half_a1 = factored("half_a1");
  P.r[0] = factored("r1");
  P.r[1] = factored("r2");
  P.r[2] = factored("r3");
  P.a2 = optional_factored("a2");
  P.a3 = optional_factored("a3");
  P.half_a3 = optional_factored("half_a3");
  if (doc.contains("C") && !doc["C"].is_null()) {
    if (!doc["C"].is_number_unsigned()) {
      raise(ErrorKind::domain, "instance C must be a non-negative integer");
    }
    P.C = doc["C"].get<u64>();
  }
  if (doc.contains("a") && doc["a"].is_string() &&
      Bigint(doc["a"].get<std::string>()) != P.a.value()) {
    raise(ErrorKind::domain, "instance 'a' disagrees with factors.a1");
  }
  return P;
}

ordered_json build_document(const BuildResult& build, const Sieve& sieve) {
  ordered_json doc;
  doc["command"] = "build";
  doc["target"] = build.target.str();
  doc["word"] = build.word.str();

  ordered_json assignments;
  auto side_to_json = [](const std::vector<PrimeAssignment>& side) {
    ordered_json arr = ordered_json::array();
    for (const PrimeAssignment& pa : side) {
      ordered_json one;
      one["prime"] = std::to_string(pa.prime);
      one["a_exp"] = std::to_string(pa.a_exp);
      one["r_exp"] = std::to_string(pa.r_exp);
      arr.push_back(std::move(one));
    }
    return arr;
  };
  assignments["positive"] = side_to_json(build.positive_assignment);
  assignments["negative"] = side_to_json(build.negative_assignment);
  doc["assignments"] = std::move(assignments);

  ordered_json instance = params_to_json(build.params);
  for (auto& [key, value] : instance.items()) doc[key] = value;

  doc["closed_form"] = closed_form_value(build).str();
  doc["group_value"] = predicted_group_value(build.params).str();

  if (build.params.fully_factored()) {
    RatioTriple t = predicted_ratios(build.params);
    doc["predicted_ratios"] = ratios_to_json(t);
    std::array<Bigint, 3> e = balance_exponents(t);
    doc["balance_exponents"] = {dec(e[0]), dec(e[1]), dec(e[2])};
    SieveParams aug = augment_params(build.params, e, sieve);
    ordered_json augmented = params_to_json(aug);
    augmented["ratios"] = ratios_to_json(predicted_ratios(aug));
    doc["augmented"] = std::move(augmented);
  } else {
    doc["predicted_ratios"] = nullptr;
    doc["balance_exponents"] = nullptr;
    doc["augmented"] = nullptr;
  }
  return doc;
}

ordered_json hit_to_json(const WitnessHit& h) {
  ordered_json doc;
  doc["type"] = "hit";
  doc["x"] = std::to_string(h.x);
  doc["pair"] = pair_label(h.pair);
  doc["n"] = std::to_string(h.n);
  doc["d_n"] = std::to_string(h.d_n);
  doc["d_n1"] = std::to_string(h.d_n1);
  doc["ratio"] = h.ratio.str();
  doc["predicted"] = h.predicted.str();
  doc["matched"] = h.matched;
  return doc;
}

ordered_json scan_summary_to_json(const Rational& target,
                                  const ScanSummary& s) {
  ordered_json doc;
  doc["type"] = "summary";
  doc["target"] = target.str();
  doc["x_lo"] = std::to_string(s.x_lo);
  doc["x_hi"] = std::to_string(s.x_hi);
  ordered_json hits, x_top, capped;
  for (std::size_t k = 0; k < 3; ++k) {
    std::string label = pair_label(kAllPairs[k]);
    hits[label] = s.pairs[k].hits;
    x_top[label] = std::to_string(s.pairs[k].x_top);
    capped[label] = s.pairs[k].capped;
  }
  doc["hits"] = std::move(hits);
  doc["x_top"] = std::move(x_top);
  doc["capped"] = std::move(capped);
  doc["total_hits"] = s.total_hits;
  doc["conclusive"] = s.total_hits > 0;
  return doc;
}

const char* const kHitCsvHeader = "x,pair,n,d_n,d_n1,ratio,predicted,matched";

std::string hit_to_csv(const WitnessHit& h) {
  return std::to_string(h.x) + "," + pair_label(h.pair) + "," +
         std::to_string(h.n) + "," + std::to_string(h.d_n) + "," +
         std::to_string(h.d_n1) + "," + h.ratio.str() + "," +
         h.predicted.str() + "," + (h.matched ? "true" : "false");
}

ordered_json census_to_json(const RatioCensus& c) {
  ordered_json doc;
  doc["command"] = "ratio-scan";
  doc["target"] = c.target.str();
  doc["n_max"] = std::to_string(c.n_max);
  doc["count"] = c.count;
  doc["first_n"] = c.first_n ? ordered_json(std::to_string(*c.first_n))
                             : ordered_json(nullptr);
  ordered_json sample = ordered_json::array();
  for (u64 n : c.sample) sample.push_back(std::to_string(n));
  doc["sample"] = std::move(sample);
  return doc;
}

}  // namespace divr
