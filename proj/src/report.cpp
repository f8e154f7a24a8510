#include "incidence/report.hpp"

#include <limits>

#include "incidence/io.hpp"

namespace incidence {

namespace {

json subset_json(const Poset& poset, const Subset& s) {
  json out = json::array();
  for (auto x : s.elements()) out.push_back(poset.label(x));
  return out;
}

Subset subset_from(const Poset& poset, const json& j) {
  auto s = Subset::empty(poset.size());
  for (const auto& label : j) {
    auto idx = poset.index_of(label.get<std::string>());
    if (!idx) throw ParseError("unknown element '" + label.get<std::string>() + "' in report");
    s = s.with(*idx);
  }
  return s;
}

json rows_json(const LinearMap& phi) {
  json rows = json::array();
  for (std::size_t r = 0; r < phi.dimension(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < phi.dimension(); ++c) row.push_back(phi(r, c).to_string());
    rows.push_back(row);
  }
  return rows;
}

LinearMap rows_from(const PosetPtr& poset, const FieldDesc& field, const json& j) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& r : j) {
    std::vector<Scalar> row;
    for (const auto& v : r) row.push_back(parse_scalar(field, v.get<std::string>()));
    rows.push_back(std::move(row));
  }
  return LinearMap::from_rows(poset, field, rows);
}

json count_json(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt count_from(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

json opt(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }
std::optional<bool> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

json lambda_json(const Poset& poset, const Lambda& lambda) {
  json images = json::object();
  const bool partition = std::holds_alternative<PartitionEndo>(lambda);
  for (std::size_t x = 0; x < poset.size(); ++x) {
    const auto& s = partition ? std::get<PartitionEndo>(lambda).block(x) : std::get<XorEndo>(lambda).column(x);
    images[poset.label(x)] = subset_json(poset, s);
  }
  return {{"kind", partition ? "partition" : "xor"}, {"images", images}};
}

Lambda lambda_from(const Poset& poset, const json& j) {
  std::vector<Subset> sets;
  for (std::size_t x = 0; x < poset.size(); ++x) sets.push_back(subset_from(poset, j.at("images").at(poset.label(x))));
  if (j.at("kind") == "partition") return PartitionEndo::from_blocks(sets);
  return XorEndo::from_columns(sets);
}

json spec_body(const PreserverSpec& spec) {
  return {{"lambda", lambda_json(spec.psi.poset(), spec.lambda)}, {"psi", rows_json(spec.psi)}};
}

PreserverSpec spec_body_from(const PosetPtr& poset, const FieldDesc& field, const json& j) {
  PreserverSpec spec{lambda_from(*poset, j.at("lambda")), rows_from(poset, field, j.at("psi"))};
  spec.validate();
  return spec;
}

}  // namespace

ClassificationReport classification_report(const LinearMap& phi, const GateOptions& gates) {
  ClassificationReport r;
  r.unital = is_unital(phi);
  const auto& field = phi.field();
  auto note = [&](const Verdict& v) {
    if (v.witness) r.witnesses.push_back(v.witness->description);
    return v.holds;
  };
  if (field.is_finite()) {
    try {
      r.preserver = note(check_invertibility(phi, gates));
      if (*r.preserver) {
        r.strong = note(check_strong(phi, gates));
        try {
          r.inverse_preserving = note(check_inverses(phi, gates));
        } catch (const GateExceeded&) {
        }
      }
    } catch (const GateExceeded&) {
    }
  }
  r.jordan = note(check_jordan(phi));
  try {
    r.spec = classify(phi);
    if (!r.preserver) r.preserver = true;
    if (!r.strong) r.strong = std::visit([](const auto& l) { return is_injective(l); }, r.spec->lambda);
  } catch (const ClassificationError& e) {
    r.refuted_lemma = e.lemma();
    r.witnesses.push_back(e.what());
    if (!r.preserver && *r.unital) r.preserver = false;
  }
  return r;
}

json to_json(const LinearMap& phi) {
  return {{"field", phi.field().literal()}, {"poset", poset_literal(phi.poset())}, {"matrix", rows_json(phi)}};
}

LinearMap map_from_json(const json& j) {
  return rows_from(resolve_poset(j.at("poset").get<std::string>()), parse_field(j.at("field").get<std::string>()),
                   j.at("matrix"));
}

json to_json(const PreserverSpec& spec) {
  auto out = spec_body(spec);
  out["field"] = spec.psi.field().literal();
  out["poset"] = poset_literal(spec.psi.poset());
  return out;
}

PreserverSpec spec_from_json(const json& j) {
  return spec_body_from(resolve_poset(j.at("poset").get<std::string>()),
                        parse_field(j.at("field").get<std::string>()), j);
}

json to_json(const LemmaVerdict& v) {
  return {{"lemma", v.lemma},
          {"instance", v.instance},
          {"pass", v.pass},
          {"applicable", v.applicable},
          {"witness", v.witness ? json(*v.witness) : json(nullptr)}};
}

LemmaVerdict verdict_from_json(const json& j) {
  LemmaVerdict v;
  v.lemma = j.at("lemma").get<std::string>();
  v.instance = j.at("instance").get<std::string>();
  v.pass = j.at("pass").get<bool>();
  v.applicable = j.at("applicable").get<bool>();
  if (!j.at("witness").is_null()) v.witness = j.at("witness").get<std::string>();
  return v;
}

json verdicts_to_json(const std::vector<LemmaVerdict>& verdicts) {
  json list = json::array();
  std::size_t applicable = 0, failed = 0;
  for (const auto& v : verdicts) {
    list.push_back(to_json(v));
    if (v.applicable) {
      ++applicable;
      if (!v.pass) ++failed;
    }
  }
  return {{"pass", failed == 0}, {"applicable", applicable}, {"failed", failed}, {"verdicts", list}};
}

std::vector<LemmaVerdict> verdicts_from_json(const json& j) {
  std::vector<LemmaVerdict> out;
  for (const auto& v : j.at("verdicts")) out.push_back(verdict_from_json(v));
  return out;
}

json to_json(const CensusReport& report) {
  json records = json::array();
  for (const auto& r : report.records)
    records.push_back({{"index", r.index},
                       {"matrix", rows_json(r.phi)},
                       {"spec", spec_body(r.spec)},
                       {"strong", r.strong},
                       {"lambda_injective", r.lambda_injective},
                       {"bijective", r.bijective},
                       {"lambda_automorphism", r.lambda_automorphism},
                       {"psi_bijective_on_radical", r.psi_bijective_on_radical}});
  return {{"poset_id", report.poset_id},
          {"poset", poset_literal(*report.poset)},
          {"field", report.field.literal()},
          {"maps_searched", report.maps_searched},
          {"oracle_count", report.oracle_count},
          {"theorem_count", count_json(report.theorem_count)},
          {"matches_normal_forms", report.matches_normal_forms},
          {"consistent", report.consistent()},
          {"strong_count", report.strong_count()},
          {"injective_lambda_count", report.injective_lambda_count()},
          {"bijective_count", report.bijective_count()},
          {"elapsed_seconds", report.elapsed_seconds},
          {"records", records}};
}

CensusReport census_from_json(const json& j) {
  CensusReport r;
  r.poset_id = j.at("poset_id").get<std::string>();
  r.poset = resolve_poset(j.at("poset").get<std::string>());
  r.field = parse_field(j.at("field").get<std::string>());
  r.maps_searched = j.at("maps_searched").get<std::uint64_t>();
  r.oracle_count = j.at("oracle_count").get<std::uint64_t>();
  r.theorem_count = count_from(j.at("theorem_count"));
  r.matches_normal_forms = j.at("matches_normal_forms").get<bool>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  for (const auto& rec : j.at("records"))
    r.records.push_back(CensusRecord{rec.at("index").get<std::uint64_t>(), rows_from(r.poset, r.field, rec.at("matrix")),
                                     spec_body_from(r.poset, r.field, rec.at("spec")), rec.at("strong").get<bool>(),
                                     rec.at("lambda_injective").get<bool>(), rec.at("bijective").get<bool>(),
                                     rec.at("lambda_automorphism").get<bool>(),
                                     rec.at("psi_bijective_on_radical").get<bool>()});
  return r;
}

json to_json(const ClassificationReport& report) {
  json out = {{"verdicts",
               {{"unital", opt(report.unital)},
                {"preserver", opt(report.preserver)},
                {"strong", opt(report.strong)},
                {"inverse_preserving", opt(report.inverse_preserving)},
                {"jordan", opt(report.jordan)}}},
              {"spec", report.spec ? to_json(*report.spec) : json(nullptr)},
              {"refuted_lemma", report.refuted_lemma ? json(*report.refuted_lemma) : json(nullptr)},
              {"witnesses", report.witnesses}};
  return out;
}

ClassificationReport classification_from_json(const json& j) {
  ClassificationReport r;
  const auto& v = j.at("verdicts");
  r.unital = opt_from(v.at("unital"));
  r.preserver = opt_from(v.at("preserver"));
  r.strong = opt_from(v.at("strong"));
  r.inverse_preserving = opt_from(v.at("inverse_preserving"));
  r.jordan = opt_from(v.at("jordan"));
  if (!j.at("spec").is_null()) r.spec = spec_from_json(j.at("spec"));
  if (!j.at("refuted_lemma").is_null()) r.refuted_lemma = j.at("refuted_lemma").get<std::string>();
  r.witnesses = j.at("witnesses").get<std::vector<std::string>>();
  return r;
}

}  // namespace incidence
