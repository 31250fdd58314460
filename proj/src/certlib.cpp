#include "compsem/certlib.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "compsem/error.hpp"
#include "compsem/spec_io.hpp"

namespace compsem {

using nlohmann::json;

std::string canonical_spec_text(const json& spec) { return spec.dump(); }

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string spec_digest(const json& spec) {
  return "fnv1a64:" + fnv1a64_hex(canonical_spec_text(spec));
}

// ---------------------------------------------------------------------------
// JSON encoding

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SpecError(std::string("bundle: missing field \"") + key + "\"");
  }
  return j[key];
}

std::string need_string(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) throw SpecError(std::string("bundle: \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::size_t need_size(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_unsigned()) {
    throw SpecError(std::string("bundle: \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Term need_term(const json& j, const char* key) {
  try {
    return make_term(need_string(j, key));
  } catch (const ParseError& e) {
    throw SpecError(std::string("bundle: ") + e.what());
  }
}

json report_to_json(const VerificationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"equation", v.equation}, {"left", v.left}, {"right", v.right}});
  }
  return json{{"type", "verification"},
              {"subject", r.subject},
              {"variant", std::string(to_string(r.variant))},
              {"terms_checked", r.terms_checked},
              {"pairs_checked", r.pairs_checked},
              {"marker_checks", r.marker_checks},
              {"violations", std::move(violations)},
              {"status", std::string(to_string(r.status))}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.subject = need_string(j, "subject");
  r.variant = parse_variant(need_string(j, "variant"));
  r.terms_checked = need_size(j, "terms_checked");
  r.pairs_checked = need_size(j, "pairs_checked");
  r.marker_checks = need_size(j, "marker_checks");
  for (const auto& v : need(j, "violations")) {
    r.violations.push_back(
        {need_string(v, "equation"), need_string(v, "left"), need_string(v, "right")});
  }
  std::string status = need_string(j, "status");
  if (status != "PASS" && status != "FAIL") throw SpecError("bundle: bad status " + status);
  r.status = status == "PASS" ? Status::Pass : Status::Fail;
  return r;
}

json entry_to_json(const TableEntry& e) {
  if (const auto* b = std::get_if<BasePair>(&e)) {
    std::string key = std::holds_alternative<Marker>(b->key) ? std::string("$")
                                                             : render_term(std::get<Term>(b->key));
    return json{{"base", {{"key", key}, {"value", meaning_to_json(b->value)}}}};
  }
  const auto& c = std::get<CompositionPair>(e);
  return json{{"composition",
               {{"argument", render_term(c.argument)}, {"result", render_term(c.result)}}}};
}

TableEntry entry_from_json(const json& j) {
  if (j.contains("base")) {
    const json& b = j["base"];
    std::string key = need_string(b, "key");
    Meaning value = meaning_from_json(need(b, "value"));
    if (key == "$") return BasePair{Marker{}, std::move(value)};
    return BasePair{make_term(key), std::move(value)};
  }
  const json& c = need(j, "composition");
  return CompositionPair{need_term(c, "argument"), need_term(c, "result")};
}

json table_to_json(const TableRecord& t) {
  json rows = json::array();
  for (const auto& row : t.table.rows) {
    json entries = json::array();
    for (const auto& e : row.entries) entries.push_back(entry_to_json(e));
    rows.push_back({{"subject", render_term(row.subject)}, {"entries", std::move(entries)}});
  }
  return json{{"type", "table"},
              {"subject", t.subject},
              {"variant", std::string(to_string(t.table.variant))},
              {"rows", std::move(rows)}};
}

TableRecord table_from_json(const json& j) {
  TableRecord t;
  t.subject = need_string(j, "subject");
  t.table.variant = parse_variant(need_string(j, "variant"));
  for (const auto& row : need(j, "rows")) {
    MuRow r{need_term(row, "subject"), {}};
    for (const auto& e : need(row, "entries")) r.entries.push_back(entry_from_json(e));
    t.table.rows.push_back(std::move(r));
  }
  return t;
}

json polynomial_to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients) coeffs.push_back(rational_to_json(c));
  return json{{"degree", p.degree}, {"coefficients", std::move(coeffs)}};
}

Polynomial polynomial_from_json(const json& j) {
  Polynomial p;
  p.degree = static_cast<unsigned>(need_size(j, "degree"));
  for (const auto& c : need(j, "coefficients")) p.coefficients.push_back(rational_from_json(c));
  return p;
}

json indices_to_json(const std::vector<std::size_t>& v) { return json(v); }

std::vector<std::size_t> indices_from_json(const json& j) {
  if (!j.is_array()) throw SpecError("bundle: expected an index array");
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    if (!e.is_number_unsigned()) throw SpecError("bundle: bad index");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

json certificate_to_json(const Certificate& c) {
  if (const auto* f = std::get_if<Fitted>(&c)) {
    if (const auto* p = std::get_if<PolynomialFit>(&f->function)) {
      return json{{"kind", "fitted"},
                  {"polynomial", polynomial_to_json(p->polynomial)},
                  {"natural_coefficients", p->polynomial.has_natural_coefficients()},
                  {"nullity", p->nullity}};
    }
    json rows = json::array();
    for (const auto& [args, target] : std::get<TruthTable>(f->function).rows) {
      json a = json::array();
      for (const auto& m : args) a.push_back(meaning_to_json(m));
      rows.push_back({{"args", std::move(a)}, {"target", meaning_to_json(target)}});
    }
    return json{{"kind", "fitted"}, {"truth_table", std::move(rows)}};
  }
  if (const auto* r = std::get_if<RefutedByInconsistency>(&c)) {
    return json{{"kind", "inconsistency"},
                {"first", r->first},
                {"second", r->second},
                {"first_point", sample_to_json(r->first_point)},
                {"second_point", sample_to_json(r->second_point)}};
  }
  const auto& r = std::get<RefutedByInfeasibility>(c);
  json points = json::array();
  for (const auto& p : r.points) points.push_back(sample_to_json(p));
  json out{{"kind", "infeasibility"},
           {"degree", r.degree},
           {"witness", indices_to_json(r.witness)},
           {"points", std::move(points)}};
  if (r.interpolant) out["interpolant"] = polynomial_to_json(*r.interpolant);
  if (r.held_out) out["held_out"] = *r.held_out;
  return out;
}

Certificate certificate_from_json(const json& j) {
  std::string kind = need_string(j, "kind");
  if (kind == "fitted") {
    if (j.contains("polynomial")) {
      return Fitted{PolynomialFit{polynomial_from_json(j["polynomial"]), need_size(j, "nullity")}};
    }
    TruthTable table;
    for (const auto& row : need(j, "truth_table")) {
      std::vector<Meaning> args;
      for (const auto& a : need(row, "args")) args.push_back(meaning_from_json(a));
      table.rows.emplace_back(std::move(args), meaning_from_json(need(row, "target")));
    }
    return Fitted{std::move(table)};
  }
  if (kind == "inconsistency") {
    return RefutedByInconsistency{need_size(j, "first"), need_size(j, "second"),
                                  sample_from_json(need(j, "first_point")),
                                  sample_from_json(need(j, "second_point"))};
  }
  if (kind == "infeasibility") {
    RefutedByInfeasibility r;
    r.degree = static_cast<unsigned>(need_size(j, "degree"));
    r.witness = indices_from_json(need(j, "witness"));
    for (const auto& p : need(j, "points")) r.points.push_back(sample_from_json(p));
    if (j.contains("interpolant")) r.interpolant = polynomial_from_json(j["interpolant"]);
    if (j.contains("held_out")) r.held_out = need_size(j, "held_out");
    return r;
  }
  throw SpecError("bundle: unknown certificate kind " + kind);
}

json class_to_json(const FunctionClass& cls) {
  if (const auto* p = std::get_if<PolyTwoVar>(&cls)) {
    return json{{"kind", "poly2"}, {"max_degree", p->max_degree}};
  }
  return json{{"kind", "boolfun"}, {"arity", std::get<BoolFunOfProjections>(cls).arity}};
}

FunctionClass class_from_json(const json& j) {
  std::string kind = need_string(j, "kind");
  if (kind == "poly2") return PolyTwoVar{static_cast<unsigned>(need_size(j, "max_degree"))};
  if (kind == "boolfun") return BoolFunOfProjections{need_size(j, "arity")};
  throw SpecError("bundle: unknown function class " + kind);
}

json record_to_json(const CertificateRecord& r) {
  json out{{"type", "certificate"}, {"subject", r.subject}, {"class", class_to_json(r.function_class)}};
  if (r.budget) {
    out["budget"] = json{{"budget", r.budget->budget},
                         {"selected", indices_to_json(r.budget->selected)},
                         {"rank", r.budget->rank},
                         {"dimension", r.budget->dimension},
                         {"unique", r.budget->unique}};
  }
  if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate);
  return out;
}

CertificateRecord record_from_json(const json& j) {
  CertificateRecord r;
  r.subject = need_string(j, "subject");
  r.function_class = class_from_json(need(j, "class"));
  if (j.contains("certificate")) r.certificate = certificate_from_json(j["certificate"]);
  if (j.contains("budget")) {
    const json& b = j["budget"];
    BudgetReport report;
    report.budget = need_size(b, "budget");
    report.selected = indices_from_json(need(b, "selected"));
    report.rank = need_size(b, "rank");
    report.dimension = need_size(b, "dimension");
    const json& unique = need(b, "unique");
    if (!unique.is_boolean()) throw SpecError("bundle: \"unique\" must be a boolean");
    report.unique = unique.get<bool>();
    report.certificate = r.certificate;
    r.budget = std::move(report);
  }
  return r;
}

}  // namespace

json bundle_to_json(const ReportBundle& b) {
  json entries = json::array();
  for (const auto& e : b.entries) {
    if (const auto* r = std::get_if<VerificationReport>(&e)) {
      entries.push_back(report_to_json(*r));
    } else if (const auto* t = std::get_if<TableRecord>(&e)) {
      entries.push_back(table_to_json(*t));
    } else {
      entries.push_back(record_to_json(std::get<CertificateRecord>(e)));
    }
  }
  return json{{"tool_version", b.tool_version},
              {"input_digest", b.input_digest},
              {"entries", std::move(entries)}};
}

ReportBundle bundle_from_json(const json& j) {
  ReportBundle b;
  b.tool_version = need_string(j, "tool_version");
  b.input_digest = need_string(j, "input_digest");
  const json& entries = need(j, "entries");
  if (!entries.is_array()) throw SpecError("bundle: \"entries\" must be an array");
  for (const auto& e : entries) {
    std::string type = need_string(e, "type");
    if (type == "verification") {
      b.entries.emplace_back(report_from_json(e));
    } else if (type == "table") {
      b.entries.emplace_back(table_from_json(e));
    } else if (type == "certificate") {
      b.entries.emplace_back(record_from_json(e));
    } else {
      throw SpecError("bundle: unknown entry type " + type);
    }
  }
  return b;
}

std::string serialize_bundle(const ReportBundle& b) { return bundle_to_json(b).dump(2) + "\n"; }

ReportBundle deserialize_bundle(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("bundle: ") + e.what());
  }
  try {
    return bundle_from_json(j);
  } catch (const json::exception& e) {
    throw SpecError(std::string("bundle: ") + e.what());
  } catch (const ParseError& e) {
    throw SpecError(std::string("bundle: ") + e.what());
  }
}

std::string bundle_digest(const ReportBundle& b) {
  return "fnv1a64:" + fnv1a64_hex(serialize_bundle(b));
}

// ---------------------------------------------------------------------------
// Replay

namespace {

SampleSet samples_for(const CertificateRecord& r, const json& spec) {
  if (spec_kind(spec) == SpecKind::Samples) return samples_from_json(spec);
  if (spec_kind(spec) == SpecKind::Refute) {
    const auto* p = std::get_if<PolyTwoVar>(&r.function_class);
    if (!p) throw SpecError("refute bundles hold polynomial certificates only");
    return interval_samples(refute_spec_from_json(spec).grammar, p->max_degree);
  }
  throw SpecError("certificate entries need a samples or refute spec");
}

bool replay_record(const CertificateRecord& r, const json& spec) {
  SampleSet samples = samples_for(r, spec);
  if (r.certificate) {
    try {
      if (!verify_certificate(*r.certificate, samples)) return false;
    } catch (const CertificateMismatch&) {
      return false;
    }
  }
  if (r.budget) {
    const auto* p = std::get_if<PolyTwoVar>(&r.function_class);
    if (!p) return false;
    return fit_polynomial_with_budget(samples, *p, r.budget->budget) == *r.budget &&
           r.budget->certificate == r.certificate;
  }
  return r.certificate && fit(samples, r.function_class) == *r.certificate;
}

}  // namespace

bool replay_bundle(const ReportBundle& b, const json& spec) {
  if (spec_digest(spec) != b.input_digest) {
    throw DigestMismatch("spec digest " + spec_digest(spec) + " does not match bundle input " +
                         b.input_digest);
  }
  std::optional<LanguageSpec> language;
  for (const auto& e : b.entries) {
    if (std::holds_alternative<CertificateRecord>(e)) {
      if (!replay_record(std::get<CertificateRecord>(e), spec)) return false;
      continue;
    }
    if (!language) language = language_spec_from_json(spec);
    if (const auto* r = std::get_if<VerificationReport>(&e)) {
      auto session = encode(language->fragment, language->meanings, r->variant);
      if (verify_homomorphism(session, r->subject) != *r) return false;
    } else {
      const auto& t = std::get<TableRecord>(e);
      auto session = encode(language->fragment, language->meanings, t.table.variant);
      if (materialize_table(session) != t.table) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Human rendering

std::string render_human(const ReportBundle& b) {
  std::ostringstream out;
  out << b.tool_version << "  input " << b.input_digest << "\n";
  for (const auto& e : b.entries) {
    if (const auto* r = std::get_if<VerificationReport>(&e)) {
      out << "[" << to_string(r->status) << "] " << r->subject << " (" << to_string(r->variant)
          << "): " << r->terms_checked << " terms, " << r->pairs_checked << " pairs";
      if (r->variant == EncodingVariant::Dollar) out << ", " << r->marker_checks << " marker checks";
      out << ", " << r->violations.size() << " violations\n";
      for (const auto& v : r->violations) {
        out << "    " << v.equation << ": " << v.left << " != " << v.right << "\n";
      }
    } else if (const auto* t = std::get_if<TableRecord>(&e)) {
      out << "table " << t->subject << " (" << to_string(t->table.variant) << ")\n";
      for (const auto& row : t->table.rows) {
        out << "  mu(" << render_term(row.subject) << ") = {";
        for (std::size_t k = 0; k < row.entries.size(); ++k) {
          out << (k ? ", " : " ") << render_entry(row.entries[k]);
        }
        out << " }\n";
      }
    } else {
      const auto& c = std::get<CertificateRecord>(e);
      out << c.subject << " [" << describe(c.function_class) << "]: ";
      if (c.budget) {
        out << "budget " << c.budget->budget << ", selected";
        for (auto i : c.budget->selected) out << " " << i;
        out << ", rank " << c.budget->rank << "/" << c.budget->dimension;
        if (!c.budget->unique) out << ", under-determined (nullity " << c.budget->nullity() << ")";
        out << "; ";
      }
      out << (c.certificate ? describe(*c.certificate) : std::string("no certificate")) << "\n";
    }
  }
  return out.str();
}

}  // namespace compsem
