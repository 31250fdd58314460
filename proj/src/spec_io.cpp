#include "compsem/spec_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "compsem/error.hpp"

namespace compsem {

using nlohmann::json;

nlohmann::json read_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw SpecError(path.string() + ": " + e.what());
  }
}

SpecKind spec_kind(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw SpecError("spec must be an object with a string \"kind\"");
  }
  const auto& kind = spec["kind"].get_ref<const std::string&>();
  if (kind == "language") return SpecKind::Language;
  if (kind == "samples") return SpecKind::Samples;
  if (kind == "refute") return SpecKind::Refute;
  throw SpecError("unknown spec kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Value encodings

json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) {
      throw SpecError("invalid integer string '" + j.get<std::string>() + "'");
    }
    return z;
  }
  throw SpecError("expected an integer, got " + j.dump());
}

json rational_to_json(const Rational& q) {
  return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw SpecError("expected [numerator, denominator]");
  Integer den = integer_from_json(j[1]);
  if (den == 0) throw SpecError("zero denominator");
  Rational q(integer_from_json(j[0]), den);
  q.canonicalize();
  return q;
}

json meaning_to_json(const Meaning& m) {
  switch (m.kind()) {
    case Meaning::Kind::Integer:
      return json{{"int", integer_to_json(m.as_integer())}};
    case Meaning::Kind::Rational:
      return json{{"rat", rational_to_json(m.as_rational())}};
    case Meaning::Kind::Boolean:
      return m.as_boolean();
    case Meaning::Kind::Symbol: {
      json args = json::array();
      for (const auto& a : m.as_symbol().args) args.push_back(meaning_to_json(a));
      return json{{"sym", m.as_symbol().name}, {"args", std::move(args)}};
    }
    case Meaning::Kind::Tuple: {
      json items = json::array();
      for (const auto& a : m.as_tuple().items) items.push_back(meaning_to_json(a));
      return json{{"tuple", std::move(items)}};
    }
  }
  return nullptr;
}

Meaning meaning_from_json(const json& j) {
  if (j.is_boolean()) return Meaning::boolean(j.get<bool>());
  if (j.is_number_integer()) return Meaning::integer(integer_from_json(j));
  if (j.is_string()) {
    try {
      return Meaning::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw SpecError("invalid meaning literal \"" + j.get<std::string>() + "\": " + e.what());
    }
  }
  if (j.is_object() && j.size() == 1 && j.contains("int")) {
    return Meaning::integer(integer_from_json(j["int"]));
  }
  if (j.is_object() && j.size() == 1 && j.contains("rat")) {
    return Meaning::rational(rational_from_json(j["rat"]));
  }
  if (j.is_object() && j.size() == 1 && j.contains("tuple") && j["tuple"].is_array()) {
    std::vector<Meaning> items;
    for (const auto& e : j["tuple"]) items.push_back(meaning_from_json(e));
    return Meaning::tuple(std::move(items));
  }
  if (j.is_object() && j.contains("sym") && j["sym"].is_string()) {
    std::vector<Meaning> args;
    if (j.contains("args")) {
      if (!j["args"].is_array()) throw SpecError("symbol args must be an array");
      for (const auto& e : j["args"]) args.push_back(meaning_from_json(e));
    }
    try {
      return Meaning::symbol(j["sym"].get<std::string>(), std::move(args));
    } catch (const TypeError& e) {
      throw SpecError(e.what());
    }
  }
  throw SpecError("cannot read a meaning from " + j.dump());
}

json sample_to_json(const SamplePoint& s) {
  json args = json::array();
  for (const auto& a : s.args) args.push_back(meaning_to_json(a));
  return json{{"args", std::move(args)}, {"target", meaning_to_json(s.target)}, {"label", s.label}};
}

SamplePoint sample_from_json(const json& j) {
  if (!j.is_object() || !j.contains("args") || !j["args"].is_array() || !j.contains("target")) {
    throw SpecError("sample must be an object with \"args\" and \"target\"");
  }
  SamplePoint s{{}, meaning_from_json(j["target"]), {}};
  for (const auto& a : j["args"]) s.args.push_back(meaning_from_json(a));
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw SpecError("sample label must be a string");
    s.label = j["label"].get<std::string>();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Spec documents

namespace {

void expect_kind(const json& spec, SpecKind kind, const char* name) {
  if (spec_kind(spec) != kind) throw SpecError(std::string("expected a ") + name + " spec");
}

const json& field(const json& spec, const char* name) {
  if (!spec.contains(name)) throw SpecError(std::string("missing field \"") + name + "\"");
  return spec[name];
}

Term term_field(const json& j, const std::string& where) {
  if (!j.is_string()) throw SpecError(where + ": terms must be strings");
  try {
    return make_term(j.get<std::string>());
  } catch (const Error& e) {
    throw SpecError(where + ": " + e.what());
  }
}

}  // namespace

LanguageSpec language_spec_from_json(const json& spec) {
  expect_kind(spec, SpecKind::Language, "language");

  std::vector<Atom> atoms;
  const json& atoms_j = field(spec, "atoms");
  if (!atoms_j.is_array()) throw SpecError("\"atoms\" must be an array");
  for (const auto& a : atoms_j) {
    if (!a.is_string()) throw SpecError("atoms must be strings");
    try {
      atoms.emplace_back(a.get<std::string>());
    } catch (const InvalidAtom& e) {
      throw SpecError(e.what());
    }
  }

  std::vector<Term> terms;
  const json& terms_j = field(spec, "terms");
  if (!terms_j.is_array()) throw SpecError("\"terms\" must be an array");
  for (std::size_t i = 0; i < terms_j.size(); ++i) {
    terms.push_back(term_field(terms_j[i], "terms[" + std::to_string(i) + "]"));
  }

  std::vector<std::pair<Term, Term>> pairs;
  const json& pairs_j = field(spec, "pairs");
  if (!pairs_j.is_array()) throw SpecError("\"pairs\" must be an array");
  for (std::size_t i = 0; i < pairs_j.size(); ++i) {
    const json& p = pairs_j[i];
    std::string where = "pairs[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) throw SpecError(where + ": expected [left, right]");
    pairs.emplace_back(term_field(p[0], where), term_field(p[1], where));
  }

  std::optional<LanguageFragment> frag;
  try {
    frag.emplace(std::move(atoms), std::move(terms), pairs);
  } catch (const InvalidFragment& e) {
    throw SpecError(e.what());
  }

  MeaningAssignment meanings;
  const json& meanings_j = field(spec, "meanings");
  if (!meanings_j.is_object()) throw SpecError("\"meanings\" must be an object");
  for (const auto& [key, value] : meanings_j.items()) {
    Term t = term_field(json(key), "meanings key");
    if (!frag->contains(t)) throw SpecError("meaning given for " + key + ", not a term");
    meanings.set(t, meaning_from_json(value));
  }
  if (auto missing = meanings.missing(*frag); !missing.empty()) {
    std::string msg = "meanings missing for";
    for (const Term& t : missing) msg += " " + render_term(t);
    throw SpecError(msg);
  }

  EncodingVariant variant = EncodingVariant::Plain;
  if (spec.contains("variant")) {
    if (!spec["variant"].is_string()) throw SpecError("\"variant\" must be a string");
    variant = parse_variant(spec["variant"].get<std::string>());
  }
  return LanguageSpec{std::move(*frag), std::move(meanings), variant};
}

SampleSet samples_from_json(const json& spec) {
  expect_kind(spec, SpecKind::Samples, "samples");
  const json& samples_j = field(spec, "samples");
  if (!samples_j.is_array() || samples_j.empty()) {
    throw SpecError("\"samples\" must be a non-empty array");
  }
  SampleSet out;
  out.reserve(samples_j.size());
  for (const auto& s : samples_j) out.push_back(sample_from_json(s));
  return out;
}

RefuteSpec refute_spec_from_json(const json& spec) {
  expect_kind(spec, SpecKind::Refute, "refute");
  RefuteSpec out;
  const json& g = field(spec, "grammar");
  if (!g.is_string()) throw SpecError("\"grammar\" must be a string");
  out.grammar = parse_grammar(g.get<std::string>());
  const json& d = field(spec, "max_degree");
  if (!d.is_number_unsigned() || d.get<std::uint64_t>() < 1 ||
      d.get<std::uint64_t>() > std::numeric_limits<unsigned>::max()) {
    throw SpecError("\"max_degree\" must be a positive integer");
  }
  out.max_degree = d.get<unsigned>();
  return out;
}

json to_spec_json(const LanguageFragment& frag, const MeaningAssignment& m,
                  EncodingVariant variant) {
  json atoms = json::array();
  for (const Atom& a : frag.atoms()) atoms.push_back(a.name());
  json terms = json::array();
  json meanings = json::object();
  for (const Term& t : frag.terms()) {
    terms.push_back(render_term(t));
    meanings[render_term(t)] = m.at(t).render();
  }
  json pairs = json::array();
  for (const auto& [s, t] : frag.allowed_pairs()) {
    pairs.push_back(json::array({render_term(s), render_term(t)}));
  }
  return json{{"kind", "language"}, {"atoms", std::move(atoms)},   {"terms", std::move(terms)},
              {"pairs", std::move(pairs)}, {"meanings", std::move(meanings)},
              {"variant", std::string(to_string(variant))}};
}

json to_spec_json(const SampleSet& samples) {
  json arr = json::array();
  for (const auto& s : samples) arr.push_back(sample_to_json(s));
  return json{{"kind", "samples"}, {"samples", std::move(arr)}};
}

json to_spec_json(const RefuteSpec& spec) {
  return json{{"kind", "refute"},
              {"grammar", std::string(to_string(spec.grammar))},
              {"max_degree", spec.max_degree}};
}

}  // namespace compsem
