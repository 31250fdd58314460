#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"

#include "compsem/grammars.hpp"
#include "compsem/meaning.hpp"
#include "compsem/mu_encoder.hpp"
#include "compsem/systematicity.hpp"
#include "compsem/term.hpp"

namespace compsem {

// Input specs are JSON documents tagged by "kind":
//
//   {"kind": "language",
//    "atoms": ["wall", "seas", "high"],
//    "terms": ["wall", "seas", "high", "(high.wall)", "(high.seas)"],
//    "pairs": [["high", "wall"], ["high", "seas"]],
//    "meanings": {"wall": "wall", "(high.seas)": "open(seas)", ...},
//    "variant": "plain"}
//
//   {"kind": "samples",
//    "samples": [{"args": [4, 7], "target": 47, "label": "47"}, ...]}
//
//   {"kind": "refute", "grammar": "dn", "max_degree": 4}
//
// Meanings may be written as JSON integers, booleans, literal strings
// ("open(seas)", "7/2", "<1, false>") or the tagged objects used in reports.

enum class SpecKind { Language, Samples, Refute };

struct LanguageSpec {
  LanguageFragment fragment;
  MeaningAssignment meanings;
  EncodingVariant variant = EncodingVariant::Plain;
};

struct RefuteSpec {
  NumeralGrammar grammar = NumeralGrammar::DN;
  unsigned max_degree = 1;
};

/// Throws IoError when the file cannot be read and SpecError when it is not
/// valid JSON.
nlohmann::json read_spec_file(const std::filesystem::path& path);

SpecKind spec_kind(const nlohmann::json& spec);

/// Each parser throws SpecError with a diagnostic on invalid input.
LanguageSpec language_spec_from_json(const nlohmann::json& spec);
SampleSet samples_from_json(const nlohmann::json& spec);
RefuteSpec refute_spec_from_json(const nlohmann::json& spec);

nlohmann::json to_spec_json(const LanguageFragment& frag, const MeaningAssignment& m,
                            EncodingVariant variant);
nlohmann::json to_spec_json(const SampleSet& samples);
nlohmann::json to_spec_json(const RefuteSpec& spec);

// Canonical value encodings shared with the report format.
nlohmann::json integer_to_json(const Integer& z);
Integer integer_from_json(const nlohmann::json& j);
/// [numerator, denominator]
nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json meaning_to_json(const Meaning& m);
Meaning meaning_from_json(const nlohmann::json& j);
nlohmann::json sample_to_json(const SamplePoint& s);
SamplePoint sample_from_json(const nlohmann::json& j);

}  // namespace compsem
