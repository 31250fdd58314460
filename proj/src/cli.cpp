#include "compsem/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "compsem/certlib.hpp"
#include "compsem/error.hpp"
#include "compsem/spec_io.hpp"

namespace compsem {

namespace {

struct OutputOptions {
  std::string out_path;
  std::string format = "human";
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out_path, "Write the report to this path instead of stdout");
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"human", "machine"}));
}

void emit_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("error while writing " + path);
}

void emit(const ReportBundle& b, const OutputOptions& o, std::ostream& out) {
  emit_text(o.format == "machine" ? serialize_bundle(b) : render_human(b), o.out_path, out);
}

// ---------------------------------------------------------------------------

struct EncodeArgs {
  std::string spec;
  std::string variant;
  bool table = false;
  OutputOptions output;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  nlohmann::json spec = read_spec_file(a.spec);
  LanguageSpec lang = language_spec_from_json(spec);
  EncodingVariant variant = a.variant.empty() ? lang.variant : parse_variant(a.variant);

  auto session = encode(lang.fragment, lang.meanings, variant);
  ReportBundle bundle;
  bundle.input_digest = spec_digest(spec);
  VerificationReport report = verify_homomorphism(session, a.spec);
  const bool pass = report.status == Status::Pass;
  bundle.entries.emplace_back(std::move(report));
  if (a.table) bundle.entries.emplace_back(TableRecord{a.spec, materialize_table(session)});
  emit(bundle, a.output, out);
  return pass ? kExitOk : kExitNegative;
}

struct FitArgs {
  std::string samples;
  std::string cls;
  unsigned degree = 1;
  std::optional<std::size_t> budget;
  OutputOptions output;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  nlohmann::json spec = read_spec_file(a.samples);
  SampleSet samples = samples_from_json(spec);

  CertificateRecord record;
  record.subject = "fit " + a.samples;
  if (a.cls == "poly2") {
    record.function_class = PolyTwoVar{a.degree};
  } else if (a.cls == "boolfun") {
    if (a.budget) throw SpecError("--budget applies to polynomial classes only");
    record.function_class = BoolFunOfProjections{samples.front().args.size()};
  } else {
    throw SpecError("unknown class '" + a.cls + "' (expected poly2 or boolfun)");
  }

  try {
    if (a.budget) {
      record.budget = fit_polynomial_with_budget(samples, PolyTwoVar{a.degree}, *a.budget);
      record.certificate = record.budget->certificate;
    } else {
      record.certificate = fit(samples, record.function_class);
    }
  } catch (const TypeError& e) {
    throw SpecError(e.what());
  }

  ReportBundle bundle;
  bundle.input_digest = spec_digest(spec);
  const bool fitted = record.certificate && is_fitted(*record.certificate);
  bundle.entries.emplace_back(std::move(record));
  emit(bundle, a.output, out);
  return fitted ? kExitOk : kExitNegative;
}

struct RefuteArgs {
  std::string spec_path;
  std::string grammar = "dn";
  unsigned max_degree = 4;
  std::size_t max_length = RefutationLimits{}.max_numeral_length;
  OutputOptions output;
};

int cmd_refute(const RefuteArgs& a, std::ostream& out) {
  RefuteSpec rs;
  if (!a.spec_path.empty()) {
    rs = refute_spec_from_json(read_spec_file(a.spec_path));
  } else {
    if (a.max_degree < 1) throw SpecError("--max-degree must be at least 1");
    rs = RefuteSpec{parse_grammar(a.grammar), a.max_degree};
  }
  nlohmann::json spec = to_spec_json(rs);

  auto certs = refute_polynomial_all_degrees(rs.grammar, rs.max_degree,
                                             RefutationLimits{a.max_length});
  ReportBundle bundle;
  bundle.input_digest = spec_digest(spec);
  bool all_refuted_and_replayed = true;
  for (unsigned d = 1; d <= rs.max_degree; ++d) {
    const Certificate& c = certs[d - 1];
    all_refuted_and_replayed = all_refuted_and_replayed && !is_fitted(c) &&
                               verify_certificate(c, interval_samples(rs.grammar, d));
    bundle.entries.emplace_back(CertificateRecord{
        "refute " + std::string(to_string(rs.grammar)) + " degree " + std::to_string(d),
        PolyTwoVar{d}, std::nullopt, c});
  }
  emit(bundle, a.output, out);
  return all_refuted_and_replayed ? kExitOk : kExitNegative;
}

struct EnumerateArgs {
  std::string source;
  std::size_t row = 0;
  std::size_t pair = 0;
  std::string variant;
  std::size_t search_bound = 100000;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<TableEntry> entry;
  try {
    if (a.source == "nd" || a.source == "dn") {
      NumeralStream stream(parse_grammar(a.source));
      EncodingVariant variant = a.variant.empty() ? EncodingVariant::Plain : parse_variant(a.variant);
      entry = enumerate_table(
          stream, [&](const Term& t) { return stream.meaning(t); }, a.row, a.pair, variant,
          a.search_bound);
    } else {
      LanguageSpec lang = language_spec_from_json(read_spec_file(a.source));
      EncodingVariant variant = a.variant.empty() ? lang.variant : parse_variant(a.variant);
      FragmentStream stream(lang.fragment);
      entry = enumerate_table(
          stream, [&](const Term& t) { return lang.meanings.at(t); }, a.row, a.pair, variant,
          a.search_bound);
    }
  } catch (const OutOfRange& e) {
    err << "enumerate: " << e.what() << "\n";
    return kExitNegative;
  }
  out << render_entry(*entry) << "\n";
  return kExitOk;
}

struct ReplayArgs {
  std::string bundle;
  std::string spec;
};

int cmd_replay(const ReplayArgs& a, std::ostream& out) {
  std::ifstream in(a.bundle, std::ios::binary);
  if (!in) throw IoError("cannot read " + a.bundle);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ReportBundle bundle = deserialize_bundle(bytes);
  bool ok = replay_bundle(bundle, read_spec_file(a.spec));
  out << (ok ? "replay: all checks reproduce\n" : "replay: checks do NOT reproduce\n");
  return ok ? kExitOk : kExitNegative;
}

struct SamplesArgs {
  std::string source;
  std::size_t max_length = 3;
  std::string reading = "intended";
  std::string out_path;
};

int cmd_samples(const SamplesArgs& a, std::ostream& out) {
  SampleSet samples;
  if (a.source == "coord") {
    samples = coordination_samples();
  } else {
    NumeralReading reading =
        a.reading == "backwards" ? NumeralReading::Backwards : NumeralReading::Intended;
    samples = numeral_samples(parse_grammar(a.source), a.max_length, reading);
  }
  // One sample per line keeps generated files diffable.
  nlohmann::json spec = to_spec_json(samples);
  std::string text = "{\"kind\": \"samples\", \"samples\": [\n";
  for (std::size_t i = 0; i < spec["samples"].size(); ++i) {
    text += "  " + spec["samples"][i].dump() + (i + 1 < spec["samples"].size() ? ",\n" : "\n");
  }
  text += "]}\n";
  emit_text(text, a.out_path, out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compositional encodings and systematicity certificates", "compsem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  EncodeArgs encode_args;
  auto* encode_cmd = app.add_subcommand("encode", "Encode a language spec and verify mu");
  encode_cmd->add_option("spec", encode_args.spec, "Language spec file")->required();
  encode_cmd->add_option("--variant", encode_args.variant, "Override the spec's variant")
      ->check(CLI::IsMember({"plain", "dollar"}));
  encode_cmd->add_flag("--table", encode_args.table, "Include the materialized mu table");
  add_output_options(encode_cmd, encode_args.output);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a meaning function from a class, or refute");
  fit_cmd->add_option("samples", fit_args.samples, "Samples spec file")->required();
  fit_cmd->add_option("--class", fit_args.cls, "poly2 or boolfun")->required();
  fit_cmd->add_option("--degree", fit_args.degree, "Total degree bound for poly2");
  fit_cmd->add_option("--budget", fit_args.budget, "Number of samples to fit from");
  add_output_options(fit_cmd, fit_args.output);

  RefuteArgs refute_args;
  auto* refute_cmd =
      app.add_subcommand("refute-dn", "Refute polynomial semantics for DN, degree by degree");
  refute_cmd->add_option("--max-degree", refute_args.max_degree, "Highest degree to refute");
  refute_cmd->add_option("--grammar", refute_args.grammar, "dn, or nd as a control")
      ->check(CLI::IsMember({"dn", "nd"}));
  refute_cmd->add_option("--spec", refute_args.spec_path, "Refute spec file instead of flags");
  refute_cmd->add_option("--max-length", refute_args.max_length,
                         "Longest numeral the driver may generate");
  add_output_options(refute_cmd, refute_args.output);

  EnumerateArgs enum_args;
  auto* enum_cmd =
      app.add_subcommand("enumerate", "Print one entry of the mu table, computed on demand");
  enum_cmd->add_option("source", enum_args.source, "Language spec file, or nd / dn")
      ->required();
  enum_cmd->add_option("--row", enum_args.row, "Row (term index)")->required();
  enum_cmd->add_option("--pair", enum_args.pair, "Pair index within the row; 0 is the base pair")
      ->required();
  enum_cmd->add_option("--variant", enum_args.variant)->check(CLI::IsMember({"plain", "dollar"}));
  enum_cmd->add_option("--search-bound", enum_args.search_bound,
                       "Stream positions to scan for a pair");

  ReplayArgs replay_args;
  auto* replay_cmd = app.add_subcommand("replay", "Re-execute a machine-format bundle");
  replay_cmd->add_option("bundle", replay_args.bundle, "Bundle file")->required();
  replay_cmd->add_option("spec", replay_args.spec, "The bundle's input spec")->required();

  SamplesArgs samples_args;
  auto* samples_cmd = app.add_subcommand("samples", "Write a samples spec for a demo grammar");
  samples_cmd->add_option("source", samples_args.source, "nd, dn or coord")
      ->required()
      ->check(CLI::IsMember({"nd", "dn", "coord"}));
  samples_cmd->add_option("--max-length", samples_args.max_length, "Longest numeral");
  samples_cmd->add_option("--reading", samples_args.reading, "intended or backwards")
      ->check(CLI::IsMember({"intended", "backwards"}));
  samples_cmd->add_option("--out", samples_args.out_path, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*encode_cmd) return cmd_encode(encode_args, out);
    if (*fit_cmd) return cmd_fit(fit_args, out);
    if (*refute_cmd) return cmd_refute(refute_args, out);
    if (*enum_cmd) return cmd_enumerate(enum_args, out, err);
    if (*replay_cmd) return cmd_replay(replay_args, out);
    if (*samples_cmd) return cmd_samples(samples_args, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace compsem
