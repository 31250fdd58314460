#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "compsem/mu_encoder.hpp"
#include "compsem/systematicity.hpp"
#include "compsem/verification_report.hpp"

namespace compsem {

inline constexpr std::string_view kToolVersion = "compsem 0.1.0";

/// A fitted or refuted systematicity query, with enough context to rerun it.
struct CertificateRecord {
  std::string subject;
  FunctionClass function_class;
  /// Present for budgeted fits; holds the selection and rank bookkeeping.
  std::optional<BudgetReport> budget;
  /// Absent only for an under-determined budgeted fit.
  std::optional<Certificate> certificate;

  friend bool operator==(const CertificateRecord&, const CertificateRecord&) = default;
};

struct TableRecord {
  std::string subject;
  MuTable table;
  friend bool operator==(const TableRecord&, const TableRecord&) = default;
};

using BundleEntry = std::variant<VerificationReport, TableRecord, CertificateRecord>;

/// Evidence produced by one command run. `input_digest` identifies the
/// canonicalized input spec it was produced from.
struct ReportBundle {
  std::string tool_version{kToolVersion};
  std::string input_digest;
  std::vector<BundleEntry> entries;

  friend bool operator==(const ReportBundle&, const ReportBundle&) = default;
};

/// Compact canonical JSON text of a spec (sorted keys, no whitespace).
std::string canonical_spec_text(const nlohmann::json& spec);
/// "fnv1a64:" followed by 16 lowercase hex digits of the canonical text.
std::string spec_digest(const nlohmann::json& spec);
std::string fnv1a64_hex(std::string_view bytes);

nlohmann::json bundle_to_json(const ReportBundle& b);
ReportBundle bundle_from_json(const nlohmann::json& j);

/// Canonical UTF-8 encoding: sorted keys, two-space indent, trailing newline,
/// rationals as [numerator, denominator].
std::string serialize_bundle(const ReportBundle& b);
/// Throws SpecError on malformed input.
ReportBundle deserialize_bundle(std::string_view bytes);
/// Digest of the serialized bundle itself.
std::string bundle_digest(const ReportBundle& b);

/// Reruns every check in the bundle against `spec`: verification reports are
/// recomputed and compared, tables rematerialized, certificates verified and
/// their queries refitted. True iff everything reproduces. Throws
/// DigestMismatch when `spec` is not the bundle's input.
bool replay_bundle(const ReportBundle& b, const nlohmann::json& spec);

/// Human-readable rendering of a bundle.
std::string render_human(const ReportBundle& b);

}  // namespace compsem
