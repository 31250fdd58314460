#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace compsem {

enum class EncodingVariant { Plain, Dollar };

std::string_view to_string(EncodingVariant v);
/// Accepts "plain" or "dollar"; throws SpecError otherwise.
EncodingVariant parse_variant(std::string_view text);

enum class Status { Pass, Fail };

std::string_view to_string(Status s);

struct Violation {
  std::string equation;
  std::string left;
  std::string right;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of checking the defining equations of one encoding. `status` is
/// Pass exactly when `violations` is empty.
struct VerificationReport {
  std::string subject;
  EncodingVariant variant = EncodingVariant::Plain;
  std::size_t terms_checked = 0;
  std::size_t pairs_checked = 0;
  std::size_t marker_checks = 0;
  std::vector<Violation> violations;
  Status status = Status::Pass;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

}  // namespace compsem
