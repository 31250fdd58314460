#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "compsem/meaning.hpp"
#include "compsem/term.hpp"
#include "compsem/verification_report.hpp"

namespace compsem {

namespace detail {
struct SessionState;
}

/// The value mu(s) of the compositional encoding, represented by its tag
/// (the term s, or the marker for mu($)) together with the session that
/// defines its graph
///
///   mu(s) = { <s, m(s)> }  ∪  { <mu(t), mu(s.t)> : s.t in S }      (plain)
///   mu(s) = { <$, m(s)> }  ∪  { <mu(t), mu(s.t)> : s.t in S }      (dollar)
///
/// Two values are equal iff they come from the same session and carry the
/// same tag.
class MuValue {
 public:
  using Tag = std::variant<Term, Marker>;

  Tag tag() const;
  bool is_marker() const;
  std::string render() const;

  friend bool operator==(const MuValue& a, const MuValue& b) {
    return a.state_ == b.state_ && a.index_ == b.index_;
  }

 private:
  friend class EncodingSession;
  friend std::variant<Meaning, MuValue> apply(const MuValue& f,
                                              const std::variant<Term, MuValue, Marker>& x);
  static constexpr std::size_t kMarker = static_cast<std::size_t>(-1);

  MuValue(std::shared_ptr<const detail::SessionState> state, std::size_t index)
      : state_(std::move(state)), index_(index) {}

  std::shared_ptr<const detail::SessionState> state_;
  std::size_t index_;
};

using Argument = std::variant<Term, MuValue, Marker>;
using ApplyResult = std::variant<Meaning, MuValue>;

/// An encoding of (fragment, m, variant). Immutable once built; copies share
/// the same state, so mu values from copies compare equal.
class EncodingSession {
 public:
  /// Throws MissingMeanings listing every term of `frag` without a meaning.
  static EncodingSession encode(LanguageFragment frag, const MeaningAssignment& m,
                                EncodingVariant variant);

  /// Throws InvalidFragment when `s` is not a term of the fragment.
  MuValue mu(const Term& s) const;
  /// mu($) = $. Dollar variant only; throws UndefinedApplication otherwise.
  MuValue mu_marker() const;
  /// mu(s.$) = m(s). Dollar variant only.
  Meaning mu(const DollarTerm& s) const;

  const LanguageFragment& fragment() const;
  EncodingVariant variant() const;
  const Meaning& meaning(std::size_t term_index) const;
  std::uint64_t id() const;

 private:
  explicit EncodingSession(std::shared_ptr<const detail::SessionState> state)
      : state_(std::move(state)) {}
  std::shared_ptr<const detail::SessionState> state_;
};

inline EncodingSession encode(LanguageFragment frag, const MeaningAssignment& m,
                              EncodingVariant variant) {
  return EncodingSession::encode(std::move(frag), m, variant);
}

/// Function application mu(s)(x), read off the graph of mu(s):
///   plain:  mu(s)(s) = m(s)
///   dollar: mu(s)($) = mu(s)(mu($)) = m(s)
///   both:   mu(s)(mu(t)) = mu(s.t) when s.t is in the fragment
/// Anything else throws UndefinedApplication. mu($) is only an argument;
/// applying it as a function is undefined.
ApplyResult apply(const MuValue& f, const Argument& x);

std::string render_result(const ApplyResult& r);

/// Exhaustively checks the defining equations over every term and every
/// allowed pair. Violations are reported, never thrown.
VerificationReport verify_homomorphism(const EncodingSession& session,
                                       std::string subject = {});

// ---------------------------------------------------------------------------
// Explicit tables

/// `<s, m(s)>` (plain) or `<$, m(s)>` (dollar).
struct BasePair {
  std::variant<Term, Marker> key;
  Meaning value;
  friend bool operator==(const BasePair&, const BasePair&) = default;
};

/// `<mu(argument), mu(result)>` with result = subject.argument.
struct CompositionPair {
  Term argument;
  Term result;
  friend bool operator==(const CompositionPair&, const CompositionPair&) = default;
};

using TableEntry = std::variant<BasePair, CompositionPair>;

std::string render_entry(const TableEntry& e);

/// One equation of the table: the base pair first, then one composition pair
/// per allowed right argument in enumeration order.
struct MuRow {
  Term subject;
  std::vector<TableEntry> entries;
  friend bool operator==(const MuRow&, const MuRow&) = default;
};

struct MuTable {
  EncodingVariant variant = EncodingVariant::Plain;
  std::vector<MuRow> rows;
  friend bool operator==(const MuTable&, const MuTable&) = default;
};

MuTable materialize_table(const EncodingSession& session);

/// Canonical text of the set mu(rows[row]) unfolded to `depth` levels of
/// nested mu values, with set elements sorted. Depth 0 keeps only the base
/// pair.
std::string extensional_form(const MuTable& table, std::size_t row, int depth);

// ---------------------------------------------------------------------------
// Effective enumeration

/// An enumeration t(0), t(1), ... of a composition-closed language,
/// possibly unbounded, with a membership test.
class TermStream {
 public:
  virtual ~TermStream() = default;
  /// nullopt past the end of a finite stream.
  virtual std::optional<Term> at(std::size_t index) const = 0;
  virtual bool contains(const Term& t) const = 0;
  /// Number of terms for finite streams.
  virtual std::optional<std::size_t> bound() const { return std::nullopt; }
};

class FragmentStream final : public TermStream {
 public:
  explicit FragmentStream(const LanguageFragment& frag) : frag_(&frag) {}
  std::optional<Term> at(std::size_t index) const override;
  bool contains(const Term& t) const override { return frag_->contains(t); }
  std::optional<std::size_t> bound() const override { return frag_->size(); }

 private:
  const LanguageFragment* frag_;
};

using MeaningFunction = std::function<Meaning(const Term&)>;

/// Entry `pair` of row `row` of the table, computed on demand from the
/// stream and m alone. Pair 0 is the base pair and is the only entry that
/// evaluates m (once, on t(row)). Pair n > 0 is the n-th t(b), in stream
/// order, with t(row).t(b) in the language; the scan gives up after
/// `search_bound` stream positions. Throws OutOfRange.
TableEntry enumerate_table(const TermStream& stream, const MeaningFunction& m,
                           std::size_t row, std::size_t pair,
                           EncodingVariant variant = EncodingVariant::Plain,
                           std::size_t search_bound = 100000);

}  // namespace compsem
