#include "compsem/mu_encoder.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "compsem/error.hpp"

namespace compsem {

namespace detail {

struct SessionState {
  struct Row {
    Meaning base;
    // (argument index, result index), sorted by argument index.
    std::vector<std::pair<std::size_t, std::size_t>> graph;
  };

  std::uint64_t id;
  LanguageFragment fragment;
  EncodingVariant variant;
  std::vector<Row> rows;
  // Graph extension for the marker language: s.$ -> m(s), keyed by s.
  std::unordered_map<Term, Meaning> dollar_extension;
};

}  // namespace detail

namespace {

std::atomic<std::uint64_t> next_session_id{1};

}  // namespace

std::string_view to_string(EncodingVariant v) {
  return v == EncodingVariant::Plain ? "plain" : "dollar";
}

EncodingVariant parse_variant(std::string_view text) {
  if (text == "plain") return EncodingVariant::Plain;
  if (text == "dollar") return EncodingVariant::Dollar;
  throw SpecError("unknown variant '" + std::string(text) + "' (expected plain or dollar)");
}

std::string_view to_string(Status s) { return s == Status::Pass ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------------------
// MuValue

MuValue::Tag MuValue::tag() const {
  if (index_ == kMarker) return Marker{};
  return state_->fragment.term(index_);
}

bool MuValue::is_marker() const { return index_ == kMarker; }

std::string MuValue::render() const {
  if (is_marker()) return "mu($)";
  return "mu(" + render_term(state_->fragment.term(index_)) + ")";
}

// ---------------------------------------------------------------------------
// EncodingSession

EncodingSession EncodingSession::encode(LanguageFragment frag, const MeaningAssignment& m,
                                        EncodingVariant variant) {
  if (auto missing = m.missing(frag); !missing.empty()) {
    std::string msg = "meaning assignment is missing";
    for (const Term& t : missing) msg += " " + render_term(t);
    throw MissingMeanings(msg);
  }

  std::vector<detail::SessionState::Row> rows;
  rows.reserve(frag.size());
  for (const Term& t : frag.terms()) rows.push_back({m.at(t), {}});
  for (const auto& c : frag.compositions()) rows[c.left].graph.emplace_back(c.right, c.result);
  for (auto& row : rows) std::sort(row.graph.begin(), row.graph.end());
  std::unordered_map<Term, Meaning> extension;
  if (variant == EncodingVariant::Dollar) {
    for (const Term& t : frag.terms()) extension.emplace(t, m.at(t));
  }
  auto state = std::make_shared<const detail::SessionState>(
      detail::SessionState{next_session_id.fetch_add(1), std::move(frag), variant,
                           std::move(rows), std::move(extension)});
  return EncodingSession(std::move(state));
}

MuValue EncodingSession::mu(const Term& s) const {
  auto idx = state_->fragment.index_of(s);
  if (!idx) throw InvalidFragment("mu is undefined on " + render_term(s));
  return MuValue(state_, *idx);
}

MuValue EncodingSession::mu_marker() const {
  if (state_->variant != EncodingVariant::Dollar) {
    throw UndefinedApplication("mu($) exists only in the dollar variant");
  }
  return MuValue(state_, MuValue::kMarker);
}

Meaning EncodingSession::mu(const DollarTerm& s) const {
  if (state_->variant != EncodingVariant::Dollar) {
    throw UndefinedApplication("mu(s.$) exists only in the dollar variant");
  }
  auto it = state_->dollar_extension.find(s.body);
  if (it == state_->dollar_extension.end()) {
    throw InvalidFragment("mu is undefined on " + render_term(s));
  }
  return it->second;
}

const LanguageFragment& EncodingSession::fragment() const { return state_->fragment; }

EncodingVariant EncodingSession::variant() const { return state_->variant; }

const Meaning& EncodingSession::meaning(std::size_t term_index) const {
  return state_->rows.at(term_index).base;
}

std::uint64_t EncodingSession::id() const { return state_->id; }

// ---------------------------------------------------------------------------
// Application

namespace {

[[noreturn]] void undefined(const MuValue& f, const std::string& arg) {
  throw UndefinedApplication(f.render() + " is undefined on " + arg);
}

}  // namespace

ApplyResult apply(const MuValue& f, const Argument& x) {
  if (f.is_marker()) undefined(f, "any argument");
  const auto& state = *f.state_;
  const auto& row = state.rows[f.index_];
  const bool dollar = state.variant == EncodingVariant::Dollar;

  if (const Term* raw = std::get_if<Term>(&x)) {
    if (!dollar && *raw == state.fragment.term(f.index_)) return row.base;
    undefined(f, render_term(*raw));
  }
  if (std::holds_alternative<Marker>(x)) {
    if (dollar) return row.base;
    undefined(f, "$");
  }

  const MuValue& arg = std::get<MuValue>(x);
  if (arg.state_ != f.state_) undefined(f, arg.render() + " from another session");
  if (arg.is_marker()) {
    // mu($) = $
    if (dollar) return row.base;
    undefined(f, arg.render());
  }
  auto it = std::lower_bound(row.graph.begin(), row.graph.end(),
                             std::make_pair(arg.index_, std::size_t{0}));
  if (it == row.graph.end() || it->first != arg.index_) undefined(f, arg.render());
  return MuValue(f.state_, it->second);
}

std::string render_result(const ApplyResult& r) {
  if (const Meaning* m = std::get_if<Meaning>(&r)) return m->render();
  return std::get<MuValue>(r).render();
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::string try_apply(const MuValue& f, const Argument& x, std::optional<ApplyResult>& out) {
  try {
    out = apply(f, x);
    return render_result(*out);
  } catch (const UndefinedApplication&) {
    out.reset();
    return "undefined";
  }
}

}  // namespace

VerificationReport verify_homomorphism(const EncodingSession& session, std::string subject) {
  VerificationReport report;
  report.subject = std::move(subject);
  report.variant = session.variant();
  const LanguageFragment& frag = session.fragment();

  for (const auto& c : frag.compositions()) {
    const Term& s = frag.term(c.left);
    const Term& t = frag.term(c.right);
    MuValue lhs = session.mu(Term::node(s, t));
    std::optional<ApplyResult> rhs;
    std::string rhs_text = try_apply(session.mu(s), session.mu(t), rhs);
    if (!rhs || !std::holds_alternative<MuValue>(*rhs) || std::get<MuValue>(*rhs) != lhs) {
      report.violations.push_back({"mu(s.t) = mu(s)(mu(t)) for s=" + render_term(s) +
                                       ", t=" + render_term(t),
                                   lhs.render(), rhs_text});
    }
    ++report.pairs_checked;
  }

  for (std::size_t i = 0; i < frag.size(); ++i) {
    const Term& s = frag.term(i);
    const Meaning& expected = session.meaning(i);
    MuValue f = session.mu(s);
    std::optional<ApplyResult> got;

    if (session.variant() == EncodingVariant::Plain) {
      std::string text = try_apply(f, s, got);
      if (!got || *got != ApplyResult(expected)) {
        report.violations.push_back(
            {"mu(s)(s) = m(s) for s=" + render_term(s), text, expected.render()});
      }
    } else {
      Meaning decoded = session.mu(DollarTerm{s});
      if (decoded != expected) {
        report.violations.push_back({"mu(s.$) = m(s) for s=" + render_term(s),
                                     decoded.render(), expected.render()});
      }
      std::string via_marker = try_apply(f, session.mu_marker(), got);
      if (!got || *got != ApplyResult(decoded)) {
        report.violations.push_back({"mu(s.$) = mu(s)(mu($)) for s=" + render_term(s),
                                     decoded.render(), via_marker});
      }
      std::optional<ApplyResult> raw;
      std::string via_raw = try_apply(f, Marker{}, raw);
      if (!raw || !got || *raw != *got) {
        report.violations.push_back(
            {"mu($) = $ for s=" + render_term(s), via_marker, via_raw});
      }
      ++report.marker_checks;
    }
    ++report.terms_checked;
  }

  report.status = report.violations.empty() ? Status::Pass : Status::Fail;
  return report;
}

// ---------------------------------------------------------------------------
// Tables

std::string render_entry(const TableEntry& e) {
  if (const BasePair* b = std::get_if<BasePair>(&e)) {
    std::string key = std::holds_alternative<Marker>(b->key)
                          ? std::string("$")
                          : render_term(std::get<Term>(b->key));
    return "<" + key + ", " + b->value.render() + ">";
  }
  const auto& c = std::get<CompositionPair>(e);
  return "<mu(" + render_term(c.argument) + "), mu(" + render_term(c.result) + ")>";
}

MuTable materialize_table(const EncodingSession& session) {
  MuTable table;
  table.variant = session.variant();
  const LanguageFragment& frag = session.fragment();
  table.rows.reserve(frag.size());
  for (std::size_t i = 0; i < frag.size(); ++i) {
    MuRow row{frag.term(i), {}};
    if (session.variant() == EncodingVariant::Plain) {
      row.entries.emplace_back(BasePair{frag.term(i), session.meaning(i)});
    } else {
      row.entries.emplace_back(BasePair{Marker{}, session.meaning(i)});
    }
    table.rows.push_back(std::move(row));
  }
  // Compositions are ordered by result; regroup by subject, ordered by argument.
  std::vector<std::vector<std::size_t>> args(frag.size());
  for (const auto& c : frag.compositions()) args[c.left].push_back(c.right);
  for (std::size_t i = 0; i < frag.size(); ++i) {
    std::sort(args[i].begin(), args[i].end());
    for (std::size_t j : args[i]) {
      table.rows[i].entries.emplace_back(
          CompositionPair{frag.term(j), Term::node(frag.term(i), frag.term(j))});
    }
  }
  return table;
}

std::string extensional_form(const MuTable& table, std::size_t row, int depth) {
  std::unordered_map<Term, std::size_t> index;
  for (std::size_t i = 0; i < table.rows.size(); ++i) index.emplace(table.rows[i].subject, i);

  auto unfold = [&](auto&& self, std::size_t r, int d) -> std::string {
    std::set<std::string> elements;
    for (const TableEntry& e : table.rows[r].entries) {
      if (std::holds_alternative<BasePair>(e) || d == 0) {
        if (std::holds_alternative<BasePair>(e)) elements.insert(render_entry(e));
        continue;
      }
      const auto& c = std::get<CompositionPair>(e);
      elements.insert("<" + self(self, index.at(c.argument), d - 1) + ", " +
                      self(self, index.at(c.result), d - 1) + ">");
    }
    std::string out = "{";
    bool first = true;
    for (const auto& el : elements) {
      if (!first) out += ", ";
      out += el;
      first = false;
    }
    return out + "}";
  };
  return unfold(unfold, row, depth);
}

std::optional<Term> FragmentStream::at(std::size_t index) const {
  if (index >= frag_->size()) return std::nullopt;
  return frag_->term(index);
}

TableEntry enumerate_table(const TermStream& stream, const MeaningFunction& m,
                           std::size_t row, std::size_t pair, EncodingVariant variant,
                           std::size_t search_bound) {
  std::optional<Term> subject = stream.at(row);
  if (!subject) {
    throw OutOfRange("row " + std::to_string(row) + " is beyond the end of the stream");
  }
  if (pair == 0) {
    Meaning value = m(*subject);
    if (variant == EncodingVariant::Plain) return BasePair{*subject, std::move(value)};
    return BasePair{Marker{}, std::move(value)};
  }
  std::size_t seen = 0;
  for (std::size_t b = 0; b < search_bound; ++b) {
    std::optional<Term> arg = stream.at(b);
    if (!arg) break;
    Term composed = Term::node(*subject, *arg);
    if (stream.contains(composed) && ++seen == pair) {
      return CompositionPair{std::move(*arg), std::move(composed)};
    }
  }
  throw OutOfRange("row " + std::to_string(row) + " has no pair " + std::to_string(pair));
}

}  // namespace compsem
