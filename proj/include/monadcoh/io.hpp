#pragma once

// File formats and rendering.
//
// Monad files ("monad/1") are versioned JSON: field, n, the three twist
// lists (non-increasing), and the two entry matrices; each entry is a list
// of [exponent-vector, coefficient-string] pairs.  Serialization is
// canonical (sorted monomials, reduced coefficients, fixed key order), so
// byte equality and content hashing are meaningful.
//
// Tables render either human-readable (zeros as dots) or as TSV, and the
// TSV re-parses to the same table.

#include <variant>

#include <json.hpp>

#include "monadcoh/corpus.hpp"
#include "monadcoh/theorems.hpp"

namespace monadcoh::io {

using nlohmann::ordered_json;

enum class IoCode {
  Malformed,
  BadVersion,
  BadField,
  BadDimension,
  BadTwists,
  BadCoefficient,
  DegreeMismatch,
};

class MonadIoError : public std::runtime_error {
 public:
  MonadIoError(IoCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  IoCode code() const { return code_; }

 private:
  IoCode code_;
};

using AnyMonad = std::variant<Monad<Fp>, Monad<Rational>>;

std::string fnv1a64_hex(const std::string& bytes);

// --- serialization ---------------------------------------------------------

template <class F>
ordered_json map_to_json(const GradedMap<F>& m) {
  const F& f = m.field();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.target().rank(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.source().rank(); ++j) {
      ordered_json entry = ordered_json::array();
      for (auto& [mono, c] : m.at(i, j).terms())
        entry.push_back(ordered_json::array({mono.e, f.to_string(c)}));
      row.push_back(std::move(entry));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ordered_json field_to_json(const FieldSpec& fs) {
  if (fs.kind == FieldSpec::Kind::Prime)
    return ordered_json{{"kind", "prime"}, {"p", fs.p}};
  return ordered_json{{"kind", "rational"}};
}

template <class F>
ordered_json monad_to_json(const Monad<F>& m) {
  ordered_json j;
  j["format_version"] = "monad/1";
  j["field"] = field_to_json(field_spec_of(m.field()));
  j["n"] = m.n();
  j["kminus"] = m.kminus().list();
  j["kzero"] = m.kzero().list();
  j["kplus"] = m.kplus().list();
  j["dminus"] = map_to_json(m.dminus());
  j["dzero"] = map_to_json(m.dzero());
  return j;
}

inline std::string canonical_bytes(const ordered_json& j) {
  return j.dump(2) + "\n";
}

inline std::string serialize_monad(const AnyMonad& m) {
  return std::visit(
      [](const auto& mm) { return canonical_bytes(monad_to_json(mm)); }, m);
}

inline std::string monad_hash(const AnyMonad& m) {
  return fnv1a64_hex(serialize_monad(m));
}

// --- parsing ----------------------------------------------------------------

AnyMonad parse_monad(const std::string& text);
AnyMonad load_monad(const std::string& path);
void save_text(const std::string& path, const std::string& bytes);

// --- tables ------------------------------------------------------------------

std::string render_table(const CohomologyTable& t, bool tsv);
CohomologyTable parse_table_tsv(const std::string& text);

ordered_json table_to_json(const CohomologyTable& t);

// --- certificates -------------------------------------------------------------

ordered_json certificate_to_json(const ExtensionCertificate& c);

// --- reports --------------------------------------------------------------------

std::string render_bound(const BoundReport& b);
std::string render_split(const SplitOutcome& s);
std::string render_validation(const ValidationReport& r);

}  // namespace monadcoh::io
