#include "monadcoh/io.hpp"

#include <fstream>
#include <sstream>

namespace monadcoh::io {

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

namespace {

[[noreturn]] void fail(IoCode code, const std::string& msg) {
  throw MonadIoError(code, msg);
}

std::vector<int> read_twists(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    fail(IoCode::Malformed, std::string("missing twist list '") + key + "'");
  std::vector<int> out;
  for (auto& v : j[key]) {
    if (!v.is_number_integer())
      fail(IoCode::BadTwists, std::string("non-integer twist in '") + key + "'");
    out.push_back(v.get<int>());
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i - 1] < out[i])
      fail(IoCode::BadTwists,
           std::string("twist list '") + key + "' is not non-increasing");
  return out;
}

template <class F>
typename F::Elt parse_coeff(const F& f, const std::string& s);

template <>
Fp::Elt parse_coeff<Fp>(const Fp& f, const std::string& s) {
  try {
    mpz_class z(s, 10);
    return f.from_mpz(z);
  } catch (const std::invalid_argument&) {
    fail(IoCode::BadCoefficient, "bad integer coefficient '" + s + "'");
  }
}

template <>
Rational::Elt parse_coeff<Rational>(const Rational&, const std::string& s) {
  try {
    mpq_class q(s, 10);
    if (q.get_den() == 0)
      fail(IoCode::BadCoefficient, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(IoCode::BadCoefficient, "bad rational coefficient '" + s + "'");
  }
}

template <class F>
GradedMap<F> parse_map(const F& f, int n, const TwistSum& source,
                       const TwistSum& target, const ordered_json& j,
                       const char* key) {
  if (!j.is_array() || (int)j.size() != target.rank())
    fail(IoCode::Malformed,
         std::string("map '") + key + "' must have one row per target summand");
  GradedMap<F> m = GradedMap<F>::zero(f, n, source, target);
  for (int i = 0; i < target.rank(); ++i) {
    const auto& row = j[(std::size_t)i];
    if (!row.is_array() || (int)row.size() != source.rank())
      fail(IoCode::Malformed, std::string("map '") + key + "' row " +
                                  std::to_string(i) + " has wrong length");
    for (int jj = 0; jj < source.rank(); ++jj) {
      const auto& entry = row[(std::size_t)jj];
      if (!entry.is_array())
        fail(IoCode::Malformed, "entry must be a list of terms");
      int want = target.at(i) - source.at(jj);
      Form<F> form = Form<F>::zero(f, n + 1, std::max(0, want));
      for (const auto& term : entry) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_array() ||
            !term[1].is_string())
          fail(IoCode::Malformed, "term must be [exponents, coefficient]");
        Monomial mono;
        for (auto& e : term[0]) {
          if (!e.is_number_integer() || e.get<int>() < 0)
            fail(IoCode::Malformed, "exponents must be non-negative integers");
          mono.e.push_back(e.get<int>());
        }
        if ((int)mono.e.size() != n + 1)
          fail(IoCode::DegreeMismatch,
               "entry degree mismatch at (" + std::to_string(i) + "," +
                   std::to_string(jj) + "): exponent vector needs n+1 entries");
        if (want < 0 || mono.degree() != want)
          fail(IoCode::DegreeMismatch,
               "entry degree mismatch at (" + std::to_string(i) + "," +
                   std::to_string(jj) + ")");
        auto c = parse_coeff<F>(f, term[1].get<std::string>());
        if (!f.is_zero(c)) form.add_term(mono, c);
      }
      if (!form.is_zero()) m.set(i, jj, std::move(form));
    }
  }
  return m;
}

template <class F>
AnyMonad assemble(const F& f, const ordered_json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    fail(IoCode::Malformed, "missing dimension n");
  int n = j["n"].get<int>();
  if (n < 3) fail(IoCode::BadDimension, "need n >= 3");
  TwistSum km{read_twists(j, "kminus")}, k0{read_twists(j, "kzero")},
      kp{read_twists(j, "kplus")};
  GradedMap<F> dm = parse_map(f, n, km, k0, j["dminus"], "dminus");
  GradedMap<F> dz = parse_map(f, n, k0, kp, j["dzero"], "dzero");
  return Monad<F>(f, n, km, k0, kp, std::move(dm), std::move(dz));
}

}  // namespace

AnyMonad parse_monad(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(IoCode::Malformed, std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format_version") ||
      j["format_version"] != "monad/1")
    fail(IoCode::BadVersion, "expected format_version \"monad/1\"");
  if (!j.contains("field") || !j["field"].is_object() ||
      !j["field"].contains("kind") || !j["field"]["kind"].is_string())
    fail(IoCode::BadField, "missing field description");
  std::string kind = j["field"]["kind"].get<std::string>();
  if (!j.contains("dminus") || !j.contains("dzero"))
    fail(IoCode::Malformed, "missing dminus/dzero");
  try {
    if (kind == "prime") {
      if (!j["field"].contains("p") ||
          !j["field"]["p"].is_number_unsigned())
        fail(IoCode::BadField, "prime field needs p");
      std::uint64_t p = j["field"]["p"].get<std::uint64_t>();
      if (p >= (1ull << 31) || !is_prime_u32(p))
        fail(IoCode::BadField, "p must be a prime below 2^31");
      return assemble(Fp((std::uint32_t)p), j);
    }
    if (kind == "rational") return assemble(Rational(), j);
  } catch (const StructuralError& e) {
    fail(IoCode::Malformed, e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(IoCode::Malformed, std::string("bad structure: ") + e.what());
  }
  fail(IoCode::BadField, "field kind must be \"prime\" or \"rational\"");
}

AnyMonad load_monad(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(IoCode::Malformed, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_monad(ss.str());
}

void save_text(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << bytes;
}

std::string render_table(const CohomologyTable& t, bool tsv) {
  std::ostringstream os;
  if (tsv) {
    os << "n\t" << t.n << "\n";
    os << "window\t" << t.d_lo << "\t" << t.d_hi << "\n";
    os << "d";
    for (int d = t.d_lo; d <= t.d_hi; ++d) os << "\t" << d;
    os << "\n";
    for (int i = 0; i <= t.n; ++i) {
      os << "h" << i;
      for (int d = t.d_lo; d <= t.d_hi; ++d) os << "\t" << t.at(i, d);
      os << "\n";
    }
    return os.str();
  }
  std::vector<std::size_t> w((std::size_t)t.width(), 1);
  for (int d = t.d_lo; d <= t.d_hi; ++d) {
    std::size_t k = std::to_string(d).size();
    for (int i = 0; i <= t.n; ++i) {
      long long v = t.at(i, d);
      k = std::max(k, v == 0 ? 1 : std::to_string(v).size());
    }
    w[(std::size_t)(d - t.d_lo)] = k;
  }
  auto cell = [&](const std::string& s, std::size_t width) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };
  os << "  d ";
  for (int d = t.d_lo; d <= t.d_hi; ++d)
    os << " " << cell(std::to_string(d), w[(std::size_t)(d - t.d_lo)]);
  os << "\n";
  for (int i = 0; i <= t.n; ++i) {
    std::string label = "h^" + std::to_string(i);
    os << cell(label, 4);
    for (int d = t.d_lo; d <= t.d_hi; ++d) {
      long long v = t.at(i, d);
      os << " "
         << cell(v == 0 ? "." : std::to_string(v),
                 w[(std::size_t)(d - t.d_lo)]);
    }
    os << "\n";
  }
  return os.str();
}

CohomologyTable parse_table_tsv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  CohomologyTable t;
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = s.find('\t', start);
      parts.push_back(s.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return parts;
  };
  if (!std::getline(is, line)) throw std::runtime_error("empty table");
  auto p = split(line);
  if (p.size() != 2 || p[0] != "n") throw std::runtime_error("bad n line");
  t.n = std::stoi(p[1]);
  if (!std::getline(is, line)) throw std::runtime_error("missing window");
  p = split(line);
  if (p.size() != 3 || p[0] != "window")
    throw std::runtime_error("bad window line");
  t.d_lo = std::stoi(p[1]);
  t.d_hi = std::stoi(p[2]);
  std::getline(is, line);  // header
  t.rows.assign((std::size_t)t.n + 1,
                std::vector<long long>((std::size_t)t.width(), 0));
  for (int i = 0; i <= t.n; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("missing row");
    p = split(line);
    if ((int)p.size() != t.width() + 1)
      throw std::runtime_error("bad row length");
    for (int k = 0; k < t.width(); ++k)
      t.rows[(std::size_t)i][(std::size_t)k] = std::stoll(p[(std::size_t)k + 1]);
  }
  return t;
}

ordered_json table_to_json(const CohomologyTable& t) {
  ordered_json j;
  j["n"] = t.n;
  j["window"] = {t.d_lo, t.d_hi};
  j["rows"] = t.rows;
  return j;
}

ordered_json certificate_to_json(const ExtensionCertificate& c) {
  ordered_json j;
  j["format_version"] = "certificate/1";
  j["base_monad_hash"] = c.base_hash;
  j["field"] = field_to_json(c.field);
  j["n"] = c.n;
  j["steps"] = c.steps;
  j["rank"] = {{"base", c.base_rank},
               {"extended", c.extended_rank},
               {"restricted", c.restricted_rank}};
  ordered_json levels = ordered_json::array();
  for (auto& lv : c.level_twists)
    levels.push_back(ordered_json{
        {"kminus", lv[0]}, {"kzero", lv[1]}, {"kplus", lv[2]}});
  j["levels"] = std::move(levels);
  j["accumulated_summands"] = c.summands;
  ordered_json rt = ordered_json::array();
  for (auto& t : c.restriction_tables) rt.push_back(table_to_json(t));
  j["restriction_tables"] = std::move(rt);
  j["base_table"] = table_to_json(c.base_table);
  j["restricted_table"] = table_to_json(c.restricted_table);
  j["expected_table"] = table_to_json(c.expected_table);
  j["chi"] = {{"points", c.chi_points},
              {"restricted", c.chi_restricted},
              {"expected", c.chi_expected}};
  j["verdict"] = c.verified ? "verified" : "failed";
  if (!c.verified) j["failure"] = c.failure;
  return j;
}

std::string render_bound(const BoundReport& b) {
  std::ostringstream os;
  os << "n: " << b.n << "\n";
  os << "rank: " << b.r << "\n";
  os << "sum_mu_h2: " << b.sum_mu_h2 << "\n";
  os << "sum_mu_dual_h2: " << b.sum_mu_dual_h2 << "\n";
  os << "floor_dim (n-4): " << b.floor_dim << "\n";
  os << "floor_rank (r-n+1): " << b.floor_rank << "\n";
  os << "m_star: " << b.m_star << "\n";
  os << "applicability: "
     << (b.applicability == BoundReport::Applicability::Applies
             ? "applies (n >= 4); splits for extensions with m > m_star"
             : "formula-only (n = 3)")
     << "\n";
  return os.str();
}

std::string render_split(const SplitOutcome& s) {
  std::ostringstream os;
  if (s.split)
    os << "split: " << s.twists.str() << "\n";
  else
    os << "not split: h^" << s.witness_i << "(E(" << s.witness_d
       << ")) != 0\n";
  return os.str();
}

std::string render_validation(const ValidationReport& r) {
  std::ostringstream os;
  auto epi_line = [&](const EpiCheckResult& e) {
    switch (e.kind) {
      case EpiCheckResult::Kind::Certified:
        if (e.certified_at)
          os << "certified (piece vanishes at d=" << *e.certified_at << ")";
        else
          os << "certified (trivial)";
        break;
      case EpiCheckResult::Kind::FalsifiedAtPoint: {
        os << "falsified at point [";
        for (std::size_t i = 0; i < e.point.size(); ++i)
          os << (i ? ":" : "") << e.point[i];
        os << "]";
        break;
      }
      case EpiCheckResult::Kind::Inconclusive:
        os << "inconclusive (cap " << e.cap << ")";
        break;
    }
    os << "\n";
  };
  os << "complex: " << (r.compose_ok ? "ok" : "FAIL") << "\n";
  if (r.compose_ok) {
    os << "mono: ";
    epi_line(r.mono);
    if (r.mono.certified()) {
      os << "epi: ";
      epi_line(r.epi);
    }
  }
  os << "rank: " << r.rank << "\n";
  switch (r.verdict) {
    case ValidationReport::Verdict::Valid:
      os << "verdict: valid\n";
      break;
    case ValidationReport::Verdict::Invalid:
      os << "verdict: invalid (" << r.reason << ")\n";
      break;
    case ValidationReport::Verdict::Inconclusive:
      os << "verdict: inconclusive (" << r.reason << ")\n";
      break;
  }
  return os.str();
}

}  // namespace monadcoh::io
