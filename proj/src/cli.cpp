#include "monadcoh/cli.hpp"

#include <CLI11.hpp>

#include "monadcoh/io.hpp"

namespace monadcoh::cli {

namespace {

constexpr int kOk = 0, kFalse = 1, kBadInput = 2, kInconclusive = 3;

std::optional<std::pair<int, int>> parse_window(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t colon = s.find(':', 1);  // skip a leading minus sign
  if (colon == std::string::npos)
    throw StructuralError("window must be LO:HI");
  return std::make_pair(std::stoi(s.substr(0, colon)),
                        std::stoi(s.substr(colon + 1)));
}

// Validate before doing real work; invalid monads are invalid input.
template <class F>
std::optional<int> reject_invalid(const Monad<F>& m, std::optional<int> cap,
                                  std::ostream& err) {
  ValidationReport r = validate(m, cap);
  if (r.valid()) return std::nullopt;
  err << "input monad is not valid: " << r.reason << "\n";
  return r.verdict == ValidationReport::Verdict::Inconclusive ? kInconclusive
                                                              : kBadInput;
}

struct Options {
  std::string file, out_path, window, builtin_name, profile = "default";
  int steps = 1;
  int n = 3;
  std::uint64_t seed = 1;
  std::uint32_t prime = 32003;
  bool rational = false, tsv = false, random = false, no_self_check = false;
  std::vector<int> twists;
  std::optional<int> cap;
  int cap_flag = -1;
};

int do_validate(const io::AnyMonad& any, const Options& o, std::ostream& out) {
  return std::visit(
      [&](const auto& m) {
        ValidationReport r = validate(m, o.cap);
        out << io::render_validation(r);
        switch (r.verdict) {
          case ValidationReport::Verdict::Valid:
            return kOk;
          case ValidationReport::Verdict::Invalid:
            return kFalse;
          default:
            return kInconclusive;
        }
      },
      any);
}

int do_table(const io::AnyMonad& any, const Options& o, std::ostream& out,
             std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        TableOptions topt;
        topt.window = parse_window(o.window);
        topt.self_check = !o.no_self_check;
        out << io::render_table(table(m, topt), o.tsv);
        return kOk;
      },
      any);
}

int do_extend(const io::AnyMonad& any, const Options& o, std::ostream& out,
              std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        auto [big, summands] = extend(m, o.steps);
        io::save_text(o.out_path,
                      io::serialize_monad(io::AnyMonad(std::move(big))));
        out << "extended " << o.steps << " step(s) to P^"
            << m.n() + o.steps << "; split summands on restriction: "
            << summands.str() << "\n";
        return kOk;
      },
      any);
}

int do_restrict(const io::AnyMonad& any, const Options& o, std::ostream& out,
                std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        auto r = restrict_hyperplane(m);
        io::save_text(o.out_path,
                      io::serialize_monad(io::AnyMonad(std::move(r))));
        out << "restricted to P^" << m.n() - 1 << "\n";
        return kOk;
      },
      any);
}

int do_certify(const io::AnyMonad& any, const Options& o, std::ostream& out,
               std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        ExtensionCertificate cert = verify_stable_extension(m, o.steps);
        cert.base_hash = io::monad_hash(any);
        io::save_text(o.out_path,
                      io::canonical_bytes(io::certificate_to_json(cert)));
        out << "certificate: " << (cert.verified ? "verified" : "failed")
            << "\n";
        if (!cert.verified) out << "failure: " << cert.failure << "\n";
        return cert.verified ? kOk : kFalse;
      },
      any);
}

int do_bound(const io::AnyMonad& any, const Options& o, std::ostream& out,
             std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        out << io::render_bound(split_bound(m));
        return kOk;
      },
      any);
}

int do_split(const io::AnyMonad& any, const Options& o, std::ostream& out,
             std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        SplitOutcome s = split_check(m);
        out << io::render_split(s);
        return s.split ? kOk : kFalse;
      },
      any);
}

int do_mu(const io::AnyMonad& any, const Options& o, std::ostream& out,
          std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        auto mod = h1_module(m);
        if (mod.empty()) {
          out << "H^1_* = 0; no generators\n";
          return kOk;
        }
        out << "H^1 pieces over degrees [" << mod.lo << ", " << mod.hi
            << "]:";
        for (long long dim : mod.dims) out << " " << dim;
        out << "\n";
        for (auto& [d, v] : minimal_generator_counts(mod))
          out << "mu[" << d << "] = " << v << "\n";
        return kOk;
      },
      any);
}

int do_check_lemmas(const io::AnyMonad& any, const Options& o,
                    std::ostream& out, std::ostream& err) {
  return std::visit(
      [&](const auto& m) {
        if (auto code = reject_invalid(m, o.cap, err)) return *code;
        bool all = true;
        auto line = [&](const std::string& name, bool ok) {
          out << name << ": " << (ok ? "ok" : "FAIL") << "\n";
          all = all && ok;
        };
        for (int i = 1; i <= m.n() - 1; ++i)
          line("vanishing-transfer i=" + std::to_string(i),
               vanishing_transfer_check(m, i));
        line("h1-restriction-surjectivity",
             h1_restriction_surjectivity_check(m));
        if (m.n() >= 4)
          line("vanishing-chain steps=" + std::to_string(o.steps),
               vanishing_chain_check(m, o.steps));
        else
          out << "vanishing-chain: skipped (needs n >= 4)\n";
        line("split-criterion", split_criterion_check(m));
        return all ? kOk : kFalse;
      },
      any);
}

int do_gen(const Options& o, std::ostream& out) {
  io::AnyMonad any = [&]() -> io::AnyMonad {
    if (o.rational) {
      Rational f;
      if (o.random) return random_monad(f, o.seed, o.n, o.profile);
      return builtin_monad(f, o.builtin_name, o.n, o.twists);
    }
    Fp f(o.prime);
    if (o.random) return random_monad(f, o.seed, o.n, o.profile);
    return builtin_monad(f, o.builtin_name, o.n, o.twists);
  }();
  std::string bytes = io::serialize_monad(any);
  if (o.out_path.empty())
    out << bytes;
  else
    io::save_text(o.out_path, bytes);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"monadcoh: cohomology of monad bundles on projective space"};
  app.require_subcommand(1);
  Options o;
  unsigned threads = 0;
  int sparse_thr = sparse_threshold();
  app.add_option("--threads", threads,
                 "max worker threads (0 = hardware concurrency)");
  app.add_flag("--sequential", [&threads](std::int64_t) { threads = 1; },
               "force sequential evaluation");
  app.add_option("--sparse-threshold", sparse_thr,
                 "columns above which graded pieces use the sparse rank path");

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "monad file")->required();
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap_flag, "sweep cap for the epi/mono checks");
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "check the monad axioms");
  add_file(validate_cmd);
  add_cap(validate_cmd);

  CLI::App* table_cmd = app.add_subcommand("table", "print the cohomology table");
  add_file(table_cmd);
  table_cmd->add_option("--window", o.window, "degree window LO:HI");
  table_cmd->add_flag("--tsv", o.tsv, "machine-readable TSV output");
  table_cmd->add_flag("--no-self-check", o.no_self_check,
                      "skip the redundant duality route");

  CLI::App* extend_cmd =
      app.add_subcommand("extend", "extend to a higher projective space");
  add_file(extend_cmd);
  extend_cmd->add_option("-m,--steps", o.steps, "number of extension steps");
  extend_cmd->add_option("-o,--out", o.out_path, "output monad file")
      ->required();

  CLI::App* restrict_cmd =
      app.add_subcommand("restrict", "restrict to the hyperplane X_last = 0");
  add_file(restrict_cmd);
  restrict_cmd->add_option("-o,--out", o.out_path, "output monad file")
      ->required();

  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "verify the stable-extension restriction identity");
  add_file(certify_cmd);
  certify_cmd->add_option("-m,--steps", o.steps, "number of extension steps");
  certify_cmd->add_option("-o,--out", o.out_path, "certificate JSON path")
      ->required();

  CLI::App* bound_cmd =
      app.add_subcommand("bound", "effective extension-splitting bound");
  add_file(bound_cmd);

  CLI::App* split_cmd =
      app.add_subcommand("split", "decide splitting into line bundles");
  add_file(split_cmd);

  CLI::App* mu_cmd = app.add_subcommand(
      "mu", "minimal generator counts of the module H^1_*");
  add_file(mu_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a monad file");
  gen_cmd->add_option("--builtin", o.builtin_name,
                      "builtin name: euler, nullcorr, linesum");
  gen_cmd->add_flag("--random", o.random, "seeded random monad");
  gen_cmd->add_option("--n", o.n, "ambient projective dimension")->required();
  gen_cmd->add_option("--seed", o.seed, "random seed");
  gen_cmd->add_option("--profile", o.profile,
                      "random profile: small, default, wide");
  gen_cmd->add_option("--twists", o.twists, "twist list for linesum")
      ->delimiter(',');
  gen_cmd->add_option("-p,--prime", o.prime, "coefficient field F_p");
  gen_cmd->add_flag("--rational", o.rational, "use rational coefficients");
  gen_cmd->add_option("-o,--out", o.out_path, "output path (default stdout)");

  CLI::App* lemmas_cmd = app.add_subcommand(
      "check-lemmas", "run the structural property checks");
  add_file(lemmas_cmd);
  lemmas_cmd->add_option("--steps", o.steps,
                         "levels for the vanishing chain (default 1)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n" << app.help();
    return kBadInput;
  }

  par::set_max_threads(threads);
  set_sparse_threshold(sparse_thr);
  if (o.cap_flag >= 0) o.cap = o.cap_flag;

  try {
    if (app.got_subcommand(gen_cmd)) return do_gen(o, out);
    io::AnyMonad any = io::load_monad(o.file);
    if (app.got_subcommand(validate_cmd)) return do_validate(any, o, out);
    if (app.got_subcommand(table_cmd)) return do_table(any, o, out, err);
    if (app.got_subcommand(extend_cmd)) return do_extend(any, o, out, err);
    if (app.got_subcommand(restrict_cmd)) return do_restrict(any, o, out, err);
    if (app.got_subcommand(certify_cmd)) return do_certify(any, o, out, err);
    if (app.got_subcommand(bound_cmd)) return do_bound(any, o, out, err);
    if (app.got_subcommand(split_cmd)) return do_split(any, o, out, err);
    if (app.got_subcommand(mu_cmd)) return do_mu(any, o, out, err);
    if (app.got_subcommand(lemmas_cmd))
      return do_check_lemmas(any, o, out, err);
  } catch (const io::MonadIoError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency fault: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  err << "no subcommand\n";
  return kBadInput;
}

}  // namespace monadcoh::cli
