// Command-line front end: analyze, verify, corpus run/list, demo shuffle.
// Exit codes: 0 clean, 1 usage, 2 computation error, 3 VIOLATION found.

#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quillen/harness/corpus.hpp"
#include "quillen/harness/spec.hpp"
#include "quillen/harness/suite.hpp"
#include "quillen/harness/verify.hpp"

using namespace quillen;

namespace {

constexpr int kUsage = 1, kComputation = 2, kViolation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Ring parse_ring(const std::string& s) {
  if (s == "z" || s == "Z") return Ring::Z;
  if (s == "q" || s == "Q") return Ring::Q;
  throw UsageError("--ring must be z or q");
}

std::set<Check> parse_checks(const std::vector<std::string>& names) {
  std::set<Check> out = default_checks();
  for (const auto& n : names) {
    if (n == "all") {
      auto l = lemma_checks();
      out.insert(l.begin(), l.end());
    } else {
      out.insert(check_from_string(n));
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

int demo_shuffle(int m, int n) {
  if (m < 0 || n < 0 || m > 3 || n > 3) throw UsageError("demo shuffle needs 0 <= m, n <= 3");
  const Group EH = elementary_abelian_group(2, std::size_t(m + 1)), EK = elementary_abelian_group(2, std::size_t(n + 1));
  const Group G = direct_product(EH, EK);
  const GroupPoset X = quillen_poset(G, 2);
  auto block = [&](std::size_t from, std::size_t count) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back(Point(from + i));
    return support_subgroup(G, pts);
  };
  const Subgroup H = block(0, EH.degree()), K = block(EH.degree(), EK.degree());
  // flags A_0 < ... < A_m in H and B_0 < ... < B_n in K
  Simplex a, b;
  for (int k = 1; k <= m + 1; ++k) a.push_back(*X.ambient_key(block(0, 2 * std::size_t(k))));
  for (int k = 1; k <= n + 1; ++k) b.push_back(*X.ambient_key(block(EH.degree(), 2 * std::size_t(k))));
  ShuffleContext ctx(X, H, K);
  auto label = [&](const Simplex& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " < " : "") + GroupPoset::subgroup_label(X.subgroup_of_key(s[i]));
    return out;
  };
  std::cout << "G = " << G.name() << ", p = 2, H on points 1.." << EH.degree() << ", K on points "
            << EH.degree() + 1 << ".." << G.degree() << "\n";
  std::cout << "a = " << label(a) << "\n";
  std::cout << "b = " << label(b) << "\n\n";
  const IntChain prod = ctx.product(a, b);
  std::cout << "a x b has " << prod.size() << " terms (binomial(" << m + n + 2 << ", " << m + 1 << "))\n";
  for (const auto& [s, v] : prod.terms()) std::cout << "  " << (v > 0 ? "+" : "") << v.str() << "  " << label(s) << "\n";
  const Simplex st = ctx.star(a, b);
  std::cout << "\na * b = " << label(st) << "\n";
  const bool initial = a_initial_split(prod, a).first == IntChain::basis(st);
  std::cout << "(a x b)_a = a * b: " << (initial ? "yes" : "NO") << "\n";
  std::cout << "d(a x b) has " << boundary(prod).size() << " terms, d d (a x b) = "
            << (boundary(boundary(prod)).is_zero() ? "0" : "NONZERO") << "\n";
  return initial ? 0 : kComputation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quillen complexes A_p(G): homology, certificates and reductions"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "JSON file with caps {element_cap, poset_cap, simplex_cap, coeff_box}");

  std::string group, ring = "z", dump, subgroup, element, out;
  std::uint32_t prime = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> checks;

  auto* analyze_cmd = app.add_subcommand("analyze", "analysis record for one (G, p)");
  analyze_cmd->add_option("--group", group, "builtin:<name> or a group JSON file")->required();
  analyze_cmd->add_option("--prime", prime, "prime p")->required();
  analyze_cmd->add_option("--ring", ring, "z or q");
  analyze_cmd->add_option("--dump-poset", dump, "write A_p(G) as JSON");
  analyze_cmd->add_option("--checks", checks, "extra checks, or 'all'")->delimiter(',');

  std::string kind;
  auto* verify_cmd = app.add_subcommand("verify", "run one lemma or reduction and print its report");
  verify_cmd->add_option("kind", kind, "verification")->required()->check(CLI::IsMember(verify_kinds()));
  verify_cmd->add_option("--group", group, "builtin:<name> or a group JSON file")->required();
  verify_cmd->add_option("--prime", prime, "prime p")->required();
  verify_cmd->add_option("--subgroup", subgroup, "sylow, o_p, o_p_prime, center, derived, c_o_p_prime, support:i,j,.. or generators");
  verify_cmd->add_option("--element", element, "E for link, same syntax as --subgroup");
  verify_cmd->add_option("--seed", seed, "seed for random replay chains");

  auto* corpus_cmd = app.add_subcommand("corpus", "built-in corpus");
  corpus_cmd->require_subcommand(1);
  std::uint64_t max_order = 0;
  std::vector<std::uint32_t> primes = {2, 3, 5};
  auto* run_cmd = corpus_cmd->add_subcommand("run", "batch analysis");
  run_cmd->add_option("--max-order", max_order, "skip groups of larger order (0 = no bound)");
  run_cmd->add_option("--primes", primes, "comma separated primes")->delimiter(',');
  run_cmd->add_option("--out", out, "report.json or report.csv (default: JSON on stdout)");
  run_cmd->add_option("--ring", ring, "z or q");
  run_cmd->add_option("--checks", checks, "extra checks, or 'all'")->delimiter(',');
  auto* list_cmd = corpus_cmd->add_subcommand("list", "list corpus entries");

  int m = 1, n = 0;
  auto* demo_cmd = app.add_subcommand("demo", "worked examples");
  demo_cmd->require_subcommand(1);
  auto* shuffle_cmd = demo_cmd->add_subcommand("shuffle", "shuffle product of two flags");
  shuffle_cmd->add_option("--m", m, "degree of the first flag");
  shuffle_cmd->add_option("--n", n, "degree of the second flag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    const Limits lim = config.empty() ? Limits{} : load_limits(config);

    if (*analyze_cmd) {
      const CorpusEntry e = load_entry(group, lim.element_cap);
      const AnalysisRecord r = analyze(e, prime, parse_ring(ring), parse_checks(checks), lim);
      if (!dump.empty()) {
        nlohmann::ordered_json j{{"group", e.name}, {"prime", prime}};
        j["poset"] = poset_to_json(quillen_poset(e.group, prime, lim.poset_cap).poset());
        write_file(dump, j.dump(2) + "\n");
      }
      std::cout << record_to_json(r).dump(2) << "\n";
      if (r.qc_verdict == QcVerdict::Violation) return kViolation;
      return r.all_checks_ok() ? 0 : kComputation;
    }

    if (*verify_cmd) {
      VerifyRequest q{kind, load_entry(group, lim.element_cap).group, prime, std::nullopt, std::nullopt, seed};
      if (!subgroup.empty()) q.subgroup = subgroup;
      if (!element.empty()) q.element = element;
      std::cout << verify(q, lim).dump(2) << "\n";
      return 0;
    }

    if (*list_cmd) {
      std::vector<CorpusNotice> notices;
      for (const auto& e : corpus_default(lim, &notices)) {
        std::cout << e.name << "\t" << e.group.order() << "\t" << e.provenance;
        for (const auto& f : e.metadata) std::cout << "\t" << f.key << "[" << f.prime << "]=" << f.value;
        std::cout << "\n";
      }
      for (const auto& nt : notices) std::cerr << "skipped " << nt.name << ": " << nt.message << "\n";
      return 0;
    }

    if (*run_cmd) {
      std::vector<CorpusNotice> notices;
      std::vector<CorpusEntry> corpus;
      for (auto& e : corpus_default(lim, &notices))
        if (max_order == 0 || e.group.order() <= max_order) corpus.push_back(std::move(e));
      for (const auto& nt : notices) std::cerr << "skipped " << nt.name << ": " << nt.message << "\n";
      const SuiteResult res = run_suite(corpus, primes, parse_ring(ring), parse_checks(checks), lim);
      const bool csv = out.size() >= 4 && out.compare(out.size() - 4, 4, ".csv") == 0;
      const std::string text = csv ? records_to_csv(res.records) : suite_to_json(res).dump(2) + "\n";
      if (out.empty()) std::cout << text;
      else write_file(out, text);
      for (const auto& e : res.errors) std::cerr << "error " << e.entry << " p=" << e.prime << ": " << e.message << "\n";
      std::cerr << res.records.size() << " records, " << res.violations() << " violations, " << res.errors.size()
                << " errors, " << res.failed_checks() << " records with failed checks\n";
      if (res.violations()) return kViolation;
      return res.errors.empty() && res.failed_checks() == 0 ? 0 : kComputation;
    }

    if (*shuffle_cmd) return demo_shuffle(m, n);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
  return kUsage;
}
