#include "picky_cli/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "picky/catalog.hpp"
#include "picky/chartab.hpp"
#include "picky/conjugacy.hpp"
#include "picky/errors.hpp"
#include "picky/glauberman.hpp"
#include "picky/picky.hpp"
#include "picky/subgroups.hpp"

namespace picky::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UnknownGroupError*>(&e)) return kUnknownGroup;
  if (dynamic_cast<const CycleSyntaxError*>(&e)) return kBadCycles;
  if (dynamic_cast<const CapacityError*>(&e)) return kCapacity;
  if (dynamic_cast<const TheoremViolation*>(&e)) return kViolation;
  return kInputError;
}

namespace {

void write_file(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + file.string());
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Generators separated by ';'. An empty list is the trivial group.
PermutationGroup parse_generators(std::size_t degree, const std::string& text) {
  std::vector<Permutation> gens;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    gens.push_back(Permutation::from_cycles(degree, item));
  }
  return PermutationGroup(degree, gens);
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

// --- table ------------------------------------------------------------------

int cmd_table(const std::string& source, const std::optional<std::string>& cache, bool as_json, std::ostream& out) {
  const auto g = load_group(source);
  std::optional<fs::path> dir;
  if (cache) dir = fs::path(*cache);
  const auto t = character_table(g, dir);
  if (as_json) {
    out << dump(table_to_json(*t));
    return kOk;
  }
  const auto& cd = t->classes();
  out << "group " << source << ", order " << g.size() << ", " << t->size() << " classes";
  if (t->lifting_prime() != 0) out << ", lifting prime " << t->lifting_prime();
  out << "\n";
  for (std::size_t k = 0; k < cd.class_count(); ++k) {
    out << "class " << k << ": " << cd.representatives()[k].to_cycles() << "  size " << cd.sizes()[k] << "  order "
        << cd.element_orders()[k] << "\n";
  }
  for (std::size_t chi = 0; chi < t->size(); ++chi) {
    out << "chi_" << chi << ":";
    for (const auto& v : t->rows()[chi]) out << "  " << v.to_string();
    out << "\n";
  }
  return kOk;
}

// --- picky ------------------------------------------------------------------

int cmd_picky(const std::string& source, std::uint64_t p, bool all, std::ostream& out) {
  const auto g = load_group(source);
  ConjugacyData cd(g);
  auto list = json::array();
  for (const auto& c : p_element_classes(g, p)) {
    if (!all && !c.picky()) continue;
    auto j = certificate_to_json(c);
    j["class"] = cd.class_of(c.element);
    j["element_cycles"] = c.element.to_cycles();
    list.push_back(std::move(j));
  }
  out << dump(list);
  return kOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string group;
  std::uint64_t prime = 0;
  std::optional<std::string> element;
  std::string mode = "all";
  std::optional<std::string> out;
  bool allow_p2 = false;
  bool all_chief_factors = false;
  bool timing = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto g = load_group(a.group);
  CheckOptions opts;
  opts.mode = parse_mode(a.mode);
  opts.allow_p2 = a.allow_p2;
  opts.all_chief_factors = a.all_chief_factors;
  opts.group_id = a.group;
  std::vector<Permutation> elements;
  if (a.element) {
    elements.push_back(Permutation::from_cycles(g.degree(), *a.element));
  } else {
    for (const auto& c : p_element_classes(g, a.prime)) {
      if (c.picky()) elements.push_back(c.element);
    }
  }
  int code = kOk;
  auto docs = json::array();
  for (const auto& x : elements) {
    auto r = check_theorem_A(g, a.prime, x, opts);
    docs.push_back(report_to_json(r, a.timing));
    code = std::max(code, report_exit_code(r));
  }
  const json doc = docs.size() == 1 ? docs[0] : docs;
  if (a.out) {
    write_file(*a.out, dump(doc));
  } else {
    out << dump(doc);
  }
  return code;
}

// --- glauberman -------------------------------------------------------------

int cmd_glauberman(const std::string& source, const std::string& k_gens, const std::string& n_gens,
                   const std::optional<std::string>& actor_gens, std::uint64_t p, std::ostream& out) {
  const auto g = load_group(source);
  const auto k = parse_generators(g.degree(), k_gens);
  const auto n = parse_generators(g.degree(), n_gens);
  PermutationGroup actor;
  if (actor_gens) {
    actor = parse_generators(g.degree(), *actor_gens);
  } else {
    if (!g.contains(k) || !g.contains(n)) throw InputError("K and N must be subgroups of the group");
    actor = sylow(intersection(normalizer(g, k), normalizer(g, n)), p);
  }
  const auto ctx = CoprimeActionContext::make(g, k, n, actor, p);
  auto witnesses = json::array();
  for (const auto& w : correspondence_map(ctx)) witnesses.push_back(witness_to_json(w));
  json doc = {{"group", source},
              {"prime", p},
              {"orders", {{"K", k.size()}, {"N", n.size()}, {"C", ctx.fixed_sub.size()}, {"P", actor.size()}}},
              {"actor", generators_to_json(actor)},
              {"fixed_sub", generators_to_json(ctx.fixed_sub)},
              {"invariant_K", ctx.target_invariant},
              {"invariant_N", ctx.kernel_invariant},
              {"witnesses", witnesses},
              {"constituent_orbits", coprime_constituent_check(ctx)},
              {"induction_constituents", coprime_induction_check(ctx)}};
  out << dump(doc);
  const bool ok = doc["constituent_orbits"].get<bool>() && doc["induction_constituents"].get<bool>();
  return ok ? kOk : kViolation;
}

// --- corpus -----------------------------------------------------------------

struct Task {
  std::string file;
  std::string group;
  PermutationGroup g;
  std::uint64_t p = 0;
  Permutation x;
  std::optional<std::size_t> class_index;
  CheckOptions options;
};

struct Outcome {
  std::optional<VerificationReport> report;
  std::string error;
  int code = kOk;
};

fs::path resolve_source(const std::string& source, const fs::path& base) {
  if (!base.empty() && fs::path(source).is_relative() && fs::exists(base / source)) return base / source;
  return fs::path(source);
}

json error_record(const std::string& group, std::optional<std::uint64_t> p, const std::string& element,
                  const std::exception& e) {
  json j = {{"group", group}, {"message", e.what()}, {"exit_code", exit_code_for(e)}};
  if (p) j["prime"] = *p;
  if (!element.empty()) j["element"] = element;
  return j;
}

}  // namespace

CorpusSpec parse_corpus_spec(const json& j, const fs::path& base_dir) {
  CorpusSpec spec;
  spec.base_dir = base_dir;
  try {
    for (const auto& e : j.at("entries")) {
      CorpusEntry entry;
      entry.group = e.at("group").get<std::string>();
      if (e.contains("primes") && !e["primes"].is_string()) {
        entry.primes = e["primes"].get<std::vector<std::uint64_t>>();
      } else if (e.contains("primes") && e["primes"] != "odd") {
        throw InputError("primes must be \"odd\" or a list");
      }
      if (e.contains("elements") && !e["elements"].is_string()) {
        entry.elements = e["elements"].get<std::vector<std::string>>();
      } else if (e.contains("elements") && e["elements"] != "picky") {
        throw InputError("elements must be \"picky\" or a list of cycle strings");
      }
      entry.mode = parse_mode(e.value("mode", std::string("all")));
      entry.allow_p2 = e.value("allow_p2", false);
      entry.all_chief_factors = e.value("all_chief_factors", false);
      spec.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed corpus spec: ") + ex.what());
  }
  return spec;
}

int run_corpus(const CorpusSpec& spec, const fs::path& out_dir, unsigned jobs, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Task> tasks;
  auto errors = json::array();
  auto skipped = json::array();

  for (std::size_t ei = 0; ei < spec.entries.size(); ++ei) {
    const auto& entry = spec.entries[ei];
    PermutationGroup g;
    try {
      g = load_group(resolve_source(entry.group, spec.base_dir).string());
    } catch (const std::exception& e) {
      errors.push_back(error_record(entry.group, std::nullopt, "", e));
      continue;
    }
    std::vector<std::uint64_t> primes = entry.primes;
    if (primes.empty()) {
      for (auto p : prime_divisors(g.size())) {
        if (p != 2) primes.push_back(p);
      }
    }
    for (auto p : primes) {
      try {
        if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
        if (g.size() % p != 0) {
          skipped.push_back({{"group", entry.group}, {"prime", p}, {"reason", "p does not divide |G|"}});
          continue;
        }
        if (p == 2 && !entry.allow_p2) throw InputError("p = 2 requires allow_p2");
        if (!is_p_solvable(g, p)) {
          skipped.push_back({{"group", entry.group}, {"prime", p}, {"reason", "not p-solvable"}});
          continue;
        }
        CheckOptions opts;
        opts.mode = entry.mode;
        opts.allow_p2 = entry.allow_p2;
        opts.all_chief_factors = entry.all_chief_factors;
        opts.group_id = entry.group;
        char prefix[64];
        std::snprintf(prefix, sizeof prefix, "%03zu-", ei);
        const std::string stem = prefix + sanitize(entry.group) + "-p" + std::to_string(p);
        if (entry.elements.empty()) {
          ConjugacyData cd(g);
          for (const auto& c : p_element_classes(g, p)) {
            if (!c.picky()) continue;
            const auto k = cd.class_of(c.element);
            tasks.push_back({stem + "-c" + std::to_string(k) + ".json", entry.group, g, p, c.element, k, opts});
          }
        } else {
          for (std::size_t xi = 0; xi < entry.elements.size(); ++xi) {
            try {
              auto x = Permutation::from_cycles(g.degree(), entry.elements[xi]);
              tasks.push_back({stem + "-e" + std::to_string(xi) + ".json", entry.group, g, p, x, std::nullopt, opts});
            } catch (const std::exception& e) {
              errors.push_back(error_record(entry.group, p, entry.elements[xi], e));
            }
          }
        }
      } catch (const std::exception& e) {
        errors.push_back(error_record(entry.group, p, "", e));
      }
    }
  }

  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      try {
        outcomes[i].report = check_theorem_A(t.g, t.p, t.x, t.options);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
        outcomes[i].code = exit_code_for(e);
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  fs::create_directories(out_dir);
  auto reports = json::array();
  auto discrepancies = json::array();
  auto violations = json::array();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const auto& o = outcomes[i];
    if (!o.report) {
      errors.push_back({{"group", t.group},
                        {"prime", t.p},
                        {"element", t.x.to_cycles()},
                        {"message", o.error},
                        {"exit_code", o.code}});
      continue;
    }
    const auto& r = *o.report;
    write_file(out_dir / t.file, dump(report_to_json(r)));
    auto blocks = json::array();
    for (const auto& b : r.blockwise.blocks) {
      blocks.push_back({{"theta", b.theta}, {"predicted_sign", b.predicted_sign}, {"realized_signs", b.realized_signs}});
    }
    json entry = {{"file", t.file},
                  {"group", t.group},
                  {"order", r.group_order},
                  {"prime", t.p},
                  {"element", t.x.to_cycles()},
                  {"irr_x_sizes", {r.irr_x_group, r.irr_x_normalizer}},
                  {"exploratory", r.exploratory},
                  {"sign_discrepancy", r.sign_discrepancy},
                  {"violations", r.violations.size()},
                  {"blocks", blocks}};
    if (t.class_index) entry["class"] = *t.class_index;
    if (r.global_checked) entry["global_signs"] = r.global_signs;
    if (r.per_char_checked) entry["per_char_exists"] = r.per_char_exists;
    if (r.sign_discrepancy) discrepancies.push_back(t.file);
    for (const auto& v : r.violations) violations.push_back({{"file", t.file}, {"message", v}});
    reports.push_back(std::move(entry));
  }
  json summary = {{"totals",
                   {{"reports", reports.size()},
                    {"violations", violations.size()},
                    {"sign_discrepancies", discrepancies.size()},
                    {"errors", errors.size()},
                    {"skipped", skipped.size()}}},
                  {"reports", reports},
                  {"violations", violations},
                  {"sign_discrepancies", discrepancies},
                  {"errors", errors},
                  {"skipped", skipped}};
  write_file(out_dir / "summary.json", dump(summary));

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log << "corpus: " << reports.size() << " reports, " << violations.size() << " violations, " << discrepancies.size()
      << " sign discrepancies, " << errors.size() << " errors, " << skipped.size() << " skipped (" << jobs
      << " jobs, " << secs << " s)\n";
  if (!violations.empty()) return kViolation;
  if (!errors.empty()) return errors.front().at("exit_code").get<int>();
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Picky-element character checks for finite permutation groups", "picky"};
  app.require_subcommand(1);

  std::string group;
  std::optional<std::string> cache;
  bool as_json = false;
  auto* table = app.add_subcommand("table", "Print (and cache) the character table of a group");
  table->add_option("--group", group, "Named group or JSON group file")->required();
  table->add_option("--cache", cache, "Cache directory (default $PICKY_CACHE)");
  table->add_flag("--json", as_json, "Print the table document instead of text");

  std::uint64_t prime = 0;
  bool all = false;
  auto* picky_cmd = app.add_subcommand("picky", "List picky p-element classes with certificates");
  picky_cmd->add_option("--group", group, "Named group or JSON group file")->required();
  picky_cmd->add_option("--prime", prime, "Prime p")->required();
  picky_cmd->add_flag("--all", all, "Include p-element classes that are not picky");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the picky-element bijection for one group and prime");
  verify->add_option("--group", va.group, "Named group or JSON group file")->required();
  verify->add_option("--prime", va.prime, "Odd prime p")->required();
  verify->add_option("--element", va.element, "Element in cycle notation (default: every picky class)");
  verify->add_option("--mode", va.mode, "global, perchar, blockwise or all");
  verify->add_option("--out", va.out, "Write the report here instead of stdout");
  verify->add_flag("--allow-p2", va.allow_p2, "Permit exploratory runs with p = 2");
  verify->add_flag("--all-chief-factors", va.all_chief_factors, "Try every chief factor below K");
  verify->add_flag("--timing", va.timing, "Include wall time in the report");

  std::string spec_file, out_dir;
  unsigned jobs = 1;
  auto* corpus = app.add_subcommand("corpus", "Run a sweep described by a JSON spec");
  corpus->add_option("--spec", spec_file, "Sweep spec")->required();
  corpus->add_option("--out", out_dir, "Report directory")->required();
  corpus->add_option("--jobs", jobs, "Worker threads (0: one per core)");

  std::string k_gens, n_gens;
  std::optional<std::string> actor_gens;
  auto* glauberman = app.add_subcommand("glauberman", "Print relative Glauberman correspondence witnesses");
  glauberman->add_option("--group", group, "Named group or JSON group file")->required();
  glauberman->add_option("--k", k_gens, "Generators of K, ';'-separated cycles")->required();
  glauberman->add_option("--n", n_gens, "Generators of N, ';'-separated cycles (empty: trivial)")->required();
  glauberman->add_option("--p", prime, "Prime p")->required();
  glauberman->add_option("--actor", actor_gens, "Generators of the acting p-group (default: a Sylow p-subgroup of N_G(K) n N_G(N))");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*table) return cmd_table(group, cache, as_json, out);
    if (*picky_cmd) return cmd_picky(group, prime, all, out);
    if (*verify) return cmd_verify(va, out);
    if (*glauberman) return cmd_glauberman(group, k_gens, n_gens, actor_gens, prime, out);
    if (*corpus) {
      std::ifstream in(spec_file);
      if (!in) throw InputError("cannot read " + spec_file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw InputError(std::string("malformed spec: ") + e.what());
      }
      return run_corpus(parse_corpus_spec(j, fs::path(spec_file).parent_path()), out_dir, jobs, err);
    }
  } catch (const std::exception& e) {
    err << "picky: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kInputError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace picky::cli
