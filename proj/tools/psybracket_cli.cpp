// psybracket command-line driver.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "psybracket/psybracket.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInputError = 2;

struct Globals {
  std::string mode = "pseudo";
  bool reverse = false;
  int jobs = 1;
};

psy::EquivalenceMode parse_mode(const std::string& s) {
  if (s == "pseudo") return psy::EquivalenceMode::Pseudo;
  if (s == "singular") return psy::EquivalenceMode::Singular;
  throw psy::InputError("mode must be 'pseudo' or 'singular', got '" + s + "'");
}

psy::Diagram load_diagram(const std::string& path, const Globals& g) {
  psy::Diagram d;
  try {
    d = psy::load_diagram(path);
    psy::require_valid(d);
  } catch (const psy::InputError& e) {
    throw psy::InputError(path + ": " + e.what());
  }
  return g.reverse ? psy::reversed(d) : d;
}

psy::PsyBracket load_psy(const std::string& path) {
  try {
    return psy::load_psybracket(path);
  } catch (const psy::InputError& e) {
    throw psy::InputError(path + ": " + e.what());
  }
}

std::vector<fs::path> files_with_extension(const std::string& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) throw psy::InputError("not a directory: " + dir);
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads.
template <class Body>
void parallel_for(std::size_t count, int jobs, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s;
}

int cmd_verify(const std::string& path) {
  const auto x = load_psy(path);
  const auto report = psy::check_axioms(x);
  if (report.passed) {
    std::cout << "passed n=" << x.size() << '\n';
    return kOk;
  }
  for (const auto& f : report.failures) {
    std::vector<std::string> w;
    for (auto v : f.witness) w.push_back(std::to_string(v));
    std::cout << "failed " << psy::axiom_tag(f.axiom) << " witness=(" << join(w) << ")\n";
  }
  return kFailure;
}

int cmd_enumerate(int n, int bound) {
  const auto r = psy::enumerate_psybrackets(n, bound);
  for (std::size_t i = 0; i < r.representatives.size(); ++i) {
    if (i) std::cout << "---\n";
    std::cout << "# class " << i + 1 << " size=" << r.class_sizes[i] << '\n'
              << psy::serialize_psybracket(r.representatives[i]);
  }
  if (!r.representatives.empty()) std::cout << "---\n";
  std::cout << "classes=" << r.representatives.size() << " total=" << r.total << '\n';
  return kOk;
}

int cmd_color(const std::string& dpath, const std::string& xpath, bool list, const Globals& g) {
  const auto d = load_diagram(dpath, g);
  const auto x = load_psy(xpath);
  if (list) {
    for (const auto& c : psy::enumerate_colorings(d, x)) {
      std::string line;
      for (std::size_t r = 0; r < c.size(); ++r)
        line += (r ? " " : "") + std::to_string(r) + "=" + std::to_string(c[r]);
      std::cout << line << '\n';
    }
  }
  std::cout << "phi=" << psy::count_colorings(d, x) << '\n';
  return kOk;
}

int cmd_wereset(const std::string& dpath, const std::string& battery_dir, int bound,
                const Globals& g) {
  const auto d = load_diagram(dpath, g);
  std::vector<psy::TernaryTensor> battery;
  for (const auto& p : files_with_extension(battery_dir, ".psy")) battery.push_back(load_psy(p.string()).classical);
  for (const auto& group : psy::wereset(d, battery, bound)) {
    std::vector<std::string> phi, lk;
    for (auto v : group.fingerprint.phi) phi.push_back(std::to_string(v));
    for (auto v : group.fingerprint.linking) lk.push_back(std::to_string(v));
    std::cout << "weight=" << group.weight.num << '/' << group.weight.den << " phi=[" << join(phi)
              << "] lk=[" << join(lk) << "]\n";
  }
  return kOk;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoull(s);
      return {v, v};
    }
    const auto a = std::stoull(s.substr(0, dots)), b = std::stoull(s.substr(dots + 2));
    if (a > b) throw psy::InputError("empty seed range " + s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw psy::InputError("seed range must look like a..b, got '" + s + "'");
  }
}

int cmd_moves_test(const std::string& dpath, const std::string& xpath, int len,
                   const std::string& seeds, const Globals& g) {
  const auto d = load_diagram(dpath, g);
  const auto x = load_psy(xpath);
  const auto mode = parse_mode(g.mode);
  const auto [lo, hi] = parse_seed_range(seeds);
  const auto before = psy::count_colorings(d, x);
  const std::size_t count = hi - lo + 1;
  std::vector<std::string> lines(count);
  std::vector<char> ok(count, 0);
  parallel_for(count, g.jobs, [&](std::size_t i) {
    const std::uint64_t seed = lo + i;
    const auto e = psy::random_move_sequence(d, mode, len, seed);
    const auto after = psy::count_colorings(e, x);
    bool good = after == before && psy::validate(e).ok;
    if (mode == psy::EquivalenceMode::Singular)
      good = good && e.precrossing_count() == d.precrossing_count();
    ok[i] = good;
    std::ostringstream line;
    line << "seed=" << seed << " phi_before=" << before << " phi_after=" << after
         << " ok=" << (good ? "true" : "false");
    lines[i] = line.str();
  });
  for (const auto& l : lines) std::cout << l << '\n';
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; }) ? kOk : kFailure;
}

int cmd_table(const std::string& corpus, const std::string& psydir, const Globals& g) {
  struct Named {
    std::string name;
    psy::Diagram d;
  };
  std::vector<Named> diagrams;
  for (const auto& p : files_with_extension(corpus, ".pkd")) {
    auto d = load_diagram(p.string(), g);
    diagrams.push_back({d.name, std::move(d)});
  }
  std::vector<std::pair<std::string, psy::PsyBracket>> structures;
  for (const auto& p : files_with_extension(psydir, ".psy")) {
    auto x = load_psy(p.string());
    if (!psy::check_axioms(x).passed) throw psy::InputError(p.string() + ": not a psybracket");
    structures.push_back({p.stem().string(), std::move(x)});
  }
  struct Row {
    std::string diagram, psybracket;
    std::uint64_t phi;
  };
  std::vector<Row> rows(diagrams.size() * structures.size());
  parallel_for(rows.size(), g.jobs, [&](std::size_t i) {
    const auto& d = diagrams[i / structures.size()];
    const auto& x = structures[i % structures.size()];
    rows[i] = {d.name, x.first, psy::count_colorings(d.d, x.second)};
  });
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.diagram, a.psybracket) < std::tie(b.diagram, b.psybracket);
  });
  std::cout << "diagram,psybracket,phi\n";
  for (const auto& r : rows) std::cout << r.diagram << ',' << r.psybracket << ',' << r.phi << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Psybracket algebra and pseudoknot coloring invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--mode", g.mode, "Equivalence: pseudo or singular")
      ->check(CLI::IsMember({"pseudo", "singular"}));
  app.add_flag("--reverse", g.reverse, "Reverse every strand of loaded diagrams");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string psy_path, pkd_path, dir_a, dir_b, seeds = "1..10";
  int n = 0, bound = psy::kDefaultEnumerationBound, wbound = psy::kDefaultWeresetBound, len = 8;
  bool list = false;

  auto* verify = app.add_subcommand("verify", "Check the psybracket axioms");
  verify->add_option("file", psy_path)->required();

  auto* enumerate = app.add_subcommand("enumerate", "List psybrackets up to isomorphism");
  enumerate->add_option("n", n)->required();
  enumerate->add_option("--bound", bound, "Largest carrier size allowed");

  auto* color = app.add_subcommand("color", "Count colorings of a diagram");
  color->add_option("diagram", pkd_path)->required();
  color->add_option("psybracket", psy_path)->required();
  color->add_flag("--list", list, "Print every coloring");

  auto* were = app.add_subcommand("wereset", "Weighted resolution set of a diagram");
  were->add_option("diagram", pkd_path)->required();
  were->add_option("--battery", dir_a, "Directory of .psy files whose classical parts fingerprint resolutions")
      ->required();
  were->add_option("--bound", wbound, "Largest precrossing count allowed");

  auto* moves = app.add_subcommand("moves-test", "Check invariance along random move sequences");
  moves->add_option("diagram", pkd_path)->required();
  moves->add_option("psybracket", psy_path)->required();
  moves->add_option("--len", len, "Moves per sequence")->check(CLI::NonNegativeNumber);
  moves->add_option("--seeds", seeds, "Seed range a..b");

  auto* table = app.add_subcommand("table", "CSV of phi over a corpus and a set of psybrackets");
  table->add_option("corpus", dir_a)->required();
  table->add_option("psybrackets", dir_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*verify) return cmd_verify(psy_path);
    if (*enumerate) return cmd_enumerate(n, bound);
    if (*color) return cmd_color(pkd_path, psy_path, list, g);
    if (*were) return cmd_wereset(pkd_path, dir_a, wbound, g);
    if (*moves) return cmd_moves_test(pkd_path, psy_path, len, seeds, g);
    if (*table) return cmd_table(dir_a, dir_b, g);
  } catch (const psy::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kInputError;
}
