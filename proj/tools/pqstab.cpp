// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 input error, 3 size-guard refusal.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pqstab/discrete.hpp"
#include "pqstab/error.hpp"
#include "pqstab/io.hpp"
#include "pqstab/oracles.hpp"
#include "pqstab/ordered_helly.hpp"
#include "pqstab/planar_hd.hpp"
#include "pqstab/sweepline.hpp"

using namespace pqstab;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitSizeGuard = 3;

int fail(const std::string& kind, const std::string& message, json extra = json::object()) {
  json err = {{"kind", kind}, {"message", message}};
  err.update(extra);
  std::cerr << json{{"error", err}}.dump() << "\n";
  if (kind == "size-guard") return kExitSizeGuard;
  return kExitInput;
}

void print_warnings(const InstanceFile& inst) {
  for (const auto& w : inst.warnings) std::cerr << json{{"warning", w}}.dump() << "\n";
}

InstanceFile load_checked(const std::string& path) {
  InstanceFile inst = load_instance(path);
  print_warnings(inst);
  return inst;
}

std::vector<Scalar> parse_array(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty array entry", "--array");
    out.push_back(parse_scalar(item.substr(b, e - b + 1)));
  }
  return out;
}

void require_planar(const InstanceFile& inst, const char* command) {
  if (inst.kind != InstanceKind::Planar) throw InputError(std::string(command) + " needs a planar instance", "kind");
}

Certificate verify_result(const InstanceFile& inst, const ResultFile& r) {
  Certificate c = inst.kind == InstanceKind::Planar ? verify_stabbing(inst.polygons, r.points)
                                                    : verify_stabbing(inst.sets, r.elements);
  const int budget = inst.p - inst.q + 1;
  if (c.verdict && r.size() > static_cast<std::size_t>(budget)) {
    c.verdict = false;
    c.detail = std::to_string(r.size()) + " points exceed the budget " + std::to_string(budget);
  }
  return c;
}

struct StabOptions {
  std::string instance;
  std::string mode = "bruteforce";
  std::uint64_t seed = 0;
  bool verify = false;
  bool timing = false;
  std::string out = "-";
};

int run_stab(const StabOptions& o) {
  const InstanceFile inst = load_checked(o.instance);
  const auto start = std::chrono::steady_clock::now();
  ResultFile r;
  switch (inst.kind) {
    case InstanceKind::Planar: {
      XStarMode mode;
      if (o.mode == "bruteforce") mode = XStarMode::BruteForce;
      else if (o.mode == "randomized") mode = XStarMode::Randomized;
      else throw InputError("expected bruteforce or randomized", "--mode");
      r = make_result_file(inst.kind, inst.p, inst.q, stab_planar(inst.polygons, PQParams{inst.p, inst.q, 3}, mode, o.seed));
      r.mode = o.mode;
      r.seed = o.seed;
      break;
    }
    case InstanceKind::Tree: {
      TreeSystem sys(*inst.tree);
      r = make_result_file(inst.kind, inst.p, inst.q, stab_generic(sys, std::span<const ElementSet>(inst.sets), inst.p, inst.q));
      break;
    }
    case InstanceKind::Poset: {
      PosetSystem sys(*inst.poset);
      r = make_result_file(inst.kind, inst.p, inst.q, stab_generic(sys, std::span<const ElementSet>(inst.sets), inst.p, inst.q));
      break;
    }
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (o.verify) r.certificate = verify_result(inst, r);
  write_text(o.out, dump_result(r, o.timing));
  if (o.verify && !r.certificate->verdict) return kExitVerifyFailed;
  return 0;
}

struct GenOptions {
  std::string kind;
  std::size_t n = 10;
  int p = 3;
  int q = 3;
  std::string scheme = "cluster";
  std::uint64_t seed = 0;
  std::size_t vertices = 0;
  std::size_t chains = 3;
  std::string out = "-";
};

int run_gen(const GenOptions& o) {
  InstanceFile inst;
  inst.p = o.p;
  inst.q = o.q;
  inst.provenance = Provenance{o.kind + ":" + o.scheme, o.seed};
  if (o.kind == "planar") {
    inst.kind = InstanceKind::Planar;
    inst.polygons = gen_planar_instance(o.n, o.p, o.q, o.seed, parse_scheme(o.scheme));
  } else if (o.kind == "tree") {
    inst.kind = InstanceKind::Tree;
    TreeInstance t = gen_tree_instance(o.vertices ? o.vertices : 2 * o.n, o.n, o.p, o.q, o.seed);
    inst.tree = std::move(t.tree);
    inst.sets = std::move(t.subtrees);
    inst.provenance->generator = "tree:cluster";
  } else {
    inst.kind = InstanceKind::Poset;
    PosetInstance t = gen_poset_instance(o.vertices ? o.vertices : o.n, o.chains, o.n, o.p, o.q, o.seed);
    inst.poset = std::move(t.poset);
    inst.sets = std::move(t.ideals);
    inst.provenance->generator = "poset:cluster";
  }
  write_text(o.out, dump_instance(inst));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabbing sets for families with the (p,q)-property"};
  app.require_subcommand(1);

  StabOptions stab;
  auto* c_stab = app.add_subcommand("stab", "Compute at most p-q+1 stabbing points/elements");
  c_stab->add_option("instance", stab.instance, "Instance file ('-' for stdin)")->required();
  c_stab->add_option("--mode", stab.mode, "x* computation: bruteforce or randomized (planar)");
  c_stab->add_option("--seed", stab.seed, "Random seed for the randomized mode");
  c_stab->add_flag("--verify", stab.verify, "Attach a stabbing certificate");
  c_stab->add_flag("--timing", stab.timing, "Include the timing block");
  c_stab->add_option("--out", stab.out, "Output file ('-' for stdout)");

  std::string verify_instance, verify_result_path;
  auto* c_verify = app.add_subcommand("verify", "Check a result against its instance");
  c_verify->add_option("instance", verify_instance)->required();
  c_verify->add_option("result", verify_result_path)->required();
  bool verify_pq = false;
  c_verify->add_flag("--pq", verify_pq, "Also certify the instance's (p,q)-property (exhaustive, size-guarded)");

  GenOptions gen;
  auto* c_gen = app.add_subcommand("gen", "Generate an instance with a planted (p,q)-property");
  c_gen->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"planar", "tree", "poset"}));
  c_gen->add_option("--n", gen.n, "Number of sets");
  c_gen->add_option("--p", gen.p);
  c_gen->add_option("--q", gen.q);
  c_gen->add_option("--scheme", gen.scheme, "helly, cluster or adversarial (planar)");
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--vertices", gen.vertices, "Tree vertices / poset elements");
  c_gen->add_option("--chains", gen.chains, "Poset chains (bounds the width)");
  c_gen->add_option("--out", gen.out);

  std::string decide_instance, decide_x;
  bool decide_promise = false;
  auto* c_decide = app.add_subcommand("decide-right", "Does some pair meet only strictly right of x?");
  c_decide->add_option("instance", decide_instance)->required();
  c_decide->add_option("--x", decide_x, "Abscissa of the vertical line")->required();
  c_decide->add_flag("--promise", decide_promise, "Use the (p,q) shortcut for many sets right of the line");

  std::string max_instance;
  auto* c_max = app.add_subcommand("max-stab", "Event point in the most polygons (sweep)");
  c_max->add_option("instance", max_instance)->required();

  std::string pairs_instance, pairs_method = "quadratic";
  auto* c_pairs = app.add_subcommand("count-pairs", "Count intersecting polygon pairs");
  c_pairs->add_option("instance", pairs_instance)->required();
  c_pairs->add_option("--method", pairs_method)->check(CLI::IsMember({"quadratic", "sweep"}));

  std::string intervals_path;
  auto* c_iv = app.add_subcommand("count-intervals", "Count intersecting interval pairs");
  c_iv->add_option("intervals", intervals_path, "{\"intervals\": [[lo, hi], ...]}")->required();

  int rh = 3, rp = 0, rq = 0;
  auto* c_reduce = app.add_subcommand("reduce-pq", "Reduce (p, q) for Helly number h");
  c_reduce->set_help_flag("--help", "Print this help message and exit");
  c_reduce->add_option("--h", rh);
  c_reduce->add_option("--p", rp)->required();
  c_reduce->add_option("--q", rq)->required();

  std::string array_text;
  int red_p = 3, red_q = 3;
  std::string red_out = "-";
  auto* c_red = app.add_subcommand("reduction-instance", "Triangle family encoding duplicate detection");
  c_red->add_option("--array", array_text, "Comma-separated numbers")->required();
  c_red->add_option("--p", red_p);
  c_red->add_option("--q", red_q);
  c_red->add_option("--out", red_out);

  std::string min_instance;
  int min_budget = 0;
  std::uint64_t min_guard = kDefaultMinStabGuard;
  auto* c_min = app.add_subcommand("min-stab", "Exhaustive minimum stabbing number");
  c_min->add_option("instance", min_instance)->required();
  c_min->add_option("--budget", min_budget)->required();
  c_min->add_option("--guard", min_guard, "Search node limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what());
  }

  try {
    if (*c_stab) return run_stab(stab);
    if (*c_gen) return run_gen(gen);

    if (*c_verify) {
      const InstanceFile inst = load_checked(verify_instance);
      const ResultFile r = load_result(verify_result_path);
      auto print = [](const Certificate& c) {
        std::cout << json{{"kind", to_string(c.kind)}, {"verdict", c.verdict}, {"witness", c.witness}, {"detail", c.detail}}
                         .dump(2)
                  << "\n";
      };
      bool ok = true;
      if (verify_pq) {
        const Certificate pq = inst.kind == InstanceKind::Planar ? check_pq_property(inst.polygons, inst.p, inst.q)
                                                                 : check_pq_property(inst.sets, inst.p, inst.q);
        print(pq);
        ok = pq.verdict;
      }
      const Certificate c = verify_result(inst, r);
      print(c);
      return ok && c.verdict ? 0 : kExitVerifyFailed;
    }
    if (*c_decide) {
      const InstanceFile inst = load_checked(decide_instance);
      require_planar(inst, "decide-right");
      const Scalar t = parse_scalar(decide_x);
      const bool answer = decide_xstar_right(inst.polygons, t, decide_promise ? std::optional<int>(inst.p) : std::nullopt);
      std::cout << (answer ? "true" : "false") << "\n";
      if (answer) {
        if (auto w = find_right_pair(inst.polygons, t)) std::cout << "witness " << w->first << " " << w->second << "\n";
      }
      return 0;
    }
    if (*c_max) {
      const InstanceFile inst = load_checked(max_instance);
      require_planar(inst, "max-stab");
      const StabPoint sp = max_stab_point(inst.polygons);
      std::cout << json{{"point", json::array({to_string(sp.point.x), to_string(sp.point.y)})}, {"count", sp.count}}.dump()
                << "\n";
      return 0;
    }
    if (*c_pairs) {
      const InstanceFile inst = load_checked(pairs_instance);
      require_planar(inst, "count-pairs");
      if (pairs_method == "sweep") {
        const SweepPairCount c = count_polygon_pairs_sweep(inst.polygons);
        if (c.fallback) {
          std::cerr << json{{"warning", "sweep fell back to the quadratic counter"}}.dump() << "\n";
          std::cout << count_pair_intersections(inst.polygons) << "\n";
        } else {
          std::cout << c.pairs << "\n";
        }
      } else {
        std::cout << count_pair_intersections(inst.polygons) << "\n";
      }
      return 0;
    }
    if (*c_iv) {
      std::cout << count_interval_pairs(load_intervals(intervals_path)) << "\n";
      return 0;
    }
    if (*c_reduce) {
      const PQParams r = reduce_pq(PQParams{rp, rq, rh});
      std::cout << r.p << " " << r.q << "\n";
      return 0;
    }
    if (*c_red) {
      const std::vector<Scalar> a = parse_array(array_text);
      auto [family, line] = gen_reduction_instance(a);
      InstanceFile inst;
      inst.kind = InstanceKind::Planar;
      inst.p = red_p;
      inst.q = red_q;
      inst.polygons = std::move(family);
      inst.line = line;
      inst.provenance = Provenance{"reduction:" + array_text, 0};
      write_text(red_out, dump_instance(inst));
      return 0;
    }
    if (*c_min) {
      const InstanceFile inst = load_checked(min_instance);
      std::optional<int> m;
      if (inst.kind == InstanceKind::Planar) {
        m = min_stab_bruteforce(inst.polygons, min_budget, min_guard);
      } else {
        const std::size_t ground = inst.kind == InstanceKind::Tree ? inst.tree->size() : inst.poset->size();
        m = min_stab_bruteforce(inst.sets, ground, min_budget, min_guard);
      }
      if (m) {
        std::cout << *m << "\n";
      } else {
        std::cout << "exceeds-budget\n";
      }
      return 0;
    }
  } catch (const SizeGuardError& e) {
    return fail("size-guard", e.what(), {{"guard", e.guard()}});
  } catch (const InputError& e) {
    return fail("input", e.what(), {{"context", e.context()}});
  } catch (const PreconditionError& e) {
    return fail("precondition", e.what());
  } catch (const PromiseViolation& e) {
    return fail("promise", e.what());
  }
  return 0;
}
