// Acceptance suite: one checkable criterion per section, each printing a
// single [PASS]/[FAIL] line. Run with no arguments for all criteria or with
// a criterion number to run one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <partseg/aggregate.hpp>
#include <partseg/decouple.hpp>
#include <partseg/eval.hpp>
#include <partseg/rng.hpp>
#include <partseg/scenegen.hpp>
#include <partseg/serialize.hpp>

#include "../fixtures.hpp"

namespace fs = std::filesystem;
using namespace partseg;

namespace {

#ifndef PARTSEG_CLI_PATH
#define PARTSEG_CLI_PATH "partseg"
#endif

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

std::vector<std::pair<std::string, BinaryMask>> fixture_shapes() {
  std::vector<std::pair<std::string, BinaryMask>> shapes;
  for (int s : {1, 2, 3}) {
    shapes.emplace_back("L/" + std::to_string(s), fixtures::l_shape(s));
    shapes.emplace_back("T/" + std::to_string(s), fixtures::t_shape(s));
    shapes.emplace_back("U/" + std::to_string(s), fixtures::u_shape(s));
    shapes.emplace_back("plus/" + std::to_string(s), fixtures::plus_shape(s));
    shapes.emplace_back("S/" + std::to_string(s), fixtures::s_shape(s));
    shapes.emplace_back("wrench/" + std::to_string(s),
                        fixtures::wrench_shape(s));
  }
  return shapes;
}

fs::path scratch_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("partseg_acc_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PARTSEG_CLI_PATH) + " " + args;
  return std::system(cmd.c_str());
}

std::set<std::set<int>> group_sets(const std::vector<AssembledInstance>& is) {
  std::set<std::set<int>> out;
  for (const auto& inst : is)
    out.insert(std::set<int>(inst.part_indices.begin(),
                             inst.part_indices.end()));
  return out;
}

// --------------------------------------------------------------------------
// 1. Decomposition soundness: every emitted part beats the concavity bound.

bool criterion1(std::string& detail) {
  Stopwatch watch;
  const DecoupleConfig cfg;  // tau_ratio 0.2
  int shapes_ok = 0, total_parts = 0;
  bool ok = true;
  for (const auto& [name, mask] : fixture_shapes()) {
    const auto parts = decouple(mask, cfg);
    BinaryMask covered(mask.width(), mask.height());
    bool shape_ok = true;
    for (const auto& part : parts) {
      ++total_parts;
      if (part.no_valid_cut ||
          mask_concavity(part.mask) >= decouple_tau(part.mask, cfg)) {
        shape_ok = false;
      }
      if (!intersect(covered, part.mask).empty()) shape_ok = false;
      covered = unite(covered, part.mask);
    }
    if (!(covered == mask)) shape_ok = false;
    if (shape_ok) ++shapes_ok;
    ok = ok && shape_ok;
  }
  const double elapsed = watch.seconds();
  ok = ok && elapsed < 5.0;
  std::ostringstream os;
  os << shapes_ok << "/18 shapes sound, " << total_parts
     << " parts all below 0.2*d_short, partition exact, " << elapsed
     << " s (< 5 s)";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 2. Solidity improvement on low-solidity fixtures.

bool criterion2(std::string& detail) {
  const DecoupleConfig cfg;
  bool ok = true;
  int applicable = 0, skipped = 0;
  double worst_margin = 1.0;
  for (const auto& [name, mask] : fixture_shapes()) {
    const double whole = solidity(mask);
    if (whole >= 0.5) {
      ++skipped;
      continue;
    }
    ++applicable;
    const bool needs_margin = name[0] == 'L' || name[0] == 'T' ||
                              name[0] == 'U';
    for (const auto& part : decouple(mask, cfg)) {
      const double part_solidity = solidity(part.mask);
      if (part_solidity <= whole) ok = false;
      if (needs_margin) {
        worst_margin = std::min(worst_margin, part_solidity - whole);
        if (part_solidity - whole < 0.02) ok = false;
      }
    }
  }
  std::ostringstream os;
  os << applicable << " low-solidity shapes improved by every part ("
     << skipped << " above 0.5 skipped); worst L/T/U margin " << worst_margin
     << " (>= 0.02)";
  detail = os.str();
  return ok && applicable > 0;
}

// --------------------------------------------------------------------------
// 3. Oracle aggregation exactness over 50 composed scenes.

bool criterion3(std::string& detail) {
  Stopwatch watch;
  const Template tmpl =
      make_template("l-connector", fixtures::l_shape(2), DecoupleConfig{});

  // The criterion presumes every part is detectable; compose with seeds
  // 1, 2, ... and keep the first 50 scenes where every part keeps at least
  // 12% visibility (detection floor 0.1 then catches all of them).
  std::vector<Scene> scenes;
  std::uint64_t seed = 1;
  int rejected = 0;
  while (scenes.size() < 50 && seed < 4000) {
    Scene scene = compose_scene(tmpl, 10, 40, 768, 768, seed++);
    bool usable = !scene.instances.empty();
    for (const auto& inst : scene.instances)
      for (const auto& part : inst.parts.parts) {
        const double frac = static_cast<double>(part.visible_mask.area()) /
                            static_cast<double>(part.full_mask.area());
        if (frac < 0.12) usable = false;
      }
    if (usable)
      scenes.push_back(std::move(scene));
    else
      ++rejected;
  }
  if (scenes.size() < 50) {
    detail = "could not assemble 50 admissible scenes";
    return false;
  }

  bool grouping_ok = true;
  int discarded_total = 0;
  std::vector<EvalScene> eval_scenes;
  int instance_total = 0;
  for (const Scene& scene : scenes) {
    const auto preds = ground_truth_predictions(scene, 0.1);
    std::set<std::set<int>> expected;
    int next = 0;
    for (const auto& inst : scene.instances) {
      std::set<int> group;
      for (const auto& part : inst.parts.parts)
        if (!part.occluded) group.insert(next++);
      if (!group.empty()) expected.insert(group);
    }
    const AggregationResult result = aggregate(preds, AggregateConfig{});
    discarded_total += static_cast<int>(result.discarded.size());
    if (group_sets(result.instances) != expected) grouping_ok = false;

    EvalScene es;
    for (const auto& inst : result.instances)
      es.preds.push_back({refine_mask(inst, 2), inst.score});
    for (const auto& inst : scene.instances)
      if (!inst.visible_mask.empty()) es.gts.push_back(inst.visible_mask);
    instance_total += static_cast<int>(es.gts.size());
    eval_scenes.push_back(std::move(es));
  }

  const Metrics metrics = evaluate_dataset(eval_scenes);
  const double elapsed = watch.seconds();
  const bool ok = grouping_ok && discarded_total == 0 &&
                  metrics.ap50 == 1.0 && metrics.ap75 == 1.0 &&
                  metrics.miou >= 0.99 && elapsed < 60.0;
  std::ostringstream os;
  os << "50 scenes (" << rejected << " rejected), " << instance_total
     << " instances: groupings " << (grouping_ok ? "exact" : "WRONG")
     << ", discarded " << discarded_total << ", AP50 " << metrics.ap50
     << ", AP75 " << metrics.ap75 << ", mIoU " << metrics.miou << ", "
     << elapsed << " s (< 60 s)";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 4. Noise robustness: residuals below eps/2 cannot break the grouping.

bool criterion4(std::string& detail) {
  const AggregateConfig cfg;  // epsilon_ratio 0.5
  const int side = 13;       // box short side 12 -> eps = 6
  const double eps = cfg.epsilon_ratio * 12.0;
  Rng rng(2024);

  bool residuals_ok = true;
  std::vector<PartPrediction> preds;
  std::vector<EvalScene> eval_scenes(1);
  std::set<std::set<int>> truth;
  int idx = 0;
  const int W = 900, H = 700;
  for (int gy = 0; gy < 6; ++gy) {
    for (int gx = 0; gx < 6; ++gx) {
      const int x = 60 + gx * 130;
      const int y = 50 + gy * 100;
      const auto mk = [&](int cx, int cy, Point2 u, Point2 v) {
        PartPrediction p;
        p.mask = BinaryMask(W, H);
        fixtures::fill_rect(p.mask, cx - side / 2, cy - side / 2, side, side);
        p.score = rng.uniform(0.5, 1.0);
        p.u = u;
        p.v = {v};
        return p;
      };
      // Exact sibling offset 40; centers and offsets perturbed by < eps/8
      // each, so every within-instance residual stays below eps/2, while
      // cross-instance residuals exceed eps by construction (grid pitch
      // 100+).
      const Point2 da{rng.uniform(-eps / 8, eps / 8),
                      rng.uniform(-eps / 8, eps / 8)};
      const Point2 db{rng.uniform(-eps / 8, eps / 8),
                      rng.uniform(-eps / 8, eps / 8)};
      const Point2 dv{rng.uniform(-eps / 8, eps / 8),
                      rng.uniform(-eps / 8, eps / 8)};
      PartPrediction a = mk(x, y, da, Point2{40, 0} + dv);
      PartPrediction b = mk(x + 40, y, db, {-40, 0});
      const Point2 pa = corrected_center(a), pb = corrected_center(b);
      if (((pb - pa) - a.v[0]).norm() >= eps / 2) residuals_ok = false;
      if (((pa - pb) - b.v[0]).norm() >= eps / 2) residuals_ok = false;

      BinaryMask gt = unite(a.mask, b.mask);
      eval_scenes[0].gts.push_back(std::move(gt));
      truth.insert({idx, idx + 1});
      preds.push_back(std::move(a));
      preds.push_back(std::move(b));
      idx += 2;
    }
  }

  const AggregationResult result = aggregate(preds, cfg);
  const bool grouping_ok =
      group_sets(result.instances) == truth && result.discarded.empty();
  for (const auto& inst : result.instances)
    eval_scenes[0].preds.push_back({refine_mask(inst, 2), inst.score});
  const Metrics metrics = evaluate_dataset(eval_scenes);
  const bool ok = residuals_ok && grouping_ok && metrics.ap50 == 1.0;
  std::ostringstream os;
  os << truth.size() << " instances, residuals < eps/2 "
     << (residuals_ok ? "verified" : "VIOLATED") << ", grouping "
     << (grouping_ok ? "exact" : "WRONG") << ", AP50 " << metrics.ap50
     << " (== 1.0)";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 5. Bidirectional beats the Hungarian baseline where boxes collide.

std::vector<PartPrediction> adversarial_fixture() {
  std::vector<PartPrediction> preds;
  const int side = 13;
  const auto mk = [&](int cx, int cy, const Point2& v) {
    PartPrediction p;
    p.mask = BinaryMask(96, 48);
    fixtures::fill_rect(p.mask, cx - side / 2, cy - side / 2, side, side);
    p.score = 0.9;
    p.u = {0, 0};
    p.v = {v};
    return p;
  };
  preds.push_back(mk(14, 10, {40, 0}));
  preds.push_back(mk(54, 10, {-40, 0}));
  preds.push_back(mk(14, 24, {40, 0}));
  preds.push_back(mk(54, 24, {-40, 0}));
  return preds;
}

bool criterion5(std::string& detail) {
  // Part one: the parallel-instance trap.
  const auto preds = adversarial_fixture();
  const std::set<std::set<int>> truth{{0, 1}, {2, 3}};
  const AggregationResult bidir = aggregate(preds, AggregateConfig{});
  const bool bidir_ok =
      group_sets(bidir.instances) == truth && bidir.discarded.empty();

  const auto hung = hungarian_baseline(preds, 1.0, 2);
  int crossed = 0;
  for (const auto& inst : hung) {
    const std::set<int> g(inst.part_indices.begin(), inst.part_indices.end());
    if (g != std::set<int>{0, 1} && g != std::set<int>{2, 3}) ++crossed;
  }
  const bool trap_ok = bidir_ok && crossed >= 1;

  // Part two: 20 perturbed scenes, sigma = eps/6, p_drop = 0.05.
  const Template tmpl =
      make_template("l-connector", fixtures::l_shape(2), DecoupleConfig{});
  double d_short = 1e18;
  for (const auto& part : tmpl.parts.parts)
    d_short = std::min(
        d_short,
        min_area_rotated_box(part.full_mask.row_extremal_points()).d_short());
  const double eps = 0.5 * d_short;

  std::vector<EvalScene> bidir_scenes, hung_scenes;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scene scene = compose_scene(tmpl, 10, 25, 640, 640, seed);
    PerturbationConfig noise;
    noise.sigma_center = eps / 6.0;
    noise.sigma_offset = eps / 6.0;
    noise.p_drop = 0.05;
    noise.seed = seed * 31 + 7;
    const auto noisy = perturb(ground_truth_predictions(scene, 0.1), noise);

    std::vector<BinaryMask> gts;
    for (const auto& inst : scene.instances)
      if (!inst.visible_mask.empty()) gts.push_back(inst.visible_mask);

    EvalScene eb, eh;
    eb.gts = gts;
    eh.gts = gts;
    const AggregationResult b = aggregate(noisy, AggregateConfig{});
    for (const auto& inst : b.instances)
      eb.preds.push_back({refine_mask(inst, 2), inst.score});
    for (const auto& inst : hungarian_baseline(noisy, 1.0, 2))
      eh.preds.push_back({refine_mask(inst, 2), inst.score});
    bidir_scenes.push_back(std::move(eb));
    hung_scenes.push_back(std::move(eh));
  }
  const double ap_bidir = evaluate_dataset(bidir_scenes).ap50;
  const double ap_hung = evaluate_dataset(hung_scenes).ap50;
  const bool ok = trap_ok && ap_bidir >= ap_hung;

  std::ostringstream os;
  os << "trap: bidirectional " << (bidir_ok ? "correct" : "WRONG") << ", "
     << crossed << " crossed baseline pairings (>= 1); 20 noisy scenes: AP50 "
     << ap_bidir << " (bidir) vs " << ap_hung << " (hungarian)";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 6. Complexity scaling through the CLI bench command.

bool criterion6(std::string& detail) {
  Stopwatch watch;
  const fs::path dir = scratch_dir("bench");
  const fs::path csv = dir / "bench.csv";
  const int rc = run_cli("bench --parts-counts 100,400,1600,6400 --algo both "
                         "--seed 7 --out " + csv.string() +
                         " > " + (dir / "bench.log").string() + " 2>&1");
  if (rc != 0) {
    detail = "bench command failed with status " + std::to_string(rc);
    return false;
  }

  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double n = std::stod(line.substr(0, c1));
    const std::string algo = line.substr(c1 + 1, c2 - c1 - 1);
    const double ms = std::stod(line.substr(c2 + 1));
    series[algo].emplace_back(std::log(n), std::log(ms));
  }

  const auto fit_slope = [](const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  if (series["bidir"].size() != 4 || series["hungarian"].size() != 4) {
    detail = "bench CSV does not carry 4 sizes per algorithm";
    return false;
  }
  const double slope_bidir = fit_slope(series["bidir"]);
  const double slope_hung = fit_slope(series["hungarian"]);
  const double elapsed = watch.seconds();
  const bool ok = slope_bidir <= 1.3 && slope_hung >= 2.5 && elapsed < 600.0;
  std::ostringstream os;
  os << "log-log slopes: bidirectional " << slope_bidir
     << " (<= 1.3), hungarian " << slope_hung << " (>= 2.5); bench took "
     << elapsed << " s (< 600 s)";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 7. Equation fidelity: smooth-L1 branch boundary and offset identities.

bool criterion7(std::string& detail) {
  // Both branch formulas meet at |d| = 1 with value exactly 0.5.
  const double quadratic = 0.5 * 1.0 * 1.0;
  const double linear = 1.0 - 0.5;
  bool ok = quadratic == 0.5 && linear == 0.5;
  ok = ok && smooth_l1(std::vector<double>{1.0}, std::vector<double>{0.0}) ==
                 0.5;
  ok = ok && smooth_l1(std::vector<double>{0.5, 0.0},
                       std::vector<double>{0.0, 0.0}) == 0.125;
  ok = ok && smooth_l1(std::vector<double>{2.0, 0.0},
                       std::vector<double>{0.0, 0.0}) == 1.5;

  Rng rng(4040);
  int sets_checked = 0;
  for (int iter = 0; iter < 1000 && ok; ++iter) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    std::vector<BinaryMask> parts;
    BinaryMask instance(96, 96);
    for (int i = 0; i < n; ++i) {
      const int w = static_cast<int>(rng.uniform_int(4, 14));
      const int h = static_cast<int>(rng.uniform_int(4, 14));
      const int band = 96 / n;
      const int x0 = static_cast<int>(rng.uniform_int(0, 95 - w));
      const int y0 =
          static_cast<int>(rng.uniform_int(i * band, (i + 1) * band - h - 1));
      BinaryMask p(96, 96);
      fixtures::fill_rect(p, x0, y0, w, h);
      parts.push_back(p);
      instance = unite(instance, p);
    }
    const BinaryMask occluder =
        fixtures::random_mask(rng, 96, 96, rng.uniform(0.0, 0.5));
    const PartSet set = label_parts(parts, subtract(instance, occluder));
    ++sets_checked;

    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const Point2 vij = set.parts[i].v[j < i ? j : j - 1];
        const Point2 vji = set.parts[j].v[i < j ? i : i - 1];
        if (vij.x != -vji.x || vij.y != -vji.y) ok = false;
      }
      if (!set.parts[i].occluded) {
        const Point2 sum = *set.parts[i].center_visible + *set.parts[i].u;
        if (sum.x != set.parts[i].center_full.x ||
            sum.y != set.parts[i].center_full.y)
          ok = false;
      }
    }
  }
  std::ostringstream os;
  os << "branch boundary exact at 0.5; antisymmetry and center-sum exact on "
     << sets_checked << "/1000 randomized part sets";
  detail = os.str();
  return ok && sets_checked == 1000;
}

// --------------------------------------------------------------------------
// 8. High-solidity fallback: N = 1 degenerates gracefully.

bool criterion8(std::string& detail) {
  BinaryMask square(44, 44);
  fixtures::fill_rect(square, 2, 2, 40, 40);
  const Template tmpl = make_template("block", square, DecoupleConfig{});
  if (tmpl.parts.n_parts != 1) {
    detail = "convex template decomposed into more than one part";
    return false;
  }

  std::vector<EvalScene> scenes;
  int predictions = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scene scene = compose_scene(tmpl, 5, 15, 512, 512, seed);
    const auto preds = ground_truth_predictions(scene, 1e-9);
    const AggregationResult result = aggregate(preds, AggregateConfig{});
    EvalScene es;
    for (const auto& inst : result.instances) {
      es.preds.push_back({refine_mask(inst, 2), inst.score});
      ++predictions;
    }
    for (const auto& inst : scene.instances)
      if (!inst.visible_mask.empty()) es.gts.push_back(inst.visible_mask);
    scenes.push_back(std::move(es));
  }
  const Metrics metrics = evaluate_dataset(scenes);
  const bool ok = metrics.ap50 == 1.0;
  std::ostringstream os;
  os << "N=1 template, 10 scenes, " << predictions
     << " singleton instances, AP50 " << metrics.ap50 << " (== 1.0), mIoU "
     << metrics.miou;
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------------------
// 9. Format stability: round-trips and byte-identical reruns.

bool criterion9(std::string& detail) {
  Rng rng(55);
  for (int iter = 0; iter < 1000; ++iter) {
    const int w = static_cast<int>(rng.uniform_int(1, 40));
    const int h = static_cast<int>(rng.uniform_int(1, 40));
    const BinaryMask m = fixtures::random_mask(rng, w, h, rng.uniform());
    if (!(rle_decode(w, h, rle_encode(m)) == m)) {
      detail = "RLE round-trip mismatch";
      return false;
    }
    const nlohmann::json j = rle_json(m);
    if (rle_json(mask_from_rle_json(j)).dump() != j.dump()) {
      detail = "RLE JSON round-trip mismatch";
      return false;
    }
  }

  const Template tmpl =
      make_template("l-connector", fixtures::l_shape(1), DecoupleConfig{});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scene scene = compose_scene(tmpl, 3, 9, 200, 200, seed);
    const nlohmann::json j = scene_json(scene);
    if (scene_json(scene_from_json(j)).dump() != j.dump()) {
      detail = "scene JSON round-trip mismatch";
      return false;
    }
  }

  // Byte-identical reruns through the CLI.
  const fs::path dir = scratch_dir("golden");
  const fs::path tpath = dir / "template.json";
  write_text_file(tpath.string(), template_json(tmpl).dump() + "\n");
  for (const char* run : {"a", "b"}) {
    const fs::path out = dir / run;
    const int rc = run_cli("gen --template " + tpath.string() +
                           " --out-dir " + out.string() +
                           " --scenes 3 --min 20 --max 100 --width 480 "
                           "--height 480 --seed 12345 --emit-preds "
                           "--sigma-center 1.0 --p-drop 0.1 > /dev/null 2>&1");
    if (rc != 0) {
      detail = "gen command failed";
      return false;
    }
  }
  for (int s = 0; s < 3; ++s) {
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d.json", s);
    if (read_text_file((dir / "a" / name).string()) !=
        read_text_file((dir / "b" / name).string())) {
      detail = std::string("rerun bytes differ for ") + name;
      return false;
    }
    std::snprintf(name, sizeof(name), "preds_%04d.json", s);
    if (read_text_file((dir / "a" / name).string()) !=
        read_text_file((dir / "b" / name).string())) {
      detail = std::string("rerun bytes differ for ") + name;
      return false;
    }
  }

  detail = "1000 RLE/JSON round-trips bit-exact; 5 scene documents stable; "
           "gen reruns byte-identical (3 scenes + predictions)";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "decomposition soundness", criterion1},
      {2, "solidity improvement", criterion2},
      {3, "oracle aggregation exactness", criterion3},
      {4, "noise robustness bound", criterion4},
      {5, "bidirectional vs hungarian", criterion5},
      {6, "complexity scaling", criterion6},
      {7, "equation fidelity", criterion7},
      {8, "high-solidity fallback", criterion8},
      {9, "format stability", criterion9},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    std::string det;
    bool ok = false;
    try {
      ok = criterion.run(det);
    } catch (const std::exception& e) {
      det = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id
              << " (" << criterion.name << "): " << det << "\n";
    if (!ok) ++failures;
  }
  return failures;
}
