#include <doctest.h>

#include <partseg/scenegen.hpp>
#include <partseg/serialize.hpp>

#include "fixtures.hpp"

using namespace partseg;

namespace {

Template small_template() {
  return make_template("l-connector", fixtures::l_shape(1), DecoupleConfig{});
}

}  // namespace

TEST_SUITE("scenegen") {

TEST_CASE("make_template decomposes and measures the object") {
  const Template tmpl = small_template();
  CHECK(tmpl.parts.n_parts == 2);
  CHECK(tmpl.solidity > 0.0);
  CHECK(tmpl.solidity < 0.5);  // the L is a low-solidity object
  BinaryMask u(tmpl.full_mask.width(), tmpl.full_mask.height());
  for (const auto& p : tmpl.parts.parts) {
    CHECK(intersect(u, p.full_mask).empty());
    u = unite(u, p.full_mask);
  }
  CHECK(u == tmpl.full_mask);
}

TEST_CASE("a lone instance is fully visible") {
  const Template tmpl = small_template();
  const Scene scene = compose_scene(tmpl, 1, 1, 200, 200, 42);
  REQUIRE(scene.instances.size() == 1);
  CHECK(scene.skipped.empty());
  const SceneInstance& inst = scene.instances[0];
  CHECK(inst.visible_mask == inst.full_mask);
  CHECK(inst.full_mask.area() > 0);
  CHECK(scene.z_order == std::vector<int>{0});

  BinaryMask u(200, 200);
  for (const auto& p : inst.parts.parts) u = unite(u, p.full_mask);
  CHECK(u == inst.full_mask);
}

TEST_CASE("same seed reproduces the scene bit-exactly") {
  const Template tmpl = small_template();
  const Scene a = compose_scene(tmpl, 3, 7, 160, 160, 99);
  const Scene b = compose_scene(tmpl, 3, 7, 160, 160, 99);
  CHECK(scene_json(a).dump() == scene_json(b).dump());
  const Scene c = compose_scene(tmpl, 3, 7, 160, 160, 100);
  CHECK(scene_json(a).dump() != scene_json(c).dump());
}

TEST_CASE("occlusion bookkeeping matches the z-order definition") {
  const Template tmpl = small_template();
  for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
    const Scene scene = compose_scene(tmpl, 4, 9, 120, 120, seed);
    const int m = static_cast<int>(scene.instances.size());
    CHECK(m >= 4);
    for (int i = 0; i < m; ++i) {
      BinaryMask front(120, 120);
      for (int j = i + 1; j < m; ++j)
        front = unite(front, scene.instances[j].full_mask);
      CHECK(scene.instances[i].visible_mask ==
            subtract(scene.instances[i].full_mask, front));
      CHECK(is_subset(scene.instances[i].visible_mask,
                      scene.instances[i].full_mask));
      for (int j = 0; j < i; ++j)
        CHECK(intersect(scene.instances[i].visible_mask,
                        scene.instances[j].visible_mask)
                  .empty());
    }
    CHECK(static_cast<int>(scene.instances.size() + scene.skipped.size()) >= 4);
    CHECK(static_cast<int>(scene.instances.size() + scene.skipped.size()) <= 9);
  }
}

TEST_CASE("ground-truth predictions of an unoccluded scene are exact") {
  const Template tmpl = small_template();
  const Scene scene = compose_scene(tmpl, 1, 1, 220, 220, 5);
  const auto preds = ground_truth_predictions(scene, 0.1);
  REQUIRE(static_cast<int>(preds.size()) == tmpl.parts.n_parts);
  for (const auto& p : preds) {
    CHECK(p.u == Point2{0.0, 0.0});
    CHECK(p.score == doctest::Approx(1.0));
    CHECK(static_cast<int>(p.v.size()) == tmpl.parts.n_parts - 1);
  }
}

TEST_CASE("fully hidden parts produce no prediction") {
  // Hand-built scene: the back instance's second part is fully covered.
  BinaryMask back_a(60, 30), back_b(60, 30), front(60, 30);
  fixtures::fill_rect(back_a, 5, 10, 10, 10);
  fixtures::fill_rect(back_b, 25, 10, 10, 10);
  fixtures::fill_rect(front, 22, 5, 16, 20);

  Scene scene;
  scene.width = 60;
  scene.height = 30;
  SceneInstance back;
  back.full_mask = unite(back_a, back_b);
  back.visible_mask = subtract(back.full_mask, front);
  back.parts = label_parts({back_a, back_b}, back.visible_mask);
  SceneInstance top;
  top.full_mask = front;
  top.visible_mask = front;
  top.parts = label_parts({front}, front);
  scene.instances = {back, top};
  scene.z_order = {1, 0};

  CHECK(scene.instances[0].parts.parts[1].occluded);
  const auto preds = ground_truth_predictions(scene, 0.05);
  // back part a (visible), front part; back part b is gone.
  CHECK(preds.size() == 2);
  for (const auto& p : preds) CHECK(!p.mask.empty());

  // Scores equal the visible fraction.
  const auto& pa = scene.instances[0].parts.parts[0];
  CHECK(preds[0].score ==
        doctest::Approx(static_cast<double>(pa.visible_mask.area()) /
                        pa.full_mask.area()));
}

TEST_CASE("perturb with a zero config is the identity") {
  const Template tmpl = small_template();
  const Scene scene = compose_scene(tmpl, 2, 4, 150, 150, 12);
  const auto preds = ground_truth_predictions(scene, 0.01);
  PerturbationConfig cfg;
  cfg.seed = 77;
  const auto out = perturb(preds, cfg);
  CHECK(predictions_json(out).dump() == predictions_json(preds).dump());
}

TEST_CASE("p_drop = 1 drops everything") {
  const Template tmpl = small_template();
  const Scene scene = compose_scene(tmpl, 2, 3, 150, 150, 13);
  const auto preds = ground_truth_predictions(scene, 0.01);
  PerturbationConfig cfg;
  cfg.p_drop = 1.0;
  cfg.seed = 3;
  CHECK(perturb(preds, cfg).empty());
}

TEST_CASE("perturb is reproducible for a fixed seed") {
  const Template tmpl = small_template();
  const Scene scene = compose_scene(tmpl, 3, 5, 180, 180, 21);
  const auto preds = ground_truth_predictions(scene, 0.01);
  PerturbationConfig cfg;
  cfg.sigma_center = 1.5;
  cfg.sigma_offset = 0.8;
  cfg.p_drop = 0.2;
  cfg.p_spurious = 0.3;
  cfg.mask_jitter = 1;
  cfg.seed = 5150;
  const auto a = perturb(preds, cfg);
  const auto b = perturb(preds, cfg);
  CHECK(predictions_json(a).dump() == predictions_json(b).dump());
  cfg.seed = 5151;
  const auto c = perturb(preds, cfg);
  CHECK(predictions_json(a).dump() != predictions_json(c).dump());
}

}  // TEST_SUITE
