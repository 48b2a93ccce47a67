#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <partseg/aggregate.hpp>
#include <partseg/decouple.hpp>
#include <partseg/eval.hpp>
#include <partseg/scenegen.hpp>
#include <partseg/serialize.hpp>

namespace py = pybind11;
using namespace partseg;

namespace {

using MaskArray =
    py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

BinaryMask to_mask(const MaskArray& arr) {
  if (arr.ndim() != 2) throw py::value_error("mask must be a 2-D array");
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(w) * h);
  const auto view = arr.unchecked<2>();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      bits[static_cast<std::size_t>(y) * w + x] = view(y, x) ? 1 : 0;
  return BinaryMask::from_bits(w, h, std::move(bits));
}

py::array from_mask(const BinaryMask& mask) {
  py::array_t<bool> arr({mask.height(), mask.width()});
  auto view = arr.mutable_unchecked<2>();
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) view(y, x) = mask.at(x, y);
  return arr;
}

std::vector<Point2> to_points(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2 || arr.shape(1) != 2)
    throw py::value_error("points must be an (N, 2) array");
  std::vector<Point2> pts(arr.shape(0));
  const auto view = arr.unchecked<2>();
  for (py::ssize_t i = 0; i < arr.shape(0); ++i)
    pts[i] = {view(i, 0), view(i, 1)};
  return pts;
}

py::array from_points(const std::vector<Point2>& pts) {
  py::array_t<double> arr({static_cast<py::ssize_t>(pts.size()),
                           static_cast<py::ssize_t>(2)});
  auto view = arr.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(pts.size()); ++i) {
    view(i, 0) = pts[i].x;
    view(i, 1) = pts[i].y;
  }
  return arr;
}

py::dict grouping_dict(const std::vector<AssembledInstance>& instances,
                       const std::vector<int>& discarded, int refine_radius) {
  py::list groups, masks, complete, scores;
  for (const auto& inst : instances) {
    groups.append(inst.part_indices);
    AssembledInstance refined = inst;
    masks.append(from_mask(refine_mask(refined, refine_radius)));
    complete.append(inst.complete);
    scores.append(inst.score);
  }
  py::dict out;
  out["groups"] = groups;
  out["masks"] = masks;
  out["complete"] = complete;
  out["scores"] = scores;
  out["discarded"] = discarded;
  return out;
}

}  // namespace

PYBIND11_MODULE(_partseg, m) {
  m.doc() = "Part-aware instance segmentation pipeline for low-solidity "
            "objects: concavity-based mask decoupling, offset labels, "
            "synthetic scenes, bidirectional part aggregation, and metrics.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg =
          std::string(to_string(e.code())) + ": " + e.what();
      PyErr_SetString(PyExc_ValueError, msg.c_str());
    }
  });

  py::class_<PartPrediction>(m, "Prediction")
      .def(py::init([](const MaskArray& mask, double score,
                       std::pair<double, double> u,
                       const std::vector<std::pair<double, double>>& v) {
             PartPrediction p;
             p.mask = to_mask(mask);
             p.score = score;
             p.u = {u.first, u.second};
             for (const auto& [vx, vy] : v) p.v.push_back({vx, vy});
             return p;
           }),
           py::arg("mask"), py::arg("score"), py::arg("u"), py::arg("v"))
      .def_property_readonly(
          "mask", [](const PartPrediction& p) { return from_mask(p.mask); })
      .def_readonly("score", &PartPrediction::score)
      .def_property_readonly("u",
                             [](const PartPrediction& p) {
                               return std::make_pair(p.u.x, p.u.y);
                             })
      .def_property_readonly("v", [](const PartPrediction& p) {
        std::vector<std::pair<double, double>> v;
        for (const auto& off : p.v) v.emplace_back(off.x, off.y);
        return v;
      });

  py::class_<Template>(m, "Template")
      .def_readonly("name", &Template::name)
      .def_readonly("solidity", &Template::solidity)
      .def_property_readonly(
          "n_parts", [](const Template& t) { return t.parts.n_parts; })
      .def_property_readonly(
          "mask", [](const Template& t) { return from_mask(t.full_mask); })
      .def("to_json", [](const Template& t) { return template_json(t).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return template_from_json(parse_json(text, "template"));
      });

  py::class_<Scene>(m, "Scene")
      .def_property_readonly(
          "n_instances",
          [](const Scene& s) { return static_cast<int>(s.instances.size()); })
      .def_readonly("width", &Scene::width)
      .def_readonly("height", &Scene::height)
      .def_readonly("skipped", &Scene::skipped)
      .def("visible_masks",
           [](const Scene& s) {
             py::list out;
             for (const auto& inst : s.instances)
               out.append(from_mask(inst.visible_mask));
             return out;
           })
      .def("full_masks",
           [](const Scene& s) {
             py::list out;
             for (const auto& inst : s.instances)
               out.append(from_mask(inst.full_mask));
             return out;
           })
      .def("to_json", [](const Scene& s) { return scene_json(s).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return scene_from_json(parse_json(text, "scene"));
      });

  m.def(
      "solidity",
      [](const MaskArray& mask, double angle_step) {
        return solidity(to_mask(mask), angle_step);
      },
      py::arg("mask"), py::arg("angle_step") = 1.0,
      "Minimum bounding-box occupancy over in-plane rotations.");

  m.def(
      "mask_concavity",
      [](const MaskArray& mask) { return mask_concavity(to_mask(mask)); },
      py::arg("mask"), "Maximum contour-point distance to the hull bridge.");

  m.def(
      "decouple",
      [](const MaskArray& mask, double tau_ratio, double lambda_cut,
         int min_part_pixels) {
        DecoupleConfig cfg{tau_ratio, lambda_cut, min_part_pixels};
        py::list out;
        for (const auto& part : decouple(to_mask(mask), cfg))
          out.append(from_mask(part.mask));
        return out;
      },
      py::arg("mask"), py::arg("tau_ratio") = 0.2, py::arg("lambda_cut") = 1.0,
      py::arg("min_part_pixels") = 16,
      "Recursively split a mask into approximately convex parts.");

  m.def(
      "make_template",
      [](const std::string& name, const MaskArray& mask, double tau_ratio) {
        DecoupleConfig cfg;
        cfg.tau_ratio = tau_ratio;
        return make_template(name, to_mask(mask), cfg);
      },
      py::arg("name"), py::arg("mask"), py::arg("tau_ratio") = 0.2);

  m.def("compose_scene", &compose_scene, py::arg("template"), py::arg("lo"),
        py::arg("hi"), py::arg("width"), py::arg("height"), py::arg("seed"));

  m.def("ground_truth_predictions", &ground_truth_predictions,
        py::arg("scene"), py::arg("min_visible_frac") = 0.1);

  m.def(
      "perturb",
      [](const std::vector<PartPrediction>& preds, double sigma_center,
         double sigma_offset, double p_drop, double p_spurious,
         int mask_jitter, std::uint64_t seed) {
        PerturbationConfig cfg;
        cfg.sigma_center = sigma_center;
        cfg.sigma_offset = sigma_offset;
        cfg.p_drop = p_drop;
        cfg.p_spurious = p_spurious;
        cfg.mask_jitter = mask_jitter;
        cfg.seed = seed;
        return perturb(preds, cfg);
      },
      py::arg("preds"), py::arg("sigma_center") = 0.0,
      py::arg("sigma_offset") = 0.0, py::arg("p_drop") = 0.0,
      py::arg("p_spurious") = 0.0, py::arg("mask_jitter") = 0,
      py::arg("seed") = 0);

  m.def(
      "aggregate",
      [](const std::vector<PartPrediction>& preds, double epsilon_ratio,
         int refine_radius) {
        AggregateConfig cfg;
        cfg.epsilon_ratio = epsilon_ratio;
        cfg.refine_radius = refine_radius;
        const AggregationResult r = aggregate(preds, cfg);
        return grouping_dict(r.instances, r.discarded, refine_radius);
      },
      py::arg("preds"), py::arg("epsilon_ratio") = 0.5,
      py::arg("refine_radius") = 2,
      "Bidirectional part-to-instance aggregation.");

  m.def(
      "hungarian_baseline",
      [](const std::vector<PartPrediction>& preds, double lambda, int n_parts,
         int refine_radius) {
        const auto instances = hungarian_baseline(preds, lambda, n_parts);
        return grouping_dict(instances, {}, refine_radius);
      },
      py::arg("preds"), py::arg("lambda_") = 1.0, py::arg("n_parts") = 2,
      py::arg("refine_radius") = 2,
      "Distance-based Hungarian aggregation baseline.");

  m.def(
      "evaluate",
      [](const std::vector<MaskArray>& pred_masks,
         const std::vector<double>& scores,
         const std::vector<MaskArray>& gt_masks) {
        if (pred_masks.size() != scores.size())
          throw py::value_error("one score per prediction required");
        EvalScene scene;
        for (std::size_t i = 0; i < pred_masks.size(); ++i)
          scene.preds.push_back({to_mask(pred_masks[i]), scores[i]});
        for (const auto& g : gt_masks) scene.gts.push_back(to_mask(g));
        const Metrics metrics = evaluate_dataset({scene});
        py::dict out;
        out["ap50"] = metrics.ap50;
        out["ap75"] = metrics.ap75;
        out["miou"] = metrics.miou;
        out["n_tp"] = metrics.n_tp;
        out["n_fp"] = metrics.n_fp;
        out["n_fn"] = metrics.n_fn;
        return out;
      },
      py::arg("pred_masks"), py::arg("scores"), py::arg("gt_masks"),
      "AP50/AP75/mIoU for one scene.");

  m.def(
      "smooth_l1",
      [](const std::vector<double>& o, const std::vector<double>& o_hat) {
        return smooth_l1(o, o_hat);
      },
      py::arg("o"), py::arg("o_hat"));

  m.def(
      "iou",
      [](const MaskArray& a, const MaskArray& b) {
        return iou(to_mask(a), to_mask(b));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "rle_encode",
      [](const MaskArray& mask) { return rle_encode(to_mask(mask)); },
      py::arg("mask"));

  m.def(
      "rle_decode",
      [](int width, int height, const std::vector<std::int64_t>& counts) {
        return from_mask(rle_decode(width, height, counts));
      },
      py::arg("width"), py::arg("height"), py::arg("counts"));

  m.def(
      "convex_hull",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>&
             points) { return from_points(convex_hull(to_points(points))); },
      py::arg("points"));

  m.def(
      "min_area_rotated_box",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>&
             points) {
        const RotatedBox box = min_area_rotated_box(to_points(points));
        return py::make_tuple(box.x, box.y, box.h, box.w, box.a);
      },
      py::arg("points"), "Returns (x, y, h, w, a) with w along the major axis.");

  m.def(
      "trace_contour",
      [](const MaskArray& mask) {
        return from_points(trace_contour(to_mask(mask)));
      },
      py::arg("mask"));

  m.attr("__version__") = "0.1.0";
}
