// spatk: spatial-context toolkit for multi-class cell point patterns.
//
// Subcommands wrap one library operation each; all randomness flows from
// --seed and identical inputs produce byte-identical outputs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spatk/config.hpp"
#include "spatk/csv_io.hpp"
#include "spatk/distances.hpp"
#include "spatk/errors.hpp"
#include "spatk/evaluation.hpp"
#include "spatk/groundtruth.hpp"
#include "spatk/inference.hpp"
#include "spatk/k_function.hpp"
#include "spatk/k_vector.hpp"
#include "spatk/kmeans.hpp"
#include "spatk/raster.hpp"
#include "spatk/version.hpp"

namespace {

using namespace spatk;

struct WindowArgs {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 0.0;
  double height = 0.0;
  int n_classes = 0;
  bool given = false;
};

// Window flags shared by every pattern-consuming subcommand. When absent,
// the loader falls back to the CSV's JSON sidecar.
void add_window_options(CLI::App* cmd, WindowArgs& w) {
  auto* x0 = cmd->add_option("--x0", w.x0, "Window origin x (overrides the sidecar)");
  auto* y0 = cmd->add_option("--y0", w.y0, "Window origin y");
  auto* width = cmd->add_option("--width", w.width, "Window width in pixels");
  auto* height = cmd->add_option("--height", w.height, "Window height in pixels");
  auto* ncls = cmd->add_option("--n-classes", w.n_classes, "Number of classes");
  width->needs(height);
  height->needs(width);
  ncls->needs(width);
  x0->needs(width);
  y0->needs(width);
  width->needs(ncls);
}

PointPattern load_pattern(const std::string& path, const WindowArgs& w) {
  if (w.given) {
    return load_pattern_csv(path, Window{w.x0, w.y0, w.width, w.height}, w.n_classes);
  }
  return load_pattern_csv(path);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void write_curve_csv(const std::filesystem::path& path, const KCurve& curve) {
  auto out = open_output(path);
  out << "radius,k\n";
  for (std::size_t j = 0; j < curve.radii.size(); ++j) {
    out << format_double(curve.radii[j]) << ',' << format_double(curve.values[j]) << '\n';
  }
}

void write_envelope_csv(const std::filesystem::path& path, const KCurve& observed,
                        const Envelope& env) {
  auto out = open_output(path);
  out << "radius,observed,baseline,lower,upper\n";
  for (std::size_t j = 0; j < env.radii.size(); ++j) {
    out << format_double(env.radii[j]) << ',' << format_double(observed.values[j]) << ','
        << format_double(env.baseline[j]) << ',' << format_double(env.lower[j]) << ','
        << format_double(env.upper[j]) << '\n';
  }
}

void write_curves_csv(const std::filesystem::path& path, const AverageKCurves& avg) {
  auto out = open_output(path);
  out << "source_class,target_class,present";
  for (std::size_t j = 0; j < avg.radii.size(); ++j) {
    out << ",k_r" << format_double(avg.radii[j]);
  }
  out << '\n';
  for (int src = 0; src < avg.n_classes; ++src) {
    for (int tgt = 0; tgt < avg.n_classes; ++tgt) {
      out << src << ',' << tgt << ',' << (avg.present[static_cast<std::size_t>(src)] ? 1 : 0);
      for (double v : avg.row(src, tgt)) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

void write_dilation_csv(const std::filesystem::path& path,
                        const std::vector<DilationEntry>& report) {
  auto out = open_output(path);
  out << "cell_index,px,py,halfwidth\n";
  for (const DilationEntry& e : report) {
    out << e.cell_index << ',' << e.px << ',' << e.py << ',' << e.halfwidth << '\n';
  }
}

void write_assignments_csv(const std::filesystem::path& path, const ClusterModel& model,
                           const FeatureTable& features) {
  // Model cells and sorted_rows() are both in ascending cell-index order.
  auto out = open_output(path);
  out << "cell_index,class,subclass\n";
  const auto& rows = features.sorted_rows();
  std::size_t r = 0;
  for (std::size_t i = 0; i < model.cells.size(); ++i) {
    while (r < rows.size() && features.cell_index(rows[r]) < model.cells[i]) ++r;
    const int cls = r < rows.size() && features.cell_index(rows[r]) == model.cells[i]
                        ? features.class_label(rows[r])
                        : -1;
    out << model.cells[i] << ',' << cls << ',' << model.subclasses[i] << '\n';
  }
}

void write_subcats_csv(const std::filesystem::path& path, const PointPattern& pattern,
                       const ClusterModel& model) {
  auto out = open_output(path);
  out << "cell_index,x,y,class,subclass\n";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    out << i << ',' << format_double(pattern.x(i)) << ',' << format_double(pattern.y(i))
        << ',' << pattern.label(i) << ','
        << model.subclass_of(static_cast<std::int64_t>(i)) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatk - spatial statistics toolkit for multi-class cell point patterns"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  bool show_version = false;
  app.add_flag("--version", show_version, "Print toolkit and file format versions");
  app.set_config("--config", "", "Flat key=value config file (flags win over file values)");

  Config config;
  app.add_option("--rmax", config.r_max, "Largest sampling radius")->capture_default_str();
  app.add_option("--rstep", config.r_step, "Radius step")->capture_default_str();
  app.add_option("--radii", config.radii_override,
                 "Explicit comma-separated radii (wins over --rmax/--rstep)")
      ->delimiter(',');
  app.add_option("--patch-size", config.patch_size, "Local patch side in pixels")
      ->capture_default_str();
  app.add_option("--n-max", config.n_max, "K-vector normalizer")->capture_default_str();
  app.add_option("--k", config.k, "Sub-classes per class")->capture_default_str();
  app.add_option("--max-halfwidth", config.max_halfwidth,
                 "Largest dilation half-width (4 -> 9x9 squares)")
      ->capture_default_str();
  app.add_option("--min-gap", config.min_gap, "Empty pixels required between components")
      ->capture_default_str();
  app.add_option("--threshold", config.threshold, "Detection binarization threshold")
      ->capture_default_str();
  app.add_option("--min-size", config.min_size, "Smallest surviving component, pixels")
      ->capture_default_str();
  app.add_option("--match-radius", config.match_radius, "True-positive distance, pixels")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Master random seed")->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads for data-parallel steps")
      ->capture_default_str();

  // ---- kvec ----------------------------------------------------------
  auto* kvec = app.add_subcommand("kvec", "Per-cell K-function vectors as CSV");
  std::string kvec_pattern, kvec_out, kvec_features_out;
  WindowArgs kvec_window;
  kvec->add_option("--pattern", kvec_pattern, "Pattern CSV")->required();
  kvec->add_option("--out", kvec_out, "Output CSV")->required();
  kvec->add_option("--features-out", kvec_features_out,
                   "Also write the field as a feature-table CSV");
  add_window_options(kvec, kvec_window);

  // ---- ripley --------------------------------------------------------
  auto* ripley = app.add_subcommand("ripley", "Population K / K-cross curve as CSV");
  std::string ripley_pattern, ripley_out, ripley_correction = "none";
  int ripley_src = 0, ripley_tgt = 0;
  WindowArgs ripley_window;
  ripley->add_option("--pattern", ripley_pattern, "Pattern CSV")->required();
  ripley->add_option("--source-class", ripley_src, "Source class")->required();
  ripley->add_option("--target-class", ripley_tgt, "Target class")->required();
  ripley->add_option("--correction", ripley_correction, "none|border")
      ->capture_default_str();
  ripley->add_option("--out", ripley_out, "Output CSV")->required();
  add_window_options(ripley, ripley_window);

  // ---- envelope ------------------------------------------------------
  auto* envelope = app.add_subcommand("envelope", "CSR rank envelope for a K curve");
  std::string env_pattern, env_out, env_correction = "none";
  int env_src = 0, env_tgt = 0;
  std::size_t env_sims = 99, env_rank = 3;
  WindowArgs env_window;
  envelope->add_option("--pattern", env_pattern, "Pattern CSV")->required();
  envelope->add_option("--source-class", env_src, "Source class")->required();
  envelope->add_option("--target-class", env_tgt, "Target class")->required();
  envelope->add_option("--n-sims", env_sims, "CSR simulations")->capture_default_str();
  envelope->add_option("--rank", env_rank, "Envelope rank")->capture_default_str();
  envelope->add_option("--correction", env_correction, "none|border")->capture_default_str();
  envelope->add_option("--out", env_out, "Output CSV")->required();
  add_window_options(envelope, env_window);

  // ---- curves --------------------------------------------------------
  auto* curves = app.add_subcommand("curves", "Average K-vector rows per class pair");
  std::string curves_pattern, curves_out;
  WindowArgs curves_window;
  curves->add_option("--pattern", curves_pattern, "Pattern CSV")->required();
  curves->add_option("--out", curves_out, "Output CSV")->required();
  add_window_options(curves, curves_window);

  // ---- gtmaps --------------------------------------------------------
  auto* gtmaps = app.add_subcommand(
      "gtmaps", "Detection/class/K-vector/validity training maps from a pattern");
  std::string gt_pattern, gt_dir, gt_prefix = "gt";
  WindowArgs gt_window;
  gtmaps->add_option("--pattern", gt_pattern, "Pattern CSV")->required();
  gtmaps->add_option("--out-dir", gt_dir, "Output directory")->required();
  gtmaps->add_option("--prefix", gt_prefix, "Output file prefix")->capture_default_str();
  add_window_options(gtmaps, gt_window);

  // ---- cluster -------------------------------------------------------
  auto* cluster = app.add_subcommand("cluster", "Pseudo-sub-class k-means over features");
  std::string cl_features, cl_model_in, cl_model_out, cl_assign_out;
  std::string cl_pattern, cl_mask, cl_masks_out;
  bool cl_normalize = false;
  std::size_t cl_max_iters = 100;
  double cl_tol = 1e-4;
  WindowArgs cl_window;
  cluster->add_option("--features", cl_features, "Feature table CSV")->required();
  cluster->add_option("--model-in", cl_model_in, "Warm-start model JSON");
  cluster->add_option("--model-out", cl_model_out, "Model JSON to write");
  cluster->add_option("--assignments-out", cl_assign_out, "Assignments CSV")->required();
  cluster->add_flag("--normalize", cl_normalize, "Z-score features before clustering");
  cluster->add_option("--max-iters", cl_max_iters, "Lloyd iteration cap")
      ->capture_default_str();
  cluster->add_option("--tol", cl_tol, "Convergence tolerance on centroid movement")
      ->capture_default_str();
  cluster->add_option("--pattern", cl_pattern,
                      "Pattern CSV (with --detection-mask, enables --masks-out)");
  cluster->add_option("--detection-mask", cl_mask, "Detection mask CSRM");
  cluster->add_option("--masks-out", cl_masks_out, "Pseudo-label raster CSRM to write");
  add_window_options(cluster, cl_window);

  // ---- extract -------------------------------------------------------
  auto* extract = app.add_subcommand("extract", "Cells from likelihood + class maps");
  std::string ex_likelihood, ex_classmap, ex_out;
  double ex_x0 = 0.0, ex_y0 = 0.0;
  extract->add_option("--likelihood", ex_likelihood, "Detection likelihood CSRM")
      ->required();
  extract->add_option("--class-map", ex_classmap, "Class likelihood CSRM")->required();
  extract->add_option("--out", ex_out, "Predictions CSV")->required();
  extract->add_option("--x0", ex_x0, "Offset added to emitted x coordinates")
      ->capture_default_str();
  extract->add_option("--y0", ex_y0, "Offset added to emitted y coordinates")
      ->capture_default_str();

  // ---- eval ----------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Detection/classification F-scores");
  std::vector<std::string> ev_preds, ev_gts;
  std::string ev_out, ev_average = "micro";
  WindowArgs ev_window;
  eval->add_option("--pred", ev_preds, "Predictions CSV (repeatable)")->required();
  eval->add_option("--gt", ev_gts, "Ground truth pattern CSV (repeatable)")->required();
  eval->add_option("--out", ev_out, "Report JSON")->required();
  eval->add_option("--average", ev_average, "micro|macro across patches")
      ->capture_default_str();
  add_window_options(eval, ev_window);

  // ---- subcats -------------------------------------------------------
  auto* subcats = app.add_subcommand(
      "subcats", "Sub-categorize cells by k-means on their K-vectors");
  std::string sc_pattern, sc_out;
  WindowArgs sc_window;
  subcats->add_option("--pattern", sc_pattern, "Pattern CSV")->required();
  subcats->add_option("--out", sc_out, "Per-cell sub-category CSV")->required();
  add_window_options(subcats, sc_window);

  for (auto* cmd : {kvec, ripley, envelope, curves, gtmaps, cluster, extract, eval, subcats}) {
    cmd->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  // Window flags: all-or-nothing per subcommand.
  for (auto [cmd, w] : std::initializer_list<std::pair<CLI::App*, WindowArgs*>>{
           {kvec, &kvec_window},
           {ripley, &ripley_window},
           {envelope, &env_window},
           {curves, &curves_window},
           {gtmaps, &gt_window},
           {cluster, &cl_window},
           {eval, &ev_window},
           {subcats, &sc_window}}) {
    w->given = cmd->count("--width") > 0;
  }

  if (show_version) {
    std::cout << "spatk " << kVersion << " (format " << kFormatVersion << ")\n";
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    config.validate();
    const RadiiGrid radii = config.radii();

    if (kvec->parsed()) {
      const PointPattern pattern = load_pattern(kvec_pattern, kvec_window);
      const auto field = k_vector_field(pattern, radii, config.patch_size, config.n_max,
                                        config.workers);
      save_k_vector_csv(pattern, field, kvec_out);
      if (!kvec_features_out.empty()) {
        save_feature_csv(FeatureTable::from_k_vectors(pattern, field), kvec_features_out);
      }
    } else if (ripley->parsed()) {
      const PointPattern pattern = load_pattern(ripley_pattern, ripley_window);
      const KCurve curve = ripley_k(pattern, ripley_src, ripley_tgt, radii,
                                    correction_from_string(ripley_correction));
      write_curve_csv(ripley_out, curve);
    } else if (envelope->parsed()) {
      const PointPattern pattern = load_pattern(env_pattern, env_window);
      const Correction corr = correction_from_string(env_correction);
      const KCurve observed = ripley_k(pattern, env_src, env_tgt, radii, corr);
      const Envelope env = csr_envelope(pattern, env_src, env_tgt, radii, env_sims,
                                        env_rank, config.seed, corr, config.workers);
      write_envelope_csv(env_out, observed, env);
    } else if (curves->parsed()) {
      const PointPattern pattern = load_pattern(curves_pattern, curves_window);
      write_curves_csv(curves_out,
                       average_k_curves(pattern, radii, config.patch_size, config.n_max,
                                        config.workers));
    } else if (gtmaps->parsed()) {
      const PointPattern pattern = load_pattern(gt_pattern, gt_window);
      std::filesystem::create_directories(gt_dir);
      const std::filesystem::path dir(gt_dir);
      const DetectionMask dm =
          generate_detection_mask(pattern, config.max_halfwidth, config.min_gap);
      save_raster(dm.mask, dir / (gt_prefix + "_detection.csrm"));
      write_dilation_csv(dir / (gt_prefix + "_dilation.csv"), dm.report);
      save_raster(generate_class_masks(pattern, dm.mask),
                  dir / (gt_prefix + "_classes.csrm"));
      const auto field = k_vector_field(pattern, radii, config.patch_size, config.n_max,
                                        config.workers);
      const KVectorMap kmap = generate_kvector_map(pattern, dm.mask, field);
      save_raster(kmap.values, dir / (gt_prefix + "_kvectors.csrm"));
      save_raster(kmap.validity, dir / (gt_prefix + "_validity.csrm"));
    } else if (cluster->parsed()) {
      const FeatureTable features = load_feature_csv(cl_features);
      std::optional<ClusterModel> warm;
      if (!cl_model_in.empty()) warm = load_cluster_model(cl_model_in);
      PseudoLabelOptions options;
      options.max_iters = cl_max_iters;
      options.tol = cl_tol;
      options.normalize = cl_normalize;
      options.workers = config.workers;
      const ClusterModel model =
          update_pseudo_labels(features, warm, config.k, config.seed, options);
      write_assignments_csv(cl_assign_out, model, features);
      if (!cl_model_out.empty()) save_cluster_model(model, cl_model_out);
      if (!cl_masks_out.empty()) {
        if (cl_pattern.empty() || cl_mask.empty()) {
          throw InvalidArgument("--masks-out needs --pattern and --detection-mask");
        }
        const PointPattern pattern = load_pattern(cl_pattern, cl_window);
        save_raster(pseudo_label_masks(model, load_raster(cl_mask), pattern), cl_masks_out);
      }
    } else if (extract->parsed()) {
      const RasterMap likelihood = load_raster(ex_likelihood);
      const RasterMap class_map = load_raster(ex_classmap);
      auto preds = extract_cells(likelihood, class_map, config.threshold, config.min_size);
      for (Prediction& p : preds) {
        p.point.x += ex_x0;
        p.point.y += ex_y0;
      }
      save_predictions_csv(preds, ex_out);
    } else if (eval->parsed()) {
      if (ev_preds.size() != ev_gts.size()) {
        throw InvalidArgument("--pred and --gt must be given the same number of times");
      }
      if (ev_average != "micro" && ev_average != "macro") {
        throw InvalidArgument("--average must be micro or macro");
      }
      std::vector<EvalReport> reports;
      for (std::size_t i = 0; i < ev_preds.size(); ++i) {
        const PointPattern gt = load_pattern(ev_gts[i], ev_window);
        reports.push_back(
            evaluate(load_predictions_csv(ev_preds[i]), gt, config.match_radius));
      }
      const EvalReport merged = reports.size() == 1 ? reports[0]
                                : ev_average == "micro" ? merge_micro(reports)
                                                        : merge_macro(reports);
      auto out = open_output(ev_out);
      out << report_to_json(merged);
    } else if (subcats->parsed()) {
      const PointPattern pattern = load_pattern(sc_pattern, sc_window);
      const auto field = k_vector_field(pattern, radii, config.patch_size, config.n_max,
                                        config.workers);
      const FeatureTable features = FeatureTable::from_k_vectors(pattern, field);
      PseudoLabelOptions options;
      options.workers = config.workers;
      const ClusterModel model =
          update_pseudo_labels(features, std::nullopt, config.k, config.seed, options);
      write_subcats_csv(sc_out, pattern, model);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
