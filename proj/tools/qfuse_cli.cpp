// qfuse: command-line front end for quotient fusion, training and evaluation.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "qf/config.hpp"
#include "qf/error.hpp"
#include "qf/manifest.hpp"
#include "qf/model_io.hpp"
#include "qf/pgm.hpp"
#include "qf/pipeline.hpp"
#include "qf/quotient.hpp"
#include "qf/report.hpp"
#include "qf/synthetic.hpp"
#include "qf/wavelet.hpp"

namespace fs = std::filesystem;

namespace {

qf::PipelineConfig resolve_config(const std::string& path) {
  qf::PipelineConfig cfg = path.empty() ? qf::PipelineConfig{} : qf::load_config(path);
  qf::apply_env_overrides(cfg);
  cfg.validate();
  return cfg;
}

void write_report(const qf::RecognitionReport& report, qf::ReportFormat format,
                  const std::string& out) {
  if (out.empty()) {
    std::cout << qf::format_report(report, format);
  } else {
    qf::emit_report(report, format, out);
  }
}

void print_summary(const qf::TrainingSummary& s) {
  std::cerr << "trained on " << s.train_pairs << " pairs, " << s.num_classes
            << " classes; feature dim " << s.feature_dim << ", " << s.components
            << " components; " << s.epochs << " epochs, final MSE " << s.final_mse << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quotient-based visual/thermal image fusion with PCA + MLP recognition"};
  app.require_subcommand(1);

  const std::map<std::string, qf::ReportFormat> formats{{"text", qf::ReportFormat::kText},
                                                        {"csv", qf::ReportFormat::kCsv}};
  const std::map<std::string, qf::FusionVariant> fusions{{"none", qf::FusionVariant::kNone},
                                                         {"select", qf::FusionVariant::kSelect},
                                                         {"sum", qf::FusionVariant::kSum}};

  // decompose
  std::string dec_input, dec_out;
  int dec_levels = 1;
  auto* decompose = app.add_subcommand("decompose", "Dump Haar subbands as tiled PGMs");
  decompose->add_option("image", dec_input, "Input PGM")->required()->check(CLI::ExistingFile);
  decompose->add_option("--out", dec_out, "Output directory")->required();
  decompose->add_option("--levels", dec_levels, "Decomposition levels")->check(CLI::PositiveNumber);

  // quotient
  std::string q_visual, q_thermal, q_out;
  int q_method = 2;
  double q_eps = 1e-3;
  std::string q_fusion = "none";
  auto* quotient = app.add_subcommand("quotient", "Quotient-fused image of one pair");
  quotient->add_option("--method", q_method, "1 or 2")->check(CLI::IsMember({1, 2}));
  quotient->add_option("visual", q_visual, "Visual PGM")->required()->check(CLI::ExistingFile);
  quotient->add_option("thermal", q_thermal, "Thermal PGM")->required()->check(CLI::ExistingFile);
  quotient->add_option("--out", q_out, "Output PGM (min-max normalized)")->required();
  quotient->add_option("--epsilon", q_eps, "Relative denominator floor");
  quotient->add_option("--fusion", q_fusion, "none, select or sum")
      ->check(CLI::IsMember(fusions, CLI::ignore_case));

  // gen-manifest
  std::string gm_dir, gm_out;
  std::uint64_t gm_seed = 0;
  double gm_frac = 0.5;
  auto* gen_manifest = app.add_subcommand("gen-manifest", "Build a seeded train/test manifest");
  gen_manifest->add_option("dir", gm_dir, "Root with <class>/visual and <class>/thermal")
      ->required()
      ->check(CLI::ExistingDirectory);
  gen_manifest->add_option("--seed", gm_seed, "Split seed");
  gen_manifest->add_option("--train-frac", gm_frac, "Fraction of each class used for training");
  gen_manifest->add_option("--out", gm_out, "Manifest path (default <dir>/manifest.csv)");

  // gen-synthetic
  std::string gs_out;
  qf::SyntheticOptions gs_opts;
  auto* gen_synth = app.add_subcommand("gen-synthetic", "Write a synthetic paired dataset");
  gen_synth->add_option("--out", gs_out, "Output directory")->required();
  gen_synth->add_option("--seed", gs_opts.seed, "Dataset seed");
  gen_synth->add_option("--classes", gs_opts.num_classes, "Number of classes");
  gen_synth->add_option("--pairs", gs_opts.pairs_per_class, "Pairs per class");
  gen_synth->add_option("--test", gs_opts.test_per_class, "Test pairs per class");

  // train
  std::string tr_manifest, tr_config, tr_out;
  auto* train = app.add_subcommand("train", "Fit PCA and MLP, write a model file");
  train->add_option("--manifest", tr_manifest)->required()->check(CLI::ExistingFile);
  train->add_option("--config", tr_config, "key=value config")->check(CLI::ExistingFile);
  train->add_option("--out", tr_out, "Model file (.qf)")->required();

  // evaluate
  std::string ev_manifest, ev_model, ev_out;
  std::string ev_format = "text";
  auto* evaluate = app.add_subcommand("evaluate", "Per-class recognition report");
  evaluate->add_option("--manifest", ev_manifest)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--model", ev_model)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--report", ev_format, "text or csv")
      ->check(CLI::IsMember(formats, CLI::ignore_case));
  evaluate->add_option("--out", ev_out, "Report path (default stdout)");

  // pipeline
  std::string pl_manifest, pl_config, pl_model, pl_out;
  std::string pl_format = "text";
  auto* pipeline = app.add_subcommand("pipeline", "Train then evaluate");
  pipeline->add_option("--manifest", pl_manifest)->required()->check(CLI::ExistingFile);
  pipeline->add_option("--config", pl_config)->check(CLI::ExistingFile);
  pipeline->add_option("--model-out", pl_model, "Also save the model here");
  pipeline->add_option("--report", pl_format, "text or csv")
      ->check(CLI::IsMember(formats, CLI::ignore_case));
  pipeline->add_option("--out", pl_out, "Report path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*decompose) {
      const qf::Image img = qf::load_pgm(dec_input);
      const auto levels = qf::decompose_multilevel(img, dec_levels);
      fs::create_directories(dec_out);
      for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& s = levels[k];
        const qf::Image tiled = qf::tile_subbands(
            qf::normalize_minmax(s.cA), qf::normalize_minmax(s.cH),
            qf::normalize_minmax(s.cV), qf::normalize_minmax(s.cD));
        const fs::path out = fs::path(dec_out) / ("level" + std::to_string(k + 1) + ".pgm");
        qf::save_pgm(tiled, out);
        std::cout << out.string() << " (" << s.cA.height() << "x" << s.cA.width()
                  << " subbands)\n";
      }
    } else if (*quotient) {
      qf::QuotientConfig cfg;
      cfg.epsilon_rel = q_eps;
      cfg.method = q_method == 1 ? qf::QuotientMethod::kDecomposeLevel1
                                 : qf::QuotientMethod::kReconstructLevel2;
      const qf::Image q = qf::quotient_image(qf::load_pgm(q_visual), qf::load_pgm(q_thermal),
                                             cfg, fusions.at(q_fusion));
      qf::save_pgm(qf::normalize_minmax(q), q_out);
    } else if (*gen_manifest) {
      const fs::path out = gm_out.empty() ? fs::path(gm_dir) / "manifest.csv" : fs::path(gm_out);
      const qf::Manifest m = qf::generate_manifest(gm_dir, gm_seed, gm_frac);
      qf::save_manifest(m, out);
      std::cout << out.string() << ": " << m.entries.size() << " pairs\n";
    } else if (*gen_synth) {
      std::cout << qf::write_synthetic_dataset(gs_out, gs_opts).string() << '\n';
    } else if (*train) {
      const qf::PipelineConfig cfg = resolve_config(tr_config);
      const qf::Manifest m = qf::load_manifest(tr_manifest);
      const qf::TrainOutput out = qf::run_train(m, cfg);
      print_summary(out.summary);
      qf::save_model(out.models, cfg, tr_out);
    } else if (*evaluate) {
      const qf::StoredModel stored = qf::load_model(ev_model);
      const qf::Manifest m = qf::load_manifest(ev_manifest);
      write_report(qf::run_evaluate(m, stored.config, stored.models), formats.at(ev_format), ev_out);
    } else if (*pipeline) {
      const qf::PipelineConfig cfg = resolve_config(pl_config);
      const qf::Manifest m = qf::load_manifest(pl_manifest);
      const qf::TrainOutput out = qf::run_train(m, cfg);
      print_summary(out.summary);
      if (!pl_model.empty()) qf::save_model(out.models, cfg, pl_model);
      write_report(qf::run_evaluate(m, cfg, out.models), formats.at(pl_format), pl_out);
    }
  } catch (const qf::Error& e) {
    std::cerr << "error (" << qf::to_string(e.code()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
