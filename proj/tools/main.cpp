// axdecomp command line: `analyze` builds a bundle, `serve` hosts one.

#include "axdecomp/error.hpp"
#include "axdecomp/pipeline.hpp"
#include "axdecomp/server.hpp"
#include "axdecomp/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompose linear projections of tabular data into axis-aligned scatterplots"};
  app.set_version_flag("--version", std::string(axd::kVersion));
  app.require_subcommand(1);

  axd::AnalysisConfig cfg;
  std::string label;
  double gamma = 0.0;
  bool quiet = false;
  auto* analyze = app.add_subcommand("analyze", "Run the analysis and export a JSON bundle");
  analyze->add_option("--input", cfg.input, "CSV file with a header row")->required();
  analyze->add_option("--label", label, "Name of the class label column");
  analyze->add_option("--objective", cfg.objective, "pca, lpp or lde")->capture_default_str();
  analyze->add_option("--projections", cfg.projections, "Number of linear projections P")
      ->capture_default_str();
  analyze->add_option("--alpha", cfg.alpha, "Diversity trade-off")->capture_default_str();
  analyze->add_option("--knn", cfg.knn, "Neighbourhood size of the LPP graph")
      ->capture_default_str();
  auto* gamma_opt =
      analyze->add_option("--gamma", gamma, "Heat-kernel width (default: 1 / median kNN edge)");
  analyze->add_option("--k", cfg.k, "Neighbourhood size for secants")->capture_default_str();
  analyze->add_option("--lmax", cfg.l_max, "Maximum plots per projection")->capture_default_str();
  analyze->add_option("--delta", cfg.delta, "Required improvement factor in (0,1)")
      ->capture_default_str();
  analyze->add_option("--lambda", cfg.lambda, "Ridge weight of the Grassmann fit")
      ->capture_default_str();
  analyze->add_option("--eta0", cfg.eta0, "Upper bound of a single evidence mass")
      ->capture_default_str();
  analyze->add_option("--filter", cfg.evidence_filter, "Evidence filter threshold")
      ->capture_default_str();
  analyze->add_option("--bins", cfg.bins, "Fidelity histogram bins")->capture_default_str();
  analyze->add_option("--output", cfg.output, "Bundle output path")->required();
  analyze->add_flag("--quiet", quiet, "Suppress the summary");

  std::filesystem::path bundle_path;
  std::optional<std::filesystem::path> assets;
  std::string host = "0.0.0.0";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve a bundle (and viewer assets) over HTTP");
  serve->add_option("--bundle", bundle_path, "Bundle produced by analyze")->required();
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--assets", assets, "Directory with static viewer files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (analyze->parsed()) {
      if (!label.empty()) cfg.label = label;
      if (gamma_opt->count() > 0) cfg.gamma = gamma;
      const auto start = std::chrono::steady_clock::now();
      const auto bundle = axd::run_analysis(cfg);
      axd::export_bundle(bundle, cfg.output);
      if (!quiet) {
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        std::cout << "linear projections: " << bundle.linear_nodes.size()
                  << "\naxis-aligned plots:  " << bundle.axis_nodes.size() << '\n';
        for (const auto& node : bundle.axis_nodes) {
          std::cout << "  " << node.id << "  " << node.dim_names[0] << " x " << node.dim_names[1]
                    << "  evid=" << node.evid << '\n';
        }
        for (const auto& w : bundle.warnings) std::cout << "warning: " << w << '\n';
        std::cout << "wrote " << cfg.output.string() << " in " << took.count() << " s\n";
      }
    } else if (serve->parsed()) {
      std::cout << "serving " << bundle_path.string() << " on http://" << host << ':' << port
                << std::endl;
      axd::serve_bundle(bundle_path, port, host, assets);
    }
  } catch (const axd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const axd::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const axd::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
